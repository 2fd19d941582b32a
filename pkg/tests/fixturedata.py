"""Exact fixture payloads shared across the test suite.

Everything here is plain data in the documented exchange formats: nets,
construction specs, deformation documents, and the rational factor pairs
that make the example nets birational.  Index order is always k-fastest.
"""
from fractions import Fraction

F = Fraction

# ---------------------------------------------------------------------------
# unit cube: the identity patch P_ijk = (1, i, j, k) with unit weights

CUBE_JSON = {
    "basis": "monomial",
    "index_order": "k-fastest",
    "points": [[1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [1, 0, 1, 1],
               [1, 1, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0], [1, 1, 1, 1]],
    "weights": [1, 1, 1, 1, 1, 1, 1, 1],
}

# the same corner points read as Bernstein coefficients
BERNSTEIN_CUBE_JSON = dict(CUBE_JSON, basis="bernstein")

# ---------------------------------------------------------------------------
# pyramidal example: unit-weight net whose four u-edges meet at (1, 0, 0, 5)

PYRAMID_NET_JSON = {
    "basis": "monomial",
    "index_order": "k-fastest",
    "points": [[1, "-8/5", 0, 1], [1, "-11/10", 0, "9/4"],
               [1, 0, "27/20", "1/2"], [1, 0, "3/5", 3],
               [1, 0, "-9/5", "1/2"], [1, 0, "-4/5", 3],
               [1, "4/5", 0, 1], [1, "11/20", 0, "9/4"]],
    "weights": [1, 1, 1, 1, 1, 1, 1, 1],
}

PYRAMID_APEX = (F(1), F(0), F(0), F(5))

# the same net as generator data: apex, edge lines, and the two edge
# parameters per line (P_ij0 = apex + c0*d, P_ij1 = apex + c1*d)
PYRAMID_SPEC_JSON = {
    "class": "pyramidal",
    "apex": [1, 0, 0, 5],
    "lines": {
        "00": [[1, 0, 0, 5], [0, 2, 0, 5]],
        "01": [[1, 0, 0, 5], [0, 0, 3, -10]],
        "10": [[1, 0, 0, 5], [0, 0, 2, 5]],
        "11": [[1, 0, 0, 5], [0, 1, 0, -5]],
    },
    "params": {
        "00": ["-4/5", "-11/20"],
        "01": ["9/20", "1/5"],
        "10": ["-9/10", "-2/5"],
        "11": ["4/5", "11/20"],
    },
}

# factor pairs that synthesize birational weights for the pyramidal net
PYRAMID_FACTORS = ((F(19, 20), F(91, 100)),
                   (F(53, 50), F(39, 50)),
                   (F(27, 25), F(3, 4)))

# Delta tensor of the unit-weight pyramidal net, keyed by (i, j, k)
PYRAMID_DELTA = {
    (0, 0, 0): F(5, 6), (1, 0, 0): F(20, 21),
    (0, 1, 0): F(80, 63), (1, 1, 0): F(5, 3),
    (0, 0, 1): F(40, 33), (1, 0, 1): F(15, 7),
    (0, 1, 1): F(20, 7), (1, 1, 1): F(80, 33),
}

# ---------------------------------------------------------------------------
# tripod example: concurrent axes along the coordinate directions, conic in
# the plane 3*x0 = x1 + x2 + x3

TRIPOD_SPEC_JSON = {
    "class": "tripod",
    "apex": [1, 0, 0, 0],
    "lines": {
        "s": [[1, 0, 0, 0], [0, 1, 0, 0]],
        "t": [[1, 0, 0, 0], [0, 0, 1, 0]],
        "u": [[1, 0, 0, 0], [0, 0, 0, 1]],
    },
    "conic": {"plane": [3, -1, -1, -1],
              "quadric": [0, 0, 0, 0, 0, 1, 1, 0, 1, 0]},
    "p000": [1, "1/4", "1/4", "1/4"],
    "points": {
        "100": [1, "3/16", "27/80", "27/80"],
        "010": [1, "27/80", "3/16", "27/80"],
        "001": [1, "27/80", "27/80", "3/16"],
    },
}

# the four control points the closure determines, keyed by (i, j, k)
TRIPOD_DERIVED = {
    (1, 1, 0): (F(1), F(45, 172), F(45, 172), F(81, 172)),
    (1, 0, 1): (F(1), F(45, 172), F(81, 172), F(45, 172)),
    (0, 1, 1): (F(1), F(81, 172), F(45, 172), F(45, 172)),
    (1, 1, 1): (F(1), F(3, 8), F(3, 8), F(3, 8)),
}

# ---------------------------------------------------------------------------
# scaffold example: spine on the x3-axis edge, rails through its endpoints

SCAFFOLD_SPEC_JSON = {
    "class": "scaffold",
    "spine": [[1, 0, 0, 0], [1, 0, 0, 1]],
    "rails": [[[1, 0, 0, 0], [1, 1, 0, 0]],
              [[1, 0, 0, 1], [1, 0, 1, 1]]],
    "lines": {
        "00": [[1, 1, 0, 0], [1, 0, 1, 1]],
        "01": [[1, 2, 0, 0], [1, 0, 2, 1]],
        "10": [[1, 3, 0, 0], [1, 0, "1/2", 1]],
        "11": [[1, 4, 0, 0], [1, 0, 3, 1]],
    },
    "planes": {"sigma0": [0, 1, -1, 0], "sigma1": [0, 1, -2, 0]},
}

# ---------------------------------------------------------------------------
# hexahedral deformation: drag one face plane while the other five stay put

HEX_PLANES_START = {
    "sigma0": ["0.16", "-0.45", "-0.07", "-0.14"],
    "sigma1": ["1.25", "-0.63", "-0.32", "-0.63"],
    "tau0": [0, 0, 0, 1],
    "tau1": ["-1.18", "0.18", "0.51", 1],
    "upsilon0": [0, 0, 1, 0],
    "upsilon1": ["-1.17", "0.1", "0.8", "0.54"],
}

SIGMA1_END = ["2.31", "-0.84", "-0.2", "-0.32"]

HEX_PLANES_END = dict(HEX_PLANES_START, sigma1=SIGMA1_END)

DEFORM_DOC = {
    "class": "hexahedral",
    "factors": {"a": [1, 1], "b": [1, 1], "c": [1, 1]},
    "keyframes": [{"t": 0, "generators": {"planes": HEX_PLANES_START}},
                  {"t": 1, "generators": {"planes": HEX_PLANES_END}}],
    "frames": 10,
}
