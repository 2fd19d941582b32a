"""Seeded random construction specs, one generator per net class.

Each builder draws small rational data, assembles the documented spec JSON
(scalars serialized as strings so the same dicts feed the CLI and service
tests), and ``random_construction`` retries until the construction
validates.  The RNG is the only state, so a fixed seed reproduces the same
sequence of specs.
"""
from fractions import Fraction

from birat3d import construct, parse_construction_spec
from birat3d.errors import Birat3dError
from birat3d.mpoly import scalar_to_json
from birat3d.scalars import context_for

F = Fraction

_CTX = context_for([F(0)])


class _Retry(Exception):
    """A draw landed on a degenerate configuration; draw again."""


def _rat(rng, span=6, den=4):
    return F(rng.randint(-span, span), rng.randint(1, den))


def _rat_nonzero(rng, span=6, den=4):
    while True:
        x = _rat(rng, span, den)
        if x != 0:
            return x


def _affine_point(rng):
    return [F(1), _rat(rng), _rat(rng), _rat(rng)]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _combine(t, p, q):
    return [(1 - t) * a + t * b for a, b in zip(p, q)]


def _jsonify(value):
    if isinstance(value, list):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (F, float)):
        return scalar_to_json(value)
    return value


# ---------------------------------------------------------------------------
# hexahedral: perturb the six cube face planes

_CUBE_PLANES = {
    "sigma0": (0, 1, 0, 0), "sigma1": (-1, 1, 0, 0),
    "tau0": (0, 0, 1, 0), "tau1": (-1, 0, 1, 0),
    "upsilon0": (0, 0, 0, 1), "upsilon1": (-1, 0, 0, 1),
}


def _hexahedral(rng):
    planes = {}
    for key, base in _CUBE_PLANES.items():
        planes[key] = [c + F(rng.randint(-2, 2), 5) for c in base]
    return {"class": "hexahedral", "planes": planes}


# ---------------------------------------------------------------------------
# pyramidal: an affine apex, four edge lines through it, two parameters each


def _pyramidal(rng):
    apex = _affine_point(rng)
    lines = {}
    for key in ("00", "01", "10", "11"):
        direction = [F(0), _rat(rng), _rat(rng), _rat_nonzero(rng)]
        lines[key] = [apex, direction]
    params = {}
    for key in ("00", "01", "10", "11"):
        c0 = _rat_nonzero(rng)
        c1 = _rat_nonzero(rng)
        while c1 == c0:
            c1 = _rat_nonzero(rng)
        params[key] = [c0, c1]
    return {"class": "pyramidal", "apex": apex, "lines": lines,
            "params": params}


# ---------------------------------------------------------------------------
# scaffold: a spine, two rails through its endpoints, four cross lines


def _distinct_params(rng, n):
    seen = []
    while len(seen) < n:
        t = _rat_nonzero(rng)
        if t not in seen:
            seen.append(t)
    return seen


def _scaffold(rng):
    a0 = _affine_point(rng)
    a1 = _affine_point(rng)
    b0 = _affine_point(rng)
    b1 = _affine_point(rng)
    ts = _distinct_params(rng, 4)
    us = _distinct_params(rng, 4)
    lines = {}
    for key, t, u in zip(("00", "01", "10", "11"), ts, us):
        lines[key] = [_combine(t, a0, b0), _combine(u, a1, b1)]
    # the pencil of planes through the spine
    basis = _CTX.nullspace([a0, a1], 4)
    if len(basis) != 2:
        raise _Retry
    planes = []
    while len(planes) < 2:
        r, s = _rat(rng), _rat(rng)
        cov = [r * x + s * y for x, y in zip(*basis)]
        if _CTX.vec_is_zero(cov):
            continue
        if _dot(cov, b0) == 0 or _dot(cov, b1) == 0:
            continue
        if planes and _CTX.proportional(planes[0], cov):
            continue
        planes.append(cov)
    return {"class": "scaffold", "spine": [a0, a1], "rails": [[a0, b0], [a1, b1]],
            "lines": lines,
            "planes": {"sigma0": planes[0], "sigma1": planes[1]}}


# ---------------------------------------------------------------------------
# tripod: a parametrized conic, three concurrent axes through its points,
# and seed points on the forced secants


_QUAD_PAIRS = [(i, j) for i in range(4) for j in range(i, 4)]


def _quad_row(p):
    return [p[i] * p[j] for i, j in _QUAD_PAIRS]


def _conic_point(e, lam, mu):
    return [lam * lam * a + lam * mu * b + mu * mu * c
            for a, b, c in zip(*e)]


def _other_root(a, b, c, root):
    """The second root of a*l^2 + b*l*m + c*m^2 given one root (l0:m0)."""
    l0, m0 = root
    if a == 0:
        return (F(1), F(0)) if m0 != 0 else (-c, b)
    if m0 == 0:
        raise _Retry  # (1:0) can only be a root when a == 0
    r1 = -F(b) / a - F(l0) / m0
    return (r1, F(1))


def _tripod(rng):
    e = [_affine_point(rng) for _ in range(3)]
    normals = _CTX.nullspace(e, 4)
    if len(normals) != 1:
        raise _Retry
    plane = list(normals[0])
    apex = _affine_point(rng)
    if _dot(plane, apex) == 0:
        raise _Retry
    # five general conic points pin the quadrics through the whole conic
    samples = [(F(1), F(0)), (F(0), F(1)), (F(1), F(1)),
               (F(2), F(1)), (F(1), F(2))]
    rows = [_quad_row(_conic_point(e, lam, mu)) for lam, mu in samples]
    kernel = _CTX.nullspace(rows, 10)
    if len(kernel) != 5:
        raise _Retry
    quad = next((k for k in kernel
                 if _dot(_quad_row(e[1]), k) != 0), None)
    if quad is None:
        raise _Retry
    traces = [(_conic_point(e, F(1), F(0)), (F(1), F(0))),
              (_conic_point(e, F(0), F(1)), (F(0), F(1))),
              (_conic_point(e, F(1), F(1)), (F(1), F(1)))]
    p000 = _affine_point(rng)
    if _dot(plane, p000) == 0:
        raise _Retry
    seeds = []
    for trace, root in traces:
        if _CTX.rank([apex, trace, p000]) != 3:
            raise _Retry
        secant = _CTX.nullspace([apex, trace, p000], 4)
        if len(secant) != 1:
            raise _Retry
        h = secant[0]
        qa, qb, qc = (_dot(h, e[0]), _dot(h, e[1]), _dot(h, e[2]))
        second = _other_root(qa, qb, qc, root)
        if _CTX.proportional(second, root):
            raise _Retry  # tangent secant: the seed would land on the axis
        other = _conic_point(e, *second)
        if other[0] == 0:
            raise _Retry
        other = [c / other[0] for c in other]
        t = _rat_nonzero(rng)
        while t == 1:
            t = _rat_nonzero(rng)
        seeds.append(_combine(t, p000, other))
    return {"class": "tripod", "apex": apex,
            "lines": {"s": [apex, traces[0][0]],
                      "t": [apex, traces[1][0]],
                      "u": [apex, traces[2][0]]},
            "conic": {"plane": plane, "quadric": list(quad)},
            "p000": p000,
            "points": {"100": seeds[0], "010": seeds[1], "001": seeds[2]}}


_BUILDERS = {
    "hexahedral": _hexahedral,
    "pyramidal": _pyramidal,
    "scaffold": _scaffold,
    "tripod": _tripod,
}

CLASS_NAMES = tuple(_BUILDERS)


def random_construction(class_name, rng, attempts=80):
    """A (spec_json, constructed_net) pair, retrying degenerate draws."""
    last = None
    for _ in range(attempts):
        try:
            spec_json = _jsonify(_BUILDERS[class_name](rng))
            net = construct(parse_construction_spec(spec_json))
        except (_Retry, Birat3dError) as exc:
            last = exc
            continue
        return spec_json, net
    raise RuntimeError(
        f"no valid {class_name} spec after {attempts} draws: {last!r}")


def random_factors(rng):
    """Three factor pairs with nonzero rational entries."""
    return tuple((_rat_nonzero(rng), _rat_nonzero(rng)) for _ in range(3))


def random_params(rng):
    """Three parameter pairs, none identically zero."""
    out = []
    for _ in range(3):
        pair = (_rat(rng), _rat(rng))
        if pair == (0, 0):
            pair = (F(1), _rat(rng))
        out.append(pair)
    return tuple(out)
