"""Birationality of a classified net: scaled-weight tensors and rank-one tests.

Each class pins down a 2x2x2 tensor of pairing values Delta (one variant per
admissible reference plane); the map is birational exactly when the
entrywise quotient W = weights / Delta is a rank-one tensor, and the rank-one
factor pairs are the coefficients of the inverse's linear factors.  This
module computes the variants, decides rank-one exactly (all flattening
minors) or numerically, synthesizes birational weights from factor pairs,
and measures the distance from a weight tensor to the nearest rank-one one
(the birationality distance) with a multi-start higher-order power method.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .controlnet import (AXIS_NAMES, Classification, ControlNet,
                         ScaffoldGeometry, TripodGeometry, classification_of)
from .errors import (DegenerateConfiguration, DegenerateWeights, InputError,
                     NotRankOne, QuadricBoundary, ZeroPairing)
from .geometry import span_plane
from .mpoly import P3Form
from .scalars import (Scalar, ScalarContext, context_for, primitive,
                      scalar_to_json)

#: nested 2x2x2 tensor T[i][j][k]
Tensor = tuple


def tensor_from_fn(fn: Callable[[int, int, int], Scalar]) -> Tensor:
    return tuple(tuple(tuple(fn(i, j, k) for k in range(2))
                       for j in range(2)) for i in range(2))


def tensor_entries(t: Tensor):
    for i in range(2):
        for j in range(2):
            for k in range(2):
                yield (i, j, k), t[i][j][k]


def tensor_to_json(t: Tensor):
    return [[[scalar_to_json(t[i][j][k]) for k in range(2)]
             for j in range(2)] for i in range(2)]


def tensor_norm(t: Tensor) -> float:
    return math.sqrt(sum(float(v) ** 2 for _, v in tensor_entries(t)))


# ---------------------------------------------------------------------------
# syzygy matrices


@dataclass(frozen=True)
class SyzygyData:
    """The 2x4 syzygy matrix of one axis and, when it has rank one, the
    factor pair alpha with alpha0*row0 + alpha1*row1 = 0."""

    axis: int
    matrix: tuple[tuple[Scalar, ...], tuple[Scalar, ...]]
    alpha: tuple[Scalar, Scalar] | None
    forms: tuple[P3Form, P3Form]

    def to_json(self):
        return {"axis": AXIS_NAMES[self.axis],
                "matrix": [[scalar_to_json(x) for x in row]
                           for row in self.matrix],
                "alpha": ([scalar_to_json(a) for a in self.alpha]
                          if self.alpha is not None else None)}


def syzygy_matrix(net: ControlNet, axis: int,
                  forms: tuple[P3Form, P3Form] | None = None) -> SyzygyData:
    """Syzygy matrix of one axis against its two face planes.

    Row 0 pairs the side-0 plane with the weighted side-1 points, row 1 the
    side-1 plane with the side-0 points; columns run over the remaining two
    indices, earlier axis fastest.  The matrix has rank one exactly when the
    axis contributes a linear syzygy; the returned pair is its coefficients
    (None when the rank is 2).

    Parameters
    ----------
    forms : optional
        Explicit face forms (side 0, side 1).  The pair is covariant with
        their scaling; by default the normalized boundary planes are used.

    Raises
    ------
    QuadricBoundary
        If a face of the axis is not planar and no forms were supplied.
    """
    from .controlnet import boundary_surface

    mono = net.monomial_reading()
    ctx = mono.ctx()
    if forms is None:
        f0 = boundary_surface(net, axis, 0)
        f1 = boundary_surface(net, axis, 1)
        if not (f0.is_plane and f1.is_plane):
            raise QuadricBoundary(
                f"axis {AXIS_NAMES[axis]} faces are not planes")
        forms = (f0.form, f1.form)
    cols = [(a, b) for b in range(2) for a in range(2)]  # earlier axis fastest

    def site(side, a, b):
        if axis == 0:
            return (side, a, b)
        if axis == 1:
            return (a, side, b)
        return (a, b, side)

    row0 = tuple(mono.weight(*site(1, a, b))
                 * forms[0].value(mono.point(*site(1, a, b)).coords)
                 for (a, b) in cols)
    row1 = tuple(mono.weight(*site(0, a, b))
                 * forms[1].value(mono.point(*site(0, a, b)).coords)
                 for (a, b) in cols)
    matrix = (row0, row1)
    alpha = None
    if ctx.rank(matrix) == 1:
        c = next((n for n in range(4)
                  if not ctx.is_zero(row0[n]) or not ctx.is_zero(row1[n])),
                 None)
        if c is not None:
            alpha = tuple(primitive((row1[c], -row0[c])))
    return SyzygyData(axis, matrix, alpha, forms)


# ---------------------------------------------------------------------------
# Delta variants


@dataclass(frozen=True)
class DeltaVariant:
    """One admissible Delta tensor with its reference data."""

    key: str
    tensor: Tensor
    reference: P3Form | tuple[P3Form, ...]

    def to_json(self):
        ref = self.reference
        return {"key": self.key,
                "delta": tensor_to_json(self.tensor),
                "reference": (ref.to_json() if isinstance(ref, P3Form)
                              else [r.to_json() for r in ref])}


def canonical_variant_key(class_name: str) -> str:
    return {"hexahedral": "main", "pyramidal": "main",
            "scaffold": "y0", "tripod": "p1"}[class_name]


def _pairing_delta(net: ControlNet, plane: P3Form, ctx) -> Tensor:
    vals = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                v = plane.value(net.point(i, j, k).coords)
                sp = max(abs(float(c)) for c in net.point(i, j, k).coords)
                if ctx.is_zero(v, sp):
                    raise ZeroPairing(
                        f"control point ({i},{j},{k}) lies on the reference "
                        "plane")
                vals[(i, j, k)] = 1 / v
    return tensor_from_fn(lambda i, j, k: vals[(i, j, k)])


def delta_variants(net: ControlNet,
                   classification: Classification | None = None
                   ) -> dict[str, DeltaVariant]:
    """All Delta tensors the net's class admits, keyed canonically.

    hexahedral: "main" (triple plane determinants); pyramidal: "main"
    (base-plane pairings); scaffold: "y0", "y1", "z0", "z1" (rail/cross-line
    span planes); tripod: "p1", "p2", "p3" (axis-line span planes).
    """
    if classification is None:
        classification = classification_of(net)
    mono = net.monomial_reading()
    ctx = mono.ctx()
    cls = classification.class_name
    if cls == "hexahedral":
        planes = classification.geometry.planes

        def det3(i, j, k):
            rows = [planes[i].coeffs[1:], planes[2 + j].coeffs[1:],
                    planes[4 + k].coeffs[1:]]
            return ctx.det(rows)

        tensor = tensor_from_fn(det3)
        for (site, v) in tensor_entries(tensor):
            if ctx.is_zero(v):
                raise ZeroPairing(
                    f"plane triple {site} is linearly dependent")
        return {"main": DeltaVariant("main", tensor, tuple(planes))}
    if cls == "pyramidal":
        plane = classification.geometry.base_plane
        return {"main": DeltaVariant("main", _pairing_delta(mono, plane, ctx),
                                     plane)}
    if cls == "scaffold":
        geom: ScaffoldGeometry = classification.geometry
        y_line, z_line = geom.cross_lines
        out = {}
        for ln, tag in ((y_line, "y"), (z_line, "z")):
            for l, rail in enumerate(geom.rails):
                if not ln.meets(rail, ctx):
                    raise DegenerateConfiguration(
                        f"cross line {tag} misses rail r{l}")
                plane = span_plane(ln, rail, ctx)
                key = f"{tag}{l}"
                out[key] = DeltaVariant(
                    key, _pairing_delta(mono, plane, ctx), plane)
        return out
    if cls == "tripod":
        geom: TripodGeometry = classification.geometry
        out = {}
        for r, plane in enumerate(geom.span_planes, start=1):
            key = f"p{r}"
            out[key] = DeltaVariant(
                key, _pairing_delta(mono, plane, ctx), plane)
        return out
    raise InputError(f"class {cls!r} has no Delta tensors")


def weight_tensor(net: ControlNet, delta: Tensor) -> Tensor:
    """The scaled tensor W = weights / Delta (entrywise)."""
    mono = net.monomial_reading()
    return tensor_from_fn(
        lambda i, j, k: mono.weight(i, j, k) / delta[i][j][k])


# ---------------------------------------------------------------------------
# exact rank-one factorization


@dataclass(frozen=True)
class RankOneFactors:
    """Factor pairs with an explicit scale: scale * a (x) b (x) c == tensor.

    Pairs are normalized so each first nonzero entry is 1 (exact mode); the
    scale then carries the tensor's magnitude.
    """

    pairs: tuple[tuple[Scalar, Scalar], ...]
    scale: Scalar

    def to_json(self):
        return {"pairs": [[scalar_to_json(x) for x in p] for p in self.pairs],
                "scale": scalar_to_json(self.scale)}


def is_rank_one(t: Tensor, ctx: ScalarContext) -> bool:
    """All 2x2 minors of the three flattenings vanish."""
    scale = max((abs(float(v)) for _, v in tensor_entries(t)), default=0.0)
    if all(ctx.is_zero(v, scale) for _, v in tensor_entries(t)):
        return False  # the zero tensor is rank zero, not one
    sq = scale * scale

    def flat(axis, i, pos):
        if axis == 0:
            j, k = pos
            return t[i][j][k]
        if axis == 1:
            j, k = pos
            return t[j][i][k]
        j, k = pos
        return t[j][k][i]

    cols = [(a, b) for a in range(2) for b in range(2)]
    for axis in range(3):
        for c1, c2 in itertools.combinations(cols, 2):
            minor = (flat(axis, 0, c1) * flat(axis, 1, c2)
                     - flat(axis, 0, c2) * flat(axis, 1, c1))
            if not ctx.is_zero(minor, sq):
                return False
    return True


def rank_one_factor(t: Tensor, ctx: ScalarContext | None = None
                    ) -> RankOneFactors:
    """Factor a rank-one 2x2x2 tensor into normalized pairs and a scale.

    Raises
    ------
    NotRankOne
        If a flattening minor is nonzero (or the tensor is zero).
    """
    if ctx is None:
        ctx = context_for([v for _, v in tensor_entries(t)])
    if not is_rank_one(t, ctx):
        raise NotRankOne("tensor is not rank one")
    scale = max(abs(float(v)) for _, v in tensor_entries(t))
    pivot = max(tensor_entries(t), key=lambda e: abs(float(e[1])))[0]
    pi, pj, pk = pivot
    a = (t[0][pj][pk], t[1][pj][pk])
    b = (t[pi][0][pk], t[pi][1][pk])
    c = (t[pi][pj][0], t[pi][pj][1])
    pairs = []
    firsts = []
    for pair in (a, b, c):
        nz = next(n for n in range(2) if not ctx.is_zero(pair[n], scale))
        firsts.append(nz)
        pairs.append(tuple(x / pair[nz] for x in pair))
    lam = t[firsts[0]][firsts[1]][firsts[2]]
    factors = RankOneFactors(tuple(pairs), lam)
    # verify the reconstruction entrywise
    for (i, j, k), v in tensor_entries(t):
        rec = lam * pairs[0][i] * pairs[1][j] * pairs[2][k]
        if not ctx.is_zero(rec - v, scale):
            raise NotRankOne("factor reconstruction mismatch")
    return factors


# ---------------------------------------------------------------------------
# the birationality report


@dataclass(frozen=True)
class VariantReport:
    key: str
    delta: Tensor
    tensor: Tensor
    rank_one: bool
    factors: RankOneFactors | None

    def to_json(self):
        return {"key": self.key,
                "delta": tensor_to_json(self.delta),
                "tensor": tensor_to_json(self.tensor),
                "rank_one": self.rank_one,
                "factors": self.factors.to_json() if self.factors else None}


@dataclass(frozen=True)
class BirationalityReport:
    classification: Classification
    variants: dict[str, VariantReport]
    birational: bool
    consistent: bool
    factors: RankOneFactors | None
    diagnostics: tuple[str, ...] = ()

    def to_json(self):
        return {"classification": self.classification.to_json(),
                "variants": {k: v.to_json() for k, v in self.variants.items()},
                "birational": self.birational,
                "consistent": self.consistent,
                "factors": self.factors.to_json() if self.factors else None,
                "diagnostics": list(self.diagnostics)}


#: which factor pairs must agree across variants, per class:
#: (variant key, axis slot) groups that name the same projective pair.
_CROSS_CHECKS = {
    "scaffold": [(("y0", 0), ("z0", 0)),      # alpha of rail 0
                 (("y1", 0), ("z1", 0)),      # alpha of rail 1
                 (("y0", 2), ("y1", 2)),      # gamma across the y variants
                 (("z0", 1), ("z1", 1))],     # beta across the z variants
    "tripod": [(("p2", 0), ("p3", 0)),        # alpha
               (("p1", 1), ("p3", 1)),        # beta
               (("p1", 2), ("p2", 2))],       # gamma
}


def is_birational(net: ControlNet,
                  classification: Classification | None = None
                  ) -> BirationalityReport:
    """Full report: every Delta variant, its W tensor, and rank-one data.

    The map is birational when every variant's W is rank one; for
    multi-variant classes the factor pairs that two variants both determine
    are compared projectively (``consistent``) — the dual routes are kept
    and must agree.
    """
    if classification is None:
        classification = classification_of(net)
    if classification.class_name == "unclassified":
        return BirationalityReport(classification, {}, False, True, None,
                                   classification.diagnostics)
    mono = net.monomial_reading()
    ctx = mono.ctx()
    variants = {}
    diagnostics = []
    for key, dv in delta_variants(net, classification).items():
        w = weight_tensor(net, dv.tensor)
        ok = is_rank_one(w, ctx)
        factors = rank_one_factor(w, ctx) if ok else None
        variants[key] = VariantReport(key, dv.tensor, w, ok, factors)
    birational = all(v.rank_one for v in variants.values())
    consistent = True
    if len({v.rank_one for v in variants.values()}) > 1:
        consistent = False
        diagnostics.append("variants disagree on the rank-one verdict")
    if birational:
        for (k1, slot1), (k2, slot2) in _CROSS_CHECKS.get(
                classification.class_name, []):
            p1 = variants[k1].factors.pairs[slot1]
            p2 = variants[k2].factors.pairs[slot2]
            if not ctx.proportional(p1, p2):
                consistent = False
                diagnostics.append(
                    f"factor pair of axis {AXIS_NAMES[slot1]} differs "
                    f"between variants {k1} and {k2}")
    factors = None
    if birational:
        factors = variants[canonical_variant_key(
            classification.class_name)].factors
    return BirationalityReport(classification, variants, birational,
                               consistent, factors, tuple(diagnostics))


# ---------------------------------------------------------------------------
# weight synthesis


def synthesize_weights(net: ControlNet,
                       factors: Sequence[Sequence[Scalar]],
                       classification: Classification | None = None
                       ) -> ControlNet:
    """Weights w_ijk = a_i b_j c_k Delta_ijk of the canonical variant.

    The resulting net is birational with the given factor pairs (up to the
    variant's normalization); the theorems make the weight family
    independent of which variant's Delta is used.

    Raises
    ------
    DegenerateWeights
        If a factor entry is zero (a zero weight breaks every face).
    """
    if classification is None:
        classification = classification_of(net)
    if classification.class_name == "unclassified":
        raise InputError("cannot synthesize weights for an unclassified net")
    if len(factors) != 3 or any(len(p) != 2 for p in factors):
        raise InputError("factors must be three pairs")
    for p in factors:
        for x in p:
            if float(x) == 0.0:
                raise DegenerateWeights("factor entries must be nonzero")
    key = canonical_variant_key(classification.class_name)
    delta = delta_variants(net, classification)[key].tensor
    a, b, c = factors
    weights = []
    for i in range(2):
        for j in range(2):
            for k in range(2):
                weights.append(a[i] * b[j] * c[k] * delta[i][j][k])
    return net.with_weights(weights)


# ---------------------------------------------------------------------------
# rank-one approximation and the birationality distance


@dataclass(frozen=True)
class RankOneApproximation:
    """Best rank-one approximation of a weight tensor (Frobenius).

    ``pairs`` carry the magnitude spread evenly: each unit factor is scaled
    by |lam|^(1/3), first significant entries positive, the sign of lam on
    the first pair.  ``distance`` is the relative residual |W - P| / |W|.
    """

    pairs: tuple[tuple[float, float], ...]
    lam: float
    residual: float
    distance: float
    iterations: int

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs],
                "lambda": self.lam,
                "residual": self.residual,
                "distance": self.distance,
                "iterations": self.iterations}


def _tensor_to_numpy(t: Tensor):
    import numpy as np

    return np.array([[[float(t[i][j][k]) for k in range(2)]
                      for j in range(2)] for i in range(2)])


def best_rank_one(t: Tensor, restarts: int = 8, max_iter: int = 500,
                  tol: float = 1e-12) -> RankOneApproximation:
    """Nearest rank-one tensor by a multi-start higher-order power method.

    Starts from the HOSVD leading factors plus ``restarts`` seeded random
    unit triples; each start runs alternating contractions until the factor
    change drops below ``tol``.  The best |lambda| wins (the Frobenius
    residual is ||W||^2 - lambda^2 at a converged triple).
    """
    import numpy as np

    w = _tensor_to_numpy(t)
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        raise NotRankOne("zero tensor has no rank-one approximation")

    def unit(v):
        n = np.linalg.norm(v)
        return v / n if n > 0 else np.array([1.0, 0.0])

    def contract(a, b, c, skip):
        if skip == 0:
            return np.einsum("ijk,j,k->i", w, b, c)
        if skip == 1:
            return np.einsum("ijk,i,k->j", w, a, c)
        return np.einsum("ijk,i,j->k", w, a, b)

    starts = []
    u0, _, _ = np.linalg.svd(w.reshape(2, 4))
    u1, _, _ = np.linalg.svd(w.transpose(1, 0, 2).reshape(2, 4))
    u2, _, _ = np.linalg.svd(w.transpose(2, 0, 1).reshape(2, 4))
    starts.append((u0[:, 0], u1[:, 0], u2[:, 0]))
    for seed in range(restarts):
        rng = np.random.default_rng(seed)
        starts.append(tuple(unit(rng.standard_normal(2)) for _ in range(3)))
    best = None
    for (a, b, c) in starts:
        a, b, c = unit(a.copy()), unit(b.copy()), unit(c.copy())
        iters = 0
        for iters in range(1, max_iter + 1):
            na = unit(contract(a, b, c, 0))
            nb = unit(contract(na, b, c, 1))
            nc = unit(contract(na, nb, c, 2))
            change = max(min(np.linalg.norm(na - a), np.linalg.norm(na + a)),
                         min(np.linalg.norm(nb - b), np.linalg.norm(nb + b)),
                         min(np.linalg.norm(nc - c), np.linalg.norm(nc + c)))
            a, b, c = na, nb, nc
            if change < tol:
                break
        lam = float(np.einsum("ijk,i,j,k->", w, a, b, c))
        if best is None or abs(lam) > abs(best[0]):
            best = (lam, a, b, c, iters)
    lam, a, b, c, iters = best
    # canonical orientation: flip each unit factor so its first significant
    # entry is positive, folding every flip into lambda; then the sign of
    # lambda (if negative) lands on the first pair.
    vecs = []
    for v in (a, b, c):
        lead = v[0] if abs(v[0]) > 1e-9 else v[1]
        if lead < 0:
            v = -v
            lam = -lam
        vecs.append(v)
    scale = abs(lam) ** (1.0 / 3.0)
    pairs = [tuple(float(x * scale) for x in v) for v in vecs]
    if lam < 0:
        pairs[0] = tuple(-x for x in pairs[0])
    residual = math.sqrt(max(norm * norm - lam * lam, 0.0))
    return RankOneApproximation(tuple(pairs), lam, residual,
                                residual / norm, iters)


def distance_to_birationality(net: ControlNet,
                              classification: Classification | None = None
                              ) -> float:
    """Relative Frobenius distance from the canonical W tensor to the cone
    of rank-one tensors.  Zero exactly on birational weights."""
    if classification is None:
        classification = classification_of(net)
    if classification.class_name == "unclassified":
        raise InputError("distance needs a classified net")
    key = canonical_variant_key(classification.class_name)
    delta = delta_variants(net, classification)[key].tensor
    w = weight_tensor(net, delta)
    return best_rank_one(w).distance
