"""Weighted trilinear control nets and their classification.

A net is eight affine control points with nonzero weights, indexed by the
corners of a combinatorial cube ``(i, j, k)``, plus a basis flag: the
associated map sends ``(s, t, u)`` to the weighted combination of the points
over the monomial basis ``s_i t_j u_k`` or the degree-one Bernstein basis.
Both readings share all boundary geometry (faces, edges, incidences); they
differ only by a per-axis reparametrization, so classification and every
derived tensor are computed on the monomial reading of the same data.

Classification is a property of the control *points* alone.  Face ranks
split the six boundary faces into planes (rank 3) and quadrics (rank 4); the
number of quadric axes decides the candidate class, and line incidences
(apexes, transversals, and a common plane conic recovered by a small exact
nullspace computation) confirm it.  The quadric face *forms* stored in the
report do depend on the weights — they are the surfaces swept by the current
map and feed the inversion pipeline.
"""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (AmbiguousClass, ComplexTransversals, DegenerateConfiguration,
                     DegenerateFace, DegenerateWeights, InputError,
                     IrrationalIntersection, NonUniqueQuadric, RankError)
from .geometry import (Conic, Line, Point, TransversalResult,
                       common_point_of_lines, line_of_planes,
                       plane_through_points, quadric_rank,
                       quadric_through_lines, quadric_through_patch,
                       quadric_vertex, span_plane, transversals_of_four_lines)
from .mpoly import MPoly, P3Form, sym_product
from .scalars import (Scalar, ScalarContext, context_for, mode_of, primitive,
                      scale_first_one)

AXIS_NAMES = ("s", "t", "u")
FACE_NAMES = ("sigma0", "sigma1", "tau0", "tau1", "upsilon0", "upsilon1")

#: degree-one Bernstein basis in terms of monomials: b0 = x0 - x1, b1 = x1
_BERNSTEIN_TO_MONOMIAL = ((1, -1), (0, 1))


def net_index(i: int, j: int, k: int) -> int:
    """Flat index of corner (i, j, k): k varies fastest."""
    return 4 * i + 2 * j + k


def _corner_sites():
    return [(i, j, k) for i in range(2) for j in range(2) for k in range(2)]


@dataclass(frozen=True)
class ControlNet:
    """Eight weighted affine control points plus a basis flag."""

    points: tuple[Point, ...]
    weights: tuple[Scalar, ...]
    basis: str = "monomial"

    def __post_init__(self):
        if len(self.points) != 8 or len(self.weights) != 8:
            raise InputError("a net needs 8 points and 8 weights")
        if self.basis not in ("monomial", "bernstein"):
            raise InputError(f"unknown basis {self.basis!r}")
        ctx = self.ctx()
        for n, p in enumerate(self.points):
            if p.is_infinite(ctx):
                i, j, k = _corner_sites()[n]
                raise InputError(
                    f"control point ({i},{j},{k}) is not affine (x0 = 0)")
        for n, w in enumerate(self.weights):
            if ctx.is_zero(w):
                i, j, k = _corner_sites()[n]
                raise DegenerateWeights(f"weight ({i},{j},{k}) is zero")

    # -- scalar mode ---------------------------------------------------------

    def all_scalars(self):
        for p in self.points:
            yield from p.coords
        yield from self.weights

    def mode(self) -> str:
        return mode_of(self.all_scalars())

    def ctx(self) -> ScalarContext:
        return context_for(self.all_scalars())

    # -- indexed access ---------------------------------------------------------

    def point(self, i: int, j: int, k: int) -> Point:
        return self.points[net_index(i, j, k)]

    def weight(self, i: int, j: int, k: int) -> Scalar:
        return self.weights[net_index(i, j, k)]

    def with_weights(self, weights: Sequence[Scalar]) -> "ControlNet":
        return dataclasses.replace(self, weights=tuple(weights))

    # -- the map's coordinate polynomials ------------------------------------------

    def map_polynomials(self) -> tuple[MPoly, MPoly, MPoly, MPoly]:
        """The four tridegree-(1,1,1) coordinate polynomials of the map,
        expanded in the parameter coordinates (basis-aware)."""
        exact = self.mode() == "exact"
        polys = []
        for n in range(4):
            entries = {}
            for (i, j, k) in _corner_sites():
                c = self.weight(i, j, k) * self.point(i, j, k).coords[n]
                if self.basis == "monomial":
                    entries[(i, j, k)] = entries.get((i, j, k), 0) + c
                else:
                    for a in range(2):
                        for b in range(2):
                            for d in range(2):
                                t = (_BERNSTEIN_TO_MONOMIAL[i][a]
                                     * _BERNSTEIN_TO_MONOMIAL[j][b]
                                     * _BERNSTEIN_TO_MONOMIAL[k][d])
                                if t:
                                    site = (a, b, d)
                                    entries[site] = entries.get(site, 0) + t * c
            zero = Fraction(0) if exact else 0.0
            full = {site: entries.get(site, zero) for site in _corner_sites()}
            polys.append(MPoly.from_coeff_map((1, 1, 1), full))
        return tuple(polys)

    def monomial_reading(self) -> "ControlNet":
        """The same (weight, point) data read in the monomial basis.

        All boundary geometry and every scaled-weight tensor is computed on
        this reading; for a monomial net it is the net itself.
        """
        if self.basis == "monomial":
            return self
        return ControlNet(self.points, self.weights, "monomial")

    # -- boundary geometry (of the monomial reading) ----------------------------------

    def boundary_line(self, axis: int, a: int, b: int) -> Line:
        """Boundary edge of the given axis; (a, b) are the two fixed indices
        of the remaining axes in their natural order."""
        if axis == 0:
            p0, p1 = self.point(0, a, b), self.point(1, a, b)
        elif axis == 1:
            p0, p1 = self.point(a, 0, b), self.point(a, 1, b)
        else:
            p0, p1 = self.point(a, b, 0), self.point(a, b, 1)
        return Line(p0, p1)

    def boundary_lines(self, axis: int) -> dict[tuple[int, int], Line]:
        return {(a, b): self.boundary_line(axis, a, b)
                for a in range(2) for b in range(2)}

    def face_sites(self, axis: int, side: int):
        return [site for site in _corner_sites() if site[axis] == side]

    def face_points(self, axis: int, side: int) -> list[Point]:
        return [self.point(*site) for site in self.face_sites(axis, side)]

    def face_patch(self, axis: int, side: int) -> tuple[MPoly, ...]:
        """The weighted bilinear patch of a face, as four polynomials of
        tridegree zero along the face's axis."""
        exact = self.mode() == "exact"
        degree = tuple(0 if a == axis else 1 for a in range(3))
        polys = []
        for n in range(4):
            entries = {}
            for site in self.face_sites(axis, side):
                reduced = tuple(site[a] for a in range(3) if a != axis)
                idx = (0, reduced[0], reduced[1]) if axis == 0 else \
                      (reduced[0], 0, reduced[1]) if axis == 1 else \
                      (reduced[0], reduced[1], 0)
                entries[idx] = (self.weight(*site)
                                * self.point(*site).coords[n])
            polys.append(MPoly.from_coeff_map(degree, entries))
        return tuple(polys)


def permute_net(net: ControlNet, perm: Sequence[int]) -> ControlNet:
    """Relabel axes: new axis m is old axis perm[m]."""
    points = [None] * 8
    weights = [None] * 8
    for new_site in _corner_sites():
        old_site = [0, 0, 0]
        for m in range(3):
            old_site[perm[m]] = new_site[m]
        points[net_index(*new_site)] = net.point(*old_site)
        weights[net_index(*new_site)] = net.weight(*old_site)
    return ControlNet(tuple(points), tuple(weights), net.basis)


def unpermute_triple(triple: Sequence, perm: Sequence[int]) -> tuple:
    """Map a per-axis triple computed on a permuted net back to the
    original axis order: original[perm[m]] = permuted[m]."""
    out = [None, None, None]
    for m in range(3):
        out[perm[m]] = triple[m]
    return tuple(out)


# ---------------------------------------------------------------------------
# boundary surfaces


@dataclass(frozen=True)
class FaceSurface:
    """One boundary face: its span rank and the surface it sweeps."""

    axis: int
    side: int
    rank: int                 # rank of the 4x4 matrix of face points: 3 or 4
    form: P3Form              # linear (plane) or quadratic (quadric)

    @property
    def name(self) -> str:
        return FACE_NAMES[2 * self.axis + self.side]

    @property
    def is_plane(self) -> bool:
        return self.rank == 3

    def to_json(self):
        return {"face": self.name,
                "rank": self.rank,
                "kind": self.form.kind,
                "form": self.form.to_json()}


def _face_plane(pts, ctx) -> P3Form:
    """Plane through a face, scaled so the linear part leads with one.

    The gauge pivot is the first nonzero coefficient among (x1, x2, x3),
    never the constant term: a face of affine control points cannot lie in
    the plane at infinity, so the pivot exists, and pinning it keeps the
    triple determinants built from opposite face pairs free of spurious
    signs (the unit cube gets all-equal weights from all-equal factors).
    """
    plane = plane_through_points(pts, ctx)
    pivot = next((c for c in plane.coeffs[1:] if not ctx.is_zero(c)), None)
    if pivot is None:
        raise DegenerateFace("face plane degenerates to the plane at infinity")
    return P3Form.linear(tuple(c / pivot for c in plane.coeffs))


def boundary_surface(net: ControlNet, axis: int, side: int) -> FaceSurface:
    """The surface swept by one boundary face of the map.

    Rank-3 faces span a plane (weight-independent); rank-4 faces sweep the
    quadric through the weighted patch, which depends on the weights.
    """
    mono = net.monomial_reading()
    ctx = mono.ctx()
    pts = mono.face_points(axis, side)
    r = ctx.rank([p.coords for p in pts])
    if r <= 2:
        raise DegenerateFace(
            f"face {FACE_NAMES[2 * axis + side]} spans rank {r}")
    if not ctx.exact:
        margin = ctx.rank_margin([p.coords for p in pts])
        if margin < 10.0:
            raise AmbiguousClass(
                f"face {FACE_NAMES[2 * axis + side]} rank is ambiguous "
                f"(margin {margin:.2f})")
    if r == 3:
        return FaceSurface(axis, side, 3, _face_plane(pts, ctx))
    quad = quadric_through_patch(mono.face_patch(axis, side), ctx)
    return FaceSurface(axis, side, 4, quad)


def boundary_surfaces(net: ControlNet) -> list[FaceSurface]:
    return [boundary_surface(net, axis, side)
            for axis in range(3) for side in range(2)]


# ---------------------------------------------------------------------------
# nondegeneracy


@dataclass(frozen=True)
class NondegeneracyReport:
    ok: bool
    violations: tuple[str, ...]
    surfaces: tuple[FaceSurface, ...] | None

    def to_json(self):
        return {"ok": self.ok,
                "violations": list(self.violations),
                "surfaces": ([s.to_json() for s in self.surfaces]
                             if self.surfaces is not None else None)}


def check_nondegenerate(net: ControlNet) -> NondegeneracyReport:
    """Boundary nondegeneracy: the twelve boundary edges are pairwise
    distinct lines and the six faces sweep pairwise distinct smooth surfaces.
    """
    mono = net.monomial_reading()
    ctx = mono.ctx()
    violations = []
    lines = []
    for axis in range(3):
        for (a, b), ln in mono.boundary_lines(axis).items():
            tag = f"{AXIS_NAMES[axis]}[{a}{b}]"
            try:
                ln.check(ctx)
            except DegenerateConfiguration:
                violations.append(f"edge {tag} degenerates to a point")
                continue
            lines.append((tag, ln))
    for (t1, l1), (t2, l2) in itertools.combinations(lines, 2):
        if l1.same_as(l2, ctx):
            violations.append(f"edges {t1} and {t2} coincide")
    surfaces = None
    try:
        surfaces = tuple(boundary_surfaces(net))
    except (DegenerateFace, NonUniqueQuadric, AmbiguousClass) as exc:
        violations.append(str(exc))
    if surfaces is not None:
        for s in surfaces:
            if s.rank == 4 and quadric_rank(s.form, ctx) < 4:
                violations.append(f"face {s.name} sweeps a singular quadric")
        for s1, s2 in itertools.combinations(surfaces, 2):
            if s1.form.kind == s2.form.kind and \
                    ctx.proportional(s1.form.coeffs, s2.form.coeffs):
                violations.append(f"faces {s1.name} and {s2.name} coincide")
    return NondegeneracyReport(not violations, tuple(violations), surfaces)


# ---------------------------------------------------------------------------
# class geometry payloads


@dataclass(frozen=True)
class HexahedralGeometry:
    """Six boundary planes, in face order sigma0..upsilon1."""

    planes: tuple[P3Form, ...]

    def to_json(self):
        return {"planes": {FACE_NAMES[n]: p.to_json()
                           for n, p in enumerate(self.planes)}}


@dataclass(frozen=True)
class PyramidalGeometry:
    """One quadric axis whose boundary edges meet at an apex."""

    quadric_axis: int
    apex: Point
    base_plane: P3Form          # the plane through the two planar-axis lines
    axis_lines: tuple[Line, Line]   # intersections of the two planar face pairs

    def to_json(self):
        return {"quadric_axis": AXIS_NAMES[self.quadric_axis],
                "apex": self.apex.to_json(),
                "base_plane": self.base_plane.to_json(),
                "axis_lines": [l.to_json() for l in self.axis_lines]}


@dataclass(frozen=True)
class ScaffoldGeometry:
    """One planar axis; two rails r0, r1 crossing its face-pair line."""

    planar_axis: int
    spine: Line                  # intersection of the two planar faces
    rails: tuple[Line, Line]     # the two transversals of the planar axis' edges
    cross_lines: tuple[Line, Line]   # y (from u-edge meets), z (from t-edge meets)
    smooth_quadric: P3Form       # the unique quadric through spine and both cross lines

    def to_json(self):
        return {"planar_axis": AXIS_NAMES[self.planar_axis],
                "spine": self.spine.to_json(),
                "rails": [l.to_json() for l in self.rails],
                "cross_lines": [l.to_json() for l in self.cross_lines],
                "smooth_quadric": self.smooth_quadric.to_json()}


@dataclass(frozen=True)
class TripodGeometry:
    """Three concurrent axis lines plus a plane conic met by all edges."""

    axis_lines: tuple[Line, Line, Line]
    apex: Point
    span_planes: tuple[P3Form, P3Form, P3Form]  # plane(t,u), plane(s,u), plane(s,t)
    conic: Conic

    def to_json(self):
        return {"axis_lines": [l.to_json() for l in self.axis_lines],
                "apex": self.apex.to_json(),
                "span_planes": [p.to_json() for p in self.span_planes],
                "conic": self.conic.to_json()}


@dataclass(frozen=True)
class Classification:
    """Outcome of the point-geometry classification."""

    class_name: str                       # hexahedral | pyramidal | scaffold | tripod | unclassified
    degrees: tuple[int, int, int] | None  # per-axis inverse factor degrees
    axis: int | None                      # distinguished axis, class dependent
    faces: tuple[FaceSurface, ...]
    geometry: object | None
    diagnostics: tuple[str, ...] = ()

    def to_json(self):
        return {"class": self.class_name,
                "type": list(self.degrees) if self.degrees else None,
                "axis": AXIS_NAMES[self.axis] if self.axis is not None else None,
                "faces": [f.to_json() for f in self.faces],
                "geometry": (self.geometry.to_json()
                             if self.geometry is not None else None),
                "diagnostics": list(self.diagnostics)}


# ---------------------------------------------------------------------------
# classification


def classify(net: ControlNet) -> Classification:
    """Decide which birational class the control points can carry.

    The verdict uses only the points (weight-free): face ranks, edge-line
    incidences, and — for the three-quadric-axis case — the existence of a
    plane conic meeting all twelve edges, recovered exactly from a rank-one
    point in a 12x12 nullspace.  Weight-dependent data (quadric face forms)
    ride along in the face reports for downstream consumers.
    """
    mono = net.monomial_reading()
    ctx = mono.ctx()
    faces = tuple(boundary_surfaces(net))
    by_axis = {a: (faces[2 * a], faces[2 * a + 1]) for a in range(3)}
    diagnostics: list[str] = []
    quadric_axes = []
    for a in range(3):
        r0, r1 = by_axis[a][0].rank, by_axis[a][1].rank
        if r0 != r1:
            diagnostics.append(
                f"axis {AXIS_NAMES[a]} mixes a planar and a quadric face")
            return Classification("unclassified", None, None, faces, None,
                                  tuple(diagnostics))
        if r0 == 4:
            quadric_axes.append(a)

    if len(quadric_axes) == 0:
        geom = HexahedralGeometry(tuple(f.form for f in faces))
        return Classification("hexahedral", (1, 1, 1), None, faces, geom)

    if len(quadric_axes) == 1:
        return _classify_pyramidal(mono, ctx, faces, quadric_axes[0],
                                   diagnostics)

    if len(quadric_axes) == 2:
        planar_axis = next(a for a in range(3) if a not in quadric_axes)
        return _classify_scaffold(mono, ctx, faces, planar_axis, diagnostics)

    return _classify_tripod(mono, ctx, faces, diagnostics)


def classification_of(net: ControlNet) -> Classification:
    """The net's carried classification when present, else a fresh one.

    Construction outputs carry the structure payload they were built from;
    it stays authoritative in special positions (non-isolated selector
    lines) that the blind classifier cannot re-derive from points alone.
    The face forms are weight-dependent, so they are recomputed for the
    net's current weights rather than carried.
    """
    carried = getattr(net, "classification", None)
    if carried is None:
        return classify(net)
    return dataclasses.replace(carried, faces=tuple(boundary_surfaces(net)))


def _unclassified(faces, diagnostics) -> Classification:
    return Classification("unclassified", None, None, tuple(faces), None,
                          tuple(diagnostics))


def _classify_pyramidal(mono, ctx, faces, qaxis, diagnostics) -> Classification:
    lines = list(mono.boundary_lines(qaxis).values())
    apex = common_point_of_lines(lines, ctx)
    if apex is None:
        diagnostics.append(
            f"axis {AXIS_NAMES[qaxis]} is the only quadric axis but its "
            "edges are not concurrent")
        return _unclassified(faces, diagnostics)
    planar = [a for a in range(3) if a != qaxis]
    axis_lines = []
    for a in planar:
        f0, f1 = faces[2 * a], faces[2 * a + 1]
        try:
            axis_lines.append(line_of_planes(f0.form, f1.form, ctx))
        except RankError:
            diagnostics.append(f"the two {AXIS_NAMES[a]} faces coincide")
            return _unclassified(faces, diagnostics)
    for ln in axis_lines:
        if not ln.contains(apex, ctx):
            diagnostics.append("face-pair line misses the apex")
            return _unclassified(faces, diagnostics)
    try:
        base = plane_through_points(
            [axis_lines[0].a, axis_lines[0].b,
             next(p for p in (axis_lines[1].a, axis_lines[1].b)
                  if not axis_lines[0].contains(p, ctx))], ctx)
    except (RankError, StopIteration):
        diagnostics.append("the two face-pair lines do not span a plane")
        return _unclassified(faces, diagnostics)
    degrees = tuple(2 if a == qaxis else 1 for a in range(3))
    geom = PyramidalGeometry(qaxis, apex,
                             P3Form.linear(scale_first_one(base.coeffs, ctx)),
                             tuple(axis_lines))
    return Classification("pyramidal", degrees, qaxis, faces, geom)


def _classify_scaffold(mono, ctx, faces, paxis, diagnostics) -> Classification:
    f0, f1 = faces[2 * paxis], faces[2 * paxis + 1]
    try:
        spine = line_of_planes(f0.form, f1.form, ctx)
    except RankError:
        diagnostics.append("the two planar faces coincide")
        return _unclassified(faces, diagnostics)
    edges = list(mono.boundary_lines(paxis).values())
    try:
        res = transversals_of_four_lines(edges, ctx)
    except (ComplexTransversals, IrrationalIntersection,
            DegenerateConfiguration) as exc:
        diagnostics.append(f"rail computation failed: {exc.detail}")
        return _unclassified(faces, diagnostics)
    if res.infinite:
        diagnostics.append("the planar axis' edges admit infinitely many "
                           "transversals")
        return _unclassified(faces, diagnostics)
    if len(res.lines) != 2:
        diagnostics.append(
            f"expected two rails, found {len(res.lines)}")
        return _unclassified(faces, diagnostics)
    rails = tuple(sorted(res.lines, key=lambda l: l.sort_key()))
    for n, r in enumerate(rails):
        if not r.meets(spine, ctx):
            diagnostics.append(f"rail r{n} misses the spine")
            return _unclassified(faces, diagnostics)
    cross = _scaffold_cross_lines(mono, ctx, paxis, diagnostics)
    if cross is None:
        return _unclassified(faces, diagnostics)
    y_line, z_line = cross
    trio = [spine, y_line, z_line]
    if any(trio[a].meets(trio[b], ctx)
           for a in range(3) for b in range(a + 1, 3)):
        diagnostics.append("spine and cross lines are not pairwise skew")
        return _unclassified(faces, diagnostics)
    quad, dim = quadric_through_lines(trio, ctx)
    if dim != 1:
        diagnostics.append(
            f"{dim}-dimensional quadric family through spine/cross lines")
        return _unclassified(faces, diagnostics)
    if quadric_rank(quad, ctx) < 4:
        diagnostics.append("quadric through spine/cross lines is singular")
        return _unclassified(faces, diagnostics)
    degrees = tuple(1 if a == paxis else 2 for a in range(3))
    geom = ScaffoldGeometry(paxis, spine, rails, (y_line, z_line), quad)
    return Classification("scaffold", degrees, paxis, faces, geom)


def _scaffold_cross_lines(mono, ctx, paxis, diagnostics):
    """The two lines joining opposite in-face edge crossings.

    With the planar axis called s: the u-edges u_i0, u_i1 live in the plane
    face i and meet at a point Y_i; y joins Y_0 to Y_1.  The t-edges give z
    the same way.  (For other planar axes the roles permute accordingly.)
    """
    others = [a for a in range(3) if a != paxis]
    out = []
    for oa in others[::-1]:  # the farther axis' edges define y, the nearer z
        pts = []
        for side in range(2):
            pair = []
            for b in range(2):
                ln = _edge_with_indices(mono, oa, paxis, side, b)
                pair.append(ln)
            meet = pair[0].intersect(pair[1], ctx)
            if meet is None:
                diagnostics.append(
                    f"{AXIS_NAMES[oa]}-edges in face {side} do not meet")
                return None
            pts.append(meet)
        if pts[0].same_as(pts[1], ctx):
            diagnostics.append("cross-line endpoints coincide")
            return None
        out.append(Line(pts[0], pts[1]).check(ctx))
    return tuple(out)


def _edge_with_indices(mono, edge_axis, fixed_axis, fixed_val, other_val):
    """Boundary edge of edge_axis whose index along fixed_axis is fixed_val
    and along the remaining axis is other_val."""
    remaining = next(a for a in range(3) if a not in (edge_axis, fixed_axis))
    idx = {fixed_axis: fixed_val, remaining: other_val}
    fixed = [a for a in range(3) if a != edge_axis]
    a, b = idx[fixed[0]], idx[fixed[1]]
    return mono.boundary_line(edge_axis, a, b)


def _axis_from_meeting_pairs(edges, ctx) -> Line | None:
    """Candidate axis when the transversal family is infinite.

    On a smooth-quadric face two boundary edges of the same direction are
    skew, so only *opposite* edges can meet; each meeting pair spans a
    plane and the two planes cut out a common transversal of all four
    edges.  It is only a candidate: when a pair meets *on* the axis, the
    axis is a different (non-isolated) transversal, so every later stage
    must fully re-verify its incidences before trusting the line.
    """
    e00, e01, e10, e11 = (edges[0, 0], edges[0, 1], edges[1, 0], edges[1, 1])
    planes = []
    for l1, l2 in ((e00, e11), (e01, e10)):
        if l1.intersect(l2, ctx) is None:
            return None
        planes.append(span_plane(l1, l2, ctx))
    try:
        axis = line_of_planes(planes[0], planes[1], ctx)
    except RankError:
        return None
    if all(axis.meets(e, ctx) for e in edges.values()):
        return axis
    return None


def _classify_tripod(mono, ctx, faces, diagnostics) -> Classification:
    candidates = []
    for a in range(3):
        edge_map = mono.boundary_lines(a)
        edges = list(edge_map.values())
        try:
            res = transversals_of_four_lines(edges, ctx)
        except (ComplexTransversals, IrrationalIntersection,
                DegenerateConfiguration) as exc:
            diagnostics.append(
                f"axis {AXIS_NAMES[a]} transversals failed: {exc.detail}")
            return _unclassified(faces, diagnostics)
        if res.infinite or not res.lines:
            fallback = _axis_from_meeting_pairs(edge_map, ctx)
            if fallback is None:
                diagnostics.append(
                    f"axis {AXIS_NAMES[a]} has no isolated transversal pair")
                return _unclassified(faces, diagnostics)
            res = TransversalResult((fallback,), False, "meeting-pairs")
        candidates.append(res.lines)
    chosen = None
    for combo in itertools.product(*candidates):
        apex = common_point_of_lines(list(combo), ctx)
        if apex is not None:
            if chosen is not None:
                diagnostics.append("multiple concurrent transversal triples")
                return _unclassified(faces, diagnostics)
            chosen = (combo, apex)
    if chosen is None:
        diagnostics.append("no concurrent transversal triple")
        return _unclassified(faces, diagnostics)
    (s_line, t_line, u_line), apex = chosen
    try:
        pi1 = span_plane(t_line, u_line, ctx)
        pi2 = span_plane(s_line, u_line, ctx)
        pi3 = span_plane(s_line, t_line, ctx)
    except (RankError, DegenerateConfiguration):
        diagnostics.append("axis lines do not span planes pairwise")
        return _unclassified(faces, diagnostics)
    conic = _tripod_conic(mono, ctx, (s_line, t_line, u_line), apex,
                          (pi1, pi2, pi3), diagnostics)
    if conic is None:
        return _unclassified(faces, diagnostics)
    geom = TripodGeometry((s_line, t_line, u_line), apex, (pi1, pi2, pi3),
                          conic)
    return Classification("tripod", (2, 2, 2), None, faces, geom)


def _tripod_conic(mono, ctx, axis_lines, apex, span_planes, diagnostics
                  ) -> Conic | None:
    """The plane conic met by all twelve boundary edges.

    Every quadric through the three axis lines is a combination
    Q(w) = w1 p2 p3 + w2 p1 p3 + w3 p1 p2 of the span-plane products.  An
    edge of axis a meets its axis line at X and meets Q(w) again at a point
    Y(w) that is *linear* in w; asking all twelve Y(w) to lie on one plane p
    is bilinear in (p, w), hence linear in the 12 products p_n w_r.  The
    rank-one point of that nullspace hands back both the plane and the cone.
    """
    basis_quads = [sym_product(span_planes[1], span_planes[2]),
                   sym_product(span_planes[0], span_planes[2]),
                   sym_product(span_planes[0], span_planes[1])]
    rows = []
    edge_data = []
    for a in range(3):
        axis_line = axis_lines[a]
        for (idx, edge) in mono.boundary_lines(a).items():
            x = edge.intersect(axis_line, ctx)
            if x is None:
                diagnostics.append(
                    f"edge {AXIS_NAMES[a]}[{idx[0]}{idx[1]}] misses its "
                    "axis line")
                return None
            z = edge.a if not x.same_as(edge.a, ctx) else edge.b
            vecs = []
            for q in basis_quads:
                qz = q.value(z.coords)
                bxz = q.bilinear(x.coords, z.coords)
                vecs.append(tuple(qz * xc - 2 * bxz * zc
                                  for xc, zc in zip(x.coords, z.coords)))
            edge_data.append((a, idx, x, z, vecs))
            rows.append([vecs[r][n] for n in range(4) for r in range(3)])
    kernel = ctx.nullspace(rows, 12)
    if not kernel:
        diagnostics.append("no common conic plane (empty nullspace)")
        return None
    segre = _rank_one_in_span(kernel, ctx)
    if segre is None:
        segre = _conic_from_edge_meets(mono, ctx, basis_quads)
    if segre is None:
        diagnostics.append(
            f"conic nullspace (dim {len(kernel)}) has no rank-one point")
        return None
    pi_vec, omega = segre
    pi = P3Form.linear(scale_first_one(pi_vec, ctx))
    quad_coeffs = tuple(
        omega[0] * a + omega[1] * b + omega[2] * c
        for a, b, c in zip(basis_quads[0].coeffs, basis_quads[1].coeffs,
                           basis_quads[2].coeffs))
    scale = max((abs(float(x)) for x in quad_coeffs), default=0.0)
    if all(ctx.is_zero(x, scale if scale else 1.0) for x in quad_coeffs):
        diagnostics.append("conic cone degenerates to zero")
        return None
    quad = P3Form.quadratic(scale_first_one(quad_coeffs, ctx))
    if quadric_rank(quad, ctx) != 3:
        diagnostics.append("conic cone does not have rank 3")
        return None
    if not quadric_vertex(quad, ctx).same_as(apex, ctx):
        diagnostics.append("conic cone vertex is not the apex")
        return None
    sp = max((abs(float(c)) for c in apex.coords), default=1.0)
    if ctx.is_zero(pi.value(apex.coords), sp):
        diagnostics.append("conic plane passes through the apex")
        return None
    # verify the twelve traces
    for (a, idx, x, z, vecs) in edge_data:
        y = Point(tuple(sum(omega[r] * vecs[r][n] for r in range(3))
                        for n in range(4)))
        if y.is_zero(ctx):
            diagnostics.append(
                f"edge {AXIS_NAMES[a]}[{idx[0]}{idx[1]}] lies on the cone")
            return None
        sy = max(abs(float(c)) for c in y.coords)
        if not ctx.is_zero(pi.value(y.coords), sy):
            diagnostics.append(
                f"edge {AXIS_NAMES[a]}[{idx[0]}{idx[1]}] trace misses the "
                "conic plane")
            return None
    return Conic(pi, quad)


def _conic_from_edge_meets(mono, ctx, basis_quads):
    """Conic recovery in the fully special position.

    When both opposite edge pairs of every axis meet, each meet is the
    conic point the pair shares, so six conic points are known outright:
    the plane through them and the family member vanishing on them give the
    candidate pair directly.  The caller re-verifies all twelve traces, so
    a meet that is *not* a shared conic point can only lead to a rejected
    candidate, never a wrong classification.
    """
    pts = []
    for a in range(3):
        edges = mono.boundary_lines(a)
        for l1, l2 in ((edges[0, 0], edges[1, 1]),
                       (edges[0, 1], edges[1, 0])):
            x = l1.intersect(l2, ctx)
            if x is None:
                return None
            pts.append(x)
    rows = [p.coords for p in pts]
    if ctx.rank(rows) != 3:
        return None
    plane = ctx.nullspace(rows, 4)
    wrows = [[q.value(p.coords) for q in basis_quads] for p in pts]
    weights = ctx.nullspace(wrows, 3)
    if len(plane) != 1 or len(weights) != 1:
        return None
    return tuple(plane[0]), tuple(weights[0])


def _rank_one_in_span(kernel, ctx):
    """A rank-one 4x3 matrix in the span of nullspace vectors, factored as
    (column vector, row vector)."""

    def as_matrix(vec):
        return [[vec[3 * n + r] for r in range(3)] for n in range(4)]

    def factor(mat):
        if ctx.rank(mat) != 1:
            return None
        flat = [abs(float(mat[n][r])) for n in range(4) for r in range(3)]
        best = max(range(12), key=lambda q: flat[q])
        n0, r0 = divmod(best, 3)
        col = tuple(mat[n][r0] for n in range(4))
        row = tuple(mat[n0][r] / mat[n0][r0] for r in range(3))
        return col, row

    if len(kernel) == 1:
        return factor(as_matrix(kernel[0]))
    if len(kernel) == 2:
        m1, m2 = as_matrix(kernel[0]), as_matrix(kernel[1])
        # 2x2 minors of x*m1 + y*m2 are binary quadratics in (x, y)
        from .scalars import binary_quadratic_roots

        for rows_ in itertools.combinations(range(4), 2):
            for cols in itertools.combinations(range(3), 2):
                def minor(m):
                    return (m[rows_[0]][cols[0]] * m[rows_[1]][cols[1]]
                            - m[rows_[0]][cols[1]] * m[rows_[1]][cols[0]])

                def mixed(ma, mb):
                    return (ma[rows_[0]][cols[0]] * mb[rows_[1]][cols[1]]
                            + mb[rows_[0]][cols[0]] * ma[rows_[1]][cols[1]]
                            - ma[rows_[0]][cols[1]] * mb[rows_[1]][cols[0]]
                            - mb[rows_[0]][cols[1]] * ma[rows_[1]][cols[0]])

                a, b, c = minor(m1), mixed(m1, m2), minor(m2)
                roots = binary_quadratic_roots(a, b, c, ctx)
                if roots is None or roots == ["irrational"] or not roots:
                    continue
                for (x, y) in roots:
                    cand = [[x * m1[n][r] + y * m2[n][r] for r in range(3)]
                            for n in range(4)]
                    got = factor(cand)
                    if got is not None:
                        return got
        return None
    # higher-dimensional spans do not occur for honest tripods
    return None
