"""Generative procedures producing class-conforming control nets.

Each class of trilinear birational map has a geometric recipe: choose
boundary data (six planes; a pencil of concurrent lines; a spine with two
skew rails; or three concurrent axes tied together by a plane conic) and
derive the eight control points from incidences.  The functions here run
those recipes with exact precondition checks, classify the result, and
return the net together with its classification payload so downstream
weight synthesis does not re-derive the geometry.

The same generator data drives :func:`deform`: keyframes are interpolated
scalar-wise, every frame is rebuilt through its construction, and weights
are resynthesized from fixed rank-one factors, so each frame stays
birational for free.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .birationality import synthesize_weights
from .controlnet import Classification, ControlNet, TripodGeometry, classify
from .errors import (ClosureFailure, DegenerateConfiguration, FrameDegenerate,
                     InputError, NonAffineIntersection, NonConcurrentLines,
                     PlaneContainsSecant, PointAtApex, RankError,
                     TangencyDegeneracy)
from .geometry import (Conic, Line, Point, line_conic_points, line_of_planes,
                       line_plane_point, plane_through_line_and_point,
                       point_of_planes, quadric_rank, quadric_vertex,
                       span_plane)
from .mpoly import P3Form, sym_product
from .scalars import (ScalarContext, context_for, parse_scalar, primitive,
                      scalar_to_json, scale_first_one)

PLANE_KEYS = ("sigma0", "sigma1", "tau0", "tau1", "upsilon0", "upsilon1")
PAIR_KEYS = ("00", "01", "10", "11")


# ---------------------------------------------------------------------------
# JSON ingestion helpers (shared with the I/O layer)


def parse_point_json(data, what: str = "point") -> Point:
    if not isinstance(data, (list, tuple)) or len(data) != 4:
        raise InputError(f"{what} must be a list of 4 coordinates")
    return Point(tuple(parse_scalar(x) for x in data))


def parse_form_json(data, kind: str, what: str = "form") -> P3Form:
    n = 4 if kind == "linear" else 10
    if not isinstance(data, (list, tuple)) or len(data) != n:
        raise InputError(f"{what} must be a list of {n} coefficients")
    return P3Form(kind, tuple(parse_scalar(x) for x in data))


def parse_line_json(data, what: str = "line") -> Line:
    if isinstance(data, dict):
        data = data.get("points")
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise InputError(f"{what} must give two spanning points")
    line = Line(parse_point_json(data[0], f"{what}.a"),
                parse_point_json(data[1], f"{what}.b"))
    ctx = context_for(c for p in (line.a, line.b) for c in p.coords)
    return line.check(ctx)


def parse_conic_json(data, what: str = "conic") -> Conic:
    if not isinstance(data, dict) or "plane" not in data or "quadric" not in data:
        raise InputError(f'{what} must be {{"plane": [4], "quadric": [10]}}')
    return Conic(parse_form_json(data["plane"], "linear", f"{what}.plane"),
                 parse_form_json(data["quadric"], "quadratic",
                                 f"{what}.quadric"))


def _require(data: dict, key: str, what: str):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{what} needs a {key!r} field")
    return data[key]


# ---------------------------------------------------------------------------
# construction specs


@dataclass(frozen=True)
class HexahedralSpec:
    """Six boundary planes, ordered sigma0, sigma1, tau0, tau1, upsilon0,
    upsilon1."""

    planes: tuple[P3Form, ...]

    class_name = "hexahedral"

    def __post_init__(self):
        if len(self.planes) != 6 or any(p.kind != "linear"
                                        for p in self.planes):
            raise InputError("hexahedral spec needs 6 planes")

    @classmethod
    def from_json(cls, data: dict) -> "HexahedralSpec":
        planes = _require(data, "planes", "hexahedral spec")
        if isinstance(planes, dict):
            planes = [_require(planes, k, "planes") for k in PLANE_KEYS]
        if not isinstance(planes, (list, tuple)) or len(planes) != 6:
            raise InputError("hexahedral spec needs 6 planes")
        return cls(tuple(parse_form_json(p, "linear", f"plane {k}")
                         for k, p in zip(PLANE_KEYS, planes)))

    def to_json(self) -> dict:
        return {"class": self.class_name,
                "planes": {k: p.to_json()
                           for k, p in zip(PLANE_KEYS, self.planes)}}


@dataclass(frozen=True)
class PyramidalSpec:
    """An apex, four lines through it, and two affine coordinates per line.

    Line ``ij`` carries the control points P_ij0 and P_ij1 at the scalar
    coordinates ``params[ij]``: coordinate c names the point apex + c * d
    where d is the line's primitive direction, so c = 0 is exactly the
    apex.  The apex must be affine for that chart to cover the line.
    """

    apex: Point
    lines: tuple[Line, ...]         # u_00, u_01, u_10, u_11
    params: tuple[tuple, ...]       # ((c_ij0, c_ij1)) in the same order

    class_name = "pyramidal"

    def __post_init__(self):
        if len(self.lines) != 4 or len(self.params) != 4 \
                or any(len(p) != 2 for p in self.params):
            raise InputError(
                "pyramidal spec needs 4 lines and 4 coordinate pairs")

    @classmethod
    def from_json(cls, data: dict) -> "PyramidalSpec":
        apex = parse_point_json(_require(data, "apex", "pyramidal spec"),
                                "apex")
        lines = _require(data, "lines", "pyramidal spec")
        params = _require(data, "params", "pyramidal spec")
        if isinstance(lines, dict):
            lines = [_require(lines, k, "lines") for k in PAIR_KEYS]
        if isinstance(params, dict):
            params = [_require(params, k, "params") for k in PAIR_KEYS]
        if len(lines) != 4 or len(params) != 4:
            raise InputError("pyramidal spec needs 4 lines and 4 pairs")
        pairs = []
        for k, pair in zip(PAIR_KEYS, params):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InputError(f"params[{k}] must be a pair of scalars")
            pairs.append(tuple(parse_scalar(x) for x in pair))
        return cls(apex,
                   tuple(parse_line_json(l, f"line {k}")
                         for k, l in zip(PAIR_KEYS, lines)),
                   tuple(pairs))

    def to_json(self) -> dict:
        return {"class": self.class_name,
                "apex": self.apex.to_json(),
                "lines": {k: l.to_json()
                          for k, l in zip(PAIR_KEYS, self.lines)},
                "params": {k: [scalar_to_json(x) for x in p]
                           for k, p in zip(PAIR_KEYS, self.params)}}


@dataclass(frozen=True)
class ScaffoldSpec:
    """A spine line s, two skew rails meeting it, four cross lines s_jk
    meeting both rails, and two planes through the spine."""

    spine: Line
    rails: tuple[Line, Line]
    cross: tuple[Line, ...]         # s_00, s_01, s_10, s_11
    planes: tuple[P3Form, P3Form]   # Sigma_0, Sigma_1

    class_name = "scaffold"

    def __post_init__(self):
        if len(self.rails) != 2 or len(self.cross) != 4 \
                or len(self.planes) != 2:
            raise InputError(
                "scaffold spec needs 2 rails, 4 cross lines, 2 planes")

    @classmethod
    def from_json(cls, data: dict) -> "ScaffoldSpec":
        spine = parse_line_json(_require(data, "spine", "scaffold spec"),
                                "spine")
        rails = _require(data, "rails", "scaffold spec")
        if not isinstance(rails, (list, tuple)) or len(rails) != 2:
            raise InputError("scaffold spec needs 2 rails")
        cross = _require(data, "lines", "scaffold spec")
        if isinstance(cross, dict):
            cross = [_require(cross, k, "lines") for k in PAIR_KEYS]
        if len(cross) != 4:
            raise InputError("scaffold spec needs 4 cross lines")
        planes = _require(data, "planes", "scaffold spec")
        if isinstance(planes, dict):
            planes = [_require(planes, k, "planes")
                      for k in ("sigma0", "sigma1")]
        if not isinstance(planes, (list, tuple)) or len(planes) != 2:
            raise InputError("scaffold spec needs 2 planes")
        return cls(spine,
                   tuple(parse_line_json(r, f"rail {i}")
                         for i, r in enumerate(rails)),
                   tuple(parse_line_json(l, f"cross line {k}")
                         for k, l in zip(PAIR_KEYS, cross)),
                   tuple(parse_form_json(p, "linear", f"plane sigma{i}")
                         for i, p in enumerate(planes)))

    def to_json(self) -> dict:
        return {"class": self.class_name,
                "spine": self.spine.to_json(),
                "rails": [r.to_json() for r in self.rails],
                "lines": {k: l.to_json()
                          for k, l in zip(PAIR_KEYS, self.cross)},
                "planes": {"sigma0": self.planes[0].to_json(),
                           "sigma1": self.planes[1].to_json()}}


@dataclass(frozen=True)
class TripodSpec:
    """Three concurrent axes, a plane conic meeting all of them, a seed
    control point, and the three control points adjacent to the seed."""

    apex: Point
    axes: tuple[Line, Line, Line]   # s, t, u
    conic: Conic
    p000: Point
    seeds: tuple[Point, Point, Point]   # P_100, P_010, P_001

    class_name = "tripod"

    def __post_init__(self):
        if len(self.axes) != 3 or len(self.seeds) != 3:
            raise InputError("tripod spec needs 3 axes and 3 seed points")

    @classmethod
    def from_json(cls, data: dict) -> "TripodSpec":
        apex = parse_point_json(_require(data, "apex", "tripod spec"), "apex")
        lines = _require(data, "lines", "tripod spec")
        if isinstance(lines, dict):
            lines = [_require(lines, k, "lines") for k in ("s", "t", "u")]
        if len(lines) != 3:
            raise InputError("tripod spec needs the 3 axis lines s, t, u")
        conic = parse_conic_json(_require(data, "conic", "tripod spec"))
        if "plane" in data:
            plane = parse_form_json(data["plane"], "linear", "plane")
            ctx = context_for(plane.coeffs + conic.plane.coeffs)
            if not ctx.proportional(plane.coeffs, conic.plane.coeffs):
                raise InputError(
                    "the plane field disagrees with the conic's plane")
        points = _require(data, "points", "tripod spec")
        if isinstance(points, dict):
            points = [_require(points, k, "points")
                      for k in ("100", "010", "001")]
        if len(points) != 3:
            raise InputError("tripod spec needs the points P100, P010, P001")
        return cls(apex,
                   tuple(parse_line_json(l, f"axis {k}")
                         for k, l in zip("stu", lines)),
                   conic,
                   parse_point_json(_require(data, "p000", "tripod spec"),
                                    "p000"),
                   tuple(parse_point_json(p, f"seed point {k}")
                         for k, p in zip(("100", "010", "001"), points)))

    def to_json(self) -> dict:
        return {"class": self.class_name,
                "apex": self.apex.to_json(),
                "lines": {k: l.to_json()
                          for k, l in zip("stu", self.axes)},
                "plane": self.conic.plane.to_json(),
                "conic": self.conic.to_json(),
                "p000": self.p000.to_json(),
                "points": {k: p.to_json()
                           for k, p in zip(("100", "010", "001"),
                                           self.seeds)}}


ConstructionSpec = (HexahedralSpec | PyramidalSpec | ScaffoldSpec
                    | TripodSpec)

_SPEC_TYPES = {s.class_name: s for s in
               (HexahedralSpec, PyramidalSpec, ScaffoldSpec, TripodSpec)}


def parse_construction_spec(data: dict) -> ConstructionSpec:
    """Parse a {"class": ..., ...} generator document."""
    name = _require(data, "class", "construction spec")
    if name not in _SPEC_TYPES:
        raise InputError(f"unknown construction class {name!r}")
    return _SPEC_TYPES[name].from_json(data)


# ---------------------------------------------------------------------------
# constructed nets


@dataclass(frozen=True)
class ConstructedNet(ControlNet):
    """A control net plus the classification its construction guarantees."""

    classification: Classification | None = None


def _affine_point(p: Point, ctx: ScalarContext, what: str) -> Point:
    if p.is_infinite(ctx):
        raise NonAffineIntersection(f"{what} is a point at infinity")
    return Point(tuple(c / p.coords[0] for c in p.coords))


def _assemble(points: dict, ctx, expected: str, diagnostics: str,
              builder=None) -> ConstructedNet:
    """Build the net, classify it, and attach its structure payload.

    ``builder(net, faces)`` supplies a Classification from the
    construction's own incidence data.  It covers special positions where
    the blind classifier cannot re-derive a witness (the selector lines are
    not isolated there), which the construction itself resolves because it
    knows the structure it was asked to realise.
    """
    one = Fraction(1) if ctx.exact else 1.0
    net = ControlNet(tuple(points[site] for site in
                           [(i, j, k) for i in range(2) for j in range(2)
                            for k in range(2)]),
                     (one,) * 8)
    cls = classify(net)
    if cls.class_name == "unclassified" and builder is not None:
        carried = builder(net, cls.faces)
        if carried is not None:
            cls = carried
    if cls.class_name != expected:
        raise DegenerateConfiguration(
            f"{diagnostics} produced a {cls.class_name} net, not {expected}"
            + ("; " + "; ".join(cls.diagnostics) if cls.diagnostics else ""))
    return ConstructedNet(net.points, net.weights, net.basis, cls)


def _direction(line: Line, ctx: ScalarContext) -> tuple:
    """Primitive coordinates of the line's point at infinity."""
    a, b = line.a.coords, line.b.coords
    d = tuple(a[0] * b[n] - b[0] * a[n] for n in range(4))
    if all(ctx.is_zero(c) for c in d):
        raise DegenerateConfiguration("line lies in the plane at infinity")
    return primitive(d)


def _cone_with_vertex(conic: Conic, apex: Point, ctx: ScalarContext
                      ) -> P3Form | None:
    """The quadric cone over the conic with its vertex at the apex.

    Among the quadrics ``q + pi * l`` cutting the conic out of its plane,
    exactly one has a singular point at an apex off the plane: the linear
    form ``l`` solves ``grad(q + pi*l)(apex) = 0``, a nonsingular 4x4
    system whenever ``pi(apex) != 0``.
    """
    a = apex.coords
    pia = conic.plane.value(a)
    pv = conic.plane.coeffs
    m = conic.quadric.matrix()
    grad = [2 * sum(m[n][k] * a[k] for k in range(4)) for n in range(4)]
    rows = [[(pia if n == k else 0) + pv[n] * a[k] for k in range(4)]
            for n in range(4)]
    try:
        lin = ctx.solve(rows, [-g for g in grad])
    except RankError:
        return None
    shift = sym_product(conic.plane, P3Form.linear(lin))
    coeffs = tuple(qc + sc for qc, sc in
                   zip(conic.quadric.coeffs, shift.coeffs))
    scale = max((abs(float(x)) for x in coeffs), default=0.0)
    if all(ctx.is_zero(x, scale if scale else 1.0) for x in coeffs):
        return None
    cone = P3Form.quadratic(scale_first_one(coeffs, ctx))
    if quadric_rank(cone, ctx) != 3:
        return None
    if not quadric_vertex(cone, ctx).same_as(apex, ctx):
        return None
    return cone


# ---------------------------------------------------------------------------
# the four constructions


def construct_hexahedral(spec: HexahedralSpec) -> ConstructedNet:
    """Eight points cut out by two planes per parameter direction.

    P_ijk is the intersection of the i-th sigma plane, the j-th tau plane,
    and the k-th upsilon plane; every triple intersection must be a single
    affine point.
    """
    ctx = context_for(c for p in spec.planes for c in p.coeffs)
    for n1 in range(6):
        for n2 in range(n1 + 1, 6):
            if ctx.proportional(spec.planes[n1].coeffs,
                                spec.planes[n2].coeffs):
                raise DegenerateConfiguration(
                    f"planes {PLANE_KEYS[n1]} and {PLANE_KEYS[n2]} coincide")
    sigma, tau, upsilon = (spec.planes[0:2], spec.planes[2:4],
                           spec.planes[4:6])
    points = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                try:
                    p = point_of_planes(sigma[i], tau[j], upsilon[k], ctx)
                except Exception as exc:
                    raise DegenerateConfiguration(
                        f"planes {PLANE_KEYS[i]}, {PLANE_KEYS[2 + j]}, "
                        f"{PLANE_KEYS[4 + k]} do not meet in a single point"
                    ) from exc
                points[i, j, k] = _affine_point(
                    p, ctx, f"intersection P{i}{j}{k}")
    return _assemble(points, ctx, "hexahedral", "the plane family")


def construct_pyramidal(spec: PyramidalSpec) -> ConstructedNet:
    """Two points on each of four concurrent lines.

    The four lines must be pairwise distinct and all pass through the apex;
    the scalar coordinates place P_ij0 and P_ij1 along line ij away from
    the apex (coordinate 0 is the apex itself and is rejected).
    """
    ctx = context_for([c for c in spec.apex.coords]
                      + [c for l in spec.lines
                         for p in (l.a, l.b) for c in p.coords]
                      + [x for p in spec.params for x in p])
    if spec.apex.is_infinite(ctx):
        raise DegenerateConfiguration(
            "the apex must be affine to carry scalar line coordinates")
    apex = _affine_point(spec.apex, ctx, "apex")
    for n, line in enumerate(spec.lines):
        if not line.contains(spec.apex, ctx):
            raise NonConcurrentLines(
                f"line {PAIR_KEYS[n]} does not pass through the apex")
    for n1 in range(4):
        for n2 in range(n1 + 1, 4):
            if spec.lines[n1].same_as(spec.lines[n2], ctx):
                raise DegenerateConfiguration(
                    f"lines {PAIR_KEYS[n1]} and {PAIR_KEYS[n2]} coincide")
    points = {}
    for n, (i, j) in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)]):
        d = _direction(spec.lines[n], ctx)
        c0, c1 = spec.params[n]
        if ctx.is_zero(c0) or ctx.is_zero(c1):
            raise PointAtApex(
                f"coordinate 0 on line {PAIR_KEYS[n]} is the apex")
        if ctx.is_zero(c0 - c1, scale=max(abs(float(c0)), abs(float(c1)))):
            raise DegenerateConfiguration(
                f"the two points on line {PAIR_KEYS[n]} coincide")
        for k, c in ((0, c0), (1, c1)):
            points[i, j, k] = Point(tuple(
                a + c * dd for a, dd in zip(apex.coords, d)))
    return _assemble(points, ctx, "pyramidal", "the line pencil")


def construct_scaffold(spec: ScaffoldSpec) -> ConstructedNet:
    """Eight points cut on four cross lines by two planes through a spine.

    The rails must be skew and both meet the spine; every cross line meets
    both rails; the planes contain the spine but neither rail.  P_ijk is
    plane i meeting cross line jk.
    """
    ctx = context_for([c for l in (spec.spine,) + spec.rails + spec.cross
                       for p in (l.a, l.b) for c in p.coords]
                      + [c for p in spec.planes for c in p.coeffs])
    r0, r1 = spec.rails
    if r0.same_as(r1, ctx) or r0.meets(r1, ctx):
        raise DegenerateConfiguration("the rails must be skew")
    for n, r in enumerate(spec.rails):
        if not r.meets(spec.spine, ctx):
            raise DegenerateConfiguration(
                f"rail {n} does not meet the spine")
    for n, line in enumerate(spec.cross):
        for m, r in enumerate(spec.rails):
            if not line.meets(r, ctx):
                raise DegenerateConfiguration(
                    f"cross line {PAIR_KEYS[n]} does not meet rail {m}")
    for n1 in range(4):
        for n2 in range(n1 + 1, 4):
            if spec.cross[n1].same_as(spec.cross[n2], ctx):
                raise DegenerateConfiguration(
                    f"cross lines {PAIR_KEYS[n1]} and {PAIR_KEYS[n2]} "
                    "coincide")
    for i, plane in enumerate(spec.planes):
        for q in (spec.spine.a, spec.spine.b):
            sp = max(abs(float(c)) for c in q.coords)
            if not ctx.is_zero(plane.value(q.coords), sp):
                raise DegenerateConfiguration(
                    f"plane sigma{i} does not contain the spine")
        for m, r in enumerate(spec.rails):
            va, vb = plane.value(r.a.coords), plane.value(r.b.coords)
            sp = max(abs(float(c)) for p in (r.a, r.b) for c in p.coords)
            if ctx.is_zero(va, sp) and ctx.is_zero(vb, sp):
                raise PlaneContainsSecant(
                    f"plane sigma{i} contains rail {m}")
    if ctx.proportional(spec.planes[0].coeffs, spec.planes[1].coeffs):
        raise DegenerateConfiguration("the two spine planes coincide")
    points = {}
    for n, (j, k) in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)]):
        for i in range(2):
            p = line_plane_point(spec.cross[n], spec.planes[i], ctx)
            if p is None:
                raise DegenerateConfiguration(
                    f"cross line {PAIR_KEYS[n]} lies inside plane sigma{i}")
            points[i, j, k] = _affine_point(p, ctx, f"point P{i}{j}{k}")
    return _assemble(points, ctx, "scaffold", "the scaffold frame")


def _second_conic_point(p: Point, axis: Line, conic: Conic,
                        ctx: ScalarContext, what: str) -> Line:
    """The unique line through ``p`` meeting ``axis`` and the conic at
    distinct points: span p with the axis, cut the conic with the trace of
    that plane, and drop the point the axis already accounts for."""
    q1 = line_plane_point(axis, conic.plane, ctx)
    if q1 is None:
        raise DegenerateConfiguration(f"axis of {what} lies in the "
                                      "conic's plane")
    try:
        h = plane_through_line_and_point(axis, p, ctx)
    except Exception as exc:
        raise DegenerateConfiguration(
            f"{what}: the seed point lies on its axis") from exc
    trace = line_of_planes(h, conic.plane, ctx)
    hits = line_conic_points(trace, conic, ctx)
    others = [q for q in hits if not q.same_as(q1, ctx)]
    if not others:
        raise TangencyDegeneracy(
            f"{what}: the plane trace is tangent to the conic")
    if len(others) == 2 or len(hits) != 2:
        raise DegenerateConfiguration(
            f"{what}: the conic does not pass through the axis trace")
    return Line(p, others[0]).check(ctx)


def construct_tripod(spec: TripodSpec) -> ConstructedNet:
    """Grow all eight points from one seed along conic-guided lines.

    From each known point, the line toward an axis is forced: it must meet
    the axis and the conic at distinct points.  Three rounds of that rule
    produce the remaining points, and the three final lines must close up
    at a single common point P_111.
    """
    ctx = context_for([c for c in spec.apex.coords]
                      + [c for l in spec.axes
                         for p in (l.a, l.b) for c in p.coords]
                      + list(spec.conic.plane.coeffs)
                      + list(spec.conic.quadric.coeffs)
                      + [c for p in (spec.p000,) + spec.seeds
                         for c in p.coords])
    s, t, u = spec.axes
    for k, line in zip("stu", spec.axes):
        if not line.contains(spec.apex, ctx):
            raise NonConcurrentLines(
                f"axis {k} does not pass through the apex")
    for k1 in range(3):
        for k2 in range(k1 + 1, 3):
            if spec.axes[k1].same_as(spec.axes[k2], ctx):
                raise DegenerateConfiguration(
                    f"axes {'stu'[k1]} and {'stu'[k2]} coincide")
    plane = spec.conic.plane
    sp = max(abs(float(c)) for c in spec.apex.coords)
    if ctx.is_zero(plane.value(spec.apex.coords), sp):
        raise DegenerateConfiguration("the apex lies in the conic's plane")
    for k, line in zip("stu", spec.axes):
        va, vb = plane.value(line.a.coords), plane.value(line.b.coords)
        sp = max(abs(float(c)) for p in (line.a, line.b) for c in p.coords)
        if ctx.is_zero(va, sp) and ctx.is_zero(vb, sp):
            raise DegenerateConfiguration(
                f"the conic's plane contains axis {k}")
        q = line_plane_point(line, plane, ctx)
        if not spec.conic.contains(q, ctx):
            raise DegenerateConfiguration(
                f"the conic misses the trace of axis {k}")
    seeds = {(0, 0, 0): spec.p000, (1, 0, 0): spec.seeds[0],
             (0, 1, 0): spec.seeds[1], (0, 0, 1): spec.seeds[2]}
    for site, p in seeds.items():
        name = "P" + "".join(map(str, site))
        for k, line in zip("stu", spec.axes):
            if line.contains(p, ctx):
                raise DegenerateConfiguration(f"{name} lies on axis {k}")
        sp = max(abs(float(c)) for c in p.coords)
        if ctx.is_zero(plane.value(p.coords), sp):
            raise DegenerateConfiguration(
                f"{name} lies in the conic's plane")
    for s1 in seeds:
        for s2 in seeds:
            if s1 < s2 and seeds[s1].same_as(seeds[s2], ctx):
                raise DegenerateConfiguration(
                    "two seed control points coincide")
    points = {site: _affine_point(p, ctx, "P" + "".join(map(str, site)))
              for site, p in seeds.items()}

    def grow(site, axis_line, what):
        return _second_conic_point(points[site], axis_line, conic=spec.conic,
                                   ctx=ctx, what=what)

    s00 = grow((0, 0, 0), s, "line s00")
    t00 = grow((0, 0, 0), t, "line t00")
    u00 = grow((0, 0, 0), u, "line u00")
    for site, line, name in (((1, 0, 0), s00, "s00"),
                             ((0, 1, 0), t00, "t00"),
                             ((0, 0, 1), u00, "u00")):
        if not line.contains(points[site], ctx):
            raise DegenerateConfiguration(
                "P" + "".join(map(str, site))
                + f" does not lie on boundary line {name}")
    t10 = grow((1, 0, 0), t, "line t10")
    u10 = grow((1, 0, 0), u, "line u10")
    s10 = grow((0, 1, 0), s, "line s10")
    u01 = grow((0, 1, 0), u, "line u01")
    s01 = grow((0, 0, 1), s, "line s01")
    t01 = grow((0, 0, 1), t, "line t01")
    for site, (l1, l2, what) in {
            (0, 1, 1): (t01, u01, "t01 and u01"),
            (1, 0, 1): (s01, u10, "s01 and u10"),
            (1, 1, 0): (s10, t10, "s10 and t10")}.items():
        p = l1.intersect(l2, ctx)
        if p is None:
            raise ClosureFailure(
                f"boundary lines {what} do not meet; "
                "the seed points are inconsistent")
        points[site] = _affine_point(p, ctx, "P" + "".join(map(str, site)))
    s11 = grow((0, 1, 1), s, "line s11")
    t11 = grow((1, 0, 1), t, "line t11")
    u11 = grow((1, 1, 0), u, "line u11")
    p111 = s11.intersect(t11, ctx)
    if p111 is None or not u11.contains(p111, ctx):
        raise ClosureFailure(
            "the final boundary lines s11, t11, u11 are not concurrent; "
            f"s11 = {s11}, t11 = {t11}, u11 = {u11}")
    points[1, 1, 1] = _affine_point(p111, ctx, "P111")

    def carried_structure(net, faces):
        # Special positions (edges meeting in pairs) leave the classifier
        # without isolated selector lines; the construction already knows
        # and has verified the structure, so hand it over directly.
        if any(f.rank != 4 for f in faces):
            return None
        try:
            spans = (span_plane(t, u, ctx), span_plane(s, u, ctx),
                     span_plane(s, t, ctx))
        except (RankError, DegenerateConfiguration):
            return None
        cone = _cone_with_vertex(spec.conic, spec.apex, ctx)
        if cone is None:
            return None
        pi = P3Form.linear(scale_first_one(spec.conic.plane.coeffs, ctx))
        geom = TripodGeometry((s, t, u), spec.apex, spans, Conic(pi, cone))
        return Classification("tripod", (2, 2, 2), None, faces, geom,
                              ("structure carried from construction data",))

    return _assemble(points, ctx, "tripod", "the tripod frame",
                     builder=carried_structure)


_CONSTRUCTORS = {"hexahedral": construct_hexahedral,
                 "pyramidal": construct_pyramidal,
                 "scaffold": construct_scaffold,
                 "tripod": construct_tripod}


def construct(spec: ConstructionSpec) -> ConstructedNet:
    """Dispatch a construction spec to its class procedure."""
    return _CONSTRUCTORS[spec.class_name](spec)


# ---------------------------------------------------------------------------
# deformation


def _lerp_json(a, b, t):
    """Structural linear interpolation of two generator payloads."""
    if isinstance(a, dict) and isinstance(b, dict):
        if a.keys() != b.keys():
            raise InputError("keyframe payloads have different shapes")
        return {k: _lerp_json(a[k], b[k], t) for k in a}
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        if len(a) != len(b):
            raise InputError("keyframe payloads have different shapes")
        return [_lerp_json(x, y, t) for x, y in zip(a, b)]
    xa, xb = parse_scalar(a), parse_scalar(b)
    return scalar_to_json(xa + t * (xb - xa))


def deform(keyframes, factors, n: int, class_name: str | None = None
           ) -> list[ControlNet]:
    """Rebuild a birational net at ``n`` uniform times between keyframes.

    Parameters
    ----------
    keyframes : sequence of (time, generators)
        Generators are either construction specs or raw generator JSON
        payloads; all must belong to one class.  Times must strictly
        increase.
    factors : three scalar pairs
        The rank-one factors held fixed across the whole deformation;
        weights are resynthesized at every frame as in the interactive
        editing loop, so each frame is birational by construction.
    n : int
        Number of frames, uniformly spaced over the keyframe time span.
    class_name : str, optional
        Required when the generators are raw payloads without class tags.

    Returns
    -------
    list of ControlNet
        One synthesized-weight net per frame.

    Raises
    ------
    FrameDegenerate
        If an interpolated frame violates its construction's preconditions
        (the frame index is reported).
    """
    if len(keyframes) < 2:
        raise InputError("need at least two keyframes")
    if n < 1:
        raise InputError("need at least one frame")
    frames_in = []
    for tv, gens in keyframes:
        if not isinstance(gens, dict):
            gens = gens.to_json()
        name = gens.get("class", class_name)
        if class_name is None:
            class_name = name
        if name != class_name:
            raise InputError("keyframes mix construction classes")
        payload = {k: v for k, v in gens.items() if k != "class"}
        frames_in.append((parse_scalar(tv), payload))
    if class_name not in _SPEC_TYPES:
        raise InputError(f"unknown construction class {class_name!r}")
    times = [tv for tv, _ in frames_in]
    if any(t1 >= t2 for t1, t2 in zip(times, times[1:])):
        raise InputError("keyframe times must strictly increase")
    nets = []
    for m in range(n):
        if n == 1:
            tm = times[0]
        else:
            tm = times[0] + (times[-1] - times[0]) * Fraction(m, n - 1)
        seg = max(i for i in range(len(times)) if times[i] <= tm
                  or i == 0)
        seg = min(seg, len(times) - 2)
        t0, t1 = times[seg], times[seg + 1]
        lam = (tm - t0) / (t1 - t0)
        payload = _lerp_json(frames_in[seg][1], frames_in[seg + 1][1], lam)
        payload["class"] = class_name
        try:
            built = construct(parse_construction_spec(payload))
            nets.append(synthesize_weights(built, factors,
                                           built.classification))
        except FrameDegenerate:
            raise
        except InputError:
            raise
        except Exception as exc:
            raise FrameDegenerate(m, f"frame {m}: {exc}") from exc
    return nets


def deform_from_json(doc: dict) -> list[ControlNet]:
    """Run :func:`deform` from its JSON document form.

    The document reads ``{"class": ..., "factors": {"a": [2], "b": [2],
    "c": [2]}, "keyframes": [{"t": ..., "generators": {...}}, ...],
    "frames": n}``.
    """
    name = _require(doc, "class", "deformation")
    raw = _require(doc, "factors", "deformation")
    if isinstance(raw, dict):
        raw = [_require(raw, k, "factors") for k in "abc"]
    if len(raw) != 3 or any(len(p) != 2 for p in raw):
        raise InputError("factors must be three pairs")
    factors = [tuple(parse_scalar(x) for x in p) for p in raw]
    frames = _require(doc, "frames", "deformation")
    if not isinstance(frames, int) or isinstance(frames, bool):
        raise InputError("frames must be an integer")
    keyframes = []
    for kf in _require(doc, "keyframes", "deformation"):
        keyframes.append((_require(kf, "t", "keyframe"),
                          _require(kf, "generators", "keyframe")))
    return deform(keyframes, factors, frames, name)
