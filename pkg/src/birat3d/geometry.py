"""Projective geometry of P^3: points, lines, planes, quadrics, conics.

Planes are linear :class:`~birat3d.mpoly.P3Form`s and quadric surfaces are
quadratic ones; this module adds points, lines (as point spans with Pluecker
coordinates), plane conics, and the constructive operations the control-net
pipeline is built from: planes through point sets, quadrics through patches
and line triples, common transversals of four lines, splitting rank-2
quadrics, and degenerate members of quadric pencils.

All operations are mode-aware through a :class:`~birat3d.scalars.ScalarContext`;
representative vectors of planes and quadrics are normalized so their first
nonzero coefficient is 1 (the package-wide convention that makes pairing
values reproducible).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (ComplexSplit, ComplexTransversals, DegenerateConfiguration,
                     EmptyIntersection, InputError, IrrationalIntersection,
                     IrrationalSplit, NonUniqueQuadric, RankError)
from .mpoly import MPoly, P3Form, QUAD_ORDER
from .scalars import (Scalar, ScalarContext, binary_quadratic_roots,
                      context_for, fraction_sqrt, primitive, scale_first_one,
                      scalar_to_json)


@dataclass(frozen=True)
class Point:
    """A point of P^3 given by homogeneous coordinates."""

    coords: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coords) != 4:
            raise InputError("a point needs 4 homogeneous coordinates")

    def is_zero(self, ctx: ScalarContext) -> bool:
        scale = max((abs(float(c)) for c in self.coords), default=0.0)
        return all(ctx.is_zero(c, scale) for c in self.coords)

    def is_infinite(self, ctx: ScalarContext) -> bool:
        scale = max((abs(float(c)) for c in self.coords), default=0.0)
        return ctx.is_zero(self.coords[0], scale)

    def affine(self, ctx: ScalarContext) -> tuple[Scalar, ...]:
        """Coordinates rescaled to x0 = 1 (the chart every net lives in)."""
        if self.is_infinite(ctx):
            raise InputError(f"point at infinity has no affine chart: {self}")
        x0 = self.coords[0]
        return tuple(c / x0 for c in self.coords)

    def same_as(self, other: "Point", ctx: ScalarContext) -> bool:
        return ctx.proportional(self.coords, other.coords)

    def to_json(self):
        return [scalar_to_json(c) for c in self.coords]

    def __str__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


def point_combination(a: Point, ca: Scalar, b: Point, cb: Scalar) -> Point:
    return Point(tuple(ca * x + cb * y for x, y in zip(a.coords, b.coords)))


def wedge3(a: Sequence[Scalar], b: Sequence[Scalar], c: Sequence[Scalar]
           ) -> tuple:
    """The covector v with <v, x> = det[x; a; b; c].

    Applied to three points it is the plane through them; applied to three
    plane covectors it is (dually) their common point.
    """
    rows = (a, b, c)

    def minor(drop: int) -> Scalar:
        cols = [n for n in range(4) if n != drop]
        m = [[rows[r][cols[cc]] for cc in range(3)] for r in range(3)]
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    return tuple((minor(n) if n % 2 == 0 else -minor(n)) for n in range(4))


def plane_through_points(points: Sequence[Point], ctx: ScalarContext) -> P3Form:
    """The unique plane through a rank-3 point set.

    Raises
    ------
    RankError
        If the points span too little (a line) or too much (all of P^3).
    """
    rows = [p.coords for p in points]
    r = ctx.rank(rows)
    if r != 3:
        raise RankError(f"point set has rank {r}, expected 3")
    basis = ctx.nullspace(rows, 4)
    if len(basis) != 1:
        raise RankError("plane is not unique")
    return P3Form.linear(scale_first_one(basis[0], ctx))


def point_of_planes(p1: P3Form, p2: P3Form, p3: P3Form, ctx: ScalarContext
                    ) -> Point:
    """Intersection point of three independent planes."""
    rows = [p1.coeffs, p2.coeffs, p3.coeffs]
    if ctx.rank(rows) != 3:
        raise RankError("planes are not independent")
    basis = ctx.nullspace(rows, 4)
    return Point(basis[0])


@dataclass(frozen=True)
class Line:
    """A line of P^3 spanned by two distinct points."""

    a: Point
    b: Point

    def check(self, ctx: ScalarContext) -> "Line":
        if ctx.rank([self.a.coords, self.b.coords]) != 2:
            raise DegenerateConfiguration(
                f"points {self.a} and {self.b} do not span a line")
        return self

    def plucker(self) -> tuple:
        x, y = self.a.coords, self.b.coords
        return (x[0] * y[1] - x[1] * y[0],
                x[0] * y[2] - x[2] * y[0],
                x[0] * y[3] - x[3] * y[0],
                x[1] * y[2] - x[2] * y[1],
                x[1] * y[3] - x[3] * y[1],
                x[2] * y[3] - x[3] * y[2])

    def contains(self, p: Point, ctx: ScalarContext) -> bool:
        return ctx.rank([self.a.coords, self.b.coords, p.coords]) == 2

    def same_as(self, other: "Line", ctx: ScalarContext) -> bool:
        return ctx.proportional(self.plucker(), other.plucker())

    def meets(self, other: "Line", ctx: ScalarContext) -> bool:
        d = ctx.det([self.a.coords, self.b.coords,
                     other.a.coords, other.b.coords])
        scale = max((abs(float(c)) for p in (self.a, self.b, other.a, other.b)
                     for c in p.coords), default=1.0) ** 4
        return ctx.is_zero(d, scale)

    def intersect(self, other: "Line", ctx: ScalarContext) -> Point | None:
        """The common point, or None when the lines are skew.

        Raises
        ------
        DegenerateConfiguration
            If the lines coincide.
        """
        rows = [[self.a.coords[n], self.b.coords[n],
                 -other.a.coords[n], -other.b.coords[n]] for n in range(4)]
        kernel = ctx.nullspace(rows, 4)
        if not kernel:
            return None
        if len(kernel) > 1:
            raise DegenerateConfiguration("lines coincide")
        ca, cb = kernel[0][0], kernel[0][1]
        pt = point_combination(self.a, ca, self.b, cb)
        if pt.is_zero(ctx):
            raise DegenerateConfiguration("lines coincide")
        return pt

    def point_at(self, lam: Scalar, mu: Scalar) -> Point:
        return point_combination(self.a, lam, self.b, mu)

    def sort_key(self) -> tuple:
        return tuple(float(x) for x in primitive(self.plucker()))

    def to_json(self):
        return {"points": [self.a.to_json(), self.b.to_json()]}

    def __str__(self):
        return f"line[{self.a}, {self.b}]"


def line_of_planes(p1: P3Form, p2: P3Form, ctx: ScalarContext) -> Line:
    """The intersection line of two independent planes."""
    rows = [p1.coeffs, p2.coeffs]
    if ctx.rank(rows) != 2:
        raise RankError("planes are not independent")
    basis = ctx.nullspace(rows, 4)
    return Line(Point(basis[0]), Point(basis[1])).check(ctx)


def plane_through_line_and_point(line: Line, p: Point, ctx: ScalarContext
                                 ) -> P3Form:
    return plane_through_points([line.a, line.b, p], ctx)


def span_plane(l1: Line, l2: Line, ctx: ScalarContext) -> P3Form:
    """Plane spanned by two concurrent (or equal-plane) distinct lines."""
    extra = next((p for p in (l2.a, l2.b) if not l1.contains(p, ctx)), None)
    if extra is None:
        raise RankError("lines coincide")
    plane = plane_through_points([l1.a, l1.b, extra], ctx)
    for p in (l2.a, l2.b):
        sp = max(abs(float(c)) for c in p.coords)
        if not ctx.is_zero(plane.value(p.coords), sp):
            raise DegenerateConfiguration(
                "lines are skew; they span no plane")
    return plane


def line_plane_point(line: Line, plane: P3Form, ctx: ScalarContext
                     ) -> Point | None:
    """Where a line meets a plane; None when the line lies in the plane."""
    pa, pb = plane.value(line.a.coords), plane.value(line.b.coords)
    scale = max(abs(float(pa)), abs(float(pb)), 1.0)
    za, zb = ctx.is_zero(pa, scale), ctx.is_zero(pb, scale)
    if za and zb:
        return None
    if za:
        return line.a
    if zb:
        return line.b
    return point_combination(line.a, pb, line.b, -pa)


def common_point_of_lines(lines: Sequence[Line], ctx: ScalarContext
                          ) -> Point | None:
    """The point shared by all given lines, or None."""
    if len(lines) < 2:
        raise InputError("need at least two lines")
    pt = lines[0].intersect(lines[1], ctx)
    if pt is None:
        return None
    for ln in lines[2:]:
        if not ln.contains(pt, ctx):
            return None
    return pt


# ---------------------------------------------------------------------------
# quadrics


def quadric_rank(q: P3Form, ctx: ScalarContext) -> int:
    return ctx.rank(q.matrix())


def quadric_vertex(q: P3Form, ctx: ScalarContext) -> Point:
    """The vertex of a rank-3 quadric cone."""
    kernel = ctx.nullspace(q.matrix(), 4)
    if len(kernel) != 1:
        raise RankError(f"quadric has kernel dimension {len(kernel)}, not 1")
    return Point(kernel[0])


def _point_quadric_row(coords: Sequence[Scalar]) -> list:
    return [coords[a] * coords[b] for a, b in QUAD_ORDER]


def quadric_through_patch(gs: Sequence[MPoly],
                          ctx: ScalarContext | None = None) -> P3Form:
    """The unique quadric containing the image of a polynomial 4-tuple.

    Works coefficient-wise (no sampling): the condition Q(g) == 0 is linear
    in the 10 quadric coefficients once the pairwise products g_a*g_b are
    expanded.

    Raises
    ------
    NonUniqueQuadric
        If the image lies on more than one quadric (degenerate patch).
    """
    if ctx is None:
        ctx = context_for([c for g in gs for c in g.coeffs])
    products = [gs[a] * gs[b] for a, b in QUAD_ORDER]
    sites = list(products[0].sites())
    rows = [[prod.coeff(*s) for prod in products] for s in sites]
    kernel = ctx.nullspace(rows, 10)
    if len(kernel) == 0:
        raise NonUniqueQuadric("no quadric contains the patch")
    if len(kernel) > 1:
        raise NonUniqueQuadric(
            f"{len(kernel)}-dimensional family of quadrics contains the patch")
    return P3Form.quadratic(scale_first_one(kernel[0], ctx))


def quadric_through_lines(lines: Sequence[Line], ctx: ScalarContext
                          ) -> tuple[P3Form | None, int]:
    """Quadrics containing the given lines: (representative, family dim).

    Three points per line pin it to the quadric (degree 2 restricted to a
    line with 3 roots vanishes).  Returns the unique member normalized when
    the family is 1-dimensional, else (None, dim).
    """
    rows = []
    for ln in lines:
        for (lam, mu) in ((1, 0), (0, 1), (1, 1)):
            pt = ln.point_at(lam, mu)
            rows.append(_point_quadric_row(pt.coords))
    kernel = ctx.nullspace(rows, 10)
    if len(kernel) == 1:
        return P3Form.quadratic(scale_first_one(kernel[0], ctx)), 1
    return None, len(kernel)


def second_quadric_point(x: Point, z: Point, quad: P3Form, ctx: ScalarContext
                         ) -> Point | None:
    """Second intersection of line(x, z) with a quadric, where Q(x) = 0.

    Returns None when the whole line lies on the quadric.  Tangency returns
    a point proportional to x.
    """
    qz = quad.value(z.coords)
    bxz = quad.bilinear(x.coords, z.coords)
    y = Point(tuple(qz * xc - 2 * bxz * zc
                    for xc, zc in zip(x.coords, z.coords)))
    if y.is_zero(ctx):
        return None
    return y


def split_rank2_quadric(q: P3Form, ctx: ScalarContext) -> tuple[P3Form, P3Form]:
    """Write a rank <= 2 quadric as a product of two planes.

    Raises
    ------
    RankError
        If the rank exceeds 2.
    IrrationalSplit / ComplexSplit
        When the planes need a quadratic extension / are complex conjugate.
    """
    m = q.matrix()
    r = ctx.rank(m)
    if r > 2:
        raise RankError(f"quadric has rank {r} > 2")
    if r == 0:
        raise RankError("zero quadric")
    if not ctx.exact:
        return _split_rank2_float(q, ctx)
    probes = [tuple(Fraction(1 if n == i else 0) for n in range(4))
              for i in range(4)]
    probes += [tuple(Fraction(1 if n in (i, j) else 0) for n in range(4))
               for i in range(4) for j in range(i + 1, 4)]
    a = next((p for p in probes if q.value(p) != 0), None)
    if a is None:
        raise RankError("quadric vanishes on all probe vectors")
    qa = q.value(a)
    l1 = tuple(sum(m[n][c] * a[n] for n in range(4)) for c in range(4))  # M a
    m2 = [[m[r_][c] - l1[r_] * l1[c] / qa for c in range(4)] for r_ in range(4)]
    if all(x == 0 for row in m2 for x in row):
        # rank 1: a double plane
        plane = P3Form.linear(scale_first_one(l1, ctx))
        return plane, plane
    l2 = next(tuple(row) for row in m2 if any(x != 0 for x in row))
    nz = next(c for c in range(4) if l2[c] != 0)
    c2 = m2[nz][nz] / (l2[nz] * l2[nz]) if m2[nz][nz] != 0 else None
    if c2 is None:
        # diagonal entry vanished; use an off-diagonal entry instead
        oz = next(c for c in range(4) if c != nz and m2[nz][c] != 0)
        c2 = m2[nz][oz] / (l2[nz] * l2[oz])
    c1 = 1 / qa
    # q = c1 L1^2 + c2 L2^2 = c1 (L1 - k L2)(L1 + k L2), k^2 = -c2/c1
    ratio = -c2 / c1
    if ratio < 0:
        raise ComplexSplit("the two planes are complex conjugate")
    k = fraction_sqrt(Fraction(ratio))
    if k is None:
        raise IrrationalSplit(f"-c2/c1 = {ratio} is not a rational square")
    pa = tuple(x - k * y for x, y in zip(l1, l2))
    pb = tuple(x + k * y for x, y in zip(l1, l2))
    planes = sorted((scale_first_one(pa, ctx), scale_first_one(pb, ctx)),
                    key=lambda v: tuple(float(x) for x in v))
    return P3Form.linear(planes[0]), P3Form.linear(planes[1])


def _split_rank2_float(q: P3Form, ctx: ScalarContext):
    import numpy as np

    m = np.asarray([[float(x) for x in row] for row in q.matrix()])
    vals, vecs = np.linalg.eigh(m)
    order = np.argsort(-np.abs(vals))
    vals, vecs = vals[order], vecs[:, order]
    big = abs(vals[0])
    nz = [i for i in range(4) if abs(vals[i]) > ctx.rank_rtol * big]
    if len(nz) == 1:
        plane = P3Form.linear(scale_first_one(tuple(vecs[:, 0]), ctx))
        return plane, plane
    l1, l2 = vals[0], vals[1]
    if l1 * l2 > 0:
        raise ComplexSplit("the two planes are complex conjugate")
    v1 = math.sqrt(abs(l1)) * vecs[:, 0]
    v2 = math.sqrt(abs(l2)) * vecs[:, 1]
    pa = scale_first_one(tuple(v1 - v2), ctx)
    pb = scale_first_one(tuple(v1 + v2), ctx)
    planes = sorted((pa, pb), key=lambda v: tuple(float(x) for x in v))
    return P3Form.linear(planes[0]), P3Form.linear(planes[1])


# ---------------------------------------------------------------------------
# quadric pencils


@dataclass(frozen=True)
class PencilMember:
    """A degenerate member of a quadric pencil."""

    lam: tuple[Scalar, Scalar]
    quadric: P3Form
    rank: int
    multiplicity: int
    planes: tuple[P3Form, P3Form] | None = None
    vertex: Point | None = None

    def to_json(self):
        out = {"lambda": [scalar_to_json(self.lam[0]), scalar_to_json(self.lam[1])],
               "rank": self.rank,
               "multiplicity": self.multiplicity,
               "quadric": self.quadric.to_json()}
        if self.planes is not None:
            out["planes"] = [p.to_json() for p in self.planes]
        if self.vertex is not None:
            out["vertex"] = self.vertex.to_json()
        return out


def _pencil_quartic(q0: P3Form, q1: P3Form, ctx: ScalarContext) -> list:
    """Coefficients c_d of det(l0 Q0 + l1 Q1) = sum c_d l0^d l1^(4-d)."""
    m0, m1 = q0.matrix(), q1.matrix()
    samples = [Fraction(v) if ctx.exact else float(v)
               for v in (0, 1, -1, 2, -2)]
    rows, rhs = [], []
    for t in samples:
        m = [[t * m0[r][c] + m1[r][c] for c in range(4)] for r in range(4)]
        rows.append([t ** d for d in range(5)])
        rhs.append(ctx.det(m))
    return list(ctx.solve(rows, rhs))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def _clear_to_ints(coeffs) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in coeffs]


def _one_rational_root(ints: list[int]) -> Fraction | None:
    """One rational root of sum ints[d] * t^d (lowest degree first)."""
    if ints[0] == 0:
        return Fraction(0)
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for sign in (1, -1):
                cand = Fraction(sign * p, q)
                if sum(c * cand ** d for d, c in enumerate(ints)) == 0:
                    return cand
    return None


def _deflate(ints: list[int], root: Fraction) -> list[int]:
    """Divide by (t - root): quotient coefficients, lowest degree first."""
    hi = list(reversed([Fraction(c) for c in ints]))
    quot = []
    acc = Fraction(0)
    for c in hi[:-1]:
        acc = acc * root + c
        quot.append(acc)
    return _clear_to_ints(list(reversed(quot)))


def _rational_roots(coeffs: list[Fraction]) -> list[tuple[Fraction, int]]:
    """Rational roots (with multiplicity) of sum coeffs[d] * t^d."""
    ints = _clear_to_ints(coeffs)
    while ints and ints[-1] == 0:
        ints.pop()
    if len(ints) <= 1:
        return []
    found: dict[Fraction, int] = {}
    while len(ints) > 1:
        root = _one_rational_root(ints)
        if root is None:
            break
        found[root] = found.get(root, 0) + 1
        ints = _deflate(ints, root)
    return list(found.items())


def pencil_degenerate_members(q0: P3Form, q1: P3Form, ctx: ScalarContext
                              ) -> list[PencilMember]:
    """Degenerate members of the pencil l0 Q0 + l1 Q1.

    Exact mode lists the members at rational roots of the degree-4
    determinant (plus the member at (1:0) when det Q0 = 0); float mode lists
    all real roots within tolerance.  Members of rank <= 2 carry their plane
    splits when those are rational; rank-3 members carry their vertex.
    """
    coeffs = _pencil_quartic(q0, q1, ctx)
    roots: list[tuple[tuple, int]] = []
    if ctx.exact:
        for r, mult in _rational_roots([Fraction(c) for c in coeffs]):
            roots.append(((r, Fraction(1)), mult))
        if coeffs[4] == 0:
            mult = 1
            for d in (3, 2, 1, 0):
                if coeffs[d] == 0:
                    mult += 1
                else:
                    break
            roots.append(((Fraction(1), Fraction(0)), mult))
    else:
        import numpy as np

        poly = list(reversed([float(c) for c in coeffs]))  # highest first
        scale = max(abs(c) for c in poly) or 1.0
        lead_zeros = 0
        while len(poly) > 1 and abs(poly[0]) <= 1e-12 * scale:
            poly.pop(0)
            lead_zeros += 1
        if lead_zeros:
            roots.append(((1.0, 0.0), lead_zeros))
        if len(poly) > 1:
            real = [float(z.real) for z in np.roots(poly)
                    if abs(z.imag) <= 1e-8 * max(1.0, abs(z))]
            clustered: list[list] = []
            for r in sorted(real):
                if clustered and abs(clustered[-1][0] - r) < 1e-8 * max(1.0, abs(r)):
                    clustered[-1][1] += 1
                else:
                    clustered.append([r, 1])
            for r, mult in clustered:
                roots.append(((r, 1.0), mult))
    members = []
    for (l0, l1), mult in roots:
        coeffs_q = tuple(l0 * a + l1 * b
                         for a, b in zip(q0.coeffs, q1.coeffs))
        member = P3Form.quadratic(scale_first_one(coeffs_q, ctx))
        rank = quadric_rank(member, ctx)
        planes = None
        vertex = None
        if rank <= 2:
            try:
                planes = split_rank2_quadric(member, ctx)
            except (IrrationalSplit, ComplexSplit):
                planes = None
        elif rank == 3:
            vertex = quadric_vertex(member, ctx)
        members.append(PencilMember((l0, l1), member, rank, mult, planes, vertex))
    members.sort(key=lambda m: tuple(float(x) for x in m.lam))
    return members


# ---------------------------------------------------------------------------
# conics


@dataclass(frozen=True)
class Conic:
    """A plane conic, cut out by a plane and a quadric."""

    plane: P3Form
    quadric: P3Form

    def contains(self, p: Point, ctx: ScalarContext) -> bool:
        sp = max((abs(float(c)) for c in p.coords), default=1.0)
        return (ctx.is_zero(self.plane.value(p.coords), sp)
                and ctx.is_zero(self.quadric.value(p.coords), sp * sp))

    def to_json(self):
        return {"plane": self.plane.to_json(), "quadric": self.quadric.to_json()}


def line_conic_points(line: Line, conic: Conic, ctx: ScalarContext
                      ) -> list[Point]:
    """Intersection points of a line with a plane conic.

    A line not in the conic's plane meets it in the plane trace if that lies
    on the quadric; a line inside the plane meets it in 0, 1 (tangency), or
    2 points.  Exact mode raises on irrational intersections.
    """
    pa = conic.plane.value(line.a.coords)
    pb = conic.plane.value(line.b.coords)
    scale = max(abs(float(pa)), abs(float(pb)), 1.0)
    in_plane = ctx.is_zero(pa, scale) and ctx.is_zero(pb, scale)
    if not in_plane:
        x = line_plane_point(line, conic.plane, ctx)
        sp = max((abs(float(c)) for c in x.coords), default=1.0)
        if ctx.is_zero(conic.quadric.value(x.coords), sp * sp):
            return [x]
        return []
    qa = conic.quadric.value(line.a.coords)
    qb = conic.quadric.value(line.b.coords)
    qab = conic.quadric.bilinear(line.a.coords, line.b.coords)
    roots = binary_quadratic_roots(qa, 2 * qab, qb, ctx)
    if roots is None:
        raise DegenerateConfiguration("line lies on the conic's quadric")
    if roots == ["irrational"]:
        raise IrrationalIntersection(
            "line meets the conic at irrational points")
    return [line.point_at(l0, l1) for (l0, l1) in roots]


# ---------------------------------------------------------------------------
# transversals of four lines


_PLUCKER_IDX = {(0, 1): 0, (0, 2): 1, (0, 3): 2, (1, 2): 3, (1, 3): 4, (2, 3): 5}


def plucker_pairing(p: Sequence[Scalar], q: Sequence[Scalar]) -> Scalar:
    return (p[0] * q[5] - p[1] * q[4] + p[2] * q[3]
            + p[3] * q[2] - p[4] * q[1] + p[5] * q[0])


def plucker_quadric(p: Sequence[Scalar]) -> Scalar:
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def plucker_to_line(p: Sequence[Scalar], ctx: ScalarContext) -> Line:
    """Rebuild a line from a Pluecker vector satisfying the quadric."""
    m = [[None] * 4 for _ in range(4)]
    zero = Fraction(0) if ctx.exact else 0.0
    for r in range(4):
        m[r][r] = zero
    for (a, b), i in _PLUCKER_IDX.items():
        m[a][b] = p[i]
        m[b][a] = -p[i]
    cols = [tuple(m[r][c] for r in range(4)) for c in range(4)]
    scale = max((abs(float(x)) for x in p), default=0.0)
    nz = [c for c in cols if not all(ctx.is_zero(x, scale) for x in c)]
    if len(nz) < 2:
        raise DegenerateConfiguration("Pluecker vector has rank < 2")
    a = Point(nz[0])
    b = next((Point(c) for c in nz[1:]
              if ctx.rank([nz[0], c]) == 2), None)
    if b is None:
        raise DegenerateConfiguration("Pluecker matrix has rank < 2")
    return Line(a, b).check(ctx)


@dataclass(frozen=True)
class TransversalResult:
    """Common transversals of four lines.

    ``infinite`` marks a positive-dimensional family; ``lines`` then holds
    representatives.  ``route`` records which method produced the answer
    ("quadric" or "plucker").
    """

    lines: tuple[Line, ...]
    infinite: bool
    route: str
    quadric: P3Form | None = None


def transversals_of_four_lines(lines: Sequence[Line], ctx: ScalarContext
                               ) -> TransversalResult:
    """All lines meeting each of four given lines.

    The generic route picks three pairwise-skew lines, builds the unique
    quadric through them, and intersects the fourth line with it; the ruling
    through each intersection point is the transversal.  Configurations the
    generic route cannot handle (no skew triple, non-unique quadric, a
    fourth line inside the quadric) fall back to a direct linear solve in
    Pluecker coordinates.

    Raises
    ------
    ComplexTransversals
        When the two transversals are complex conjugate.
    IrrationalIntersection
        Exact mode, transversals exist but need a quadratic extension.
    """
    if len(lines) != 4:
        raise InputError("need exactly four lines")
    for ln in lines:
        ln.check(ctx)
    for combo in itertools.combinations(range(4), 3):
        trio = [lines[i] for i in combo]
        rest = next(i for i in range(4) if i not in combo)
        if any(trio[a].meets(trio[b], ctx)
               for a in range(3) for b in range(a + 1, 3)):
            continue
        quad, dim = quadric_through_lines(trio, ctx)
        if dim != 1:
            continue
        result = _transversals_via_quadric(trio, lines[rest], quad, lines, ctx)
        if result is not None:
            return result
    return _transversals_via_plucker(lines, ctx)


def _transversals_via_quadric(trio, fourth: Line, quad: P3Form,
                              all_lines, ctx) -> TransversalResult | None:
    qa = quad.value(fourth.a.coords)
    qb = quad.value(fourth.b.coords)
    qab = quad.bilinear(fourth.a.coords, fourth.b.coords)
    roots = binary_quadratic_roots(qa, 2 * qab, qb, ctx)
    if roots is None:
        # fourth line inside the quadric: a whole ruling family of transversals
        reps = []
        for (lam, mu) in ((1, 0), (0, 1)):
            z = fourth.point_at(lam, mu)
            t = _ruling_through(z, trio, ctx)
            if t is not None:
                reps.append(t)
        return TransversalResult(tuple(reps), True, "quadric", quad)
    if roots == ["irrational"]:
        raise IrrationalIntersection(
            "transversal points need a quadratic extension")
    if not roots:
        raise ComplexTransversals("the two transversals are complex conjugate")
    found = []
    for (l0, l1) in roots:
        z = fourth.point_at(l0, l1)
        t = _ruling_through(z, trio, ctx)
        if t is None:
            return None  # degenerate recovery; let the fallback handle it
        if not all(t.meets(ln, ctx) for ln in all_lines):
            return None
        found.append(t)
    found = _dedupe_lines(found, ctx)
    return TransversalResult(tuple(found), False, "quadric", quad)


def _ruling_through(z: Point, trio, ctx) -> Line | None:
    planes = []
    for ln in trio:
        if ln.contains(z, ctx):
            continue
        planes.append(plane_through_line_and_point(ln, z, ctx))
        if len(planes) == 2:
            break
    if len(planes) < 2:
        return None
    try:
        return line_of_planes(planes[0], planes[1], ctx)
    except (RankError, DegenerateConfiguration):
        return None


def _transversals_via_plucker(lines, ctx) -> TransversalResult:
    rows = [ln.plucker() for ln in lines]
    # incidence with each line is linear in the unknown Pluecker vector y:
    # pairing(y, r) = y0 r5 - y1 r4 + y2 r3 + y3 r2 - y4 r1 + y5 r0
    inc = [[r[5], -r[4], r[3], r[2], -r[1], r[0]] for r in rows]
    kernel = ctx.nullspace(inc, 6)
    dim = len(kernel)
    if dim < 2:
        # four incidence conditions on P^5 always leave >= 2 dimensions
        raise DegenerateConfiguration(
            f"incidence system has unexpected corank {dim}")
    if dim == 2:
        v1, v2 = kernel
        a = plucker_quadric(v1)
        b = plucker_pairing(v1, v2)
        c = plucker_quadric(v2)
        roots = binary_quadratic_roots(a, b, c, ctx)
        if roots is None:
            reps = _plucker_reps([v1, v2], ctx)
            return TransversalResult(tuple(reps), True, "plucker")
        if roots == ["irrational"]:
            raise IrrationalIntersection(
                "transversals need a quadratic extension")
        if not roots:
            raise ComplexTransversals(
                "the two transversals are complex conjugate")
        found = []
        for (l0, l1) in roots:
            vec = tuple(l0 * x + l1 * y for x, y in zip(v1, v2))
            found.append(plucker_to_line(vec, ctx))
        found = _dedupe_lines(found, ctx)
        return TransversalResult(tuple(found), False, "plucker")
    # dim >= 3: a positive-dimensional family
    reps = _plucker_reps(kernel, ctx)
    return TransversalResult(tuple(reps), True, "plucker")


def _plucker_reps(vectors, ctx, want: int = 2) -> list[Line]:
    reps = []
    combos = list(vectors)
    for v1, v2 in itertools.combinations(vectors, 2):
        combos.append(tuple(x + y for x, y in zip(v1, v2)))
        combos.append(tuple(x - y for x, y in zip(v1, v2)))
    for vec in combos:
        scale = max((abs(float(x)) for x in vec), default=1.0)
        if not ctx.is_zero(plucker_quadric(vec), scale * scale):
            continue
        try:
            ln = plucker_to_line(vec, ctx)
        except DegenerateConfiguration:
            continue
        if not any(ln.same_as(r, ctx) for r in reps):
            reps.append(ln)
        if len(reps) >= want:
            break
    return reps


def _dedupe_lines(lines, ctx) -> list[Line]:
    out = []
    for ln in lines:
        if not any(ln.same_as(o, ctx) for o in out):
            out.append(ln)
    out.sort(key=lambda l: l.sort_key())
    return out
