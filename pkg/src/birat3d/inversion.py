"""Closed-form inverses of birational trilinear maps, and their base loci.

Each class admits an explicit inverse whose three factors are pairs of
linear or quadratic forms on the target space.  The factor pairs are built
from the boundary face forms scaled by the rank-one weight factors and by
pencil coordinates (the positions of distinguished degenerate quadrics
inside the boundary pencils).  Every formula is verified by the exact
composition identity before the inverse is returned; a failure raises
``FormulaMismatch`` rather than silently repairing signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .birationality import (BirationalityReport, delta_variants,
                            is_birational, syzygy_matrix)
from .controlnet import (AXIS_NAMES, Classification, ControlNet,
                         permute_net, unpermute_triple)
from .errors import (BasePoint, FormulaMismatch, InputError, NotBirational)
from .geometry import quadric_rank, quadric_vertex, span_plane
from .mpoly import MPoly, P3Form, divide_exact, sym_product
from .scalars import (ScalarContext, context_for, parse_scalar, primitive,
                      scale_first_one)

# ---------------------------------------------------------------------------
# the inverse map


@dataclass(frozen=True)
class InverseMap:
    """The three factor pairs of an inverse, ordered (s, t, u).

    ``degrees[m]`` is the algebraic degree of axis ``m``'s pair (1 for a
    pair of planes, 2 for a pair of quadrics); the forms evaluate the
    parameters of the same basis as the net the map was computed from.
    """

    degrees: tuple[int, int, int]
    pairs: tuple[tuple[P3Form, P3Form], ...]
    basis: str = "monomial"

    def __post_init__(self):
        if len(self.pairs) != 3 or len(self.degrees) != 3:
            raise InputError("an inverse needs one pair per axis")
        for d, (g0, g1) in zip(self.degrees, self.pairs):
            want = "linear" if d == 1 else "quadratic"
            if g0.kind != want or g1.kind != want:
                raise InputError(
                    f"axis of degree {d} needs {want} forms, got "
                    f"({g0.kind}, {g1.kind})")

    def eval(self, point: Sequence, ctx: ScalarContext | None = None
             ) -> tuple[tuple, tuple, tuple]:
        """Evaluate the three parameter pairs at a target point.

        Raises ``BasePoint`` when both forms of some pair vanish — the
        point lies on the base locus of the inverse.
        """
        coords = tuple(point.coords) if hasattr(point, "coords") \
            else tuple(point)
        if ctx is None:
            ctx = context_for(
                list(coords) + [c for g0, g1 in self.pairs
                                for c in (*g0.coeffs, *g1.coeffs)])
        scale = max(abs(float(x)) for x in coords) or 1.0
        out = []
        for m, (g0, g1) in enumerate(self.pairs):
            pscale = scale ** (1 if g0.kind == "linear" else 2) * max(
                max(abs(float(c)) for c in g0.coeffs),
                max(abs(float(c)) for c in g1.coeffs))
            v0, v1 = g0.value(coords), g1.value(coords)
            if ctx.is_zero(v0, pscale) and ctx.is_zero(v1, pscale):
                raise BasePoint(
                    f"both {AXIS_NAMES[m]}-forms vanish: the point lies on "
                    "the base locus of the inverse")
            out.append(primitive((v0, v1)))
        return tuple(out)

    def to_json(self):
        return {"type": list(self.degrees),
                "factors": [{"kind": g0.kind,
                             "f0": g0.to_json(),
                             "f1": g1.to_json()}
                            for g0, g1 in self.pairs]}

    @classmethod
    def from_json(cls, data, basis: str = "monomial") -> "InverseMap":
        degrees = tuple(int(d) for d in data["type"])
        pairs = []
        for entry in data["factors"]:
            kind = entry["kind"]
            pairs.append(tuple(
                P3Form(kind, tuple(parse_scalar(c) for c in entry[key]))
                for key in ("f0", "f1")))
        return cls(degrees, tuple(pairs), basis)


@dataclass(frozen=True)
class BaseLocusIdeal:
    """Base locus components: parameter-side polynomial generators for the
    forward map, target-side forms for the inverse."""

    side: str                              # "forward" | "inverse"
    components: tuple[tuple, ...]          # generators: MPoly or P3Form
    labels: tuple[str, ...]

    def to_json(self):
        return {"side": self.side,
                "components": [
                    {"label": label,
                     "generators": [g.to_json() for g in gens]}
                    for label, gens in zip(self.labels, self.components)]}


@dataclass(frozen=True)
class InversionData:
    """An inverse together with everything derived on the way to it."""

    inverse: InverseMap
    report: BirationalityReport
    pencils: dict[str, tuple]          # axis name -> pencil coordinate pairs
    reference: dict[str, P3Form]       # auxiliary planes/quadrics by role
    base_ideal: BaseLocusIdeal         # forward side, in the net's basis
    base_inverse: BaseLocusIdeal       # inverse side, in the target space

    def to_json(self):
        return {"inverse": self.inverse.to_json(),
                "class": self.report.classification.class_name,
                "pencils": {axis: [[_sj(x) for x in pair] for pair in pairs]
                            for axis, pairs in self.pencils.items()},
                "reference": {k: f.to_json()
                              for k, f in self.reference.items()},
                "base_ideal": self.base_ideal.to_json(),
                "base_locus_inverse": self.base_inverse.to_json()}


def _sj(x):
    from .scalars import scalar_to_json

    return scalar_to_json(x)


# ---------------------------------------------------------------------------
# shared helpers


def _normalize_pair(g0: P3Form, g1: P3Form, ctx: ScalarContext
                    ) -> tuple[P3Form, P3Form]:
    """One common scale making the first form primitive (exact mode) or
    max-one with a positive leading coefficient (float mode)."""
    ref = primitive(g0.coeffs)
    pivot = next(i for i, c in enumerate(g0.coeffs) if not ctx.is_zero(c))
    kappa = ref[pivot] / g0.coeffs[pivot]
    return (P3Form(g0.kind, tuple(c * kappa for c in g0.coeffs)),
            P3Form(g1.kind, tuple(c * kappa for c in g1.coeffs)))


def _scaled_form(form: P3Form, c) -> P3Form:
    return P3Form(form.kind, tuple(c * x for x in form.coeffs))


def _span_solve(target: P3Form, basis: Sequence[P3Form], ctx: ScalarContext,
                what: str) -> tuple:
    """Coordinates of a form inside the span of pencil generators."""
    rows = [[b.coeffs[n] for b in basis] for n in range(len(target.coeffs))]
    sol = ctx.solve_overdetermined(rows, list(target.coeffs))
    if sol is None:
        raise FormulaMismatch(
            f"{what}: the form does not lie in the expected pencil")
    return sol


def _singular_member(q0: P3Form, q1: P3Form, apex, ctx: ScalarContext,
                     what: str) -> tuple:
    """The pencil member whose matrix kills the apex (the cone through it)."""
    m0, m1 = q0.matrix(), q1.matrix()
    a = apex.coords
    rows = [[sum(m0[n][c] * a[c] for c in range(4)),
             sum(m1[n][c] * a[c] for c in range(4))] for n in range(4)]
    kernel = ctx.nullspace(rows, 2)
    if len(kernel) != 1:
        raise FormulaMismatch(
            f"{what}: expected exactly one cone through the apex, found a "
            f"{len(kernel)}-dimensional family")
    return kernel[0]


def _pencil_member(pair, q0: P3Form, q1: P3Form,
                   ctx: ScalarContext) -> P3Form:
    return P3Form("quadratic", scale_first_one(
        tuple(pair[0] * a + pair[1] * b
              for a, b in zip(q0.coeffs, q1.coeffs)), ctx))


def _proportionality_scale(num: Sequence, den: Sequence, ctx: ScalarContext,
                           what: str):
    """The scalar rho with num = rho * den; FormulaMismatch otherwise."""
    if not ctx.proportional(num, den):
        raise FormulaMismatch(f"{what}: expected proportional quantities")
    scale = max((abs(float(x)) for x in den), default=1.0) or 1.0
    pivot = next(i for i, x in enumerate(den) if not ctx.is_zero(x, scale))
    return num[pivot] / den[pivot]


def _pair_form(axis: int, pair, exact: bool) -> MPoly:
    """The linear parameter form pair[0]*x0 + pair[1]*x1 of one axis."""
    v0 = MPoly.variable(axis, 0, exact)
    v1 = MPoly.variable(axis, 1, exact)
    return v0.scale(pair[0]) + v1.scale(pair[1])


def _extract_axis_factor(poly: MPoly, axis: int, ctx: ScalarContext
                         ) -> tuple[MPoly, MPoly]:
    """Split ``poly`` = (linear factor on ``axis``) * (cofactor).

    Writing the coefficients along the axis as pairs (A, B) indexed by the
    other exponents, the split exists iff every pair is proportional to the
    factor (f0, f1); the common direction is the 2-column nullspace.
    """
    if poly.degree[axis] != 1:
        raise InputError("factor extraction expects degree 1 on the axis")
    other = [m for m in range(3) if m != axis]
    rows = []
    for e1 in range(poly.degree[other[0]] + 1):
        for e2 in range(poly.degree[other[1]] + 1):
            site0 = [0, 0, 0]
            site0[other[0]], site0[other[1]] = e1, e2
            site1 = list(site0)
            site1[axis] = 1
            rows.append([poly.coeff(*site0), poly.coeff(*site1)])
    kernel = ctx.nullspace(rows, 2)
    if len(kernel) != 1:
        raise FormulaMismatch(
            "no unique linear factor on the axis (kernel dimension "
            f"{len(kernel)})")
    n0, n1 = kernel[0]
    factor = _pair_form(axis, primitive((-n1, n0)), ctx.exact)
    return factor, divide_exact(poly, factor, ctx)


# ---------------------------------------------------------------------------
# verification


def verify_inverse(net: ControlNet, inv: InverseMap) -> bool:
    """Check the composition identities G0(f)*p1 - G1(f)*p0 = 0 per axis.

    ``(p0, p1)`` is the parameter pair in the net's own basis, written in
    the monomial variables ``f`` is expanded in (a Bernstein pair (b0 : b1)
    is the monomial pair (b0 + b1 : b1), so b0 = m0 - m1 and b1 = m1);
    exact mode checks literal zero, float mode thresholds against the
    identity's coefficient scale.
    """
    fs = net.map_polynomials()
    ctx = net.ctx()
    exact = ctx.exact
    for m, (g0, g1) in enumerate(inv.pairs):
        a0 = g0.apply(fs)
        a1 = g1.apply(fs)
        x0 = MPoly.variable(m, 0, exact)
        x1 = MPoly.variable(m, 1, exact)
        if inv.basis == "bernstein":
            p0, p1 = x0 - x1, x1
        else:
            p0, p1 = x0, x1
        residual = a0 * p1 - a1 * p0
        scale = max((abs(float(c)) for p in (a0, a1)
                     for c in p.coeffs), default=1.0) or 1.0
        if not all(ctx.is_zero(c, scale) for c in residual.coeffs):
            return False
    return True


# ---------------------------------------------------------------------------
# per-class derivations (on the monomial reading, canonically permuted)


@dataclass
class _ClassData:
    pairs: list                       # canonical (s', t', u') form pairs
    pencils: dict[int, tuple]         # canonical axis slot -> pairs of coords
    reference: dict[str, P3Form]
    fwd_components: list              # lists of MPoly, canonical axes
    fwd_labels: list[str]
    inv_components: list              # lists of P3Form
    inv_labels: list[str]
    alternates: list = field(default_factory=list)  # cross-checked pairs


def _face_forms(cls: Classification, axis: int) -> tuple[P3Form, P3Form]:
    return (cls.faces[2 * axis].form, cls.faces[2 * axis + 1].form)


def _hexahedral_data(net: ControlNet, report: BirationalityReport,
                     ctx: ScalarContext) -> _ClassData:
    cls = report.classification
    alpha, beta, gamma = report.factors.pairs
    pairs = []
    for m, fac in enumerate((alpha, beta, gamma)):
        f0, f1 = _face_forms(cls, m)
        pairs.append((_scaled_form(f1, -fac[1]), _scaled_form(f0, fac[0])))
    gens = []
    for m in range(3):
        syz = syzygy_matrix(net, m)
        other = [a for a in range(3) if a != m]
        degree = tuple(0 if a == m else 1 for a in range(3))
        entries = {}
        for a in range(2):
            for b in range(2):
                site = [0, 0, 0]
                site[other[0]], site[other[1]] = a, b
                entries[tuple(site)] = syz.matrix[1][a + 2 * b]
        gens.append(MPoly.from_coeff_map(degree, entries))
    planes = cls.geometry.planes
    inv_components = [(planes[0], planes[1]), (planes[2], planes[3]),
                      (planes[4], planes[5])]
    return _ClassData(pairs, {}, {}, [tuple(gens)], ["curve"],
                      inv_components, list(AXIS_NAMES))


def _pyramidal_data(net: ControlNet, report: BirationalityReport,
                    ctx: ScalarContext) -> _ClassData:
    cls = report.classification
    geom = cls.geometry
    exact = ctx.exact
    alpha, beta, gamma = report.factors.pairs
    sigma = _face_forms(cls, 0)
    tau = _face_forms(cls, 1)
    upsilon = _face_forms(cls, 2)
    pi0 = geom.base_plane
    lam = primitive(_span_solve(pi0, sigma, ctx, "pyramidal lambda"))
    mu = primitive(_span_solve(pi0, tau, ctx, "pyramidal mu"))
    nu = primitive(_singular_member(upsilon[0], upsilon[1], geom.apex, ctx,
                                    "pyramidal nu"))
    cone = _pencil_member(nu, upsilon[0], upsilon[1], ctx)
    if quadric_rank(cone, ctx) != 3:
        raise FormulaMismatch("pyramidal cone member is not rank three")
    vertex = quadric_vertex(cone, ctx)
    if not ctx.proportional(vertex.coords, geom.apex.coords):
        raise FormulaMismatch("pyramidal cone vertex differs from the apex")

    # second plane of the rank-two pencil member: Sym(pi0, pi1) lies in the
    # u-pencil; linear in (pi1, nu') jointly
    rows = []
    basis_syms = [sym_product(pi0, P3Form.linear(
        tuple(Fraction(1) if n == c else Fraction(0) for c in range(4))
        if exact else tuple(1.0 if n == c else 0.0 for c in range(4))))
        for n in range(4)]
    for idx in range(10):
        rows.append([bs.coeffs[idx] for bs in basis_syms]
                    + [-upsilon[0].coeffs[idx], -upsilon[1].coeffs[idx]])
    kernel = ctx.nullspace(rows, 6)
    if len(kernel) != 1:
        raise FormulaMismatch(
            f"pyramidal conic plane solve has kernel dimension {len(kernel)}")
    pi1 = P3Form("linear", scale_first_one(kernel[0][:4], ctx))
    if ctx.proportional(pi1.coeffs, pi0.coeffs):
        raise FormulaMismatch("pyramidal conic plane coincides with the "
                              "base plane")

    fs = net.map_polynomials()
    a0 = _pair_form(0, alpha, exact)
    b0 = _pair_form(1, beta, exact)
    c1 = _pair_form(2, gamma, exact)
    # exact contraction identity <pi0, f> = scale * a0 b0 c1
    lhs = pi0.apply(fs)
    rhs = a0 * b0 * c1
    _proportionality_scale(lhs.coeffs, rhs.coeffs, ctx,
                           "pyramidal base-plane contraction")
    c0, h = _extract_axis_factor(pi1.apply(fs), 2, ctx)

    pairs = [
        (_scaled_form(sigma[1], alpha[1] * lam[1]),
         _scaled_form(sigma[0], alpha[0] * lam[0])),
        (_scaled_form(tau[1], beta[1] * mu[1]),
         _scaled_form(tau[0], beta[0] * mu[0])),
        (_scaled_form(upsilon[1], gamma[1] * nu[1]),
         _scaled_form(upsilon[0], gamma[0] * nu[0])),
    ]
    reference = {"base_plane": pi0, "conic_plane": pi1, "cone": cone}
    fwd = [(a0, b0, c0), (h, c1)]
    inv_components = [(sigma[0], sigma[1]), (tau[0], tau[1]), (pi1, cone)]
    return _ClassData(pairs, {0: (lam,), 1: (mu,), 2: (nu,)}, reference,
                      fwd, ["point", "curve"], inv_components,
                      [AXIS_NAMES[0], AXIS_NAMES[1], "C"])


def _scaffold_data(net: ControlNet, report: BirationalityReport,
                   ctx: ScalarContext) -> _ClassData:
    cls = report.classification
    geom = cls.geometry
    exact = ctx.exact
    v = report.variants
    alpha = (v["y0"].factors.pairs[0], v["y1"].factors.pairs[0])
    beta = (v["y0"].factors.pairs[1], v["y1"].factors.pairs[1],
            v["z0"].factors.pairs[1])
    gamma = (v["z0"].factors.pairs[2], v["z1"].factors.pairs[2],
             v["y0"].factors.pairs[2])
    sigma = _face_forms(cls, 0)
    tau = _face_forms(cls, 1)
    upsilon = _face_forms(cls, 2)
    variants = delta_variants(net, cls)
    theta = (variants["y0"].reference, variants["y1"].reference)
    rho = (variants["z0"].reference, variants["z1"].reference)

    pi = tuple(P3Form("linear", scale_first_one(
        span_plane(geom.spine, rail, ctx).coeffs, ctx))
        for rail in geom.rails)
    lam = tuple(primitive(_span_solve(pi[i], sigma, ctx,
                                      f"scaffold lambda[{i}]"))
                for i in range(2))
    y_line, z_line = geom.cross_lines
    samples = [(1, 0), (0, 1), (1, 1)]

    def _vanishing_member(q0, q1, line, what):
        rows = [[q0.value(line.point_at(*s).coords),
                 q1.value(line.point_at(*s).coords)] for s in samples]
        kernel = ctx.nullspace(rows, 2)
        if len(kernel) != 1:
            raise FormulaMismatch(
                f"{what}: expected one pencil member through the line, "
                f"found a {len(kernel)}-dimensional family")
        return primitive(kernel[0])

    mu = _vanishing_member(tau[0], tau[1], z_line, "scaffold mu")
    nu = _vanishing_member(upsilon[0], upsilon[1], y_line, "scaffold nu")
    q = P3Form("quadratic",
               scale_first_one(geom.smooth_quadric.coeffs, ctx))
    for pair, (q0, q1), what in ((mu, tau, "mu"), (nu, upsilon, "nu")):
        member = _pencil_member(pair, q0, q1, ctx)
        if not ctx.proportional(member.coeffs, q.coeffs):
            raise FormulaMismatch(
                f"scaffold {what} member differs from the smooth quadric "
                "through spine and cross lines")

    s_pairs = [
        (_scaled_form(sigma[1], alpha[i][1] * lam[i][1]),
         _scaled_form(sigma[0], alpha[i][0] * lam[i][0]))
        for i in range(2)]
    _check_pair_agreement(s_pairs[0], s_pairs[1], ctx,
                          "scaffold s-axis routes i=0 and i=1")
    pairs = [
        s_pairs[0],
        (_scaled_form(tau[1], beta[2][1] * mu[1]),
         _scaled_form(tau[0], beta[2][0] * mu[0])),
        (_scaled_form(upsilon[1], gamma[2][1] * nu[1]),
         _scaled_form(upsilon[0], gamma[2][0] * nu[0])),
    ]
    a = [_pair_form(0, alpha[i], exact) for i in range(2)]
    b = [_pair_form(1, beta[j], exact) for j in range(3)]
    c = [_pair_form(2, gamma[k], exact) for k in range(3)]
    fwd = [(a[0], b[0], c[0]), (a[1], b[1], c[1]), (b[2], c[2])]
    reference = {"rail_plane_0": pi[0], "rail_plane_1": pi[1],
                 "y_plane_0": theta[0], "y_plane_1": theta[1],
                 "z_plane_0": rho[0], "z_plane_1": rho[1],
                 "quadric": q}
    inv_components = [(sigma[0], sigma[1]),
                      (pi[0], theta[0]), (pi[1], theta[1]),
                      (theta[0], theta[1]), (rho[0], rho[1])]
    return _ClassData(pairs, {0: (lam[0], lam[1]), 1: (mu,), 2: (nu,)},
                      reference, fwd, ["point_0", "point_1", "curve"],
                      inv_components,
                      [AXIS_NAMES[0], "r0", "r1", "y", "z"],
                      alternates=[s_pairs[1]])


def _tripod_data(net: ControlNet, report: BirationalityReport,
                 ctx: ScalarContext) -> _ClassData:
    cls = report.classification
    geom = cls.geometry
    exact = ctx.exact
    v = report.variants
    alpha = (v["p1"].factors.pairs[0], v["p2"].factors.pairs[0])
    beta = (v["p2"].factors.pairs[1], v["p1"].factors.pairs[1])
    gamma = (v["p3"].factors.pairs[2], v["p1"].factors.pairs[2])
    faces = tuple(_face_forms(cls, m) for m in range(3))
    pi = P3Form("linear", scale_first_one(geom.conic.plane.coeffs, ctx))
    span = tuple(P3Form("linear", scale_first_one(p.coeffs, ctx))
                 for p in geom.span_planes)

    coords0 = []     # pencil coordinates of the rank-two member, per axis
    coords1 = []     # pencil coordinates of the cone member, per axis
    members = []
    for m in range(3):
        q0, q1 = faces[m]
        rank2 = sym_product(pi, span[m])
        coords0.append(primitive(_span_solve(
            rank2, (q0, q1), ctx, f"tripod rank-two member, axis "
            f"{AXIS_NAMES[m]}")))
        pair = primitive(_singular_member(q0, q1, geom.apex, ctx,
                                          f"tripod cone, axis "
                                          f"{AXIS_NAMES[m]}"))
        coords1.append(pair)
        members.append(_pencil_member(pair, q0, q1, ctx))
    q = members[0]
    for m in (1, 2):
        if not ctx.proportional(members[m].coeffs, q.coeffs):
            raise FormulaMismatch(
                "tripod cone members disagree between the "
                f"{AXIS_NAMES[0]}- and {AXIS_NAMES[m]}-pencils")
    if not ctx.proportional(q.coeffs, geom.conic.quadric.coeffs):
        raise FormulaMismatch(
            "tripod cone member differs from the classification's conic "
            "quadric")

    pair_routes = []
    for m, fac in enumerate((alpha, beta, gamma)):
        q0, q1 = faces[m]
        routes = [
            (_scaled_form(q1, fac[i][1] * (coords0, coords1)[i][m][1]),
             _scaled_form(q0, fac[i][0] * (coords0, coords1)[i][m][0]))
            for i in range(2)]
        _check_pair_agreement(routes[0], routes[1], ctx,
                              f"tripod {AXIS_NAMES[m]}-axis routes "
                              "i=0 and i=1")
        pair_routes.append(routes)
    pairs = [routes[0] for routes in pair_routes]

    # the cone lies in the span of the opposite span-plane products; this
    # pins the geometry but not the h coefficients below, whose scales
    # depend on the representatives chosen for the factor columns
    _span_solve(q, (sym_product(span[1], span[2]),
                    sym_product(span[0], span[2]),
                    sym_product(span[0], span[1])), ctx,
                "tripod cone vs span-plane products")
    a = [_pair_form(0, alpha[i], exact) for i in range(2)]
    b = [_pair_form(1, beta[j], exact) for j in range(2)]
    c = [_pair_form(2, gamma[k], exact) for k in range(2)]
    fs = net.map_polynomials()
    qf = q.apply(fs)
    top = a[1] * b[1] * c[1]
    terms = (top * (a[1] * b[0] * c[0]), top * (a[0] * b[1] * c[0]),
             top * (a[0] * b[0] * c[1]))
    rows = [[t.coeffs[n] for t in terms] for n in range(len(qf.coeffs))]
    omega = ctx.solve_overdetermined(rows, list(qf.coeffs))
    if omega is None:
        raise FormulaMismatch(
            "tripod cone pullback q(f) is not a1 b1 c1 times a combination "
            "of the complementary factor products")
    h = (a[1] * b[0] * c[0]).scale(omega[0]) \
        + (a[0] * b[1] * c[0]).scale(omega[1]) \
        + (a[0] * b[0] * c[1]).scale(omega[2])
    pif = pi.apply(fs)
    _proportionality_scale(pif.coeffs, h.coeffs, ctx,
                           "tripod conic-plane pullback <pi, f> vs h")

    fwd = [(a[0], b[0], c[0]),
           (a[1] * a[1], b[1] * b[1], c[1] * c[1],
            a[1] * b[1], a[1] * c[1], b[1] * c[1], h)]
    reference = {"conic_plane": pi, "cone": q,
                 "span_plane_1": span[0], "span_plane_2": span[1],
                 "span_plane_3": span[2]}
    inv_components = [(span[1], span[2]), (span[0], span[2]),
                      (span[0], span[1]), (pi, q)]
    pencils = {m: (coords0[m], coords1[m]) for m in range(3)}
    return _ClassData(pairs, pencils, reference, fwd,
                      ["point", "fat_point"], inv_components,
                      [*AXIS_NAMES, "C"],
                      alternates=[routes[1] for routes in pair_routes])


def _check_pair_agreement(p1, p2, ctx: ScalarContext, what: str):
    flat1 = (*p1[0].coeffs, *p1[1].coeffs)
    flat2 = (*p2[0].coeffs, *p2[1].coeffs)
    if not ctx.proportional(flat1, flat2):
        raise FormulaMismatch(f"{what} disagree")


_CLASS_DATA = {"hexahedral": _hexahedral_data,
               "pyramidal": _pyramidal_data,
               "scaffold": _scaffold_data,
               "tripod": _tripod_data}


def _canonical_perm(cls: Classification) -> tuple[int, int, int]:
    """Axis order putting the distinguished axis in its textbook slot."""
    if cls.class_name == "pyramidal":
        q = cls.geometry.quadric_axis
        rest = [m for m in range(3) if m != q]
        return (rest[0], rest[1], q)
    if cls.class_name == "scaffold":
        p = cls.geometry.planar_axis
        rest = [m for m in range(3) if m != p]
        return (p, rest[0], rest[1])
    return (0, 1, 2)


# ---------------------------------------------------------------------------
# the public entry points


def invert(net: ControlNet, report: BirationalityReport | None = None
           ) -> InversionData:
    """Derive the closed-form inverse and both base loci.

    Raises ``NotBirational`` when the weight tensor is not rank one, and
    ``FormulaMismatch`` when any exact identity the construction relies on
    fails (a sign regression or an upstream misclassification).
    """
    if report is None:
        report = is_birational(net)
    cls = report.classification
    if cls.class_name == "unclassified":
        raise NotBirational(
            "the net does not belong to a birational class; "
            + "; ".join(cls.diagnostics))
    if not report.birational:
        bad = [k for k, vr in report.variants.items() if not vr.rank_one]
        raise NotBirational(
            "the scaled weight tensor is not rank one "
            f"(variants: {', '.join(bad)})")
    if not report.consistent:
        raise FormulaMismatch("; ".join(report.diagnostics))

    mono = net.monomial_reading()
    perm = _canonical_perm(cls)
    if perm == (0, 1, 2):
        net_c, report_c = mono, report
        if net.basis != "monomial":
            report_c = is_birational(mono)
    else:
        net_c = permute_net(mono, perm)
        report_c = is_birational(net_c)
        if not report_c.birational or not report_c.consistent:
            raise FormulaMismatch(
                "the canonically permuted net lost birationality: "
                + "; ".join(report_c.diagnostics))
    ctx = net_c.ctx()
    data = _CLASS_DATA[cls.class_name](net_c, report_c, ctx)

    pairs = [_normalize_pair(g0, g1, ctx) for g0, g1 in data.pairs]
    pairs = list(unpermute_triple(pairs, perm))
    fwd_components = [
        tuple(p.permute_axes(_inverse_perm(perm)) for p in gens)
        for gens in data.fwd_components]
    pencils = {AXIS_NAMES[perm[m]]: data.pencils[m]
               for m in data.pencils}
    inv_labels = [AXIS_NAMES[perm[AXIS_NAMES.index(lbl)]]
                  if lbl in AXIS_NAMES else lbl
                  for lbl in data.inv_labels]

    # the pairs and base components live in the raw parameter pairs of the
    # monomial reading, which are the net's own pairs in either basis (the
    # homogeneous Bernstein monomials are the raw pair coordinates), so no
    # basis conversion is applied here
    degrees = cls.degrees
    inv = InverseMap(tuple(degrees), tuple(pairs), net.basis)
    if not verify_inverse(net, inv):
        raise FormulaMismatch(
            "the closed-form inverse failed the composition identity")

    base_ideal = BaseLocusIdeal("forward", tuple(fwd_components),
                                tuple(data.fwd_labels))
    base_inverse = BaseLocusIdeal("inverse", tuple(data.inv_components),
                                  tuple(inv_labels))
    return InversionData(inv, report, pencils, data.reference, base_ideal,
                         base_inverse)


def _inverse_perm(perm: Sequence[int]) -> tuple[int, int, int]:
    out = [0, 0, 0]
    for m, p in enumerate(perm):
        out[p] = m
    return tuple(out)


def inverse(net: ControlNet, report: BirationalityReport | None = None
            ) -> InverseMap:
    """The closed-form inverse map of a birational net."""
    return invert(net, report).inverse


def base_locus(net: ControlNet, report: BirationalityReport | None = None
               ) -> BaseLocusIdeal:
    """Forward base ideal components, in the net's own parameter basis."""
    return invert(net, report).base_ideal


def base_locus_inverse(net: ControlNet,
                       report: BirationalityReport | None = None
                       ) -> BaseLocusIdeal:
    """Inverse-side base locus components (lines and conics in the target)."""
    return invert(net, report).base_inverse


# ---------------------------------------------------------------------------
# evaluation


def eval_map(net: ControlNet, params: Sequence[Sequence]) -> tuple:
    """Evaluate the map at three parameter pairs; BasePoint if it vanishes.

    The pairs are read in the net's own basis (so the inverse's pairs feed
    straight back in): a Bernstein pair (b0 : b1) is the monomial pair
    (b0 + b1 : b1), matching the basis change of the map polynomials.
    """
    if len(params) != 3 or any(len(p) != 2 for p in params):
        raise InputError("evaluation needs three parameter pairs")
    parsed = tuple(tuple(parse_scalar(x) for x in p) for p in params)
    if net.basis == "bernstein":
        parsed = tuple((p[0] + p[1], p[1]) for p in parsed)
    ctx = net.ctx()
    for m, p in enumerate(parsed):
        if all(float(x) == 0.0 for x in p):
            raise InputError(f"parameter pair {AXIS_NAMES[m]} is (0, 0)")
    fs = net.map_polynomials()
    coords = tuple(f.eval(parsed) for f in fs)
    scale = max((abs(float(c)) for f in fs for c in f.coeffs), default=1.0)
    pscale = scale * max(
        abs(float(x)) for p in parsed for x in p) ** 3 or 1.0
    if all(ctx.is_zero(c, pscale) for c in coords):
        raise BasePoint("the parameters lie on the base locus of the map")
    return coords


def eval_inverse(inv: InverseMap, point: Sequence) -> tuple:
    """Evaluate an inverse at a target point: three normalized pairs."""
    coords = tuple(parse_scalar(x) for x in
                   (point.coords if hasattr(point, "coords") else point))
    if len(coords) != 4:
        raise InputError("a target point needs 4 homogeneous coordinates")
    if all(float(x) == 0.0 for x in coords):
        raise InputError("(0,0,0,0) is not a projective point")
    return inv.eval(coords)
