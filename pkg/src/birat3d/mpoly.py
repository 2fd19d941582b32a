"""Dense multihomogeneous polynomials in three binary variable pairs.

A polynomial of tridegree ``(d1, d2, d3)`` lives in
``R[s0,s1] x R[t0,t1] x R[u0,u1]`` homogeneous of degree ``d_i`` in the i-th
pair.  Coefficients are stored densely; the index ``(i, j, k)`` holds the
coefficient of ``s0^(d1-i) s1^i  t0^(d2-j) t1^j  u0^(d3-k) u1^k``, so for
tridegree (1,1,1) the coefficient at ``(i, j, k)`` multiplies the monomial
``s_i t_j u_k`` — the same index convention as a control net.

Also here: linear and quadratic forms on P^3 (the target space), their
substitution into a 4-tuple of polynomials, and exact polynomial division.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeMismatch, InputError, NotDivisible
from .scalars import (Scalar, ScalarContext, context_for, is_exact,
                      parse_scalar, scalar_to_json)

AXES = ("s", "t", "u")


def _ncoef(degree: tuple[int, int, int]) -> int:
    return (degree[0] + 1) * (degree[1] + 1) * (degree[2] + 1)


@dataclass(frozen=True)
class MPoly:
    """A dense multihomogeneous polynomial of fixed tridegree."""

    degree: tuple[int, int, int]
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coeffs) != _ncoef(self.degree):
            raise InputError(
                f"degree {self.degree} needs {_ncoef(self.degree)} "
                f"coefficients, got {len(self.coeffs)}")

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, degree: tuple[int, int, int], exact: bool = True) -> "MPoly":
        z = Fraction(0) if exact else 0.0
        return cls(tuple(degree), tuple(z for _ in range(_ncoef(degree))))

    @classmethod
    def from_coeff_map(cls, degree, entries: dict) -> "MPoly":
        """Build from a sparse ``{(i, j, k): coefficient}`` mapping."""
        exact = all(not isinstance(v, float) for v in entries.values())
        p = cls.zero(degree, exact=exact)
        coeffs = list(p.coeffs)
        for (i, j, k), v in entries.items():
            coeffs[p._idx(i, j, k)] = parse_scalar(v) if not isinstance(v, float) else v
        return cls(tuple(degree), tuple(coeffs))

    @classmethod
    def variable(cls, axis: int, index: int, exact: bool = True) -> "MPoly":
        """The degree-one polynomial ``s_index`` / ``t_index`` / ``u_index``."""
        degree = tuple(1 if a == axis else 0 for a in range(3))
        site = tuple(index if a == axis else 0 for a in range(3))
        return cls.from_coeff_map(degree, {site: Fraction(1) if exact else 1.0})

    # -- indexing ------------------------------------------------------------

    def _idx(self, i: int, j: int, k: int) -> int:
        d1, d2, d3 = self.degree
        return (i * (d2 + 1) + j) * (d3 + 1) + k

    def coeff(self, i: int, j: int, k: int) -> Scalar:
        return self.coeffs[self._idx(i, j, k)]

    def sites(self):
        d1, d2, d3 = self.degree
        for i in range(d1 + 1):
            for j in range(d2 + 1):
                for k in range(d3 + 1):
                    yield (i, j, k)

    # -- ring operations -------------------------------------------------------

    def _check_same_degree(self, other: "MPoly"):
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"tridegrees differ: {self.degree} vs {other.degree}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check_same_degree(other)
        return MPoly(self.degree,
                     tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check_same_degree(other)
        return MPoly(self.degree,
                     tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "MPoly":
        return MPoly(self.degree, tuple(-a for a in self.coeffs))

    def scale(self, c: Scalar) -> "MPoly":
        return MPoly(self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "MPoly") -> "MPoly":
        d1 = tuple(a + b for a, b in zip(self.degree, other.degree))
        exact = not any(isinstance(c, float)
                        for c in (*self.coeffs, *other.coeffs))
        out = [Fraction(0) if exact else 0.0] * _ncoef(d1)
        e2, e3 = d1[1] + 1, d1[2] + 1
        for (i, j, k) in self.sites():
            a = self.coeff(i, j, k)
            if a == 0:
                continue
            for (p, q, r) in other.sites():
                b = other.coeff(p, q, r)
                if b == 0:
                    continue
                out[((i + p) * e2 + (j + q)) * e3 + (k + r)] += a * b
        return MPoly(d1, tuple(out))

    # -- predicates ----------------------------------------------------------

    def is_zero(self, ctx: ScalarContext | None = None) -> bool:
        if ctx is None:
            ctx = context_for(self.coeffs)
        scale = max((abs(float(c)) for c in self.coeffs), default=0.0)
        return all(ctx.is_zero(c, scale) for c in self.coeffs)

    def same_as(self, other: "MPoly", ctx: ScalarContext | None = None) -> bool:
        if self.degree != other.degree:
            return False
        if ctx is None:
            ctx = context_for((*self.coeffs, *other.coeffs))
        scale = max((abs(float(c))
                     for c in (*self.coeffs, *other.coeffs)), default=0.0)
        return all(ctx.is_zero(a - b, scale)
                   for a, b in zip(self.coeffs, other.coeffs))

    def proportional_to(self, other: "MPoly",
                        ctx: ScalarContext | None = None) -> bool:
        if self.degree != other.degree:
            return False
        if ctx is None:
            ctx = context_for((*self.coeffs, *other.coeffs))
        return ctx.proportional(self.coeffs, other.coeffs)

    # -- evaluation ------------------------------------------------------------

    def eval(self, params: Sequence[Sequence[Scalar]]) -> Scalar:
        """Evaluate at ``((s0,s1), (t0,t1), (u0,u1))``."""
        if len(params) != 3 or any(len(p) != 2 for p in params):
            raise InputError("parameters must be three (x0, x1) pairs")
        d1, d2, d3 = self.degree
        pows = []
        for d, (a0, a1) in zip(self.degree, params):
            row = []
            for e in range(d + 1):
                row.append(a0 ** (d - e) * a1 ** e)
            pows.append(row)
        total = None
        for (i, j, k) in self.sites():
            term = self.coeff(i, j, k) * pows[0][i] * pows[1][j] * pows[2][k]
            total = term if total is None else total + term
        return total

    # -- axis permutation -------------------------------------------------------

    def permute_axes(self, perm: Sequence[int]) -> "MPoly":
        """Relabel variable groups: new axis ``m`` is old axis ``perm[m]``."""
        new_degree = tuple(self.degree[perm[m]] for m in range(3))
        out = MPoly.zero(new_degree,
                         exact=not any(isinstance(c, float) for c in self.coeffs))
        coeffs = list(out.coeffs)
        for site in self.sites():
            new_site = tuple(site[perm[m]] for m in range(3))
            coeffs[out._idx(*new_site)] = self.coeff(*site)
        return MPoly(new_degree, tuple(coeffs))

    # -- serialization helpers ----------------------------------------------------

    def to_json(self) -> dict:
        return {"degree": list(self.degree),
                "coeffs": [scalar_to_json(c) for c in self.coeffs]}

    def __str__(self):
        parts = []
        for (i, j, k) in self.sites():
            c = self.coeff(i, j, k)
            if c == 0:
                continue
            mono = []
            for axis, (d, e) in enumerate(zip(self.degree, (i, j, k))):
                v = AXES[axis]
                if d - e:
                    mono.append(f"{v}0" + (f"^{d - e}" if d - e > 1 else ""))
                if e:
                    mono.append(f"{v}1" + (f"^{e}" if e > 1 else ""))
            parts.append(f"{c}*" + "*".join(mono) if mono else str(c))
        return " + ".join(parts) if parts else "0"


def divide_exact(num: MPoly, den: MPoly, ctx: ScalarContext | None = None
                 ) -> MPoly:
    """Exact division ``num / den``; raises if the remainder is nonzero.

    Solved as a linear system in the quotient's coefficients (the matrices
    involved are tiny), then verified by multiplying back.
    """
    if ctx is None:
        ctx = context_for((*num.coeffs, *den.coeffs))
    qdeg = tuple(a - b for a, b in zip(num.degree, den.degree))
    if any(d < 0 for d in qdeg):
        raise NotDivisible(
            f"degree {den.degree} does not divide degree {num.degree}")
    if den.is_zero(ctx):
        raise NotDivisible("division by the zero polynomial")
    quo_sites = list(MPoly.zero(qdeg).sites())
    num_sites = list(num.sites())
    rows = []
    rhs = []
    for ns in num_sites:
        row = []
        for qs in quo_sites:
            ds = tuple(a - b for a, b in zip(ns, qs))
            if all(0 <= d <= den.degree[ax] for ax, d in enumerate(ds)):
                row.append(den.coeff(*ds))
            else:
                row.append(Fraction(0) if ctx.exact else 0.0)
        rows.append(row)
        rhs.append(num.coeff(*ns))
    sol = ctx.solve_overdetermined(rows, rhs)
    if sol is None:
        raise NotDivisible("inconsistent system (nonzero remainder)")
    quo = MPoly(qdeg, tuple(sol))
    if not (quo * den).same_as(num, ctx):
        raise NotDivisible("nonzero remainder")
    return quo


def _binary_power(a: Scalar, b: Scalar, n: int) -> list:
    """Coefficients of ``(a*y0 + b*y1)**n`` over ``y0**(n-i) y1**i``."""
    from math import comb

    return [comb(n, i) * a ** (n - i) * b ** i for i in range(n + 1)]


def substitute_axis(p: MPoly, axis: int, m: Sequence[Sequence[Scalar]]
                    ) -> MPoly:
    """Rewrite one parameter pair under a linear change of coordinates.

    The pair ``(x0, x1)`` of ``axis`` is replaced by
    ``(m[0][0]*y0 + m[0][1]*y1, m[1][0]*y0 + m[1][1]*y1)``; the result has
    the same degree, expressed in the new pair ``(y0, y1)``.
    """
    d = p.degree[axis]
    if d == 0:
        return p
    # row e: expansion of x0^(d-e) x1^e in the new pair
    table = []
    for e in range(d + 1):
        lo = _binary_power(m[0][0], m[0][1], d - e)
        hi = _binary_power(m[1][0], m[1][1], e)
        row = [0 * m[0][0]] * (d + 1)
        for i, ci in enumerate(lo):
            for j, cj in enumerate(hi):
                row[i + j] += ci * cj
        table.append(row)
    out = MPoly.zero(p.degree, exact=is_exact(p.coeffs[0]))
    coeffs = list(out.coeffs)
    for site in p.sites():
        c = p.coeff(*site)
        if c == 0:
            continue
        e = site[axis]
        for e2, t in enumerate(table[e]):
            if t == 0:
                continue
            new_site = list(site)
            new_site[axis] = e2
            idx = out._idx(*new_site)
            coeffs[idx] += c * t
    return MPoly(p.degree, tuple(coeffs))


# ---------------------------------------------------------------------------
# forms on the target P^3

#: coefficient order of a quadratic form on P^3
QUAD_ORDER = ((0, 0), (0, 1), (0, 2), (0, 3),
              (1, 1), (1, 2), (1, 3),
              (2, 2), (2, 3),
              (3, 3))


@dataclass(frozen=True)
class P3Form:
    """A linear (4 coefficients) or quadratic (10) form on the target space.

    Quadratic coefficients follow the order
    ``x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2``.
    """

    kind: str
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if self.kind == "linear":
            need = 4
        elif self.kind == "quadratic":
            need = 10
        else:
            raise InputError(f"unknown form kind {self.kind!r}")
        if len(self.coeffs) != need:
            raise InputError(f"{self.kind} form needs {need} coefficients")

    @classmethod
    def linear(cls, coeffs) -> "P3Form":
        return cls("linear", tuple(coeffs))

    @classmethod
    def quadratic(cls, coeffs) -> "P3Form":
        return cls("quadratic", tuple(coeffs))

    @classmethod
    def from_matrix(cls, m) -> "P3Form":
        """Quadratic form from a symmetric 4x4 matrix (x^T M x)."""
        coeffs = []
        for a, b in QUAD_ORDER:
            coeffs.append(m[a][b] if a == b else 2 * m[a][b])
        return cls("quadratic", tuple(coeffs))

    def matrix(self):
        """Symmetric 4x4 matrix of a quadratic form."""
        if self.kind != "quadratic":
            raise InputError("matrix() needs a quadratic form")
        two = Fraction(2) if not any(isinstance(c, float) for c in self.coeffs) else 2.0
        m = [[None] * 4 for _ in range(4)]
        for (a, b), c in zip(QUAD_ORDER, self.coeffs):
            if a == b:
                m[a][b] = c
            else:
                m[a][b] = m[b][a] = c / two
        return tuple(tuple(r) for r in m)

    def value(self, point: Sequence[Scalar]) -> Scalar:
        if self.kind == "linear":
            return sum(c * x for c, x in zip(self.coeffs, point))
        return sum(c * point[a] * point[b]
                   for (a, b), c in zip(QUAD_ORDER, self.coeffs))

    def bilinear(self, p: Sequence[Scalar], q: Sequence[Scalar]) -> Scalar:
        """Polarization B(p, q) of a quadratic form, with B(x, x) = Q(x)."""
        if self.kind != "quadratic":
            raise InputError("bilinear() needs a quadratic form")
        m = self.matrix()
        return sum(m[a][b] * p[a] * q[b] for a in range(4) for b in range(4))

    def apply(self, fs: Sequence[MPoly]) -> MPoly:
        """Substitute a 4-tuple of equal-degree polynomials for x0..x3."""
        if len(fs) != 4:
            raise InputError("substitution needs 4 polynomials")
        deg = fs[0].degree
        for f in fs:
            if f.degree != deg:
                raise DegreeMismatch("substitution arguments differ in degree")
        if self.kind == "linear":
            out = None
            for c, f in zip(self.coeffs, fs):
                term = f.scale(c)
                out = term if out is None else out + term
            return out
        out = None
        for (a, b), c in zip(QUAD_ORDER, self.coeffs):
            if c == 0:
                continue
            term = (fs[a] * fs[b]).scale(c)
            out = term if out is None else out + term
        if out is None:
            exact = not any(isinstance(c, float) for c in self.coeffs)
            out = MPoly.zero(tuple(2 * d for d in deg), exact=exact)
        return out

    def to_json(self) -> list:
        return [scalar_to_json(c) for c in self.coeffs]


def sym_product(p: P3Form, q: P3Form) -> P3Form:
    """The quadratic form ``p * q`` of two linear forms."""
    if p.kind != "linear" or q.kind != "linear":
        raise InputError("sym_product needs two linear forms")
    coeffs = []
    for a, b in QUAD_ORDER:
        if a == b:
            coeffs.append(p.coeffs[a] * q.coeffs[a])
        else:
            coeffs.append(p.coeffs[a] * q.coeffs[b] + p.coeffs[b] * q.coeffs[a])
    return P3Form("quadratic", tuple(coeffs))
