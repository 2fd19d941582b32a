"""Dual-mode scalar kernel: exact rationals and floats behind one interface.

Every geometric predicate in this package is mode-dependent: in exact mode a
scalar is a :class:`fractions.Fraction` and "zero" means zero; in float mode a
scalar is a ``float`` and "zero" means below a relative threshold.  This module
owns that distinction so the rest of the package can ask questions
(``is_zero``, ``rank``, ``nullspace``) without caring which world it is in.

The mode of a computation is decided by its data: a net whose scalars are all
rational is exact, a single float anywhere makes the whole computation float.
``BIRAT3D_MODE=float`` forces float mode globally (useful for benchmarking the
tolerance behaviour on exact inputs); ``BIRAT3D_MODE=exact`` is an assertion
and raises if a float sneaks in.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InputError, RankError

Scalar = Union[Fraction, float]

#: default tolerances for float mode; exact mode ignores both.
RANK_RTOL = 1e-9
ZERO_ATOL = 1e-12


# ---------------------------------------------------------------------------
# parsing / serialization (the JSON scalar convention)


def parse_scalar(value) -> Scalar:
    """Parse a JSON scalar.

    Strings are exact: ``"3/4"``, ``"-2"``, and decimal strings like
    ``"0.16"`` all become :class:`Fraction`.  Ints are exact.  Floats stay
    floats and taint the computation into float mode.
    """
    if isinstance(value, bool):
        raise InputError(f"boolean is not a scalar: {value!r}")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse scalar {value!r}: {exc}") from None
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return value
    raise InputError(f"cannot parse scalar of type {type(value).__name__}")


def scalar_to_json(x: Scalar):
    """Serialize a scalar: Fractions become ``"p/q"`` / ``"p"`` strings."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return float(x)


def as_float(x: Scalar) -> float:
    return float(x)


def is_exact(x: Scalar) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def mode_of(values: Iterable[Scalar]) -> str:
    """``"exact"`` iff every scalar is rational, else ``"float"``.

    Honors the ``BIRAT3D_MODE`` override.
    """
    mode = "exact"
    for v in values:
        if not is_exact(v):
            mode = "float"
            break
    forced = os.environ.get("BIRAT3D_MODE")
    if forced == "float":
        return "float"
    if forced == "exact" and mode == "float":
        raise InputError("BIRAT3D_MODE=exact but the data contains floats")
    if forced not in (None, "", "exact", "float"):
        raise InputError(f"unknown BIRAT3D_MODE {forced!r}")
    return mode


def coerce_mode(values: Sequence[Scalar], mode: str) -> tuple:
    """Return values as a tuple converted to the given mode's scalar type."""
    if mode == "float":
        return tuple(float(v) for v in values)
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


# ---------------------------------------------------------------------------
# the context


class ScalarContext:
    """Mode-aware predicates and dense linear algebra.

    Parameters
    ----------
    mode : str
        ``"exact"`` or ``"float"``.
    rank_rtol : float
        Relative singular-value threshold for float rank decisions.
    zero_atol : float
        Additive threshold for float zero tests, scaled by the magnitude of
        the data it is applied against.
    """

    def __init__(self, mode: str, rank_rtol: float = RANK_RTOL,
                 zero_atol: float = ZERO_ATOL):
        if mode not in ("exact", "float"):
            raise InputError(f"unknown mode {mode!r}")
        self.mode = mode
        self.rank_rtol = rank_rtol
        self.zero_atol = zero_atol

    def __repr__(self):
        return f"ScalarContext({self.mode!r})"

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    # -- scalar predicates ---------------------------------------------------

    def is_zero(self, x: Scalar, scale: float = 1.0) -> bool:
        if self.exact:
            return x == 0
        return abs(x) <= self.zero_atol * max(1.0, scale)

    def vec_is_zero(self, v: Sequence[Scalar], scale: float = 1.0) -> bool:
        if self.exact:
            return all(x == 0 for x in v)
        return all(self.is_zero(x, scale) for x in v)

    def eq(self, x: Scalar, y: Scalar) -> bool:
        if self.exact:
            return x == y
        s = max(abs(float(x)), abs(float(y)))
        return self.is_zero(x - y, s)

    def proportional(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
        """Projective equality of two coefficient vectors."""
        if len(u) != len(v):
            return False
        if self.exact:
            if all(x == 0 for x in u) or all(x == 0 for x in v):
                return all(x == 0 for x in u) and all(x == 0 for x in v)
            # cross products must vanish
            return all(u[i] * v[j] == u[j] * v[i]
                       for i in range(len(u)) for j in range(i + 1, len(u)))
        import numpy as np

        a = np.asarray([float(x) for x in u])
        b = np.asarray([float(x) for x in v])
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        if na < self.zero_atol or nb < self.zero_atol:
            return na < self.zero_atol and nb < self.zero_atol
        a, b = a / na, b / nb
        return min(np.linalg.norm(a - b), np.linalg.norm(a + b)) < 1e-7

    # -- linear algebra --------------------------------------------------------

    def rank(self, rows: Sequence[Sequence[Scalar]]) -> int:
        """Rank of a dense matrix given as rows."""
        if not rows:
            return 0
        if self.exact:
            return _rank_exact([list(r) for r in rows])
        import numpy as np

        a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
        if not a.size:
            return 0
        sv = np.linalg.svd(a, compute_uv=False)
        if sv[0] == 0.0:
            return 0
        return int((sv > self.rank_rtol * sv[0]).sum())

    def rank_margin(self, rows: Sequence[Sequence[Scalar]]) -> float:
        """Float-mode confidence: ratio of the first dropped singular value
        to the threshold (values near 1 mean an ambiguous rank call).

        Exact mode returns ``inf``.
        """
        if self.exact:
            return math.inf
        import numpy as np

        a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
        sv = np.linalg.svd(a, compute_uv=False)
        if sv[0] == 0.0:
            return math.inf
        thresh = self.rank_rtol * sv[0]
        kept = sv[sv > thresh]
        dropped = sv[sv <= thresh]
        ratios = []
        if len(kept):
            ratios.append(thresh / kept[-1])  # how close the last kept sv is
        if len(dropped):
            ratios.append(dropped[0] / thresh)
        if not ratios:
            return math.inf
        m = max(ratios)
        return 1.0 / m if m > 0 else math.inf

    def nullspace(self, rows: Sequence[Sequence[Scalar]], ncols: int | None = None
                  ) -> list[tuple]:
        """Basis of the right nullspace, as tuples of scalars.

        Exact mode returns rational vectors cleared to primitive integers with
        the first nonzero entry positive; float mode returns unit vectors with
        the first significant entry positive.
        """
        if ncols is None:
            if not rows:
                raise InputError("nullspace of empty matrix needs ncols")
            ncols = len(rows[0])
        if not rows:
            basis = []
            for i in range(ncols):
                v = [Fraction(0)] * ncols if self.exact else [0.0] * ncols
                v[i] = Fraction(1) if self.exact else 1.0
                basis.append(tuple(v))
            return basis
        if self.exact:
            return _nullspace_exact([list(r) for r in rows], ncols)
        import numpy as np

        a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
        u, sv, vt = np.linalg.svd(a, full_matrices=True)
        if sv.size and sv[0] > 0:
            r = int((sv > self.rank_rtol * sv[0]).sum())
        else:
            r = 0
        out = []
        for i in range(r, ncols):
            v = vt[i]
            for x in v:
                if abs(x) > 1e-9:
                    if x < 0:
                        v = -v
                    break
            out.append(tuple(float(x) for x in v))
        return out

    def solve(self, rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]
              ) -> tuple:
        """Solve ``A x = b`` requiring a unique solution.

        Raises
        ------
        RankError
            If the system is inconsistent or underdetermined.
        """
        n = len(rows[0])
        aug = [list(r) + [b] for r, b in zip(rows, rhs)]
        if self.rank(rows) != n:
            raise RankError(f"system is underdetermined (rank < {n})")
        if self.rank(aug) != self.rank(rows):
            raise RankError("system is inconsistent")
        if self.exact:
            sol = _solve_exact([list(r) for r in rows], list(rhs))
            return tuple(sol)
        import numpy as np

        a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
        b = np.asarray([float(x) for x in rhs], dtype=float)
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        return tuple(float(v) for v in x)

    def solve_overdetermined(self, rows: Sequence[Sequence[Scalar]],
                             rhs: Sequence[Scalar]) -> tuple | None:
        """Solve a possibly overdetermined ``A x = b``; None if inconsistent.

        Underdetermined-but-consistent systems return the solution with the
        free coordinates set to zero.
        """
        n = len(rows[0])
        if self.exact:
            aug = [[Fraction(x) for x in r] + [Fraction(b)]
                   for r, b in zip(rows, rhs)]
            red, pivots = _rref_exact(aug)
            if n in pivots:
                return None
            sol = [Fraction(0)] * n
            for r, pc in enumerate(pivots):
                sol[pc] = red[r][n]
            return tuple(sol)
        import numpy as np

        a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
        b = np.asarray([float(x) for x in rhs], dtype=float)
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        resid = np.linalg.norm(a @ x - b)
        scale = (np.linalg.norm(a) * max(np.linalg.norm(x), 1.0)
                 + np.linalg.norm(b))
        if resid > 1e-8 * max(scale, 1.0):
            return None
        return tuple(float(v) for v in x)

    def det(self, rows: Sequence[Sequence[Scalar]]) -> Scalar:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InputError("det of a non-square matrix")
        if self.exact:
            return _det_exact([list(r) for r in rows])
        import numpy as np

        a = np.asarray([[float(x) for x in r] for r in rows], dtype=float)
        return float(np.linalg.det(a))


EXACT = ScalarContext("exact")
FLOAT = ScalarContext("float")


def context_for(values: Iterable[Scalar]) -> ScalarContext:
    return EXACT if mode_of(values) == "exact" else FLOAT


# ---------------------------------------------------------------------------
# exact dense linear algebra (plain Fraction elimination; matrices here are
# tiny — at most 12x12 — so clarity beats fraction-free cleverness)


def _rank_exact(rows: list[list[Fraction]]) -> int:
    m, n = len(rows), len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for r in range(rank + 1, m):
            if a[r][col] != 0:
                f = a[r][col] / pv
                for c in range(col, n):
                    a[r][c] -= f * a[rank][c]
        rank += 1
        col += 1
    return rank


def _rref_exact(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m, n = len(rows), len(rows[0])
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        a[rank] = [x / pv for x in a[rank]]
        for r in range(m):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    return a, pivots


def _nullspace_exact(rows: list[list[Fraction]], n: int) -> list[tuple]:
    a, pivots = _rref_exact(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(primitive(v))
    return basis


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows[0])
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    a, pivots = _rref_exact(aug)
    # unique solution guaranteed by caller: pivots == [0..n-1]
    sol = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        if pc < n:
            sol[pc] = a[r][n]
    return sol


def _det_exact(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / pv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


# ---------------------------------------------------------------------------
# normalization conventions


def first_nonzero_index(v: Sequence[Scalar], ctx: ScalarContext | None = None) -> int:
    """Index of the first (significantly) nonzero entry, or -1."""
    if ctx is None or ctx.exact:
        for i, x in enumerate(v):
            if x != 0:
                return i
        return -1
    scale = max((abs(float(x)) for x in v), default=0.0)
    for i, x in enumerate(v):
        if abs(float(x)) > 1e-9 * max(1.0, scale):
            return i
    return -1


def scale_first_one(v: Sequence[Scalar], ctx: ScalarContext | None = None) -> tuple:
    """Scale a coefficient vector so its first nonzero entry is 1.

    This is the package-wide representative convention for reference forms
    (boundary planes, pairing planes): it makes pairing values, and therefore
    the scaled-weight tensors built from them, reproducible.
    """
    i = first_nonzero_index(v, ctx)
    if i < 0:
        raise InputError("cannot normalize the zero vector")
    p = v[i]
    return tuple(x / p for x in v)


def primitive(v: Sequence[Scalar]) -> tuple:
    """Clear denominators of a rational vector: integer entries, gcd 1,
    first nonzero entry positive.  Floats are returned sign-normalized with
    unit max-norm instead.
    """
    if all(is_exact(x) for x in v):
        fr = [Fraction(x) for x in v]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        g = 0
        for x in ints:
            g = math.gcd(g, abs(x))
        if g == 0:
            return tuple(Fraction(0) for _ in v)
        ints = [x // g for x in ints]
        for x in ints:
            if x != 0:
                if x < 0:
                    ints = [-y for y in ints]
                break
        return tuple(Fraction(x) for x in ints)
    vals = [float(x) for x in v]
    m = max((abs(x) for x in vals), default=0.0)
    if m == 0.0:
        return tuple(vals)
    vals = [x / m for x in vals]
    for x in vals:
        if abs(x) > 1e-9:
            if x < 0:
                vals = [-y for y in vals]
            break
    return tuple(vals)


# ---------------------------------------------------------------------------
# rational square roots and binary quadratics


def fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None if it is not a square."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def binary_quadratic_roots(a: Scalar, b: Scalar, c: Scalar, ctx: ScalarContext
                           ) -> list[tuple] | None:
    """Projective roots of ``a x0^2 + b x0 x1 + c x1^2``.

    Returns a list of ``(x0, x1)`` pairs (length 0, 1, or 2; a double root
    appears once), or ``None`` when the form vanishes identically.  In exact
    mode an irreducible-but-real form returns the marker list
    ``["irrational"]`` and a negative discriminant returns ``[]`` — callers
    translate those into their own error vocabulary.
    """
    if ctx.is_zero(a) and ctx.is_zero(b) and ctx.is_zero(c):
        return None
    if ctx.is_zero(a, scale=max(abs(float(b)), abs(float(c)), 1.0)):
        # factor x1 * (b x0 + c x1)
        roots = [(_one(ctx), _zero(ctx))]
        if not ctx.is_zero(b):
            r = (-c, b)
            if not _same_root(roots[0], r, ctx):
                roots.append(r)
        return roots
    disc = b * b - 4 * a * c
    if ctx.exact:
        if disc < 0:
            return []
        s = fraction_sqrt(Fraction(disc))
        if s is None:
            return ["irrational"]
        if s == 0:
            return [(-b, 2 * a)]
        return [(-b + s, 2 * a), (-b - s, 2 * a)]
    scale = max(abs(float(a)), abs(float(b)), abs(float(c)))
    if disc < -1e-9 * scale * scale:
        return []
    if disc < 1e-9 * scale * scale:
        return [(-b, 2 * a)]
    s = math.sqrt(disc)
    return [(-b + s, 2 * a), (-b - s, 2 * a)]


def _same_root(r1, r2, ctx) -> bool:
    return ctx.is_zero(r1[0] * r2[1] - r1[1] * r2[0],
                       scale=max(1.0, *(abs(float(x)) for x in (*r1, *r2))))


def _zero(ctx):
    return Fraction(0) if ctx.exact else 0.0


def _one(ctx):
    return Fraction(1) if ctx.exact else 1.0
