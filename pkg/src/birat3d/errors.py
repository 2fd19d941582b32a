"""Error taxonomy.

Every domain failure raised by this package derives from :class:`Birat3dError`
and carries a stable machine-readable ``code`` (snake_case).  The CLI maps
domain errors to exit status 1 and malformed input to exit status 2; the HTTP
service maps domain errors to 422 bodies ``{"error": code, "detail": ...}``.
"""
from __future__ import annotations


class Birat3dError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code

    def to_json(self) -> dict:
        return {"error": self.code, "detail": self.detail}


class InputError(Birat3dError):
    """Malformed input (bad JSON shape, unknown field, wrong arity).

    Distinct from domain errors: the CLI exits 2 on these, the service
    returns 422 all the same but with the input-level code.
    """

    code = "invalid_input"


# ---------------------------------------------------------------------------
# linear algebra / geometry


class RankError(Birat3dError):
    """A matrix does not have the rank the construction requires."""

    code = "rank_error"


class NonUniqueQuadric(Birat3dError):
    """More than one quadric passes through the prescribed configuration."""

    code = "non_unique_quadric"


class IrrationalSplit(Birat3dError):
    """A rank-2 quadric splits into planes only over a quadratic extension."""

    code = "irrational_split"


class ComplexSplit(Birat3dError):
    """A rank-2 quadric splits into a complex-conjugate pair of planes."""

    code = "complex_split"


class IrrationalIntersection(Birat3dError):
    """An intersection exists but has irrational coordinates (exact mode)."""

    code = "irrational_intersection"


class EmptyIntersection(Birat3dError):
    """The requested intersection is empty over the reals."""

    code = "empty_intersection"


class ComplexTransversals(Birat3dError):
    """The common transversals of four lines form a complex-conjugate pair."""

    code = "complex_transversals"


class DegenerateConfiguration(Birat3dError):
    """An input configuration violates a genericity assumption."""

    code = "degenerate_configuration"


# ---------------------------------------------------------------------------
# polynomial arithmetic


class DegreeMismatch(Birat3dError):
    """Operands do not have the multidegrees the operation requires."""

    code = "degree_mismatch"


class NotDivisible(Birat3dError):
    """Exact polynomial division has a nonzero remainder."""

    code = "not_divisible"


# ---------------------------------------------------------------------------
# control nets and classification


class DegenerateFace(Birat3dError):
    """A boundary face spans too small a linear space (rank <= 2)."""

    code = "degenerate_face"


class AmbiguousClass(Birat3dError):
    """Float tolerances cannot separate two classification outcomes."""

    code = "ambiguous_class"


class QuadricBoundary(Birat3dError):
    """An operation that needs planar faces met a quadric face."""

    code = "quadric_boundary"


class ZeroPairing(Birat3dError):
    """A control point lies on its pairing reference plane."""

    code = "zero_pairing"


class DegenerateWeights(Birat3dError):
    """A weight vector contains a zero (or a factor pair has a zero entry)."""

    code = "degenerate_weights"


# ---------------------------------------------------------------------------
# birationality


class NotRankOne(Birat3dError):
    """A scaled weight tensor is not rank one."""

    code = "not_rank_one"


class NotBirational(Birat3dError):
    """The net does not define a birational map."""

    code = "not_birational"


class FormulaMismatch(Birat3dError):
    """Two routes that must agree produced different results."""

    code = "formula_mismatch"


class BasePoint(Birat3dError):
    """Evaluation hit the base locus (all coordinates vanish)."""

    code = "base_point"


# ---------------------------------------------------------------------------
# constructions


class NonAffineIntersection(Birat3dError):
    """A construction produced a required point at infinity."""

    code = "non_affine_intersection"


class PointAtApex(Birat3dError):
    """A control point parameter places the point at the apex."""

    code = "point_at_apex"


class NonConcurrentLines(Birat3dError):
    """Lines that must share a point do not."""

    code = "non_concurrent_lines"


class PlaneContainsSecant(Birat3dError):
    """A sampled plane contains a secant line it must meet transversally."""

    code = "plane_contains_secant"


class TangencyDegeneracy(Birat3dError):
    """A line meets a conic tangentially where two points are required."""

    code = "tangency_degeneracy"


class ClosureFailure(Birat3dError):
    """The final incidences of a construction do not close up."""

    code = "closure_failure"


class FrameDegenerate(Birat3dError):
    """A deformation frame left the nondegeneracy locus."""

    code = "frame_degenerate"

    def __init__(self, frame: int, detail: str = ""):
        super().__init__(detail or f"frame {frame} is degenerate")
        self.frame = frame


# ---------------------------------------------------------------------------
# service


class StaleRevision(Birat3dError):
    """A mutation carried a revision older than the session's current one."""

    code = "stale_revision"


class UnknownSession(Birat3dError):
    """No session with the given id."""

    code = "unknown_session"
