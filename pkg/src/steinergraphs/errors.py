"""Exception hierarchy shared across the package.

Everything raised deliberately by this package derives from SteinerError,
so callers can catch one type.  Errors that carry a counterexample expose
it as the ``witness`` attribute.
"""

from __future__ import annotations


class SteinerError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeError(SteinerError):
    """A field characteristic that is not a prime number."""


class LimitExceededError(SteinerError):
    """An enumeration or search exceeded its configured resource limit.

    For resumable searches the ``checkpoint`` attribute holds the state
    needed to continue and ``partial`` holds results gathered so far.
    """

    def __init__(self, message: str, checkpoint=None, partial=None):
        super().__init__(message)
        self.checkpoint = checkpoint
        self.partial = partial


class MixedFieldsError(SteinerError):
    """Operands that do not belong to the same finite field."""


class DimensionMismatchError(SteinerError):
    """Vectors or matrices with incompatible shapes."""


class EqualPointsError(SteinerError):
    """Two points that were required to be distinct coincide."""


class PointOnLineError(SteinerError):
    """A point that was required to avoid a line lies on it."""


class LinesNotSkewError(SteinerError):
    """Lines that were required to be pairwise skew are not."""


class NotCoplanarError(SteinerError):
    """Three lines that do not span a common 3-dimensional flat."""


class LineInHyperplaneError(SteinerError):
    """A line that lies entirely inside the hyperplane being removed."""


class HyperplaneHitsLineError(SteinerError):
    """A hyperplane that was required to avoid a line family meets it."""


class DependentVectorsError(SteinerError):
    """Vectors that were required to be linearly independent are not."""


class WrongCountError(SteinerError):
    """An input collection has the wrong number of members."""


class SymmetricDesignError(SteinerError):
    """A symmetric design: its block graph is complete, so the strongly
    regular parameter formulas degenerate."""


class NonIntegralError(SteinerError):
    """A parameter formula did not produce an integer."""


class IrrationalEigenvaluesError(SteinerError):
    """Eigenvalues of the parameter set are irrational (conference-graph
    style discriminant that is not a perfect square)."""


class NotStronglyRegularError(SteinerError):
    """The graph is not strongly regular; ``witness`` names the offending
    vertex pair and counts."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAnEigenvalueError(SteinerError):
    """A number that is not an eigenvalue of the graph in question."""


class ZeroFunctionError(SteinerError):
    """The all-zero function, which is excluded from eigenfunction work."""


class NotAnEigenfunctionError(SteinerError):
    """The function fails the vertex-wise eigenvalue equation; ``witness``
    is (vertex, lhs, rhs)."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotOptimalError(SteinerError):
    """An eigenfunction whose support is not of the minimum size, where
    minimum-support structure was required."""


class NotEquitableError(SteinerError):
    """The partition is not equitable; ``witness`` is a vertex pair with
    differing counts, (part_index, (vertex_a, count_a), (vertex_b, count_b))."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InconsistentQuotientError(SteinerError):
    """A 2x2 quotient matrix whose two off-diagonal eigenvalue readings
    disagree."""


class NotTwoValuedError(SteinerError):
    """A function that does not take exactly two values."""


class NotSignFunctionError(SteinerError):
    """A function that is not (1, -1, 0)-valued with equal positive and
    negative parts."""


class BadDecompositionError(SteinerError):
    """A claimed eigenfunction decomposition that does not sum to the
    target function or contains a non-eigenfunction term."""


class EigenvalueClashError(SteinerError):
    """A decomposition term whose eigenvalue collides with an excluded
    one."""
