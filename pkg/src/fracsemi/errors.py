"""Exception hierarchy shared by all modules."""


class FracSemiError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FracSemiError, ValueError):
    """An argument lies outside the domain of the operation."""


class QuadratureError(FracSemiError, RuntimeError):
    """Adaptive quadrature exhausted its evaluation budget."""


class NonConvergenceError(FracSemiError, RuntimeError):
    """An iterative method (eigensolver, CG, epsilon-limit) failed to converge."""


class MembershipError(DomainError):
    """A field's decay metadata does not certify membership in the weighted L1 space."""


class SingularResolventError(FracSemiError, ArithmeticError):
    """The resolvent was requested (numerically) on the spectrum."""


class GridAlignmentError(DomainError):
    """Two grids are not nested with aligned cells of equal width."""


class DimensionError(DomainError):
    """Vector or matrix dimensions do not match."""
