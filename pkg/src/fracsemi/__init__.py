"""Fractional heat semigroup, Dirichlet fractional Laplacian on intervals, and estimate checks."""
__version__ = "0.1.0"

from ._backend import NAME as BACKEND
from .discrete import (DiscreteOperator, Grid1D, SpectralDecomposition, assemble_dirichlet, form_apply,
                       kernel_matrix, resolvent_norm, semigroup_apply, solve_exterior_dirichlet, spectrum)
from .errors import (DimensionError, DomainError, FracSemiError, GridAlignmentError, MembershipError,
                     NonConvergenceError, QuadratureError, SingularResolventError)
from .fraclap import (ScalarField1D, balakrishnan_flap, convergence_to_laplacian, membership_L1s,
                      principal_value_flap, truncated_flap)
from .kernel import (KernelQuery, heat_kernel_fourier, heat_kernel_subordinated, poisson_kernel_closed,
                     self_similar_rescale)
from .specfun import FractionalOrder, NormalizationConstant, frac_constant, gamma, gaussian_kernel, stable_density
from .verify import CheckReport, SectorPoint, extend_estimate_constants, run_checks

__all__ = [
    "BACKEND", "CheckReport", "DimensionError", "DiscreteOperator", "DomainError", "FracSemiError",
    "FractionalOrder", "Grid1D", "GridAlignmentError", "KernelQuery", "MembershipError",
    "NonConvergenceError", "NormalizationConstant", "QuadratureError", "ScalarField1D", "SectorPoint",
    "SingularResolventError", "SpectralDecomposition", "assemble_dirichlet", "balakrishnan_flap",
    "convergence_to_laplacian", "extend_estimate_constants", "form_apply", "frac_constant", "gamma",
    "gaussian_kernel", "heat_kernel_fourier", "heat_kernel_subordinated", "kernel_matrix",
    "membership_L1s", "poisson_kernel_closed", "principal_value_flap", "resolvent_norm", "run_checks",
    "self_similar_rescale", "semigroup_apply", "solve_exterior_dirichlet", "spectrum", "stable_density",
    "truncated_flap",
]
