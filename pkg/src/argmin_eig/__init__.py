"""Determinant-free eigenpair computation by residual minimization.

The package finds an eigenpair of a complex square matrix by driving the
normalized residual ``||T v - lam v|| / ||v||`` to its global minimum over
unit vectors and a bounded shift disk, and ships numerical verification
suites for the operator identities and inequalities that make the approach
sound.
"""

__version__ = "0.1.0"

from .extension import (
    ExtensionResult,
    InverseBoundReport,
    decay_term,
    extend_pair,
    inverse_norm_bound_check,
    min_residual_at_shift,
)
from .identities import (
    IdentityReport,
    RootsOfUnity,
    filter_sum,
    geometric_identity_check,
    power_difference_identity_check,
    roots_of_unity,
    sum_inverses_check,
)
from .linalg import (
    NORM_KINDS,
    MatrixParseError,
    SingularMatrixError,
    apply,
    coercivity_gap,
    load_matrix,
    matrix_to_json,
    operator_bound,
    residual,
    residual_ratio,
    solve,
    vec_norm,
)
from .minimizer import (
    CandidatePair,
    Certificate,
    SearchDomain,
    best_lambda,
    default_tolerance,
    descend,
    improve_v,
    minimize,
    search_domain,
)
from .oracle import NonConvergenceError, SpectrumEstimate, reference_spectrum, smallest_singular_direction

__all__ = [
    "NORM_KINDS",
    "CandidatePair",
    "Certificate",
    "ExtensionResult",
    "IdentityReport",
    "InverseBoundReport",
    "MatrixParseError",
    "NonConvergenceError",
    "RootsOfUnity",
    "SearchDomain",
    "SingularMatrixError",
    "SpectrumEstimate",
    "apply",
    "best_lambda",
    "coercivity_gap",
    "decay_term",
    "default_tolerance",
    "descend",
    "extend_pair",
    "filter_sum",
    "geometric_identity_check",
    "improve_v",
    "inverse_norm_bound_check",
    "load_matrix",
    "matrix_to_json",
    "min_residual_at_shift",
    "minimize",
    "operator_bound",
    "power_difference_identity_check",
    "reference_spectrum",
    "residual",
    "residual_ratio",
    "roots_of_unity",
    "search_domain",
    "smallest_singular_direction",
    "solve",
    "sum_inverses_check",
    "vec_norm",
]
