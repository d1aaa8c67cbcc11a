"""Best constants in inf|f^(n)| <= C ||f||_p through monic polynomials of least L^p norm."""

from .constants import (
    ConstantReport,
    TestFunction,
    check_derivative_inequality,
    closed_form_constant,
    constant,
    derivative_gallery,
    sandwich_bounds,
    small_p_bounds,
    submultiplicativity_check,
)
from .errors import (
    CheckFailed,
    DegreeOutOfRange,
    ExponentMismatch,
    InequalityViolated,
    InvalidP,
    InvalidTolerance,
    LpExtremalError,
    NotConverged,
    ToleranceNotReached,
)
from .explorer import limit_ratio_table, root_trajectory_sweep
from .extremal import (
    ExtremalSolution,
    Method,
    SolverOptions,
    equioscillation_check,
    oracle_extremal,
    solve_extremal,
)
from .polynomials import (
    CANONICAL,
    UNIT,
    Interval,
    MonicPolynomial,
    SymmetricRootVector,
    chebyshev_T,
    chebyshev_U,
    evaluate,
    legendre_P,
    rescale,
)
from .quadrature import PNorm, QuadratureResult, lp_norm, lp_norm_p_power, weighted_chebyshev_norm

__version__ = "0.1.0"
