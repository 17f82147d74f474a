"""Weighted mean inequalities: chains, gap bounds and operator analogues."""

from .convex import (
    BUILTINS,
    ConvexFnSpec,
    ConvexityError,
    chain_eval,
    convexity_gap,
    endpoint_average,
    gap_sandwich_check,
    get_builtin,
    make_convex_fn,
    maxweight_lower,
    maxweight_upper,
    midpoint_estimate,
    refined_gap_check,
    sharp_lower,
    sharp_upper,
    split_integral_avg,
    trapezoid_estimate,
)
from .bounds import (
    curvature_gap_bounds,
    deriv_gap_bounds,
    derivative_bounds,
    identric_ratio_refinement,
    identric_ratio_reverse,
    logmean_diff_refinement,
    logmean_diff_reverse,
    midpoint_gap_bounds,
    trapezoid_gap_bounds,
)
from .harness import (
    SuiteConfig,
    SuiteReport,
    merge_reports,
    reference_value_check,
    run_bounds_suite,
    run_operator_suite,
    run_scalar_suite,
)
from .operators import (
    LoewnerVerdict,
    NumericalBreakdown,
    OperatorChainReport,
    SpdMatrix,
    loewner_leq,
    logmean_gm_check,
    matrix_function,
    operator_chain,
    representing_chain,
)
from .quadrature import QuadConfig, QuadratureError, integrate
from .reports import ChainReport, GapBoundReport
from .scalar import (
    identric_chain,
    log_mean_unit,
    log_weighted_identric,
    logarithmic_chain,
    weighted_arithmetic,
    weighted_geometric,
    weighted_identric,
    weighted_logarithmic,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTINS",
    "ChainReport",
    "ConvexFnSpec",
    "ConvexityError",
    "GapBoundReport",
    "LoewnerVerdict",
    "NumericalBreakdown",
    "OperatorChainReport",
    "QuadConfig",
    "QuadratureError",
    "SpdMatrix",
    "SuiteConfig",
    "SuiteReport",
    "chain_eval",
    "convexity_gap",
    "curvature_gap_bounds",
    "deriv_gap_bounds",
    "derivative_bounds",
    "endpoint_average",
    "gap_sandwich_check",
    "get_builtin",
    "identric_chain",
    "identric_ratio_refinement",
    "identric_ratio_reverse",
    "integrate",
    "loewner_leq",
    "log_mean_unit",
    "log_weighted_identric",
    "logarithmic_chain",
    "logmean_diff_refinement",
    "logmean_diff_reverse",
    "logmean_gm_check",
    "make_convex_fn",
    "matrix_function",
    "maxweight_lower",
    "maxweight_upper",
    "merge_reports",
    "midpoint_estimate",
    "midpoint_gap_bounds",
    "operator_chain",
    "reference_value_check",
    "refined_gap_check",
    "representing_chain",
    "run_bounds_suite",
    "run_operator_suite",
    "run_scalar_suite",
    "sharp_lower",
    "sharp_upper",
    "split_integral_avg",
    "trapezoid_estimate",
    "trapezoid_gap_bounds",
    "weighted_arithmetic",
    "weighted_geometric",
    "weighted_identric",
    "weighted_logarithmic",
]
