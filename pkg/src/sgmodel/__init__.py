"""Truncated-series models of sub-Gaussian stochastic processes with
certified L_p(0, T) accuracy delta and reliability 1 - alpha."""

from .bounds import (
    AccuracyTarget,
    ConditionReport,
    check_conditions_generic,
    check_conditions_piecewise,
    check_conditions_power,
    max_admissible_cN,
    min_certified_delta,
    tail_bound_valid,
    tail_probability_bound,
)
from .karhunen_loeve import (
    AnalyticEigenpairs,
    EigenSystem,
    KernelSpec,
    KLTail,
    analytic_kl_tail,
    brownian_kernel,
    build_kl_model,
    cN_theorem9,
    cN_theorem10,
    cN_theorem11,
    custom_kernel,
    estimate_errors,
    nystrom_eigensystem,
    nystrom_extend,
    ou_kernel,
    simulate_kl,
    two_grid_eigensystem,
)
from .montecarlo import VerificationReport, lp_norm, reference_path, verify_plan
from .orlicz import (
    OrliczSpec,
    check_power_convexity,
    numeric_table,
    phi_conjugate,
    phi_conjugate_inverse,
    phi_density,
    phi_eval,
    piecewise_gamma,
    power_gamma,
)
from .quadrature import Grid, composite_gauss_legendre, grid_for_nodes
from .series import (
    CoefficientTerm,
    ModelPlan,
    SeriesDecomposition,
    SeriesTail,
    choose_N,
    cN_theorem7,
    cN_theorem8,
    evaluate_model,
    finite_tail,
    load_decomposition,
    residual_tau_bound,
    save_decomposition,
    zero_tail,
)
from .subgaussian import (
    SubGaussianSource,
    gaussian,
    rademacher,
    sample,
    substream,
    tau_of,
    tau_sum_bound,
    uniform_symmetric,
)

__version__ = "0.1.0"
