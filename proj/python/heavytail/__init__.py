"""Eigenvalue limit laboratory for heavy-tailed sample covariance matrices."""

from ._heavytail import (
    DomainError,
    EstimationError,
    ParameterError,
    ProcessSpec,
    TailLaw,
    __version__,
    b_empirical,
    b_sv_analytic,
    build_matrix,
    extremal_index_blocks,
    frechet_cdf,
    gamma_points,
    garch_stationarity_margin,
    hill_default_k,
    hill_estimate,
    ks_distance,
    limit_topk_sample,
    moment_h,
    normalizing_constant,
    run_experiment,
    sample_tail,
    simulate_path,
    solve_garch_tail_index,
    top_eigenvalues,
)

__all__ = [
    "DomainError",
    "EstimationError",
    "ParameterError",
    "ProcessSpec",
    "TailLaw",
    "__version__",
    "b_empirical",
    "b_sv_analytic",
    "build_matrix",
    "extremal_index_blocks",
    "frechet_cdf",
    "gamma_points",
    "garch_stationarity_margin",
    "hill_default_k",
    "hill_estimate",
    "ks_distance",
    "limit_topk_sample",
    "moment_h",
    "normalizing_constant",
    "run_experiment",
    "sample_tail",
    "simulate_path",
    "solve_garch_tail_index",
    "top_eigenvalues",
]
