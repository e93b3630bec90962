"""Numerical evaluation of the Poisson fixed-point predictions."""

from .poisson import pois_head, pois_tail, truncated_mean
from .thresholds import (
    DEFAULT,
    AnalyticTable,
    SolverConfig,
    ThresholdReport,
    analytic_table,
    beta,
    deep_threshold,
    gamma_threshold,
    lambda_root,
    rank_density,
    threshold_report,
)
from .weight import WeightEstimate, adaptive_simpson, limit_weight, limit_weight_estimate

__all__ = [
    "DEFAULT",
    "AnalyticTable",
    "SolverConfig",
    "ThresholdReport",
    "WeightEstimate",
    "adaptive_simpson",
    "analytic_table",
    "beta",
    "deep_threshold",
    "gamma_threshold",
    "lambda_root",
    "limit_weight",
    "limit_weight_estimate",
    "pois_head",
    "pois_tail",
    "rank_density",
    "threshold_report",
    "truncated_mean",
]
