"""Core roots, deep thresholds and the quantities derived from them.

Every function takes the mean degree ``d`` of G(n, d/n); the uniform model
G(n, cn) corresponds to ``d = 2c``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from ..errors import BelowThreshold, DegenerateInput, InvalidArgument
from .poisson import pois_tail, truncated_mean
from .roots import bisect, golden_min


@dataclass(frozen=True)
class SolverConfig:
    abs_tol: float = 1e-12
    max_iter: int = 200
    rel_tol: float = 1e-8
    eps_tail: float = 1e-12

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "eps_tail"):
            if not getattr(self, name) > 0:
                raise InvalidArgument(f"{name} must be positive")
        if self.max_iter < 1:
            raise InvalidArgument("max_iter must be positive")


DEFAULT = SolverConfig()


@functools.lru_cache(maxsize=None)
def gamma_threshold(k: int, cfg: SolverConfig = DEFAULT) -> tuple[float, float]:
    """``(gamma_k, argmin)``: the infimum of ``lam / pi_{k-1}(lam)`` over ``lam > 0``.

    For ``k = 2`` the infimum 1 is only approached as ``lam -> 0`` and
    ``(1.0, 0.0)`` is returned.
    """
    if k < 2:
        raise InvalidArgument(f"core thresholds need k >= 2, got {k}")
    if k == 2:
        return 1.0, 0.0

    def ratio(lam):
        return lam / pois_tail(k - 1, lam)

    lam = golden_min(ratio, 1e-6, 4.0 * k + 10.0, tol=cfg.abs_tol, max_iter=cfg.max_iter)
    return ratio(lam), lam


def lambda_root(k: int, d: float, cfg: SolverConfig = DEFAULT) -> float:
    """Larger root of ``lam = d * pi_{k-1}(lam)``.

    Raises BelowThreshold unless ``d`` exceeds ``gamma_k`` by more than
    ``cfg.abs_tol``.
    """
    gamma, argmin = gamma_threshold(k, cfg)
    if not d > gamma + cfg.abs_tol:
        raise BelowThreshold(f"mean degree {d} is not above gamma_{k} = {gamma:.12g}")

    def residual(lam):
        return lam - d * pois_tail(k - 1, lam)

    if residual(argmin) > 0:
        raise BelowThreshold(f"mean degree {d} is too close to gamma_{k} = {gamma:.12g}")
    return bisect(residual, argmin, d, max_iter=cfg.max_iter)


@dataclass(frozen=True)
class ThresholdReport:
    """Both candidate deep thresholds for one k, in mean-degree units.

    ``d_star`` is where the (k+1)-core density reaches ``2k``;
    ``d_alt`` solves ``E_k(d) = 2k`` instead.  ``degenerate`` is set when
    the core is already denser than ``2k`` at the moment it appears.
    """

    k: int
    gamma: float
    argmin: float
    d_star: float
    lambda_star: float
    d_alt: float
    degenerate: bool

    @property
    def discrepancy(self) -> float:
        return self.d_alt - self.d_star


def _increasing_root(f, lo: float, cfg: SolverConfig) -> float:
    hi = max(2.0 * lo, 1.0)
    while f(hi) <= 0:
        hi *= 2.0
    return bisect(f, lo, hi, max_iter=cfg.max_iter)


@functools.lru_cache(maxsize=None)
def threshold_report(k: int, cfg: SolverConfig = DEFAULT) -> ThresholdReport:
    if k < 2:
        raise InvalidArgument(f"deep thresholds need k >= 2, got {k}")
    gamma, argmin = gamma_threshold(k + 1, cfg)
    target = 2.0 * k

    def excess(lam):
        return truncated_mean(k + 1, lam) - target

    d_alt = _increasing_root(lambda x: truncated_mean(k, x) - target, 1e-9, cfg)
    if excess(argmin) >= 0:
        return ThresholdReport(k, gamma, argmin, gamma, argmin, d_alt, True)
    lam = _increasing_root(excess, argmin, cfg)
    return ThresholdReport(k, gamma, argmin, lam / pois_tail(k, lam), lam, d_alt, False)


def deep_threshold(k: int, cfg: SolverConfig = DEFAULT) -> float:
    """Mean degree at which the (k+1)-core density of G(n, d/n) reaches ``2k``.

    The core density ``E_{k+1}(lam)`` is increasing along the larger-root
    branch, so the equation is solved for ``lam`` and mapped back through
    ``d = lam / pi_k(lam)``.
    """
    return threshold_report(k, cfg).d_star


def _onset(k: int, cfg: SolverConfig) -> float:
    return 1.0 if k == 1 else deep_threshold(k, cfg)


def beta(k: int, d: float, cfg: SolverConfig = DEFAULT) -> float:
    """Fraction of vertices in the giant k-deeply connected component.

    Zero below the onset (``d <= 1`` for ``k = 1``, ``d < d*_k`` otherwise);
    above it the largest root of ``beta = pi_k(beta * d)``.
    """
    if k < 1 or not d >= 0:
        raise InvalidArgument(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    onset = _onset(k, cfg)
    if d < onset or (k == 1 and d == onset):
        return 0.0
    try:
        return lambda_root(k + 1, d, cfg) / d
    except BelowThreshold:
        return 0.0


def rank_density(k: int, d: float, cfg: SolverConfig = DEFAULT) -> float:
    """Limit of ``rank / n`` for G(n, cn) with ``c = d / 2``."""
    if k < 2:
        raise InvalidArgument(f"rank density is defined for k >= 2, got {k}")
    if not d >= 0:
        raise InvalidArgument(f"mean degree must be non-negative, got {d}")
    c = d / 2.0
    if d < deep_threshold(k, cfg):
        return c
    lam = lambda_root(k + 1, d, cfg)
    return c - lam * pois_tail(k, lam) / 2.0 + k * pois_tail(k + 1, lam)


@dataclass(frozen=True)
class AnalyticTable:
    """Predictions for one ``(k, d)``.

    Core quantities refer to the (k+1)-core and are zero (density NaN) when
    ``d`` is below its emergence point.  ``rank_density`` is NaN for k = 1.
    """

    k: int
    d: float
    lam: float
    pi_k: float
    pi_k1: float
    beta: float
    rank_density: float
    core_fraction: float
    core_density: float

    FIELDS = ("k", "d", "lam", "pi_k", "pi_k1", "beta", "rank_density",
              "core_fraction", "core_density")

    def row(self) -> dict:
        return {name: getattr(self, name) for name in self.FIELDS}


def analytic_table(k: int, d: float, cfg: SolverConfig = DEFAULT) -> AnalyticTable:
    if k < 1 or not d >= 0:
        raise InvalidArgument(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    try:
        lam = lambda_root(k + 1, d, cfg)
    except BelowThreshold:
        lam = 0.0
    core_fraction = pois_tail(k + 1, lam)
    try:
        core_density = truncated_mean(k + 1, lam) if lam > 0 else math.nan
    except DegenerateInput:
        core_density = math.nan
    rd = rank_density(k, d, cfg) if k >= 2 else math.nan
    return AnalyticTable(k, d, lam, pois_tail(k, lam), core_fraction, beta(k, d, cfg),
                         rd, core_fraction, core_density)
