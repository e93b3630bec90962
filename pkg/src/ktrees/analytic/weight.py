"""Limit of the minimum weight of k edge-disjoint spanning trees."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable

from ..errors import InvalidArgument
from .thresholds import DEFAULT, SolverConfig, beta, deep_threshold


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, *, tol: float,
                     max_depth: int = 50) -> tuple[float, float]:
    """Integral of ``f`` over ``[a, b]`` and an error estimate.

    Iterative adaptive Simpson with Richardson correction; each panel is
    accepted once its two halves agree to within ``15 * tol`` scaled by the
    panel's share of the interval.
    """
    if b <= a:
        return 0.0, 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    total = 0.0
    err = 0.0
    stack = [(a, b, fa, fm, fb, whole, 0)]
    span = b - a
    while stack:
        lo, hi, flo, fmid, fhi, s, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - s
        if abs(delta) <= 15.0 * tol * (hi - lo) / span or depth >= max_depth:
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
        else:
            stack.append((mid, hi, fmid, frm, fhi, right, depth + 1))
            stack.append((lo, mid, flo, flm, fmid, left, depth + 1))
    return total, err


@dataclass(frozen=True)
class WeightEstimate:
    k: int
    a: float
    value: float
    error: float
    x_max: float


@functools.lru_cache(maxsize=None)
def _integral(k: int, cfg: SolverConfig) -> tuple[float, float, float]:
    onset = 1.0 if k == 1 else deep_threshold(k, cfg)

    def integrand(x):
        b = beta(k, x, cfg)
        return x * (1.0 - b * b)

    cap = max(10.0 * k, 50.0)
    x_max = onset + 1.0
    while x_max < cap and integrand(x_max) >= cfg.eps_tail:
        x_max += 1.0
    x_max = min(x_max, cap)
    # beta vanishes below the onset, so that piece is x dx exactly
    head = 0.5 * onset * onset
    # Simpson's local error estimate is optimistic near the jump, so tighten
    # until two successive totals agree to rel_tol
    tol = cfg.rel_tol * (head + (x_max - onset) * integrand(onset))
    value = head + adaptive_simpson(integrand, onset, x_max, tol=tol)[0]
    for _ in range(6):
        tol /= 10.0
        refined = head + adaptive_simpson(integrand, onset, x_max, tol=tol)[0]
        err = abs(refined - value)
        value = refined
        if err <= cfg.rel_tol * abs(value):
            break
    return value, err, x_max


def limit_weight_estimate(k: int, a: float, cfg: SolverConfig = DEFAULT) -> WeightEstimate:
    if k < 1:
        raise InvalidArgument(f"tree multiplicity must be >= 1, got {k}")
    if not a > 0:
        raise InvalidArgument(f"density slope must be positive, got {a}")
    value, err, x_max = _integral(k, cfg)
    return WeightEstimate(k, a, value / (2.0 * a), err / (2.0 * a), x_max)


def limit_weight(k: int, a: float, cfg: SolverConfig = DEFAULT) -> float:
    """``(1 / 2a) * integral over x > 0 of x (1 - beta_k(x)^2)``."""
    return limit_weight_estimate(k, a, cfg).value
