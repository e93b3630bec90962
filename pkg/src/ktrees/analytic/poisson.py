"""Poisson tail probabilities and truncated means."""

from __future__ import annotations

import math

from ..errors import DegenerateInput, InvalidArgument


def _check(k: int, lam: float) -> None:
    if k < 0 or not lam >= 0 or math.isinf(lam):
        raise InvalidArgument(f"need integer k >= 0 and finite lambda >= 0, got k={k}, lambda={lam}")


def pois_head(k: int, lam: float) -> float:
    """``Pr[Pois(lam) < k]`` as a plain partial sum of the mass function."""
    _check(k, lam)
    term = math.exp(-lam)
    total = 0.0
    for i in range(k):
        total += term
        term *= lam / (i + 1)
    return min(total, 1.0)


def pois_tail(k: int, lam: float) -> float:
    """``Pr[Pois(lam) >= k]``.

    For ``lam < k`` the upper tail is small and is summed directly from
    ``i = k`` upward, where the terms decay at least geometrically.  Otherwise
    the tail is at least about one half and ``1 - Pr[Pois < k]`` loses
    nothing to cancellation.
    """
    _check(k, lam)
    if k == 0:
        return 1.0
    if lam == 0.0:
        return 0.0
    if lam >= k:
        return 1.0 - pois_head(k, lam)
    term = math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1))
    total = 0.0
    i = k
    while term > 1e-17 * total or total == 0.0:
        total += term
        i += 1
        term *= lam / i
        if term == 0.0:
            break
    return min(total, 1.0)


def truncated_mean(k: int, lam: float) -> float:
    """``E_k(lam) = lam * pi_{k-1}(lam) / pi_k(lam)``, the mean of Pois(lam) conditioned on ``>= k``."""
    if k < 1 or not lam > 0:
        raise InvalidArgument(f"need k >= 1 and lambda > 0, got k={k}, lambda={lam}")
    tail = pois_tail(k, lam)
    if tail <= 0.0:
        raise DegenerateInput(f"Pr[Pois({lam}) >= {k}] underflows")
    return lam * pois_tail(k - 1, lam) / tail
