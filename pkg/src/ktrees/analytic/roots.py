"""Scalar root finding and minimisation helpers."""

from __future__ import annotations

import math
from typing import Callable

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect(f: Callable[[float], float], lo: float, hi: float, *, max_iter: int = 200) -> float:
    """Root of ``f`` on ``[lo, hi]`` where ``f(lo) <= 0 < f(hi)``.

    Halves until the bracket cannot shrink in floating point, then returns
    the endpoint with the smaller residual.
    """
    flo, fhi = f(lo), f(hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm < 0.0:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return lo if abs(flo) <= abs(fhi) else hi


def golden_min(f: Callable[[float], float], lo: float, hi: float, *, tol: float,
               max_iter: int = 200) -> float:
    """Minimiser of a unimodal ``f`` on ``[lo, hi]``."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, abs(x1)):
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    return x1 if f1 <= f2 else x2
