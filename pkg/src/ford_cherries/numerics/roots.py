"""Bracketing root finder."""

import math
from typing import Callable

from loguru import logger

from ford_cherries.errors import InvalidParameterError, NoSignChangeError


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10) -> float:
    """Find a root of ``f`` in [lo, hi] by bisection.

    The number of halvings is fixed up front as ceil(log2((hi - lo) / tol)), after which the
    midpoint of the surviving bracket is within ``tol`` of a root.

    Args:
        f: Continuous function with f(lo) * f(hi) < 0.
        lo: Left end of the bracket.
        hi: Right end of the bracket.
        tol: Absolute tolerance on the root.

    Returns:
        The approximate root.

    Raises:
        InvalidParameterError: If ``tol`` is not positive or the bracket is empty.
        NoSignChangeError: If f does not change sign on the bracket.
    """
    if tol <= 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    if not lo < hi:
        raise InvalidParameterError(f"empty bracket [{lo}, {hi}]")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo < 0) == (f_hi < 0):
        raise NoSignChangeError(f"f has the same sign at {lo} ({f_lo}) and {hi} ({f_hi})")

    iterations = max(1, math.ceil(math.log2((hi - lo) / tol)))
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    logger.debug(f"bisection converged to {root} after {iterations} halvings")
    return root
