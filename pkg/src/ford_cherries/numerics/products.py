"""Products of the form prod_{i=l}^{n-1} (i - k + m*alpha) / (i - alpha) and their gamma-ratio forms.

These products carry every finite-n correction term of the mean and moment formulas. The
primary path multiplies the factors directly; the reference path telescopes them into
gamma functions through log-gamma, and the asymptotic path keeps the leading power of n.
"""

import math
from typing import Iterable

import numpy as np
from scipy.special import gammaln, gammasgn

from ford_cherries.errors import InvalidParameterError
from ford_cherries.trees.alpha import Alpha, AlphaLike


def _check_indices(l: int, k: int, m: int, n: int) -> None:  # noqa: E741
    if not l >= k >= 0:
        raise InvalidParameterError(f"need l >= k >= 0, got l={l}, k={k}")
    if m < 1:
        raise InvalidParameterError(f"need m >= 1, got m={m}")
    if n < l:
        raise InvalidParameterError(f"need n >= l, got n={n}, l={l}")


def _factors(l: int, k: int, m: int, alpha: float, n: int) -> tuple[np.ndarray, np.ndarray]:  # noqa: E741
    i = np.arange(l, n, dtype=np.float64)
    return i - k + m * alpha, i - alpha


def gamma_ratio_product(l: int, k: int, m: int, alpha: AlphaLike, n: int) -> float:  # noqa: E741
    """Evaluate the product prod_{i=l}^{n-1} (i - k + m*alpha) / (i - alpha) factor by factor.

    Args:
        l: First index of the product.
        k: Integer shift in the numerator.
        m: Multiplier of alpha in the numerator.
        alpha: Model parameter.
        n: One past the last index; ``n == l`` gives the empty product 1.

    Returns:
        The value of the product.

    Raises:
        InvalidParameterError: If the indices are out of range, or some factor in the range is
            zero or negative (the offending index is reported).
    """
    _check_indices(l, k, m, n)
    a = float(Alpha(alpha))
    numerators, denominators = _factors(l, k, m, a, n)
    bad = np.flatnonzero((numerators <= 0) | (denominators <= 0))
    if bad.size:
        index = l + int(bad[0])
        raise InvalidParameterError(
            f"factor at i={index} is not positive: ({numerators[bad[0]]}) / ({denominators[bad[0]]})"
        )
    return float(np.prod(numerators / denominators))


def gamma_ratio_reference(l: int, k: int, m: int, alpha: AlphaLike, n: int) -> float:  # noqa: E741
    """Telescoped form Gamma(n-k+m*alpha) Gamma(l-alpha) / (Gamma(l-k+m*alpha) Gamma(n-alpha)).

    Evaluated through log-gamma with explicit gamma signs, so it stays finite for n in the millions.
    """
    _check_indices(l, k, m, n)
    a = float(Alpha(alpha))
    arguments = np.array([n - k + m * a, l - a, l - k + m * a, n - a])
    if np.any((arguments <= 0) & (arguments == np.round(arguments))):
        raise InvalidParameterError(f"gamma pole among arguments {arguments.tolist()}")
    logs = gammaln(arguments)
    signs = gammasgn(arguments)
    sign = signs[0] * signs[1] * signs[2] * signs[3]
    return float(sign * math.exp(logs[0] + logs[1] - logs[2] - logs[3]))


def gamma_ratio_asymptotic(l: int, k: int, m: int, alpha: AlphaLike, n: int) -> float:  # noqa: E741
    """Leading-order form Gamma(l-alpha) / Gamma(l-k+m*alpha) * n^(-k+(m+1)*alpha)."""
    _check_indices(l, k, m, n)
    a = float(Alpha(alpha))
    top, bottom = l - a, l - k + m * a
    if bottom <= 0 and bottom == round(bottom):
        raise InvalidParameterError(f"gamma pole at l - k + m*alpha = {bottom}")
    ratio = gammasgn(top) * gammasgn(bottom) * math.exp(gammaln(top) - gammaln(bottom))
    return float(ratio * n ** (-k + (m + 1) * a))


def product_bound_constant(
    k: int, m: int, alpha: AlphaLike, l_values: Iterable[int], n_values: Iterable[int]
) -> float:
    """Smallest K with prod |factors| <= K (n/l)^(-k+(m+1)alpha) over a grid of (l, n), n > l.

    Raises:
        InvalidParameterError: If some factor vanishes on the grid.
    """
    a = float(Alpha(alpha))
    exponent = -k + (m + 1) * a
    n_grid = sorted(set(n_values))
    constant = 0.0
    for l in l_values:  # noqa: E741
        _check_indices(l, k, m, l)
        for n in n_grid:
            if n <= l:
                continue
            numerators, denominators = _factors(l, k, m, a, n)
            if np.any(numerators == 0) or np.any(denominators == 0):
                raise InvalidParameterError(f"vanishing factor for l={l}, k={k}, m={m}, alpha={a}")
            value = float(np.prod(np.abs(numerators / denominators)))
            constant = max(constant, value / (n / l) ** exponent)
    return constant
