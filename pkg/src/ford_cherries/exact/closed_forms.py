"""Closed-form means with their finite-n corrections, and the linear-plus-constant second moments."""

from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from ford_cherries.errors import ConsistencyError, InvalidParameterError
from ford_cherries.exact.moments import moment_trace
from ford_cherries.numerics.products import gamma_ratio_asymptotic, gamma_ratio_product
from ford_cherries.trees.alpha import Alpha, AlphaLike

MEAN_TOLERANCE = 1e-10


class MeanClosedForm(BaseModel):
    """E[C_n] = (1-a)n/(3-2a) + a/(2(3-2a)) + x_n and E[A_n] = (1-a)n/(2(3-2a)) + a/(2(3-2a)) + y_n."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=3)
    alpha: float
    mean_c: float
    mean_a: float
    x_n: float
    y_n: float


def correction_terms(n: int, alpha: float) -> tuple[float, float]:
    """x_n and y_n as explicit running products."""
    d = 3 - 2 * alpha
    x = alpha / (2 * d) * gamma_ratio_product(3, 2, 1, alpha, n)
    if n == 3:
        return x, 0.5
    linear = alpha * (2 * n - 3 + alpha - n * alpha) / (2 * d * (3 - alpha))
    return x, linear * gamma_ratio_product(4, 3, 1, alpha, n)


def mean_closed_form(n: int, alpha: AlphaLike, verify: bool = False) -> MeanClosedForm:
    """Exact means of cherries and pitchforks in closed form.

    Args:
        n: Leaf count, at least 3.
        alpha: Model parameter.
        verify: Compare against ``moment_trace`` at relative tolerance ``MEAN_TOLERANCE``.

    Raises:
        InvalidParameterError: If ``n < 3``.
        ConsistencyError: If ``verify`` is set and the two routes disagree.
    """
    if n < 3:
        raise InvalidParameterError(f"means are defined for n >= 3, got n={n}")
    a = float(Alpha(alpha))
    d = 3 - 2 * a
    x, y = correction_terms(n, a)
    mean_c = (1 - a) * n / d + a / (2 * d) + x
    mean_a = (1 - a) * n / (2 * d) + a / (2 * d) + y
    if verify:
        trace = moment_trace(n, a)[-1]
        for name, closed, recursive in (("E[C]", mean_c, trace.ec), ("E[A]", mean_a, trace.ea)):
            if abs(closed - recursive) > MEAN_TOLERANCE * abs(recursive):
                raise ConsistencyError(f"{name} closed form {closed!r} != recursion {recursive!r} at n={n}, alpha={a}")
    return MeanClosedForm(n=n, alpha=a, mean_c=mean_c, mean_a=mean_a, x_n=x, y_n=y)


class MeanAsymptotics(NamedTuple):
    x_n: float
    y_n: float


def mean_asymptotics(n: int, alpha: AlphaLike) -> MeanAsymptotics:
    """Leading-order forms of x_n and y_n, both of order n^(-2(1-alpha))."""
    a = float(Alpha(alpha))
    d = 3 - 2 * a
    x = a / (2 * d) * gamma_ratio_asymptotic(3, 2, 1, a, n)
    y = a * (2 - a) / (2 * d * (3 - a)) * gamma_ratio_asymptotic(4, 3, 1, a, n) * n
    return MeanAsymptotics(x_n=x, y_n=y)


class SecondMomentCoefficients(NamedTuple):
    """var(C_n) ~ c1 n + c0, cov(A_n, C_n) ~ d1 n + d0, var(A_n) ~ e1 n + e0."""

    c1: float
    c0: float
    d1: float
    d0: float
    e1: float
    e0: float


def second_moment_coefficients(alpha: AlphaLike) -> SecondMomentCoefficients:
    a = float(Alpha(alpha))
    b = 1 - a
    scale = (3 - 2 * a) ** 2 * (5 - 4 * a)
    pitchfork_scale = 4 * scale * (7 - 4 * a)
    return SecondMomentCoefficients(
        c1=b * (2 - a) / scale,
        c0=-a * b * (2 - a) / scale,
        d1=-b * (2 - a) * (1 - 2 * a) / (2 * scale),
        d0=-a * b * (2 - a) / scale,
        e1=b * (69 - 135 * a + 96 * a**2 - 24 * a**3) / pitchfork_scale,
        e0=3 * a * b * (1 - 2 * a) * (5 - 3 * a) / pitchfork_scale,
    )


def second_moment_asymptotics(n: int, alpha: AlphaLike) -> tuple[float, float, float]:
    """(var_c, cov, var_a) truncated after the constant term; the remainder is O(n^(-2(1-alpha)))."""
    if n < 3:
        raise InvalidParameterError(f"second moments are defined for n >= 3, got n={n}")
    k = second_moment_coefficients(alpha)
    return k.c1 * n + k.c0, k.d1 * n + k.d0, k.e1 * n + k.e0
