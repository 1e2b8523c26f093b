"""Exact first and second moments of (A_n, C_n) from their one-step recursions.

The five raw moments E[C], E[A], E[C^2], E[AC], E[A^2] follow the coupled linear recursions
obtained by taking conditional expectations over one leaf insertion. Central moments are carried
by a separate recursion on the centered covariance of the (A, C) chain; forming E[X^2] - E[X]^2
at n of order 10^4 loses about four significant digits. The two routes are compared by
``moment_route_discrepancy``.
"""

import math
from typing import NamedTuple, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from ford_cherries.errors import DegenerateCorrelationError, InvalidParameterError
from ford_cherries.trees.alpha import Alpha, AlphaLike

RawMoments = tuple[float, float, float, float, float]
CentralMoments = tuple[float, float, float]


class MomentTrace(BaseModel):
    """Exact moments of pitchforks ``A_n`` and cherries ``C_n`` at one leaf count."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=3)
    alpha: float
    ec: float
    ea: float
    ec2: float
    eac: float
    ea2: float
    var_c: float
    cov_ac: float
    var_a: float
    corr: Optional[float] = None

    @classmethod
    def from_moments(cls, n: int, alpha: float, raw: RawMoments, central: CentralMoments) -> "MomentTrace":
        """Assemble a trace from raw moments (ec, ea, ec2, eac, ea2) and central ones (var_c, cov, var_a)."""
        var_c, cov_ac, var_a = (max(central[0], 0.0), central[1], max(central[2], 0.0))
        corr = None
        if var_c > 0 and var_a > 0:
            corr = max(-1.0, min(1.0, cov_ac / math.sqrt(var_a * var_c)))
        ec, ea, ec2, eac, ea2 = raw
        return cls(
            n=n,
            alpha=alpha,
            ec=ec,
            ea=ea,
            ec2=ec2,
            eac=eac,
            ea2=ea2,
            var_c=var_c,
            cov_ac=cov_ac,
            var_a=var_a,
            corr=corr,
        )


def moment_trace(n_max: int, alpha: AlphaLike) -> list[MomentTrace]:
    """Iterate the moment recursions from the 3-leaf tree up to ``n_max`` leaves.

    Args:
        n_max: Largest leaf count, at least 3.
        alpha: Model parameter.

    Returns:
        One ``MomentTrace`` per n = 3, ..., n_max.

    Raises:
        InvalidParameterError: If ``n_max < 3``.
    """
    if n_max < 3:
        raise InvalidParameterError(f"n_max must be at least 3, got {n_max}")
    a = float(Alpha(alpha))
    raw = (1.0, 1.0, 1.0, 1.0, 1.0)
    central = (0.0, 0.0, 0.0)
    traces = [MomentTrace.from_moments(3, a, raw, central)]
    for n in range(3, n_max):
        central = _central_step(n, a, raw, central)
        raw = _raw_step(n, a, raw)
        traces.append(MomentTrace.from_moments(n + 1, a, raw, central))
    logger.debug(f"moment trace up to n={n_max} at alpha={a}: E[C]={raw[0]:.6g}, var(C)={central[0]:.6g}")
    return traces


def _raw_step(n: int, a: float, raw: RawMoments) -> RawMoments:
    """(E[C], E[A], E[C^2], E[AC], E[A^2]) at n + 1 leaves from their values at n."""
    b = 1.0 - a
    d = n - a
    ec, ea, ec2, eac, ea2 = raw
    return (
        ((n - 2 + a) * ec + n * b) / d,
        ((n - 3 + a) * ea + (2 - a) * ec) / d,
        ((n - 4 + 3 * a) * ec2 + 2 * (n - 1) * b * ec + n * b) / d,
        ((n - 5 + 3 * a) * eac + (n - 1) * b * ea + (2 - a) * ec2) / d,
        ((n - 6 + 3 * a) * ea2 + 2 * (2 - a) * eac + (2 - a) * ec - ea) / d,
    )


def _central_step(n: int, a: float, raw: RawMoments, central: CentralMoments) -> CentralMoments:
    """(var C, cov(A, C), var A) at n + 1 leaves, driven by the means at n."""
    b = 1.0 - a
    d = n - a
    ec, ea = raw[0], raw[1]
    vc, cv, va = central
    drift_c = b * (n - 2 * ec) / d
    drift_a = ((2 - a) * ec - (3 - 2 * a) * ea) / d
    return (
        vc * (n - 4 + 3 * a) / d + drift_c - drift_c**2,
        cv * (n - 5 + 3 * a) / d + (2 - a) * vc / d - b * ea / d - drift_a * drift_c,
        va * (n - 6 + 3 * a) / d + 2 * (2 - a) * cv / d + ((2 - a) * ec - ea) / d - drift_a**2,
    )


def ford_variance_recursion_check(n_max: int, alpha: AlphaLike) -> float:
    """Largest relative residual of the closed variance recursion for C_n over n = 3, ..., n_max - 1.

    The recursion is (n - a) s_{n+1} - (n - 4 + 3a) s_n = [-4(1-a)^2 m_n^2 + 2(1-a)((1-2a)n + a) m_n
    + a(1-a) n (n-1)] / (n - a) with m_n = E[C_n] and s_n = E[C_n^2] - m_n^2 taken from the raw
    second-moment recursion. Residuals are divided by max(1, |right-hand side|).

    Raises:
        InvalidParameterError: If ``n_max < 4``.
    """
    if n_max < 4:
        raise InvalidParameterError(f"n_max must be at least 4, got {n_max}")
    a = float(Alpha(alpha))
    b = 1.0 - a
    traces = moment_trace(n_max, a)
    residual = 0.0
    for current, following in zip(traces, traces[1:]):
        n, mean = current.n, current.ec
        d = n - a
        lhs = d * (following.ec2 - following.ec**2) - (n - 4 + 3 * a) * (current.ec2 - mean**2)
        rhs = (-4 * b**2 * mean**2 + 2 * b * ((1 - 2 * a) * n + a) * mean + a * b * n * (n - 1)) / d
        residual = max(residual, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return residual


def moment_route_discrepancy(n_max: int, alpha: AlphaLike) -> float:
    """Largest gap between the central moments formed from raw moments and the centered recursion.

    Each gap |E[XY] - E[X]E[Y] - cov(X, Y)| is divided by max(1, E[C^2]).
    """
    worst = 0.0
    for t in moment_trace(n_max, alpha):
        scale = max(1.0, t.ec2)
        worst = max(
            worst,
            abs(t.ec2 - t.ec**2 - t.var_c) / scale,
            abs(t.eac - t.ea * t.ec - t.cov_ac) / scale,
            abs(t.ea2 - t.ea**2 - t.var_a) / scale,
        )
    return worst


class CorrelationSign(NamedTuple):
    sign: int
    value: float


def correlation_sign(n: int, alpha: AlphaLike) -> CorrelationSign:
    """Sign and value of the exact correlation of A_n and C_n.

    Raises:
        DegenerateCorrelationError: At alpha = 1, or whenever one of the variances vanishes
            (always at n = 3).
    """
    a = Alpha(alpha)
    if a.value == 1:
        raise DegenerateCorrelationError("the comb model has constant (A_n, C_n); correlation undefined")
    trace = moment_trace(n, a)[-1]
    if trace.corr is None:
        raise DegenerateCorrelationError(f"a variance vanishes at n={n}, alpha={float(a)}")
    value = trace.corr
    return CorrelationSign(sign=int(math.copysign(1, value)) if value != 0 else 0, value=value)
