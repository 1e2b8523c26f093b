"""Limiting variance and covariance curves as functions of alpha, their extrema and sweeps."""

import math
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ford_cherries.errors import InvalidParameterError
from ford_cherries.exact.closed_forms import second_moment_coefficients
from ford_cherries.numerics.roots import bisect_root
from ford_cherries.trees.alpha import Alpha, AlphaLike
from ford_cherries.urn.limits import nu_mu

EXTREMUM_TOLERANCE = 1e-10

# numerators of d/dalpha sigma^2(alpha) and d/dalpha rho(alpha), highest degree first
SIGMA2_DERIVATIVE_NUMERATOR = (-8, 36, -48, 19)
COVARIANCE_DERIVATIVE_NUMERATOR = (-24, 160, -370, 358, -123)

SWEEP_COLUMNS = ("alpha", "tau2", "sigma2", "cov", "nu", "mu")


class LimitCurves(NamedTuple):
    tau2: float
    sigma2: float
    cov: float
    nu: float
    mu: float
    corr: Optional[float]


def limiting_curves(alpha: AlphaLike) -> LimitCurves:
    """tau^2, sigma^2 and the covariance of the (A, C) limit law, with (nu, mu) and the limit correlation."""
    value = float(Alpha(alpha))
    k = second_moment_coefficients(value)
    nu, mu = nu_mu(value)
    corr = None
    if k.e1 > 0 and k.c1 > 0:
        corr = k.d1 / math.sqrt(k.e1 * k.c1)
    return LimitCurves(tau2=k.e1 + 0.0, sigma2=k.c1 + 0.0, cov=k.d1 + 0.0, nu=nu + 0.0, mu=mu + 0.0, corr=corr)


def curve_derivative_numerators(alpha: AlphaLike) -> tuple[float, float]:
    """Sign-carrying numerators of the sigma^2 and covariance derivatives at alpha."""
    value = float(Alpha(alpha))
    return (
        float(np.polyval(SIGMA2_DERIVATIVE_NUMERATOR, value)),
        float(np.polyval(COVARIANCE_DERIVATIVE_NUMERATOR, value)),
    )


class CurveExtrema(BaseModel):
    """Maximizers a0 of sigma^2 and a1 of the covariance on (0, 1), and the maxima."""

    model_config = ConfigDict(frozen=True)

    a0: float
    a1: float
    sigma2_max: float
    cov_max: float


def limit_curve_extrema(tol: float = EXTREMUM_TOLERANCE) -> CurveExtrema:
    """Locate both extrema by bisection of the derivative numerators on [0, 1]."""
    a0 = bisect_root(lambda a: float(np.polyval(SIGMA2_DERIVATIVE_NUMERATOR, a)), 0.0, 1.0, tol)
    a1 = bisect_root(lambda a: float(np.polyval(COVARIANCE_DERIVATIVE_NUMERATOR, a)), 0.0, 1.0, tol)
    return CurveExtrema(
        a0=a0, a1=a1, sigma2_max=limiting_curves(a0).sigma2, cov_max=limiting_curves(a1).cov
    )


class SweepRow(NamedTuple):
    alpha: float
    tau2: float
    sigma2: float
    cov: float
    nu: float
    mu: float


def parse_grid(spec: str) -> np.ndarray:
    """Parse ``"lo:hi:step"`` into the inclusive grid lo, lo + step, ..., <= hi.

    Raises:
        InvalidParameterError: If the text is malformed, step is not positive, or the grid leaves [0, 1].
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"grid must look like lo:hi:step, got {spec!r}")
    try:
        lo, hi, step = (float(part) for part in parts)
    except ValueError as exc:
        raise InvalidParameterError(f"grid must look like lo:hi:step, got {spec!r}") from exc
    if not step > 0:
        raise InvalidParameterError(f"grid step must be positive, got {step}")
    if not 0 <= lo <= hi <= 1:
        raise InvalidParameterError(f"grid must satisfy 0 <= lo <= hi <= 1, got {spec!r}")
    count = math.floor((hi - lo) / step + 1e-9) + 1
    return np.minimum(np.round(lo + step * np.arange(count), 12), 1.0)


def sweep_rows(grid: np.ndarray) -> list[SweepRow]:
    rows = []
    for alpha in grid:
        curves = limiting_curves(float(alpha))
        rows.append(SweepRow(float(alpha), curves.tau2, curves.sigma2, curves.cov, curves.nu, curves.mu))
    return rows
