"""Limiting proportions and covariances of the urn and of (pitchforks, cherries)."""

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from ford_cherries.errors import ConsistencyError
from ford_cherries.trees.alpha import Alpha, AlphaLike
from ford_cherries.urn.spectral import spectral_sigma_tilde, t_alpha, t_alpha_inv

DUAL_ROUTE_TOLERANCE = 1e-9
PROJECTION_TOLERANCE = 1e-10

# cubic coefficients, highest degree first
PHI_COEFFICIENTS = (
    (8, -32, 45, -23),
    (40, -164, 221, -97),
    (56, -248, 367, -181),
    (8, -40, 37, 13),
    (40, -112, -31, 181),
    (8, 4, -71, 71),
)

# (A, C) = U Q
Q = np.array([[0.5, 0.5], [0.0, 0.5], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]])


def phi(alpha: AlphaLike) -> np.ndarray:
    """The six cubics phi_1..phi_6 entering the urn covariance."""
    a = float(Alpha(alpha))
    return np.array([np.polyval(coefficients, a) for coefficients in PHI_COEFFICIENTS])


def limiting_proportions(alpha: AlphaLike) -> np.ndarray:
    """v with U_n / n -> v almost surely; the components sum to 2."""
    a = float(Alpha(alpha))
    b = 1.0 - a
    return np.array([2 * b, 2 * b, b, 1 + a, b, 5 - 3 * a]) / (2 * (3 - 2 * a))


def principal_left_vector(alpha: AlphaLike) -> np.ndarray:
    """v~_1 = v T_alpha, the principal left eigenvector of R_alpha; a probability vector."""
    return limiting_proportions(alpha) @ t_alpha(alpha)


def sigma_closed_form(alpha: AlphaLike) -> np.ndarray:
    """Limiting covariance Sigma of (U_n - n v) / sqrt(n) from the phi polynomials."""
    a = float(Alpha(alpha))
    p1, p2, p3, p4, p5, p6 = phi(a)
    pattern = np.array(
        [
            [-12 * p1, 4 * p2, -6 * p1, -2 * p4, 2 * p2, -2 * p2],
            [4 * p2, -4 * p3, 2 * p2, -2 * p6, -2 * p3, 2 * p3],
            [-6 * p1, 2 * p2, -3 * p1, -p4, p2, -p2],
            [-2 * p4, -2 * p6, -p4, p5, -p6, p6],
            [2 * p2, -2 * p3, p2, -p6, -p3, p3],
            [-2 * p2, 2 * p3, -p2, p6, p3, -p3],
        ]
    )
    prefactor = (1 - a) / (4 * (3 - 2 * a) ** 2 * (5 - 4 * a) * (7 - 4 * a))
    return prefactor * pattern


def s_closed_form(alpha: AlphaLike) -> np.ndarray:
    """Limiting covariance S = [[tau^2, rho], [rho, sigma^2]] of ((A_n, C_n) - n (nu, mu)) / sqrt(n)."""
    a = float(Alpha(alpha))
    prefactor = (1 - a) / ((3 - 2 * a) ** 2 * (5 - 4 * a))
    tau2 = np.polyval((-24, 96, -135, 69), a) / (4 * (7 - 4 * a))
    rho = -(2 - a) * (1 - 2 * a) / 2
    return prefactor * np.array([[tau2, rho], [rho, 2 - a]])


def nu_mu(alpha: AlphaLike) -> tuple[float, float]:
    """Limiting pitchfork and cherry counts per leaf."""
    a = float(Alpha(alpha))
    nu = (1 - a) / (2 * (3 - 2 * a))
    return nu, 2 * nu


def _clean(matrix: np.ndarray) -> list:
    # adding 0.0 turns negative zeros into zeros
    return (np.asarray(matrix, dtype=np.float64) + 0.0).tolist()


class LimitSummary(BaseModel):
    """Every limiting quantity of the urn and of (A_n, C_n) for one alpha."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    v: list[float]
    v_tilde: list[float]
    sigma: list[list[float]]
    sigma_tilde: list[list[float]]
    S: list[list[float]]  # noqa: N815
    phi: list[float]
    nu: float
    mu: float

    @property
    def tau2(self) -> float:
        return self.S[0][0]

    @property
    def rho(self) -> float:
        return self.S[0][1]

    @property
    def sigma2(self) -> float:
        return self.S[1][1]

    @property
    def s_matrix(self) -> np.ndarray:
        return np.array(self.S)

    @property
    def sigma_matrix(self) -> np.ndarray:
        return np.array(self.sigma)

    def to_record(self) -> dict:
        """Flat JSON record: alpha, v, sigma (row-major nested), S, phi, nu, mu."""
        return {
            "alpha": self.alpha,
            "v": self.v,
            "sigma": self.sigma,
            "S": self.S,
            "phi": self.phi,
            "nu": self.nu,
            "mu": self.mu,
        }


def limit_summary(alpha: AlphaLike) -> LimitSummary:
    """Compute all limits for one alpha.

    Sigma comes from the phi closed form. For 0 < alpha < 1 it is also obtained from the spectral
    sum of the uniform urn mapped back through T_alpha^-1, and S = Q' Sigma Q is compared with the
    closed form of S.

    Raises:
        ConsistencyError: If the two routes for Sigma, or for S, disagree.
    """
    a = Alpha(alpha)
    value = float(a)
    sigma = sigma_closed_form(value)
    s = s_closed_form(value)
    if a.is_interior:
        inverse = t_alpha_inv(value)
        spectral = inverse @ spectral_sigma_tilde(value) @ inverse
        gap = float(np.max(np.abs(spectral - sigma)))
        if gap > DUAL_ROUTE_TOLERANCE:
            raise ConsistencyError(f"spectral and closed-form Sigma differ by {gap:.3e} at alpha={value}")
        logger.debug(f"dual-route Sigma agrees to {gap:.2e} at alpha={value}")
    projected = Q.T @ sigma @ Q
    gap = float(np.max(np.abs(projected - s)))
    if gap > PROJECTION_TOLERANCE:
        raise ConsistencyError(f"Q'Sigma Q differs from S by {gap:.3e} at alpha={value}")
    transform = t_alpha(value)
    nu, mu = nu_mu(value)
    return LimitSummary(
        alpha=value,
        v=_clean(limiting_proportions(value)),
        v_tilde=_clean(principal_left_vector(value)),
        sigma=_clean(sigma),
        sigma_tilde=_clean(transform @ sigma @ transform),
        S=_clean(s),
        phi=_clean(phi(value)),
        nu=nu + 0.0,
        mu=mu + 0.0,
    )
