"""Diagonal transform to a uniform urn and the closed-form eigensystem of R_alpha."""

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from ford_cherries.errors import ConsistencyError, InvalidParameterError
from ford_cherries.trees.alpha import Alpha, AlphaLike
from ford_cherries.urn.process import replacement_matrix

EIGEN_TOLERANCE = 1e-10


def t_alpha(alpha: AlphaLike) -> np.ndarray:
    """T_alpha = diag(1-a, 1-a, 1-a, 1-a, a, a)."""
    a = float(Alpha(alpha))
    return np.diag([1.0 - a] * 4 + [a] * 2)


def t_alpha_inv(alpha: AlphaLike) -> np.ndarray:
    """Inverse of T_alpha; defined only for 0 < alpha < 1.

    Raises:
        InvalidParameterError: At alpha in {0, 1}.
    """
    a = Alpha(alpha)
    if not a.is_interior:
        raise InvalidParameterError(f"T_alpha is singular at alpha={a.value}")
    b = 1.0 - float(a)
    return np.diag([1.0 / b] * 4 + [1.0 / float(a)] * 2)


def r_alpha(alpha: AlphaLike) -> np.ndarray:
    """Replacement matrix R T_alpha of the equivalent uniform urn; every row sums to 1."""
    return replacement_matrix() @ t_alpha(alpha)


def eigenvalues(alpha: AlphaLike) -> np.ndarray:
    a = float(Alpha(alpha))
    return np.array([1.0, 0.0, 0.0, 0.0, -2.0 * (1.0 - a), -(3.0 - 2.0 * a)])


class EigenSystem(BaseModel):
    """V R_alpha V^-1 = diag(eigenvalues); rows of V are left eigenvectors, columns of V^-1 right ones."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: float
    V: np.ndarray  # noqa: N815
    V_inv: np.ndarray  # noqa: N815
    eigenvalues: np.ndarray

    def residuals(self) -> tuple[float, float]:
        """Max-norm residuals of V V^-1 = I and V R_alpha V^-1 = Lambda."""
        identity = np.max(np.abs(self.V @ self.V_inv - np.eye(6)))
        diagonal = np.max(np.abs(self.V @ r_alpha(self.alpha) @ self.V_inv - np.diag(self.eigenvalues)))
        return float(identity), float(diagonal)


def _right_eigenvectors(a: float) -> np.ndarray:
    b = 1.0 - a
    return np.array(
        [
            [1.0, 1.0 / b, 0.0, 0.0, 1.0, 1.0 - a],
            [1.0, 0.0, 1.0 / b, 0.0, 1.0, 3.0 - a],
            [1.0, -2.0 / b, 0.0, 3.0 / b, -(2.0 - a) / b, -5.0 + a],
            [1.0, 0.0, 0.0, 1.0 / b, -(2.0 - a) / b, -3.0 + a],
            [1.0, 0.0, -2.0 / a, 1.0 / a, 1.0, 3.0 - a],
            [1.0, 0.0, 0.0, -1.0 / a, 1.0, 1.0 - a],
        ]
    )


def _left_eigenvectors(a: float) -> np.ndarray:
    b = 1.0 - a
    rows = np.array(
        [
            [2 * b**2, 2 * b**2, b**2, (1 + a) * b, a * b, a * (5 - 3 * a)],
            # second entry is -2b^3
            [2 * b * (1 + a - a**2), -2 * b**3, -(2 - a) * b**2, (2 - a) * b**2, -a * b**2, -a * b * (5 - 3 * a)],
            [2 * a * b**2, 2 * a * (2 - a) * b, a * b**2, -a * b**2, -a * (3 - a) * b, -3 * a * b**2],
            [2 * a * (2 - a) * b, 2 * a * b**2, a * (2 - a) * b, -a * (2 - a) * b, a**2 * b, -3 * a * (2 - a) * b],
            [2 * (2 - a) * b, -2 * b**2, (2 - a) * b, -(4 - a) * b, -a * b, a * b],
            [-2 * b, 2 * b, -b, b, a, -a],
        ]
    )
    return rows / (2.0 * (3.0 - 2.0 * a))


def eigensystem(alpha: AlphaLike) -> EigenSystem:
    """Closed-form left/right eigenvectors of R_alpha for 0 < alpha < 1.

    Raises:
        InvalidParameterError: At alpha in {0, 1}, where V^-1 is undefined.
        ConsistencyError: If either identity residual exceeds ``EIGEN_TOLERANCE``.
    """
    a = Alpha(alpha)
    if not a.is_interior:
        raise InvalidParameterError(f"the closed-form eigensystem needs 0 < alpha < 1, got {a.value}")
    value = float(a)
    system = EigenSystem(
        alpha=value, V=_left_eigenvectors(value), V_inv=_right_eigenvectors(value), eigenvalues=eigenvalues(value)
    )
    identity, diagonal = system.residuals()
    if identity > EIGEN_TOLERANCE or diagonal > EIGEN_TOLERANCE:
        raise ConsistencyError(
            f"eigensystem residuals too large at alpha={value}: |VV^-1 - I|={identity:.3e}, "
            f"|VRV^-1 - Lambda|={diagonal:.3e}"
        )
    logger.debug(f"eigensystem at alpha={value}: residuals {identity:.2e}, {diagonal:.2e}")
    return system


def check_assumptions(alpha: AlphaLike) -> dict[str, bool]:
    """Check the uniform-urn assumptions used by the limit theorems.

    ``balanced``: every row of R sums to 2 and every row of R_alpha sums to 1;
    ``small``: the principal eigenvalue exceeds twice every other real part;
    ``probability_vector``: the principal left eigenvector is non-negative with unit sum;
    ``unit_right_vector``: the first column of V^-1 is all ones.
    """
    system = eigensystem(alpha)
    matrix = replacement_matrix()
    principal = system.V[0]
    return {
        "balanced": bool(np.all(matrix.sum(axis=1) == 2) and np.allclose(r_alpha(alpha).sum(axis=1), 1.0)),
        "small": bool(system.eigenvalues[0] > 2 * np.max(system.eigenvalues[1:])),
        "probability_vector": bool(np.all(principal >= 0) and abs(principal.sum() - 1.0) < EIGEN_TOLERANCE),
        "unit_right_vector": bool(np.allclose(system.V_inv[:, 0], 1.0)),
    }


def spectral_sigma_tilde(alpha: AlphaLike) -> np.ndarray:
    """Limiting covariance of the uniform urn from the eigen-expansion.

    Sigma~ = sum_{i,j>=2} l_i l_j (u_i' diag(v_1) u_j) / (1 - l_i - l_j) v_i' v_j with principal
    eigenvalue 1, u_i the columns of V^-1 and v_i the rows of V.
    """
    system = eigensystem(alpha)
    lam = system.eigenvalues[1:]
    right = system.V_inv[:, 1:]
    left = system.V[1:, :]
    gram = right.T @ np.diag(system.V[0]) @ right
    coefficients = np.outer(lam, lam) * gram / (1.0 - lam[:, None] - lam[None, :])
    return left.T @ coefficients @ left
