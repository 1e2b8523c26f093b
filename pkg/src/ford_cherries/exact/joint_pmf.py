"""Exact joint law of pitchforks and cherries by dynamic programming over the leaf count."""

from fractions import Fraction
from typing import Callable, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from ford_cherries.errors import ConsistencyError, InvalidParameterError
from ford_cherries.exact.moments import MomentTrace
from ford_cherries.trees.alpha import Alpha, AlphaLike
from ford_cherries.trees.edges import PairAC

NORMALIZATION_DRIFT = 1e-9
MARGINAL_TOLERANCE = 1e-12
MAX_EXACT_LEAVES = 40

MomentFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]

# phi(a, c) for the five moments carried by the recursions
MOMENT_FUNCTIONS: dict[str, MomentFunction] = {
    "x": lambda a, c: a * 1.0,
    "y": lambda a, c: c * 1.0,
    "x2": lambda a, c: a * a * 1.0,
    "xy": lambda a, c: a * c * 1.0,
    "y2": lambda a, c: c * c * 1.0,
}


def _check_size(n: int) -> None:
    if n < 3:
        raise InvalidParameterError(f"the joint law is defined for n >= 3, got n={n}")


class JointPmf(BaseModel):
    """P(A_n = a, C_n = c) on the rectangle 0 <= a <= n // 3 + 1, 0 <= c <= n // 2 + 1.

    Cells outside the support {1 <= c, a <= c, a + 2c <= n} hold exact zeros.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(ge=3)
    alpha: float
    table: np.ndarray

    def probability(self, a: int, c: int) -> float:
        if 0 <= a < self.table.shape[0] and 0 <= c < self.table.shape[1]:
            return float(self.table[a, c])
        return 0.0

    def total(self) -> float:
        return float(self.table.sum())

    def as_dict(self) -> dict[PairAC, float]:
        """Positive cells keyed by ``PairAC``, ordered by (c, a)."""
        cs, as_ = np.nonzero(self.table.T > 0)
        return {PairAC(int(a), int(c)): float(self.table[a, c]) for c, a in zip(cs, as_)}

    def marginal_c(self) -> dict[int, float]:
        """P(C_n = k) for k = 1, ..., n // 2."""
        column_sums = self.table.sum(axis=0)
        return {k: float(column_sums[k]) for k in range(1, self.n // 2 + 1)}

    def moments(self) -> MomentTrace:
        """Raw and central moments by summation over the table (two passes)."""
        a = np.arange(self.table.shape[0], dtype=np.float64)[:, None]
        c = np.arange(self.table.shape[1], dtype=np.float64)[None, :]
        p = self.table
        ea, ec = float((a * p).sum()), float((c * p).sum())
        raw = (ec, ea, float((c * c * p).sum()), float((a * c * p).sum()), float((a * a * p).sum()))
        da, dc = a - ea, c - ec
        central = (float((dc * dc * p).sum()), float((da * dc * p).sum()), float((da * da * p).sum()))
        return MomentTrace.from_moments(self.n, self.alpha, raw, central)

    def expectation(self, phi: MomentFunction) -> float:
        a = np.arange(self.table.shape[0], dtype=np.float64)[:, None]
        c = np.arange(self.table.shape[1], dtype=np.float64)[None, :]
        return float((phi(a, c) * self.table).sum())


def _advance(current: np.ndarray, m: int, alpha: float) -> np.ndarray:
    """Push the law at m leaves one insertion forward; the result is one row and column larger."""
    rows, cols = current.shape
    a = np.arange(rows, dtype=np.float64)[:, None]
    c = np.arange(cols, dtype=np.float64)[None, :]
    d = m - alpha
    following = np.zeros((rows + 1, cols + 1))
    following[:rows, :cols] += (2 * a + alpha * (m - a - c - 1)) / d * current
    following[: rows - 1, 1:] += ((1 - alpha) * a / d * current)[1:, :]
    following[1:, :cols] += (2 - alpha) * (c - a) / d * current
    following[:rows, 1:] += (1 - alpha) * (m - a - 2 * c) / d * current
    return following


def _levels(n: int, alpha: float) -> np.ndarray:
    table = np.zeros((2, 2))
    table[1, 1] = 1.0
    for m in range(3, n):
        table = _advance(table, m, alpha)[: (m + 1) // 3 + 2, : (m + 1) // 2 + 2]
        if m % 500 == 0:
            logger.debug(f"joint pmf level {m + 1}/{n}")
    return table


def joint_pmf(n: int, alpha: AlphaLike) -> JointPmf:
    """Joint law of (A_n, C_n) from the 3-leaf point mass at (1, 1).

    Each level applies the four-term one-step law: stay with weight 2a + alpha(m - a - c - 1), move
    (a, c) -> (a - 1, c + 1) with weight (1 - alpha) a, (a, c) -> (a + 1, c) with weight
    (2 - alpha)(c - a), and (a, c) -> (a, c + 1) with weight (1 - alpha)(m - a - 2c), all over
    m - alpha.

    Args:
        n: Leaf count, at least 3.
        alpha: Model parameter.

    Returns:
        The probability table.

    Raises:
        InvalidParameterError: If ``n < 3``.
        ConsistencyError: If the total mass drifts from 1 by more than ``NORMALIZATION_DRIFT``.
    """
    _check_size(n)
    a = float(Alpha(alpha))
    table = _levels(n, a)
    drift = abs(table.sum() - 1.0)
    if drift > NORMALIZATION_DRIFT:
        raise ConsistencyError(f"joint pmf mass drifted by {drift:.3e} at n={n}, alpha={a}")
    table.setflags(write=False)
    return JointPmf(n=n, alpha=a, table=table)


def joint_pmf_exact(n: int, alpha: AlphaLike) -> dict[PairAC, Fraction]:
    """Exact-rational version of ``joint_pmf`` for small n; float alphas are taken at their binary value.

    Raises:
        InvalidParameterError: If n is outside 3..MAX_EXACT_LEAVES.
    """
    _check_size(n)
    if n > MAX_EXACT_LEAVES:
        raise InvalidParameterError(f"exact mode is limited to n <= {MAX_EXACT_LEAVES}, got n={n}")
    a = Fraction(Alpha(alpha).value)
    law: dict[tuple[int, int], Fraction] = {(1, 1): Fraction(1)}
    for m in range(3, n):
        d = m - a
        following: dict[tuple[int, int], Fraction] = {}
        for (pa, pc), p in law.items():
            moves = (
                ((pa, pc), 2 * pa + a * (m - pa - pc - 1)),
                ((pa - 1, pc + 1), (1 - a) * pa),
                ((pa + 1, pc), (2 - a) * (pc - pa)),
                ((pa, pc + 1), (1 - a) * (m - pa - 2 * pc)),
            )
            for target, weight in moves:
                if weight:
                    following[target] = following.get(target, Fraction(0)) + p * weight / d
        law = following
    return {PairAC(pa, pc): p for (pa, pc), p in sorted(law.items(), key=lambda item: (item[0][1], item[0][0]))}


def _cherry_levels(n: int, alpha: float) -> np.ndarray:
    law = np.zeros(2)
    law[1] = 1.0
    for m in range(3, n):
        k = np.arange(m // 2 + 2, dtype=np.float64)
        previous = np.zeros_like(k)
        previous[: law.size] = law
        shifted = np.zeros_like(k)
        shifted[1:] = previous[:-1]
        law = ((m - 1) * alpha + 2 * (1 - alpha) * k) * previous + (1 - alpha) * (m - 2 * k + 2) * shifted
        law = law[: (m + 1) // 2 + 1] / (m - alpha)
    return law


def cherry_pmf(n: int, alpha: AlphaLike, verify: bool = False) -> dict[int, float]:
    """Law of the cherry count C_n by its own one-dimensional recursion.

    (m - alpha) P(C_{m+1} = k) = ((m - 1) alpha + 2(1 - alpha) k) P(C_m = k)
    + (1 - alpha)(m - 2k + 2) P(C_m = k - 1).

    Args:
        n: Leaf count, at least 3.
        alpha: Model parameter.
        verify: Also marginalize ``joint_pmf`` and compare.

    Returns:
        P(C_n = k) for k = 1, ..., n // 2.

    Raises:
        ConsistencyError: If ``verify`` is set and the marginal differs by more than ``MARGINAL_TOLERANCE``.
    """
    _check_size(n)
    a = float(Alpha(alpha))
    law = _cherry_levels(n, a)
    result = {k: float(law[k]) for k in range(1, n // 2 + 1)}
    if verify:
        marginal = joint_pmf(n, a).marginal_c()
        gap = max(abs(result[k] - marginal[k]) for k in result)
        if gap > MARGINAL_TOLERANCE:
            raise ConsistencyError(f"cherry recursion and joint marginal differ by {gap:.3e} at n={n}, alpha={a}")
    return result


def functional_recursion_residual(n: int, alpha: AlphaLike, phi: Union[str, MomentFunction]) -> float:
    """|E[phi(A_{n+1}, C_{n+1})] - one-step expectation of phi from the law at n|.

    The one-step side is [E[(2A + alpha(n - A - C - 1)) phi(A, C)] + (1 - alpha) E[A phi(A - 1, C + 1)]
    + (2 - alpha) E[(C - A) phi(A + 1, C)] + (1 - alpha) E[(n - A - 2C) phi(A, C + 1)]] / (n - alpha).

    Args:
        n: Leaf count of the starting law, at least 3.
        alpha: Model parameter.
        phi: A function of (a, c) arrays, or one of the names in ``MOMENT_FUNCTIONS``.
    """
    if isinstance(phi, str):
        if phi not in MOMENT_FUNCTIONS:
            raise InvalidParameterError(f"unknown moment function {phi!r}; expected one of {sorted(MOMENT_FUNCTIONS)}")
        phi = MOMENT_FUNCTIONS[phi]
    value = float(Alpha(alpha))
    current = joint_pmf(n, value)
    p = current.table
    a = np.arange(p.shape[0], dtype=np.float64)[:, None]
    c = np.arange(p.shape[1], dtype=np.float64)[None, :]
    one_step = (
        (2 * a + value * (n - a - c - 1)) * phi(a, c)
        + (1 - value) * a * phi(a - 1, c + 1)
        + (2 - value) * (c - a) * phi(a + 1, c)
        + (1 - value) * (n - a - 2 * c) * phi(a, c + 1)
    )
    predicted = float((one_step * p).sum()) / (n - value)
    return abs(joint_pmf(n + 1, value).expectation(phi) - predicted)
