"""Statistical agreement between simulated campaigns, the exact law and the limit theorems."""

import math
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from scipy import stats

from ford_cherries.errors import InvalidParameterError, SingularCovarianceError
from ford_cherries.exact.joint_pmf import MOMENT_FUNCTIONS, JointPmf
from ford_cherries.montecarlo.campaign import EmpiricalSummary, run_campaign
from ford_cherries.montecarlo.config import Engine, TrialConfig
from ford_cherries.montecarlo.streams import trial_generator
from ford_cherries.trees.enumeration import ac_law
from ford_cherries.urn.limits import LimitSummary
from ford_cherries.urn.process import urn_trajectory

MIN_EXPECTED = 5.0
COVERAGE_LEVELS = (0.5, 0.9, 0.95)

# moment name -> phi(a, c) name in MOMENT_FUNCTIONS
MOMENTS = {"ea": "x", "ec": "y", "ea2": "x2", "eac": "xy", "ec2": "y2"}


class ExactComparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    tv_distance: float
    chi2_stat: float
    dof: int
    p_value: float
    z_scores: dict[str, float]


def _pooled_chi2(observed: np.ndarray, expected: np.ndarray) -> tuple[float, int]:
    """Chi-square over cells with expected count >= MIN_EXPECTED, the remaining cells pooled into one."""
    dense = expected >= MIN_EXPECTED
    observed_cells = list(observed[dense])
    expected_cells = list(expected[dense])
    if (~dense).any():
        observed_cells.append(observed[~dense].sum())
        expected_cells.append(expected[~dense].sum())
    o, e = np.array(observed_cells), np.array(expected_cells)
    if np.any((e == 0) & (o > 0)):
        return math.inf, len(o) - 1
    mask = e > 0
    return float(((o[mask] - e[mask]) ** 2 / e[mask]).sum()), int(mask.sum()) - 1


def compare_exact(summary: EmpiricalSummary, pmf: JointPmf) -> ExactComparison:
    """Total variation, pooled chi-square and per-moment z-scores of a campaign against the exact law.

    The z-score of a moment uses the exact variance of the corresponding function of (A_n, C_n).

    Raises:
        InvalidParameterError: If the summary and the law are for different (n, alpha).
    """
    if summary.n != pmf.n or not math.isclose(summary.alpha, pmf.alpha, abs_tol=1e-15):
        raise InvalidParameterError(
            f"summary is for (n={summary.n}, alpha={summary.alpha}), law for (n={pmf.n}, alpha={pmf.alpha})"
        )
    exact = pmf.as_dict()
    cells = sorted(set(exact) | set(summary.counts), key=lambda key: (key[1], key[0]))
    probabilities = np.array([exact.get(cell, 0.0) for cell in cells])
    observed = np.array([summary.counts.get(cell, 0) for cell in cells], dtype=np.float64)
    tv = 0.5 * float(np.abs(observed / summary.trials - probabilities).sum())
    chi2_stat, dof = _pooled_chi2(observed, probabilities * summary.trials)
    p_value = float(stats.chi2.sf(chi2_stat, dof)) if dof > 0 else 1.0

    a, c, weights = summary.arrays()
    z_scores = {}
    for name, function_name in MOMENTS.items():
        phi = MOMENT_FUNCTIONS[function_name]
        mean = pmf.expectation(phi)
        variance = pmf.expectation(lambda x, y: phi(x, y) ** 2) - mean**2
        sample_mean = float(np.dot(weights, phi(a, c)) / summary.trials)
        if variance <= 1e-14 * max(1.0, mean**2):
            z_scores[name] = 0.0 if math.isclose(sample_mean, mean, rel_tol=1e-12, abs_tol=1e-12) else math.inf
        else:
            z_scores[name] = (sample_mean - mean) / math.sqrt(variance / summary.trials)
    return ExactComparison(tv_distance=tv, chi2_stat=chi2_stat, dof=dof, p_value=p_value, z_scores=z_scores)


class EngineComparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    chi2_stat: float
    dof: int
    p_value: float


def compare_engines(first: EmpiricalSummary, second: EmpiricalSummary) -> EngineComparison:
    """Two-sample chi-square test of homogeneity between two campaigns at the same (n, alpha).

    Cells whose expected count under homogeneity is below MIN_EXPECTED in either row are pooled.
    """
    if first.n != second.n:
        raise InvalidParameterError(f"campaigns are for n={first.n} and n={second.n}")
    cells = sorted(set(first.counts) | set(second.counts), key=lambda key: (key[1], key[0]))
    table = np.array(
        [[first.counts.get(cell, 0) for cell in cells], [second.counts.get(cell, 0) for cell in cells]],
        dtype=np.float64,
    )
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / table.sum()
    dense = expected.min(axis=0) >= MIN_EXPECTED
    columns = [table[:, dense]]
    if (~dense).any():
        columns.append(table[:, ~dense].sum(axis=1, keepdims=True))
    pooled = np.hstack(columns)
    pooled = pooled[:, pooled.sum(axis=0) > 0]
    if pooled.shape[1] < 2:
        return EngineComparison(chi2_stat=0.0, dof=0, p_value=1.0)
    statistic, p_value, dof, _ = stats.chi2_contingency(pooled, correction=False)
    return EngineComparison(chi2_stat=float(statistic), dof=int(dof), p_value=float(p_value))


class CltReport(BaseModel):
    """Whitened ((A, C) - n(nu, mu)) / sqrt(n) S^(-1/2): moments and chi-square(2) disc coverage."""

    model_config = ConfigDict(frozen=True)

    n: int
    alpha: float
    trials: int
    mean: list[float]
    variance: list[float]
    skewness: list[float]
    excess_kurtosis: list[float]
    coverage: dict[str, float]

    def coverage_error(self, level: float) -> float:
        return abs(self.coverage[f"{level:g}"] - level)


def whitening_matrix(s: np.ndarray) -> np.ndarray:
    """S^(-1/2) by symmetric eigendecomposition.

    Raises:
        SingularCovarianceError: If S is not positive definite.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(s)
    if eigenvalues.min() <= 1e-12 * max(1.0, abs(eigenvalues).max()):
        raise SingularCovarianceError(f"limiting covariance is singular, eigenvalues {eigenvalues.tolist()}")
    return eigenvectors @ np.diag(eigenvalues**-0.5) @ eigenvectors.T


def clt_check(cfg: TrialConfig, limits: LimitSummary, summary: Optional[EmpiricalSummary] = None) -> CltReport:
    """Standardize every trial by the limit centering and scaling, then whiten with S^(-1/2).

    Args:
        cfg: Campaign configuration; a campaign is run unless ``summary`` is given.
        limits: Limits at ``cfg.alpha``.
        summary: Optional pre-computed campaign for ``cfg``.

    Raises:
        SingularCovarianceError: At alpha = 1, where S vanishes.
    """
    whitening = whitening_matrix(limits.s_matrix)
    if summary is None:
        summary = run_campaign(cfg)
    pairs = summary.pairs().astype(np.float64)
    centered = (pairs - cfg.n * np.array([limits.nu, limits.mu])) / math.sqrt(cfg.n)
    z = centered @ whitening
    radius2 = (z**2).sum(axis=1)
    coverage = {f"{level:g}": float(np.mean(radius2 <= stats.chi2.ppf(level, 2))) for level in COVERAGE_LEVELS}
    report = CltReport(
        n=cfg.n,
        alpha=cfg.alpha,
        trials=summary.trials,
        mean=z.mean(axis=0).tolist(),
        variance=z.var(axis=0, ddof=1).tolist(),
        skewness=np.atleast_1d(stats.skew(z, axis=0)).tolist(),
        excess_kurtosis=np.atleast_1d(stats.kurtosis(z, axis=0)).tolist(),
        coverage=coverage,
    )
    logger.info(f"CLT at n={cfg.n}, alpha={cfg.alpha}: coverage {coverage}")
    return report


class ProportionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    alpha: float
    steps: int
    checkpoints: list[int]
    proportions: list[list[float]]
    max_deviation: float
    internal_share: float


def proportion_convergence(cfg: TrialConfig, limits: LimitSummary) -> ProportionReport:
    """Follow one urn path for ``cfg.n`` draws and compare U_n / n with v at the last checkpoint.

    Raises:
        InvalidParameterError: If the campaign engine is not the urn.
    """
    if cfg.engine is not Engine.URN:
        raise InvalidParameterError(f"proportion convergence needs the urn engine, got {cfg.engine.value}")
    path = urn_trajectory(cfg.alpha, cfg.n, trial_generator(cfg.seed, 0, Engine.URN))
    final = path[-1][1]
    return ProportionReport(
        alpha=cfg.alpha,
        steps=cfg.n,
        checkpoints=[time for time, _ in path],
        proportions=[proportions.tolist() for _, proportions in path],
        max_deviation=float(np.max(np.abs(final - np.array(limits.v)))),
        internal_share=float(final[4] + final[5]),
    )


class OracleConvergence(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    alpha: float
    trials: list[int]
    tv_distances: list[float]
    slope: float


def oracle_convergence(
    n: int, alpha: float, trial_grid: Sequence[int], seed: int, engine: Engine = Engine.TREE
) -> OracleConvergence:
    """TV distance to the enumerated law of (A_n, C_n) along a grid of trial counts, with its log-log slope.

    The slope should be close to -1/2.
    """
    if len(trial_grid) < 2:
        raise InvalidParameterError("need at least two trial counts to fit a slope")
    law = {cell: float(p) for cell, p in ac_law(n, alpha).items()}
    distances = []
    for trials in trial_grid:
        summary = run_campaign(TrialConfig(n=n, alpha=alpha, trials=trials, seed=seed, engine=engine))
        cells = set(law) | set(summary.counts)
        distances.append(0.5 * sum(abs(summary.counts.get(cell, 0) / trials - law.get(cell, 0.0)) for cell in cells))
    logs = np.log(np.maximum(np.array(distances), 1e-300))
    slope = float(np.polyfit(np.log(np.array(trial_grid, dtype=np.float64)), logs, 1)[0])
    return OracleConvergence(n=n, alpha=alpha, trials=list(trial_grid), tv_distances=distances, slope=slope)
