"""Campaign runner and the mergeable empirical summary it produces."""

from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, computed_field, field_serializer, field_validator
from tqdm import tqdm

from ford_cherries.errors import InvalidParameterError
from ford_cherries.io import write_csv
from ford_cherries.montecarlo.config import TrialConfig
from ford_cherries.montecarlo.engines import sample_block

RAW_COLUMNS = ("trial", "a", "c")


class EmpiricalSummary(BaseModel):
    """Occurrence counts of (a, c) over a set of trials, with their sample statistics.

    Summaries over disjoint trial sets merge associatively and commutatively.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    alpha: float
    trials: int
    counts: dict[tuple[int, int], int]

    @field_validator("counts", mode="before")
    @classmethod
    def _from_rows(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            return {(int(a), int(c)): int(count) for a, c, count in value}
        return value

    @field_serializer("counts")
    def _to_rows(self, counts: dict[tuple[int, int], int]) -> list[list[int]]:
        return [[a, c, counts[(a, c)]] for a, c in sorted(counts, key=lambda key: (key[1], key[0]))]

    @classmethod
    def from_pairs(cls, n: int, alpha: float, pairs: np.ndarray) -> "EmpiricalSummary":
        cells, occurrences = np.unique(np.asarray(pairs, dtype=np.int64).reshape(-1, 2), axis=0, return_counts=True)
        counts = {(int(a), int(c)): int(k) for (a, c), k in zip(cells, occurrences)}
        return cls(n=n, alpha=alpha, trials=int(occurrences.sum()), counts=counts)

    def merge(self, other: "EmpiricalSummary") -> "EmpiricalSummary":
        if (self.n, self.alpha) != (other.n, other.alpha):
            raise InvalidParameterError(
                f"cannot merge summaries for (n={self.n}, alpha={self.alpha}) and (n={other.n}, alpha={other.alpha})"
            )
        counts = dict(self.counts)
        for key, value in other.counts.items():
            counts[key] = counts.get(key, 0) + value
        return EmpiricalSummary(n=self.n, alpha=self.alpha, trials=self.trials + other.trials, counts=counts)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cell pitchfork counts, cell cherry counts and cell weights as parallel arrays."""
        keys = sorted(self.counts, key=lambda key: (key[1], key[0]))
        a = np.array([key[0] for key in keys], dtype=np.float64)
        c = np.array([key[1] for key in keys], dtype=np.float64)
        weights = np.array([self.counts[key] for key in keys], dtype=np.float64)
        return a, c, weights

    def pairs(self) -> np.ndarray:
        """Every trial's (a, c), grouped by cell."""
        a, c, weights = self.arrays()
        repeats = weights.astype(np.int64)
        return np.column_stack((np.repeat(a, repeats), np.repeat(c, repeats)))

    def _central(self) -> tuple[float, float, float, float, float]:
        a, c, weights = self.arrays()
        mean_a = float(np.dot(weights, a) / self.trials)
        mean_c = float(np.dot(weights, c) / self.trials)
        ddof = 1 if self.trials > 1 else 0
        scale = self.trials - ddof
        da, dc = a - mean_a, c - mean_c
        return (
            mean_a,
            mean_c,
            float(np.dot(weights, da * da) / scale),
            float(np.dot(weights, dc * dc) / scale),
            float(np.dot(weights, da * dc) / scale),
        )

    @computed_field  # type: ignore[prop-decorator]
    @property
    def mean_a(self) -> float:
        return self._central()[0]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def mean_c(self) -> float:
        return self._central()[1]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def var_a(self) -> float:
        return self._central()[2]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def var_c(self) -> float:
        return self._central()[3]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def cov(self) -> float:
        return self._central()[4]


def _sample_blocks(cfg: TrialConfig, progress: bool) -> np.ndarray:
    blocks = cfg.blocks()
    results: dict[int, np.ndarray] = {}
    with tqdm(total=cfg.trials, disable=not progress, desc=f"{cfg.engine.value} n={cfg.n}", unit="trial") as bar:
        if cfg.workers == 1:
            for start, stop in blocks:
                results[start] = sample_block(cfg, start, stop)
                bar.update(stop - start)
        else:
            with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
                futures = {executor.submit(sample_block, cfg, start, stop): start for start, stop in blocks}
                for future in as_completed(futures):
                    start = futures[future]
                    results[start] = future.result()
                    bar.update(len(results[start]))
    return np.concatenate([results[start] for start, _ in blocks])


def run_campaign(
    cfg: TrialConfig, raw_csv: Optional[Union[str, Path]] = None, progress: bool = False
) -> EmpiricalSummary:
    """Run ``cfg.trials`` independent trials and summarize their (a, c) counts.

    Blocks of trials may run in worker processes; results are reassembled in trial order, so the
    summary and the raw rows do not depend on ``cfg.workers``.

    Args:
        cfg: Campaign configuration.
        raw_csv: Optional path receiving one ``trial,a,c`` row per trial.
        progress: Show a progress bar on stderr.

    Returns:
        The empirical summary.
    """
    logger.info(f"campaign: engine={cfg.engine.value} n={cfg.n} alpha={cfg.alpha} trials={cfg.trials}")
    pairs = _sample_blocks(cfg, progress)
    if raw_csv is not None:
        rows = ((trial, int(a), int(c)) for trial, (a, c) in enumerate(pairs))
        write_csv(raw_csv, RAW_COLUMNS, rows)
        logger.info(f"raw trials written to {raw_csv}")
    return EmpiricalSummary.from_pairs(cfg.n, cfg.alpha, pairs)
