"""Sampling kernels: explicit tree growth and the vectorised six-colour urn."""

import numpy as np

from ford_cherries.montecarlo.config import Engine, TrialConfig
from ford_cherries.montecarlo.streams import trial_uniforms
from ford_cherries.trees.edges import count_stats
from ford_cherries.trees.growth import grow_from_uniforms
from ford_cherries.urn.process import INITIAL_COUNTS, colour_weights, replacement_matrix


def tree_block(cfg: TrialConfig, start: int, stop: int) -> np.ndarray:
    """(a, c) rows for trials ``start..stop-1``, each grown as an explicit tree."""
    pairs = np.empty((stop - start, 2), dtype=np.int64)
    for row, trial in enumerate(range(start, stop)):
        uniforms = trial_uniforms(cfg.seed, trial, Engine.TREE, cfg.n - 2).tolist()
        pairs[row] = count_stats(grow_from_uniforms(cfg.n, cfg.alpha, uniforms))
    return pairs


def urn_block(cfg: TrialConfig, start: int, stop: int) -> np.ndarray:
    """(a, c) rows for trials ``start..stop-1`` from urns advanced together, one column of draws per step."""
    size = stop - start
    steps = cfg.n - 2
    uniforms = np.empty((size, steps))
    for row, trial in enumerate(range(start, stop)):
        uniforms[row] = trial_uniforms(cfg.seed, trial, Engine.URN, steps)
    replacement = replacement_matrix()
    weights = colour_weights(cfg.alpha)
    counts = np.tile(np.array(INITIAL_COUNTS, dtype=np.int64), (size, 1))
    for step in range(steps):
        masses = counts * weights
        cumulative = np.cumsum(masses, axis=1)
        x = uniforms[:, step] * cumulative[:, -1]
        colour = (cumulative <= x[:, None]).sum(axis=1)
        # rounding can push x onto the total; fall back to the last colour that carries mass
        last_positive = 5 - np.argmax((masses > 0)[:, ::-1], axis=1)
        colour = np.minimum(colour, last_positive)
        counts += replacement[colour]
    return np.column_stack((counts[:, 0] // 2, (counts[:, 0] + counts[:, 1]) // 2))


def sample_block(cfg: TrialConfig, start: int, stop: int) -> np.ndarray:
    """Dispatch to the configured engine; returns an int64 array of shape (stop - start, 2)."""
    if cfg.engine is Engine.URN:
        return urn_block(cfg, start, stop)
    return tree_block(cfg, start, stop)
