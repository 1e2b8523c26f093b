"""Per-trial random streams keyed by (seed, engine, trial index)."""

import numpy as np

from ford_cherries.montecarlo.config import ENGINE_KEYS, Engine


def trial_generator(seed: int, trial_index: int, engine: Engine | str) -> np.random.Generator:
    """Counter-based Philox stream of one trial; independent of how trials are scheduled."""
    key = ENGINE_KEYS[Engine(engine)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(key, trial_index))))


def trial_uniforms(seed: int, trial_index: int, engine: Engine | str, count: int) -> np.ndarray:
    """The ``count`` uniforms a trial consumes, one per leaf insertion."""
    return trial_generator(seed, trial_index, engine).random(count)
