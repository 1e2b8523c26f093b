"""Pytest configuration file for test fixtures."""

from pathlib import Path

import numpy as np
import pytest
from hydra import compose, initialize_config_dir
from hydra.core.global_hydra import GlobalHydra
from omegaconf import DictConfig

from ford_cherries.trees import TreeShape

CONFIG_DIR = str(Path(__file__).parent.parent / "configs")
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="function")
def cfg_validate() -> DictConfig:
    """A pytest fixture for loading the validation configuration.

    Returns:
        A DictConfig containing a valid validation configuration.
    """
    GlobalHydra.instance().clear()

    with initialize_config_dir(config_dir=CONFIG_DIR, version_base=None):
        cfg = compose(config_name="validate_config", return_hydra_config=True)

    return cfg


@pytest.fixture(scope="function")
def cfg_validate_debug() -> DictConfig:
    """A pytest fixture for loading the validation configuration with debug overrides.

    Returns:
        A DictConfig containing the small-size validation configuration.
    """
    GlobalHydra.instance().clear()

    with initialize_config_dir(config_dir=CONFIG_DIR, version_base=None):
        cfg = compose(config_name="validate_config", return_hydra_config=True, overrides=["experiment=debug"])

    return cfg


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture
def balanced_quartet() -> TreeShape:
    """The four-leaf tree with two cherries."""
    return TreeShape.from_newick("((,),(,))")
