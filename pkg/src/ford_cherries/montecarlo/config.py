"""Run configuration of a simulation campaign."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ford_cherries.trees.alpha import Alpha


class Engine(str, Enum):
    TREE = "tree"
    URN = "urn"


# first spawn-key component of every per-trial stream
ENGINE_KEYS = {Engine.TREE: 0, Engine.URN: 1}


class TrialConfig(BaseModel):
    """One campaign: ``trials`` independent samples of (A_n, C_n).

    Identical configs give identical summaries; ``workers`` and ``block_size`` only change the schedule.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2)
    alpha: float
    trials: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    engine: Engine = Engine.TREE
    workers: int = Field(default=1, ge=1)
    block_size: int = Field(default=1024, ge=1)

    @field_validator("alpha", mode="before")
    @classmethod
    def _check_alpha(cls, value: object) -> float:
        return float(Alpha(value))  # type: ignore[arg-type]

    def blocks(self) -> list[tuple[int, int]]:
        """Half-open trial-index ranges of at most ``block_size`` trials."""
        return [(start, min(start + self.block_size, self.trials)) for start in range(0, self.trials, self.block_size)]
