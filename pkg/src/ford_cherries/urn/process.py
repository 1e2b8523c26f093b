"""The six-colour urn that tracks edge classes of a Ford tree."""

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, model_validator

from ford_cherries.errors import ConsistencyError, InvalidParameterError
from ford_cherries.trees.alpha import Alpha, AlphaLike, Number
from ford_cherries.trees.edges import PairAC

N_COLOURS = 6

_R = np.array(
    [
        [0, 0, 0, 1, 0, 1],
        [2, -2, 1, 0, -1, 2],
        [-2, 4, -1, 0, 2, -1],
        [0, 2, 0, -1, 1, 0],
        [2, -2, 1, 0, -1, 2],
        [0, 0, 0, 1, 0, 1],
    ],
    dtype=np.int64,
)
_R.flags.writeable = False

INITIAL_COUNTS = (0, 2, 0, 0, 1, 0)


def replacement_matrix() -> np.ndarray:
    """The replacement matrix R; row i is added to the urn when colour i + 1 is drawn."""
    return _R


def colour_weights(alpha: AlphaLike) -> np.ndarray:
    """Per-ball weights (1-a, 1-a, 1-a, 1-a, a, a)."""
    a = float(Alpha(alpha))
    return np.array([1.0 - a] * 4 + [a] * 2)


class UrnState(BaseModel):
    """Ball counts U_n after n draws.

    Invariants: the counts sum to 3 + 2n, colours 1-4 (pendant edges) hold n + 2 balls,
    colours 5-6 (internal edges) hold n + 1, and U_1 and U_1 + U_2 are even.
    """

    model_config = ConfigDict(frozen=True)

    counts: tuple[int, int, int, int, int, int]
    time: int = 0

    @model_validator(mode="after")
    def _check_invariants(self) -> "UrnState":
        if self.time < 0 or min(self.counts) < 0:
            raise ValueError(f"negative time or counts: time={self.time}, counts={self.counts}")
        if sum(self.counts[:4]) != self.time + 2 or sum(self.counts[4:]) != self.time + 1:
            raise ValueError(f"counts {self.counts} do not describe a tree with {self.time + 2} leaves")
        if self.counts[0] % 2 or (self.counts[0] + self.counts[1]) % 2:
            raise ValueError(f"colour-1 and colour-1+2 counts must be even, got {self.counts}")
        return self

    @property
    def n_leaves(self) -> int:
        return self.time + 2


def initial_urn() -> UrnState:
    """U_0 = (0, 2, 0, 0, 1, 0), the urn of the two-leaf tree."""
    return UrnState(counts=INITIAL_COUNTS, time=0)


def selection_distribution(urn: UrnState, alpha: AlphaLike) -> np.ndarray:
    """Draw probabilities proportional to ((1-a) U_1..U_4, a U_5, a U_6); the total is time + 2 - a."""
    weights = np.asarray(urn.counts, dtype=np.float64) * colour_weights(alpha)
    return weights / weights.sum()


def apply_draw(urn: UrnState, colour: int) -> UrnState:
    """Add row ``colour`` of R to the urn and advance time.

    Raises:
        InvalidParameterError: If ``colour`` is not in 1..6 or has no ball in the urn.
        ConsistencyError: If a count would turn negative.
    """
    if not 1 <= colour <= N_COLOURS:
        raise InvalidParameterError(f"colour must be in 1..{N_COLOURS}, got {colour}")
    if urn.counts[colour - 1] == 0:
        raise InvalidParameterError(f"colour {colour} cannot be drawn from {urn.counts}")
    counts = tuple(int(x) for x in np.add(urn.counts, _R[colour - 1]))
    if min(counts) < 0:
        raise ConsistencyError(f"drawing colour {colour} from {urn.counts} gives negative counts {counts}")
    return UrnState(counts=counts, time=urn.time + 1)


def urn_step(urn: UrnState, alpha: AlphaLike, rng: np.random.Generator) -> UrnState:
    """Draw one colour from the selection distribution and apply the replacement rule."""
    colour = int(rng.choice(N_COLOURS, p=selection_distribution(urn, alpha))) + 1
    return apply_draw(urn, colour)


def urn_to_ac(urn: UrnState) -> PairAC:
    """(A, C) of the tree with time + 2 leaves: (U_1 / 2, (U_1 + U_2) / 2).

    Raises:
        ConsistencyError: If the parity invariant is broken.
    """
    first, second = urn.counts[0], urn.counts[1]
    if first % 2 or (first + second) % 2:
        raise ConsistencyError(f"parity violated by urn counts {urn.counts}")
    return PairAC(first // 2, (first + second) // 2)


def urn_law(steps: int, alpha: AlphaLike) -> dict[tuple[int, ...], Number]:
    """Exact distribution of the urn counts after ``steps`` draws (``Fraction`` for exact alpha)."""
    if steps < 0:
        raise InvalidParameterError(f"steps must be non-negative, got {steps}")
    a = Alpha(alpha)
    weights = [a.beta] * 4 + [a.value] * 2
    law: dict[tuple[int, ...], Number] = {INITIAL_COUNTS: Fraction(1) if a.is_exact else 1.0}
    for time in range(steps):
        total = time + 2 - a.value
        following: dict[tuple[int, ...], Number] = defaultdict(int)
        for counts, probability in law.items():
            for colour in range(N_COLOURS):
                mass = counts[colour] * weights[colour]
                if mass == 0:
                    continue
                target = tuple(int(x) for x in np.add(counts, _R[colour]))
                following[target] += probability * mass / total
        law = dict(following)
    return law


def urn_trajectory(
    alpha: AlphaLike, steps: int, rng: np.random.Generator, checkpoints: Optional[Iterable[int]] = None
) -> list[tuple[int, np.ndarray]]:
    """Run one urn path for ``steps`` draws and record U_n / n at the requested times.

    Args:
        alpha: Model parameter.
        steps: Number of draws.
        rng: Random source; uniforms are drawn in chunks.
        checkpoints: Times at which to record proportions; defaults to ten geometric points.

    Returns:
        List of ``(time, counts / time)`` pairs in increasing time order.
    """
    if steps < 1:
        raise InvalidParameterError(f"steps must be positive, got {steps}")
    if checkpoints is None:
        checkpoints = np.unique(np.geomspace(1, steps, num=10).astype(int))
    wanted = sorted({int(t) for t in checkpoints if 1 <= t <= steps})
    a = float(Alpha(alpha))
    weights = colour_weights(a).tolist()
    counts = list(INITIAL_COUNTS)
    rows = _R.tolist()
    recorded = []
    chunk: list[float] = []
    next_index = 0
    for time in range(1, steps + 1):
        if not chunk:
            chunk = rng.random(min(65536, steps - time + 1)).tolist()[::-1]
        x = chunk.pop() * (time + 1 - a)
        colour = -1
        for candidate in range(N_COLOURS):
            mass = counts[candidate] * weights[candidate]
            if mass > 0:
                colour = candidate
                x -= mass
                if x < 0:
                    break
        row = rows[colour]
        for index in range(N_COLOURS):
            counts[index] += row[index]
        if next_index < len(wanted) and time == wanted[next_index]:
            recorded.append((time, np.array(counts, dtype=np.float64) / time))
            next_index += 1
    logger.debug(f"urn trajectory of {steps} draws recorded {len(recorded)} checkpoints")
    return recorded
