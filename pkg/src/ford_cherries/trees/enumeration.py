"""Exhaustive small-n laws of the Ford process, used as an independent oracle."""

from collections import defaultdict
from fractions import Fraction
from typing import Union

from loguru import logger

from ford_cherries.errors import InvalidParameterError
from ford_cherries.trees.alpha import Alpha, AlphaLike, Number
from ford_cherries.trees.edges import PairAC, count_stats
from ford_cherries.trees.growth import edge_weight, insert_leaf
from ford_cherries.trees.shape import TreeShape, initial_tree

MAX_ORACLE_LEAVES = 12


def shape_law(n: int, alpha: AlphaLike) -> dict[str, tuple[TreeShape, Number]]:
    """Exact distribution of the Ford(alpha) shape with n leaves.

    Every weighted insertion is enumerated level by level from T_2; histories that reach the same
    shape are merged under its canonical string. Weights are ``Fraction`` when alpha is exact.

    Returns:
        Mapping from canonical string to ``(representative shape, probability)``.

    Raises:
        InvalidParameterError: If n is outside [2, MAX_ORACLE_LEAVES].
    """
    if not 2 <= n <= MAX_ORACLE_LEAVES:
        raise InvalidParameterError(f"oracle supports 2 <= n <= {MAX_ORACLE_LEAVES}, got {n}")
    a = Alpha(alpha)
    one: Number = Fraction(1) if a.is_exact else 1.0
    start = initial_tree()
    level: dict[str, tuple[TreeShape, Number]] = {start.canonical(): (start, one)}
    for size in range(2, n):
        total = size - a.value
        following: dict[str, tuple[TreeShape, Number]] = {}
        for shape, probability in level.values():
            for edge in shape.edges():
                weight = edge_weight(shape, edge, a)
                if weight == 0:
                    continue
                child = insert_leaf(shape, edge)
                key = child.canonical()
                mass = probability * weight / total
                if key in following:
                    following[key] = (following[key][0], following[key][1] + mass)
                else:
                    following[key] = (child, mass)
        level = following
        logger.debug(f"oracle level n={size + 1}: {len(level)} shapes")
    return level


def ac_law(n: int, alpha: AlphaLike) -> dict[PairAC, Union[Fraction, float]]:
    """Exact law of (pitchforks, cherries) for n leaves, projected from :func:`shape_law`."""
    law: dict[PairAC, Union[Fraction, float]] = defaultdict(int)
    for shape, probability in shape_law(n, alpha).values():
        law[count_stats(shape)] += probability
    return dict(law)
