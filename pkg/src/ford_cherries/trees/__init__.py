"""Tree shapes grown by the Ford alpha-model and their edge statistics."""

from ford_cherries.trees.alpha import Alpha, AlphaLike
from ford_cherries.trees.edges import PairAC, classify_edges, count_stats, edge_colors
from ford_cherries.trees.enumeration import ac_law, shape_law
from ford_cherries.trees.growth import (
    edge_weight,
    grow_from_uniforms,
    grow_step,
    insert_leaf,
    select_edge,
    simulate_ford,
)
from ford_cherries.trees.shape import TreeShape, caterpillar, initial_tree

__all__ = [
    "Alpha",
    "AlphaLike",
    "PairAC",
    "TreeShape",
    "initial_tree",
    "caterpillar",
    "edge_weight",
    "select_edge",
    "insert_leaf",
    "grow_step",
    "grow_from_uniforms",
    "simulate_ford",
    "edge_colors",
    "classify_edges",
    "count_stats",
    "shape_law",
    "ac_law",
]
