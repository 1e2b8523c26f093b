"""Leaf insertion under the Ford alpha-model."""

from typing import Sequence

import numpy as np

from ford_cherries.errors import ConsistencyError, InvalidParameterError
from ford_cherries.trees.alpha import Alpha, AlphaLike, Number
from ford_cherries.trees.shape import NO_CHILD, TreeShape, initial_tree


def edge_weight(tree: TreeShape, edge: int, alpha: AlphaLike) -> Number:
    """Selection weight of an edge: 1 - alpha for pendant edges, alpha for internal ones.

    The root edge is internal for every n >= 2.

    Raises:
        UnknownEdgeError: If ``edge`` is not an edge of ``tree``.
    """
    tree.check_edge(edge)
    a = Alpha(alpha)
    return a.beta if tree.is_leaf(edge) else a.value


def select_edge(n_leaves: int, alpha: float, u: float) -> tuple[bool, int]:
    """Map one uniform draw in [0, 1) to an edge class and a position inside that class.

    The total weight n(1 - alpha) + (n - 1) alpha = n - alpha is laid out with all pendant edges
    first, then all internal edges.

    Returns:
        ``(True, i)`` for the i-th pendant edge or ``(False, j)`` for the j-th internal edge.
    """
    total = n_leaves - alpha
    if total <= 0:
        raise ConsistencyError(f"total edge weight {total} is not positive for n={n_leaves}, alpha={alpha}")
    x = u * total
    pendant_mass = n_leaves * (1.0 - alpha)
    if x < pendant_mass or alpha == 0.0:
        return True, min(int(x / (1.0 - alpha)), n_leaves - 1)
    return False, min(int((x - pendant_mass) / alpha), n_leaves - 2)


class _GrowingTree:
    """Mutable flat-array tree used while a shape is being grown.

    Pendant and internal edges are kept in creation order, which is also increasing vertex order,
    so a frozen shape and its builder enumerate edges identically.
    """

    __slots__ = ("parent", "left", "right", "pendant", "internal")

    def __init__(self, tree: TreeShape):
        self.parent, self.left, self.right = tree.arrays()
        self.pendant = tree.pendant_edges()
        self.internal = tree.internal_edges()

    def subdivide(self, v: int) -> None:
        u = self.parent[v]
        w = len(self.parent)
        leaf = w + 1
        if self.left[u] == v:
            self.left[u] = w
        else:
            self.right[u] = w
        self.parent[v] = w
        self.parent.extend((u, w))
        self.left.extend((v, NO_CHILD))
        self.right.extend((leaf, NO_CHILD))
        self.internal.append(w)
        self.pendant.append(leaf)

    def grow(self, alpha: float, u: float) -> None:
        is_pendant, index = select_edge(len(self.pendant), alpha, u)
        self.subdivide(self.pendant[index] if is_pendant else self.internal[index])

    def freeze(self) -> TreeShape:
        return TreeShape._trusted(self.parent, self.left, self.right)


def insert_leaf(tree: TreeShape, edge: int) -> TreeShape:
    """Return T[e]: the edge is subdivided by a new vertex carrying a new leaf.

    The old child keeps its edge id; the new internal vertex and the new leaf get the next two
    vertex indices.
    """
    tree.check_edge(edge)
    builder = _GrowingTree(tree)
    builder.subdivide(edge)
    return builder.freeze()


def grow_step(tree: TreeShape, alpha: AlphaLike, rng: np.random.Generator) -> TreeShape:
    """Attach one leaf to an edge chosen with probability weight(e) / (n - alpha)."""
    builder = _GrowingTree(tree)
    builder.grow(float(Alpha(alpha)), float(rng.random()))
    return builder.freeze()


def grow_from_uniforms(n: int, alpha: AlphaLike, uniforms: Sequence[float]) -> TreeShape:
    """Grow T_n from T_2, consuming one uniform draw per inserted leaf.

    Raises:
        InvalidParameterError: If ``n < 2`` or fewer than ``n - 2`` draws are given.
    """
    if n < 2:
        raise InvalidParameterError(f"n must be at least 2, got {n}")
    if len(uniforms) < n - 2:
        raise InvalidParameterError(f"need {n - 2} uniform draws, got {len(uniforms)}")
    a = float(Alpha(alpha))
    builder = _GrowingTree(initial_tree())
    for step in range(n - 2):
        builder.grow(a, uniforms[step])
    return builder.freeze()


def simulate_ford(n: int, alpha: AlphaLike, rng: np.random.Generator) -> TreeShape:
    """Sample a shape with n leaves from the Ford(alpha) distribution."""
    if n < 2:
        raise InvalidParameterError(f"n must be at least 2, got {n}")
    return grow_from_uniforms(n, alpha, rng.random(n - 2).tolist())

