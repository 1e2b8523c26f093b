"""Six-colour edge classification and cherry/pitchfork counts."""

from typing import NamedTuple

from ford_cherries.trees.shape import ROOT, TreeShape

PENDANT_COLOURS = (1, 2, 3, 4)
INTERNAL_COLOURS = (5, 6)


class PairAC(NamedTuple):
    """Pitchfork count ``a`` and cherry count ``c`` of a tree."""

    a: int
    c: int


def edge_colors(tree: TreeShape) -> dict[int, int]:
    """Colour of every edge, keyed by the edge's child vertex.

    Colours: 1 pendant edge of a cherry inside a pitchfork, 2 pendant edge of an essential cherry,
    3 the remaining pendant edge of a pitchfork, 4 any other pendant edge, 5 the edge above an
    essential cherry, 6 any other internal edge.
    """
    sizes = tree.subtree_sizes()

    def heads_pitchfork_child(v: int) -> bool:
        above = tree.parent(v)
        return above != ROOT and sizes[above] == 3

    colours = {}
    for v in tree.edges():
        if tree.is_leaf(v):
            above = tree.parent(v)
            if sizes[above] == 2:
                colours[v] = 1 if heads_pitchfork_child(above) else 2
            elif sizes[above] == 3:
                colours[v] = 3
            else:
                colours[v] = 4
        else:
            colours[v] = 5 if sizes[v] == 2 and not heads_pitchfork_child(v) else 6
    return colours


def classify_edges(tree: TreeShape) -> tuple[int, int, int, int, int, int]:
    """Edge-class sizes (|E_1|, ..., |E_6|); they sum to 2n - 1."""
    counts = [0] * 6
    for colour in edge_colors(tree).values():
        counts[colour - 1] += 1
    return tuple(counts)  # type: ignore[return-value]


def count_stats(tree: TreeShape) -> PairAC:
    """Count pitchforks and cherries, i.e. fringe subtrees with three and two leaves."""
    sizes = tree.subtree_sizes()
    a = c = 0
    for v in tree.edges():
        if sizes[v] == 2:
            c += 1
        elif sizes[v] == 3:
            a += 1
    return PairAC(a, c)
