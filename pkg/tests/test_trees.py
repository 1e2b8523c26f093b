import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from ford_cherries.errors import InvalidParameterError, UnknownEdgeError
from ford_cherries.trees import (
    Alpha,
    PairAC,
    TreeShape,
    ac_law,
    caterpillar,
    classify_edges,
    count_stats,
    edge_colors,
    edge_weight,
    grow_from_uniforms,
    initial_tree,
    insert_leaf,
    select_edge,
    shape_law,
    simulate_ford,
)
from ford_cherries.urn import replacement_matrix

PITCHFORK = "((,),)"


def test_initial_tree():
    """Test if T_2 is a cherry below the root edge with colour counts (0, 2, 0, 0, 1, 0)."""
    tree = initial_tree()
    assert tree.n_leaves == 2
    assert tree.to_newick() == "(,)"
    assert classify_edges(tree) == (0, 2, 0, 0, 1, 0)
    assert count_stats(tree) == PairAC(0, 1)


def test_edge_weights():
    """Test if pendant edges weigh 1 - alpha and internal edges weigh alpha, exactly for rational alpha."""
    tree = initial_tree()
    assert edge_weight(tree, 1, Fraction(1, 4)) == Fraction(1, 4)
    assert edge_weight(tree, 2, Fraction(1, 4)) == Fraction(3, 4)
    assert edge_weight(tree, 3, 0.3) == pytest.approx(0.7)


@pytest.mark.parametrize("edge", [0, 4, -1])
def test_unknown_edge(edge):
    """Test if edges outside the tree are rejected."""
    with pytest.raises(UnknownEdgeError):
        edge_weight(initial_tree(), edge, 0.5)
    with pytest.raises(UnknownEdgeError):
        insert_leaf(initial_tree(), edge)


def test_insert_leaf_makes_pitchfork():
    """Test if every insertion into T_2 gives the pitchfork, whose colours are (2, 0, 1, 0, 0, 2)."""
    for edge in initial_tree().edges():
        tree = insert_leaf(initial_tree(), edge)
        assert tree == TreeShape.from_newick(PITCHFORK)
        assert classify_edges(tree) == (2, 0, 1, 0, 0, 2)
        assert count_stats(tree) == PairAC(1, 1)


def test_balanced_quartet(balanced_quartet):
    """Test if two essential cherries give colours (0, 4, 0, 0, 2, 1)."""
    assert classify_edges(balanced_quartet) == (0, 4, 0, 0, 2, 1)
    assert count_stats(balanced_quartet) == PairAC(0, 2)


def test_colour_identities(rng):
    """Test if the colour classes determine the pitchfork and cherry counts on random trees."""
    for alpha in (0.0, 0.3, 0.5, 0.9):
        for n in (3, 10, 57):
            tree = simulate_ford(n, alpha, rng)
            e1, e2, e3, e4, e5, e6 = classify_edges(tree)
            a, c = count_stats(tree)
            assert e1 + e2 + e3 + e4 + e5 + e6 == 2 * n - 1
            assert e1 + e2 + e3 + e4 == n
            assert e5 + e6 == n - 1
            assert (e1, e2, e3, e5) == (2 * a, 2 * (c - a), a, c - a)


def test_insertion_adds_replacement_row(rng):
    """Test if inserting a leaf on an edge of colour i adds row i of the replacement matrix."""
    matrix = replacement_matrix()
    for n in (2, 3, 6, 15):
        tree = simulate_ford(n, 0.5, rng)
        before = np.array(classify_edges(tree))
        for edge, colour in edge_colors(tree).items():
            after = np.array(classify_edges(insert_leaf(tree, edge)))
            np.testing.assert_array_equal(after - before, matrix[colour - 1])


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (Fraction(0), {PairAC(1, 1): Fraction(2, 3), PairAC(0, 2): Fraction(1, 3)}),
        (Fraction(1, 2), {PairAC(1, 1): Fraction(4, 5), PairAC(0, 2): Fraction(1, 5)}),
        (Fraction(1), {PairAC(1, 1): Fraction(1)}),
    ],
)
def test_four_leaf_law(alpha, expected):
    """Test if the enumerated law at n = 4 matches the hand-computed one."""
    assert ac_law(4, alpha) == expected


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1, 3), Fraction(1)])
def test_shape_law_is_a_distribution(alpha):
    """Test if the enumerated shape probabilities are exact and sum to one."""
    for n in range(2, 8):
        law = shape_law(n, alpha)
        assert sum(p for _, p in law.values()) == 1
        assert all(shape.n_leaves == n for shape, _ in law.values())


def test_comb_model_gives_caterpillar():
    """Test if alpha = 1 only grows the caterpillar."""
    law = shape_law(7, 1)
    assert len(law) == 1
    (shape, probability), = law.values()
    assert shape == caterpillar(7)
    assert probability == 1
    assert ac_law(7, 1) == {PairAC(1, 1): 1}


def test_oracle_size_limit():
    """Test if the enumeration refuses sizes it cannot handle."""
    with pytest.raises(InvalidParameterError):
        shape_law(13, 0.5)
    with pytest.raises(InvalidParameterError):
        ac_law(1, 0.5)


@pytest.mark.parametrize("n", [2, 3, 4, 9])
def test_caterpillar(n):
    """Test if the caterpillar has one cherry and, from three leaves on, one pitchfork."""
    tree = caterpillar(n)
    assert tree.n_leaves == n
    assert count_stats(tree) == PairAC(int(n >= 3), 1)


@pytest.mark.parametrize("text", ["(,)", PITCHFORK, "((,),(,))", "(((,),),((,),(,)))"])
def test_newick(text):
    """Test if shapes parse back from their nested-parenthesis form."""
    tree = TreeShape.from_newick(text)
    assert tree.to_newick() == text
    assert tree.n_leaves == text.count(",") + 1


def test_canonical_ignores_child_order():
    """Test if mirror images are the same shape."""
    assert TreeShape.from_newick("((,),)") == TreeShape.from_newick("(,(,))")
    assert hash(TreeShape.from_newick("((,),)")) == hash(TreeShape.from_newick("(,(,))"))
    assert TreeShape.from_newick("((,),(,))") != TreeShape.from_newick("(((,),),)")


@pytest.mark.parametrize("text", ["", ",", "()", "(,,)", "((,)", "(,))", "(a,)"])
def test_malformed_newick(text):
    """Test if malformed shape strings are rejected."""
    with pytest.raises(InvalidParameterError):
        TreeShape.from_newick(text)


def test_invalid_arrays():
    """Test if inconsistent parent/child arrays are rejected."""
    with pytest.raises(InvalidParameterError):
        TreeShape([-1, 0, 1], [1, -1, -1], [-1, -1, -1])
    with pytest.raises(InvalidParameterError):
        TreeShape([-1, 0, 1, 1], [1, 2, -1, -1], [-1, -1, -1, -1])


def test_select_edge():
    """Test if a uniform draw maps to pendant edges first, then internal ones."""
    assert select_edge(3, 0.5, 0.0) == (True, 0)
    assert select_edge(3, 0.5, 0.999) == (False, 1)
    assert select_edge(3, 0.0, 0.999) == (True, 2)
    assert select_edge(3, 1.0, 0.0) == (False, 0)


def test_growth_is_reproducible():
    """Test if the same uniforms give the same tree and too few uniforms are rejected."""
    uniforms = np.random.default_rng(7).random(30).tolist()
    assert grow_from_uniforms(32, 0.4, uniforms).to_newick() == grow_from_uniforms(32, 0.4, uniforms).to_newick()
    with pytest.raises(InvalidParameterError):
        grow_from_uniforms(33, 0.4, uniforms)
    with pytest.raises(InvalidParameterError):
        simulate_ford(1, 0.4, np.random.default_rng(0))


def _worst_shape_deviation(n, alpha, trials, seed):
    """Largest |observed - expected| shape frequency in standard errors; inf for a shape off the support."""
    law = {key: float(probability) for key, (_, probability) in shape_law(n, alpha).items()}
    rng = np.random.default_rng(seed)
    observed = Counter(simulate_ford(n, alpha, rng).canonical() for _ in range(trials))
    worst = 0.0
    for key in set(law) | set(observed):
        p = law.get(key, 0.0)
        frequency = observed.get(key, 0) / trials
        se = math.sqrt(p * (1 - p) / trials)
        if se == 0:
            if frequency != p:
                return math.inf
            continue
        worst = max(worst, abs(frequency - p) / se)
    return worst


@pytest.mark.parametrize("alpha", ["0", "1/2", "1"])
def test_simulated_shapes_follow_shape_law(alpha):
    """Test if sampled six-leaf shapes occur with their enumerated probabilities."""
    assert _worst_shape_deviation(6, alpha, 20_000, seed=31) < 4


@pytest.mark.slow
@pytest.mark.parametrize("alpha", ["0", "1/4", "1/2", "3/4", "1"])
@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_simulated_shapes_follow_shape_law_at_scale(n, alpha):
    """Test if the shape frequencies of 10^6 simulated trees stay within 4 standard errors."""
    assert _worst_shape_deviation(n, alpha, 1_000_000, seed=100 * n + 7) < 4


@pytest.mark.parametrize(
    "value, expected, exact",
    [("1/4", Fraction(1, 4), True), ("0.3", 0.3, False), (1, Fraction(1), True), (0.5, 0.5, False)],
)
def test_alpha_parsing(value, expected, exact):
    """Test if alpha keeps rational inputs exact."""
    alpha = Alpha(value)
    assert alpha.value == expected
    assert alpha.is_exact is exact


@pytest.mark.parametrize("value", ["x", "1/0", 1.5, -0.1, float("nan")])
def test_alpha_rejects(value):
    """Test if alpha outside [0, 1] or unparsable text is rejected."""
    with pytest.raises(InvalidParameterError):
        Alpha(value)
