from fractions import Fraction

import numpy as np
import pytest

from ford_cherries.errors import InvalidParameterError
from ford_cherries.exact import (
    MOMENT_FUNCTIONS,
    cherry_pmf,
    functional_recursion_residual,
    joint_pmf,
    joint_pmf_exact,
    moment_trace,
)
from ford_cherries.trees import PairAC, ac_law

ORACLE_ALPHAS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (0.0, {PairAC(1, 1): 2 / 3, PairAC(0, 2): 1 / 3}),
        (0.5, {PairAC(1, 1): 0.8, PairAC(0, 2): 0.2}),
        (1.0, {PairAC(1, 1): 1.0}),
    ],
)
def test_four_leaves(alpha, expected):
    """Test if the dynamic programme reproduces the hand-computed law at n = 4."""
    law = joint_pmf(4, alpha).as_dict()
    assert list(law) == list(expected)
    assert list(law.values()) == pytest.approx(list(expected.values()), abs=1e-15)


def test_three_leaves():
    """Test if the recursion starts from the point mass at the pitchfork."""
    pmf = joint_pmf(3, 0.3)
    assert pmf.as_dict() == {PairAC(1, 1): 1.0}
    assert pmf.probability(1, 1) == 1.0
    assert pmf.probability(5, 7) == 0.0


@pytest.mark.parametrize("n", [-1, 0, 2])
def test_small_n_rejected(n):
    """Test if the joint law is refused below three leaves."""
    with pytest.raises(InvalidParameterError):
        joint_pmf(n, 0.5)
    with pytest.raises(InvalidParameterError):
        cherry_pmf(n, 0.5)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 0.9, 1.0])
def test_normalization_and_support(alpha):
    """Test if the law sums to one and lives on 1 <= c, a <= c, a + 2c <= n."""
    for n in (5, 64, 501):
        pmf = joint_pmf(n, alpha)
        assert pmf.total() == pytest.approx(1.0, abs=1e-12)
        for (a, c), p in pmf.as_dict().items():
            assert p > 0
            assert 1 <= c and 0 <= a <= c and a + 2 * c <= n
        assert not pmf.table.flags.writeable


@pytest.mark.parametrize("alpha", ORACLE_ALPHAS)
def test_exact_recursion_matches_enumeration(alpha):
    """Test if the rational dynamic programme equals the enumerated law for n <= 8."""
    for n in range(3, 9):
        assert joint_pmf_exact(n, alpha) == ac_law(n, alpha)


@pytest.mark.parametrize("alpha", ORACLE_ALPHAS)
def test_float_recursion_matches_enumeration(alpha):
    """Test if the floating-point table agrees with the enumerated law to 1e-12."""
    for n in range(3, 9):
        oracle = ac_law(n, alpha)
        pmf = joint_pmf(n, float(alpha))
        for cell in set(oracle) | set(pmf.as_dict()):
            assert pmf.probability(*cell) == pytest.approx(float(oracle.get(cell, 0)), abs=1e-12)


def test_exact_mode_order_and_limit():
    """Test if exact results are ordered by (c, a) and refused past the size limit."""
    law = joint_pmf_exact(9, Fraction(1, 3))
    keys = list(law)
    assert keys == sorted(keys, key=lambda cell: (cell.c, cell.a))
    assert sum(law.values()) == 1
    with pytest.raises(InvalidParameterError):
        joint_pmf_exact(41, Fraction(1, 3))


@pytest.mark.parametrize("alpha", [0.0, 0.5, 0.9])
def test_cherry_marginal(alpha):
    """Test if the one-dimensional cherry recursion equals the marginal of the joint law."""
    for n in (3, 4, 17, 200):
        law = cherry_pmf(n, alpha, verify=True)
        assert list(law) == list(range(1, n // 2 + 1))
        assert sum(law.values()) == pytest.approx(1.0, abs=1e-12)
        marginal = joint_pmf(n, alpha).marginal_c()
        for k, p in law.items():
            assert p == pytest.approx(marginal[k], abs=1e-12)


def test_yule_cherries_at_four_leaves():
    """Test if two cherries occur with probability 1/3 under Yule."""
    assert cherry_pmf(4, 0.0) == pytest.approx({1: 2 / 3, 2: 1 / 3})


@pytest.mark.parametrize("name", sorted(MOMENT_FUNCTIONS))
@pytest.mark.parametrize("alpha", [0.0, 0.4, 0.8])
def test_functional_recursion(name, alpha):
    """Test if every moment function satisfies the one-step functional recursion."""
    assert functional_recursion_residual(20, alpha, name) < 1e-10


def test_functional_recursion_arbitrary_function():
    """Test if the recursion holds for a function that is not a moment."""
    assert functional_recursion_residual(12, 0.35, lambda a, c: np.cos(a) * np.exp(-c / 3)) < 1e-12
    with pytest.raises(InvalidParameterError):
        functional_recursion_residual(12, 0.35, "z")


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.7])
def test_table_moments_match_recursion(alpha):
    """Test if moments summed over the table equal the moment recursions."""
    from_table = joint_pmf(60, alpha).moments()
    from_recursion = moment_trace(60, alpha)[-1]
    for field in ("ec", "ea", "ec2", "eac", "ea2", "var_c", "cov_ac", "var_a"):
        assert getattr(from_table, field) == pytest.approx(getattr(from_recursion, field), rel=1e-10, abs=1e-12)
