import math

import pytest

from ford_cherries.errors import DegenerateCorrelationError, InvalidParameterError
from ford_cherries.exact import (
    correlation_sign,
    ford_variance_recursion_check,
    mean_asymptotics,
    mean_closed_form,
    moment_route_discrepancy,
    moment_trace,
    moments,
    second_moment_asymptotics,
    second_moment_coefficients,
)
from ford_cherries.exact.closed_forms import correction_terms
from ford_cherries.urn import limit_summary


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
def test_three_leaves(alpha):
    """Test if the trace starts from A_3 = C_3 = 1 with no variance."""
    (trace,) = moment_trace(3, alpha)
    assert (trace.ec, trace.ea, trace.ec2, trace.eac, trace.ea2) == (1.0, 1.0, 1.0, 1.0, 1.0)
    assert (trace.var_c, trace.cov_ac, trace.var_a) == (0.0, 0.0, 0.0)
    assert trace.corr is None


def test_trace_rejects_small_n():
    """Test if a trace shorter than the pitchfork is refused."""
    with pytest.raises(InvalidParameterError):
        moment_trace(2, 0.5)


def test_yule_means():
    """Test if E[C_n] = n/3 and, from four leaves on, E[A_n] = n/6 under Yule."""
    for trace in moment_trace(2000, 0.0):
        assert trace.ec == pytest.approx(trace.n / 3, rel=1e-12)
        if trace.n >= 4:
            assert trace.ea == pytest.approx(trace.n / 6, rel=1e-12)


def test_yule_second_moments():
    """Test if the Yule variances and covariance are exactly linear from seven leaves on."""
    for trace in moment_trace(1000, 0.0)[4:]:
        n = trace.n
        assert trace.var_c == pytest.approx(2 * n / 45, rel=1e-10)
        assert trace.cov_ac == pytest.approx(-n / 45, rel=1e-10)
        assert trace.var_a == pytest.approx(23 * n / 420, rel=1e-10)
        assert trace.corr == pytest.approx(-math.sqrt(14 / 69), abs=1e-10)


def test_comb_is_deterministic():
    """Test if alpha = 1 keeps one pitchfork and one cherry with no variance."""
    for trace in moment_trace(200, 1.0):
        assert (trace.ec, trace.ea) == pytest.approx((1.0, 1.0))
        assert (trace.var_c, trace.cov_ac, trace.var_a) == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 0.75, 1.0])
def test_ford_variance_recursion(alpha):
    """Test if E[C_n^2] - E[C_n]^2 from the raw recursions satisfies the closed variance recursion."""
    assert ford_variance_recursion_check(400, alpha) < 1e-7


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 0.75, 1.0])
def test_raw_and_centered_moments_agree(alpha):
    """Test if central moments formed from raw moments match the centered recursion."""
    assert moment_route_discrepancy(1000, alpha) < 1e-10


def test_variance_checks_catch_a_wrong_coefficient(monkeypatch):
    """Test if a perturbed constant term in the E[C^2] recursion fails both variance checks."""
    exact_step = moments._raw_step

    def perturbed_step(n, a, raw):
        ec, ea, ec2, eac, ea2 = exact_step(n, a, raw)
        return ec, ea, ec2 + 0.01 * n * (1 - a) / (n - a), eac, ea2

    monkeypatch.setattr(moments, "_raw_step", perturbed_step)
    assert ford_variance_recursion_check(100, 0.5) > 1e-4
    assert moment_route_discrepancy(100, 0.5) > 1e-6


def test_ford_variance_recursion_rejects_small_n():
    """Test if at least one step is required."""
    with pytest.raises(InvalidParameterError):
        ford_variance_recursion_check(3, 0.5)


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.499999])
def test_negative_correlation(alpha):
    """Test if pitchforks and cherries are negatively correlated for alpha < 1/2."""
    assert correlation_sign(500, alpha).sign == -1


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
def test_positive_correlation(alpha):
    """Test if pitchforks and cherries are positively correlated for alpha > 1/2."""
    result = correlation_sign(500, alpha)
    assert result.sign == 1
    assert 0 < result.value <= 1


def test_degenerate_correlation():
    """Test if the correlation is refused for the comb and for three leaves."""
    with pytest.raises(DegenerateCorrelationError):
        correlation_sign(100, 1.0)
    with pytest.raises(DegenerateCorrelationError):
        correlation_sign(3, 0.5)


@pytest.mark.parametrize("alpha", [0.0, 0.2, 0.5, 0.8, 1.0])
def test_mean_closed_form(alpha):
    """Test if the closed-form means equal the recursion to relative 1e-10."""
    traces = moment_trace(1000, alpha)
    for n in (3, 4, 5, 10, 137, 1000):
        closed = mean_closed_form(n, alpha, verify=True)
        trace = traces[n - 3]
        assert closed.mean_c == pytest.approx(trace.ec, rel=1e-10)
        assert closed.mean_a == pytest.approx(trace.ea, rel=1e-10)


def test_correction_terms():
    """Test if x_3 = alpha / (2(3 - 2 alpha)) and y_5 matches its hand value at alpha = 1/2."""
    x3, y3 = correction_terms(3, 0.5)
    assert x3 == pytest.approx(0.125)
    assert y3 == 0.5
    _, y5 = correction_terms(5, 0.5)
    assert y5 == pytest.approx(0.107142857, abs=1e-9)
    assert correction_terms(50, 0.0) == (0.0, 0.0)


def test_mean_closed_form_rejects_small_n():
    """Test if the closed form is refused below three leaves."""
    with pytest.raises(InvalidParameterError):
        mean_closed_form(2, 0.5)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_mean_asymptotics(alpha):
    """Test if the leading-order corrections approach the exact ones."""
    n = 100_000
    exact = mean_closed_form(n, alpha)
    leading = mean_asymptotics(n, alpha)
    assert leading.x_n == pytest.approx(exact.x_n, rel=1e-3)
    assert leading.y_n == pytest.approx(exact.y_n, rel=1e-3)


def test_yule_second_moment_coefficients():
    """Test if the Yule coefficients are 2/45, -1/45 and 23/420 with no constant terms."""
    k = second_moment_coefficients(0.0)
    assert (k.c1, k.d1, k.e1) == pytest.approx((2 / 45, -1 / 45, 23 / 420))
    assert (k.c0, k.d0, k.e0) == pytest.approx((0.0, 0.0, 0.0))


def test_yule_remainder_vanishes():
    """Test if the linear Yule expansion is exact for large n."""
    trace = moment_trace(1000, 0.0)[-1]
    var_c, cov, var_a = second_moment_asymptotics(1000, 0.0)
    assert abs(trace.var_c - var_c) < 1e-9
    assert abs(trace.cov_ac - cov) < 1e-9
    assert abs(trace.var_a - var_a) < 1e-9


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_second_moment_remainders_are_bounded(alpha):
    """Test if each second-moment remainder times n^(2(1 - alpha)) does not grow from n = 1000 to n = 10000."""
    traces = moment_trace(10_000, alpha)
    scaled = []
    for n in (1000, 10_000):
        trace = traces[n - 3]
        scale = n ** (2 * (1 - alpha))
        var_c, cov, var_a = second_moment_asymptotics(n, alpha)
        scaled.append(
            [
                abs(trace.var_c - var_c) * scale,
                abs(trace.cov_ac - cov) * scale,
                abs(trace.var_a - var_a) * scale,
            ]
        )
    for early, late in zip(*scaled):
        assert late / max(early, 1e-3) <= 3


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_moments_approach_limits(alpha):
    """Test if the exact moments divided by n are within 2% of the urn limits at n = 10^4."""
    n = 10_000
    trace = moment_trace(n, alpha)[-1]
    limits = limit_summary(alpha)
    assert trace.ea / n == pytest.approx(limits.nu, rel=0.02, abs=2e-4)
    assert trace.ec / n == pytest.approx(limits.mu, rel=0.02, abs=2e-4)
    assert trace.var_a / n == pytest.approx(limits.tau2, rel=0.02, abs=2e-4)
    assert trace.cov_ac / n == pytest.approx(limits.rho, rel=0.02, abs=2e-4)
    assert trace.var_c / n == pytest.approx(limits.sigma2, rel=0.02, abs=2e-4)

def test_uniform_cherry_variance_constant():
    """Test if var(C_n) - n/16 approaches -1/32 at alpha = 1/2."""
    trace = moment_trace(20_000, 0.5)[-1]
    assert trace.var_c - trace.n / 16 == pytest.approx(-1 / 32, abs=1e-3)
