"""Exact law, moments and closed forms for pitchfork and cherry counts."""

from ford_cherries.exact.closed_forms import (
    MeanAsymptotics,
    MeanClosedForm,
    SecondMomentCoefficients,
    mean_asymptotics,
    mean_closed_form,
    second_moment_asymptotics,
    second_moment_coefficients,
)
from ford_cherries.exact.curves import (
    CurveExtrema,
    LimitCurves,
    SweepRow,
    curve_derivative_numerators,
    limit_curve_extrema,
    limiting_curves,
    parse_grid,
    sweep_rows,
)
from ford_cherries.exact.joint_pmf import (
    MOMENT_FUNCTIONS,
    JointPmf,
    cherry_pmf,
    functional_recursion_residual,
    joint_pmf,
    joint_pmf_exact,
)
from ford_cherries.exact.moments import (
    CorrelationSign,
    MomentTrace,
    correlation_sign,
    ford_variance_recursion_check,
    moment_route_discrepancy,
    moment_trace,
)

__all__ = [
    "JointPmf",
    "joint_pmf",
    "joint_pmf_exact",
    "cherry_pmf",
    "functional_recursion_residual",
    "MOMENT_FUNCTIONS",
    "MomentTrace",
    "moment_trace",
    "ford_variance_recursion_check",
    "moment_route_discrepancy",
    "CorrelationSign",
    "correlation_sign",
    "MeanClosedForm",
    "mean_closed_form",
    "MeanAsymptotics",
    "mean_asymptotics",
    "SecondMomentCoefficients",
    "second_moment_coefficients",
    "second_moment_asymptotics",
    "LimitCurves",
    "limiting_curves",
    "curve_derivative_numerators",
    "CurveExtrema",
    "limit_curve_extrema",
    "SweepRow",
    "parse_grid",
    "sweep_rows",
]
