"""Monte-Carlo campaigns and their agreement with the exact and limiting laws."""

from ford_cherries.montecarlo.campaign import EmpiricalSummary, run_campaign
from ford_cherries.montecarlo.comparison import (
    CltReport,
    EngineComparison,
    ExactComparison,
    OracleConvergence,
    ProportionReport,
    clt_check,
    compare_engines,
    compare_exact,
    oracle_convergence,
    proportion_convergence,
    whitening_matrix,
)
from ford_cherries.montecarlo.config import Engine, TrialConfig
from ford_cherries.montecarlo.engines import sample_block, tree_block, urn_block
from ford_cherries.montecarlo.harness import CheckResult, ValidationHarness, ValidationReport
from ford_cherries.montecarlo.streams import trial_generator, trial_uniforms

__all__ = [
    "Engine",
    "TrialConfig",
    "trial_generator",
    "trial_uniforms",
    "tree_block",
    "urn_block",
    "sample_block",
    "EmpiricalSummary",
    "run_campaign",
    "ExactComparison",
    "compare_exact",
    "EngineComparison",
    "compare_engines",
    "CltReport",
    "whitening_matrix",
    "clt_check",
    "ProportionReport",
    "proportion_convergence",
    "OracleConvergence",
    "oracle_convergence",
    "CheckResult",
    "ValidationReport",
    "ValidationHarness",
]
