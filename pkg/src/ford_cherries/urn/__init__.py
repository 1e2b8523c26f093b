"""The six-colour urn equivalent to the Ford process, its eigensystem and its limits."""

from ford_cherries.urn.limits import (
    LimitSummary,
    limit_summary,
    limiting_proportions,
    nu_mu,
    phi,
    principal_left_vector,
    s_closed_form,
    sigma_closed_form,
)
from ford_cherries.urn.process import (
    UrnState,
    apply_draw,
    colour_weights,
    initial_urn,
    replacement_matrix,
    selection_distribution,
    urn_law,
    urn_step,
    urn_to_ac,
    urn_trajectory,
)
from ford_cherries.urn.spectral import (
    EigenSystem,
    check_assumptions,
    eigensystem,
    r_alpha,
    spectral_sigma_tilde,
    t_alpha,
    t_alpha_inv,
)

__all__ = [
    "UrnState",
    "initial_urn",
    "replacement_matrix",
    "colour_weights",
    "selection_distribution",
    "apply_draw",
    "urn_step",
    "urn_to_ac",
    "urn_law",
    "urn_trajectory",
    "t_alpha",
    "t_alpha_inv",
    "r_alpha",
    "EigenSystem",
    "eigensystem",
    "check_assumptions",
    "spectral_sigma_tilde",
    "LimitSummary",
    "limit_summary",
    "phi",
    "limiting_proportions",
    "principal_left_vector",
    "sigma_closed_form",
    "s_closed_form",
    "nu_mu",
]
