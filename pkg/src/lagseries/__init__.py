"""Numerics for generalized Laguerre expansions: coefficient streams,
rearrangement into power series, sequence-transformation summation, and
two-range radial addition theorems."""

from .specfun import (
    DomainError,
    PoleError,
    laguerre_explicit,
    laguerre_recurrence,
    laguerre_sequence,
    rbf_half,
)
from .series import (
    GuseinovRadial,
    LaguerreSeries,
    Monomial,
    Power,
    PowerExp,
    QuadratureRule,
    RbfRadial,
    StfRadial,
    coeff_monomial,
    coeff_numeric,
    coeff_power,
    coeff_power_exp,
    guseinov_radial,
    monomial_series,
    power_exp_series,
    power_series,
    series_eval,
    series_for,
    stf_in_guseinov_coeffs,
)
from .rearrange import (
    DecayKind,
    classify_decay,
    formal_power_diagnosis,
    gamma_coefficient,
    inner_mu_probe,
    rearrange_truncated,
    zeta_tail,
)
from .seqxform import (
    DegenerateTable,
    SummationVerdict,
    levin_type,
    sum_inner_series,
    weniger_s,
    wynn_epsilon,
)
from .addthm import (
    ExpansionDiagnostics,
    TwoRangeGeometry,
    Verdict,
    convergence_probe,
    f_eta_direct,
    f_eta_singularities,
    gegenbauer_expand_large,
    gegenbauer_expand_small,
    one_s_addition,
    one_s_direct,
    power_addition_legendre,
    rbf_addition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
