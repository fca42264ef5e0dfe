"""Rearrangement of Laguerre expansions into power form, and its diagnostics."""

import math

import pytest

from lagseries.rearrange import (
    DecayKind,
    LimitVerdict,
    PowerVerdict,
    Verdict,
    binomial_1f0_limit,
    classify_decay,
    formal_power_diagnosis,
    gamma_coefficient,
    inner_mu_probe,
    inner_partial_sum,
    power_tail,
    rearrange_truncated,
    zeta_tail,
)
from lagseries.series import (
    LaguerreSeries,
    monomial_series,
    power_exp_series,
    power_series,
    series_eval,
)
from lagseries.specfun import DomainError, ln_gamma

# Frozen 40-digit value of sum_{mu >= 100} mu^(-1.5).
TAIL_15_100 = 0.20050124998177190742


def test_monomial_roundtrip_is_exact():
    # Rearranging the expansion of z^m must reproduce z^m: unit coefficient
    # at degree m, zero elsewhere. The exact rational path makes this exact.
    for m in (0, 1, 3, 6):
        for alpha in (0.0, 0.5, 2.0):
            poly = rearrange_truncated(monomial_series(m, alpha), M=m + 6)
            for q, g in enumerate(poly.gamma_coeffs):
                expect = 1.0 if q == m else 0.0
                assert abs(g - expect) <= 1e-12


def test_truncation_matches_partial_sum_for_small_order():
    # At modest order the float partial sum is accurate enough to compare
    # directly against the rearranged polynomial.
    s = power_series(0.5, 0.0)
    poly = rearrange_truncated(s, M=10)
    for z in (0.3, 1.0, 4.0):
        ref = series_eval(s, z, 10)
        assert poly(z) == pytest.approx(ref, rel=1e-9)


def test_exact_path_engages_only_for_closed_forms():
    p_closed = rearrange_truncated(power_exp_series(0.5, -0.5, 0.0), M=8)
    assert p_closed.exact is not None
    custom = LaguerreSeries(0.0, lambda n: 1.0 / (n + 1.0) ** 2)
    p_custom = rearrange_truncated(custom, M=8)
    assert p_custom.exact is None
    assert len(p_custom.gamma_coeffs) == 9


def test_gamma_coefficient_sign_and_factorial_normalization():
    s = power_series(0.5, 0.0)
    for nu in (0, 1, 2, 3):
        g = gamma_coefficient(s, nu, 40)
        sign = -1.0 if nu % 2 else 1.0
        inner = inner_partial_sum(s, nu, 40 - nu)
        assert g == pytest.approx(sign / math.factorial(nu) * inner, rel=1e-13)


def test_inner_mu_probe_dichotomy():
    # For z^0.5 at alpha=0 the inner series converges (to zero) at nu=0 and
    # diverges for nu >= 1.
    s = power_series(0.5, 0.0)
    # Decade-spaced cutoffs make the shrinking-increment rule decisive for
    # the convergent branch; the divergent branch needs three points in the
    # top decade for the growth fit.
    probe0 = inner_mu_probe(s, 0, (100, 1000, 10000))
    assert probe0.verdict == Verdict.CONVERGES
    probe1 = inner_mu_probe(s, 1, (100, 300, 1000, 3000, 10000))
    assert probe1.verdict == Verdict.DIVERGES
    assert probe1.growth_exponent is not None and probe1.growth_exponent > 0.1


def test_power_tail_frozen_value():
    assert power_tail(1.5, 100) == pytest.approx(TAIL_15_100, rel=1e-12)
    with pytest.raises(DomainError):
        power_tail(1.0, 100)


def test_zeta_tail_matches_prefactor_times_power_tail():
    rho, alpha, nu, M = 0.5, 0.0, 0, 100
    pref = math.exp(ln_gamma(rho + alpha + 1.0) - ln_gamma(alpha + nu + 1.0)) / math.gamma(-rho)
    assert zeta_tail(rho, alpha, nu, M) == pytest.approx(pref * TAIL_15_100, rel=1e-12)
    with pytest.raises(DomainError):
        zeta_tail(0.5, 0.0, 1, 100)  # nu >= rho: tail diverges
    with pytest.raises(DomainError):
        zeta_tail(2.0, 0.0, 0, 100)  # integral exponent: prefactor undefined


def test_classify_decay_algebraic_monotone():
    s = power_series(0.5, 0.0)
    cls = classify_decay(s, 40, 160)
    assert cls.kind == DecayKind.ALGEBRAIC_MONOTONE
    # |lambda_n| ~ n^-(alpha+rho+1) = n^-1.5
    assert cls.exponent == pytest.approx(-1.5, abs=0.1)


def test_classify_decay_exponential_for_integral_exponent():
    # Only integral powers of z give exponentially decaying streams; the
    # nonintegral case is algebraic no matter the exponential factor.
    s = power_exp_series(2.0, -1.0, 0.0)
    cls = classify_decay(s, 40, 160)
    assert cls.kind == DecayKind.EXPONENTIAL_OR_FACTORIAL
    # |lambda_{n+1}/lambda_n| -> |u/(u-1)| = 0.5
    assert cls.ratio == pytest.approx(0.5, abs=0.03)
    s_frac = power_exp_series(0.5, -1.0, 0.0)
    assert classify_decay(s_frac, 40, 160).kind == DecayKind.ALGEBRAIC_MONOTONE


def test_classify_decay_alternating():
    s = LaguerreSeries(0.0, lambda n: (-1.0) ** n / (n + 1.0) ** 2)
    cls = classify_decay(s, 40, 160)
    assert cls.kind == DecayKind.ALGEBRAIC_ALTERNATING


def test_formal_power_diagnosis_splits_at_rho():
    rows = formal_power_diagnosis(0.5, -1.0, 0.0, 3)
    assert rows[0].verdict == PowerVerdict.VANISHES_TO_ZERO
    assert rows[0].tail_magnitude is not None and rows[0].tail_magnitude > 0.0
    for row in rows[1:]:
        assert row.verdict == PowerVerdict.DIVERGES_TO_INFINITY
    for row in formal_power_diagnosis(2.0, -1.0, 0.0, 3):
        assert row.verdict == PowerVerdict.FINITE_NONZERO
    with pytest.raises(DomainError):
        formal_power_diagnosis(0.5, 0.5, 0.0, 2)


def test_binomial_limit_verdicts():
    # (1+x)^rho coefficient-limit heuristic: nonintegral rho below/above the
    # index threshold flips the verdict.
    assert binomial_1f0_limit(0, 0.5) is not None
    assert binomial_1f0_limit(1, 0.5) != binomial_1f0_limit(0, 0.5)
