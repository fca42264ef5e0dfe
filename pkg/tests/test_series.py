"""Coefficient streams, quadrature projection, and series evaluation."""

import math

import pytest

from lagseries.series import (
    LaguerreSeries,
    Monomial,
    Power,
    PowerExp,
    QuadratureRule,
    coeff_monomial,
    coeff_numeric,
    coeff_power,
    coeff_power_exp,
    guseinov_radial,
    monomial_series,
    parseval_gap,
    power_exp_series,
    power_series,
    series_eval,
    series_for,
    stf_in_guseinov_coeffs,
)
from lagseries.specfun import DomainError, pochhammer

# Frozen 40-digit reference values for the analytic coefficient streams.
CP_05_0_5 = -0.024232767492848851936
CP_05_0_200 = -8.8554508519598530534e-5
CP_15_25_40 = 9.3486240163437211248e-8
CPE_15_M05_1_10 = 0.001112403017153933
CPE_15_M05_1_100 = 1.485240488672781e-7
CPE_05_M1_0_60 = -0.0005633468948463611


def test_coeff_power_frozen_values():
    assert coeff_power(0.5, 0.0, 5) == pytest.approx(CP_05_0_5, rel=1e-13)
    assert coeff_power(0.5, 0.0, 200) == pytest.approx(CP_05_0_200, rel=1e-12)
    assert coeff_power(1.5, 2.5, 40) == pytest.approx(CP_15_25_40, rel=1e-12)


def test_coeff_power_exp_frozen_values():
    # n=10 goes through the terminating route, n=100 and n=60 through the
    # large-index route; all three were frozen from 40-digit evaluations.
    assert coeff_power_exp(1.5, -0.5, 1.0, 10) == pytest.approx(CPE_15_M05_1_10, rel=1e-12)
    assert coeff_power_exp(1.5, -0.5, 1.0, 100) == pytest.approx(CPE_15_M05_1_100, rel=1e-11)
    assert coeff_power_exp(0.5, -1.0, 0.0, 60) == pytest.approx(CPE_05_M1_0_60, rel=1e-11)


def test_coeff_power_exp_reduces_to_coeff_power_at_u_zero():
    for n in (0, 3, 17, 80):
        assert coeff_power_exp(0.7, 0.0, 1.5, n) == pytest.approx(
            coeff_power(0.7, 1.5, n), rel=1e-13, abs=1e-300
        )


def test_integral_power_matches_monomial_stream():
    # z^m has two equivalent closed-form streams; they must agree and both
    # must terminate at n = m.
    for m in (0, 2, 5):
        for alpha in (0.0, 0.5, 2.0):
            for n in range(0, m + 4):
                assert coeff_power(float(m), alpha, n) == pytest.approx(
                    coeff_monomial(m, alpha, n), rel=1e-13, abs=1e-300
                )
            assert coeff_monomial(m, alpha, m + 1) == 0.0


def test_coeff_numeric_matches_analytic_power_stream():
    rule = QuadratureRule.gauss_laguerre(300, 0.0)
    for n in (0, 1, 5, 10):
        # Closed-form input: the weight of the rule absorbs the z^0.5 factor,
        # so the projection is exact to rounding.
        lam = coeff_numeric(Power(0.5), 0.0, n, rule)
        assert lam == pytest.approx(coeff_power(0.5, 0.0, n), rel=1e-12)
        # Raw-callable fallback: limited by the integrand's sqrt singularity.
        lam_cb = coeff_numeric(lambda z: math.sqrt(z), 0.0, n, rule)
        assert lam_cb == pytest.approx(coeff_power(0.5, 0.0, n), rel=5e-3, abs=1e-4)


def test_quadrature_orthonormality():
    rule = QuadratureRule.gauss_laguerre(80, 1.0)
    from lagseries.specfun import laguerre_sequence

    for n in (0, 3, 9):
        for m in (0, 3, 9):
            val = rule.integrate(
                lambda z: laguerre_sequence(9, 1.0, z)[n] * laguerre_sequence(9, 1.0, z)[m]
            )
            norm = math.exp(math.lgamma(n + 2.0) - math.lgamma(n + 1.0))
            expect = norm if n == m else 0.0
            assert val == pytest.approx(expect, abs=1e-10 * max(1.0, norm))


def test_series_eval_mean_convergence_of_sqrt():
    # The expansion of z^0.5 converges in the mean, not pointwise-fast:
    # the order-200 partial sum at z=1 is close but not to machine precision.
    s = power_series(0.5, 0.0)
    val = series_eval(s, 1.0, 200)
    assert abs(val - 1.0) < 0.05


def test_series_eval_exact_for_monomial():
    s = monomial_series(3, 0.5)
    for z in (0.2, 1.0, 7.0):
        assert series_eval(s, z, 10) == pytest.approx(z ** 3, rel=1e-12)


def test_parseval_gap_decreases():
    rule = QuadratureRule.gauss_laguerre(200, 0.0)
    s = power_series(0.5, 0.0)
    gaps = [parseval_gap(s, lambda z: math.sqrt(z), 0.0, M, rule) for M in (5, 20, 80)]
    assert gaps[0] > gaps[1] > gaps[2] >= 0.0


def test_series_for_dispatch():
    assert series_for(Monomial(4), 1.0).closed_form == Monomial(4)
    assert series_for(Power(0.5), 0.0).closed_form == Power(0.5)
    assert series_for(PowerExp(1.5, -0.5), 1.0).closed_form == PowerExp(1.5, -0.5)
    with pytest.raises(TypeError):
        series_for(lambda z: z, 0.0)


def test_power_exp_rejects_large_u():
    with pytest.raises(DomainError):
        PowerExp(1.0, 0.5)
    with pytest.raises(DomainError):
        power_exp_series(1.0, 0.6, 0.0)


def test_laguerre_series_coeff_cache_and_finite_guard():
    s = LaguerreSeries(0.0, lambda n: 1.0 / (n + 1.0))
    assert s.coeff(4) == pytest.approx(0.2)
    bad = LaguerreSeries(0.0, lambda n: float("inf"))
    with pytest.raises(DomainError):
        bad.coeff(0)


def test_integral_stf_is_a_finite_slater_combination():
    # For N=2, L=0, beta=gamma=1, k=0 the Slater orbital r e^{-r} is an exact
    # combination of the first two basis functions.
    N, L, beta, gamma, k = 2.0, 0, 1.0, 1.0, 0.0
    for r in (0.3, 1.0, 2.5):
        total = 0.0
        for nu in (0, 1):
            total += stf_in_guseinov_coeffs(N, L, beta, gamma, k, nu) * guseinov_radial(
                k, gamma, nu + L + 1, L, r
            )
        assert total == pytest.approx(
            (beta * r) ** (N - 1.0) * math.exp(-beta * r), rel=1e-12
        )
