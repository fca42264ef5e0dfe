"""Rearrangement of truncated Laguerre series into polynomials, probes of the
inner series of the infinite rearrangement, coefficient-decay classification,
and the zeta-type tail asymptotics that explain vanishing/diverging power
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .specfun import DomainError, _kahan_add, ln_gamma
from .series import LaguerreSeries, Monomial, Power, PowerExp


# ---------------------------------------------------------------------------
# truncated rearrangement


@dataclass(frozen=True)
class PolynomialTruncation:
    """Degree-M polynomial equivalent to the order-M Laguerre partial sum.

    When the coefficient stream has an exact rational representation the
    coefficients are kept as (float prefactor, Fraction) pairs and evaluation
    runs in rational arithmetic; the inner sums of the rearrangement cancel
    catastrophically in doubles, which would otherwise drown the identity
    with the partial sum.
    """

    M: int
    gamma_coeffs: tuple
    exact: tuple | None = None  # (prefactor, tuple of Fraction coefficients)

    def __call__(self, z):
        if self.exact is not None:
            pref, coeffs = self.exact
            zf = Fraction(z)
            acc = Fraction(0)
            for g in reversed(coeffs):
                acc = acc * zf + g
            return pref * float(acc)
        # Horner
        acc = 0.0
        for g in reversed(self.gamma_coeffs):
            acc = acc * z + g
        return acc


def gamma_coefficient(s, nu, M):
    """gamma_nu^(M) = ((-1)^nu / nu!) sum_{mu=0}^{M-nu} (alpha+nu+1)_mu / mu! lambda_{mu+nu}."""
    inner = inner_partial_sum(s, nu, M - nu)
    sign = -1.0 if nu % 2 else 1.0
    return sign / math.factorial(nu) * inner


def inner_partial_sum(s, nu, M):
    """sum_{mu=0}^{M} (alpha+nu+1)_mu / mu! * lambda_{mu+nu}."""
    alpha = s.alpha
    tot, comp = 0.0, 0.0
    ratio = 1.0  # (alpha+nu+1)_mu / mu!
    for mu in range(M + 1):
        if mu > 0:
            ratio *= (alpha + nu + mu) / mu
        tot, comp = _kahan_add(tot, comp, ratio * s.coeff(mu + nu))
    return tot


def _poch_frac(a, n):
    r = Fraction(1)
    for j in range(n):
        r *= a + j
    return r


def _exact_rational_stream(form, alpha, n_max):
    """(float prefactor, exact rational coefficient list) for closed forms
    whose Laguerre coefficients are a common prefactor times rationals."""
    a = Fraction(alpha)
    if isinstance(form, Monomial):
        lead = _poch_frac(a + 1, form.m)
        vals = [lead * _poch_frac(Fraction(-form.m), n) / _poch_frac(a + 1, n)
                if n <= form.m else Fraction(0) for n in range(n_max + 1)]
        return 1.0, vals
    if isinstance(form, Power):
        pref = math.exp(ln_gamma(form.rho + alpha + 1.0) - ln_gamma(alpha + 1.0))
        rho = Fraction(form.rho)
        vals = [_poch_frac(-rho, n) / _poch_frac(a + 1, n)
                for n in range(n_max + 1)]
        return pref, vals
    if isinstance(form, PowerExp):
        pref = ((1.0 - form.u) ** (-alpha - form.rho - 1.0)
                * math.exp(ln_gamma(form.rho + alpha + 1.0)
                           - ln_gamma(alpha + 1.0)))
        rho = Fraction(form.rho)
        x = 1 / (1 - Fraction(form.u))
        vals = []
        for n in range(n_max + 1):
            total = Fraction(1)
            term = Fraction(1)
            for mu in range(1, n + 1):
                term *= (-n + mu - 1) * (a + rho + mu) * x / ((a + mu) * mu)
                total += term
            vals.append(total)
        return pref, vals
    return None


def rearrange_truncated(s, M):
    """Transform the order-M partial sum into its power-basis coefficients."""
    if M < 0:
        raise ValueError("truncation order must be nonnegative")
    stream = _exact_rational_stream(s.closed_form, s.alpha, M)
    if stream is not None:
        pref, lam = stream
        a = Fraction(s.alpha)
        gammas = []
        for q in range(M + 1):
            inner = Fraction(0)
            w = Fraction(1)  # (alpha+q+1)_mu / mu!
            for mu in range(M - q + 1):
                if mu > 0:
                    w *= (a + q + mu) / mu
                inner += w * lam[mu + q]
            gammas.append((-1) ** q * inner / math.factorial(q))
        coeffs = tuple(pref * float(g) for g in gammas)
        return PolynomialTruncation(M=M, gamma_coeffs=coeffs,
                                    exact=(pref, tuple(gammas)))
    coeffs = tuple(gamma_coefficient(s, nu, M) for nu in range(M + 1))
    return PolynomialTruncation(M=M, gamma_coeffs=coeffs)


# ---------------------------------------------------------------------------
# inner-series probes


class Verdict(Enum):
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class InnerSeriesProbe:
    nu: int
    cutoffs: tuple
    partial_sums: tuple
    verdict: Verdict
    limit_estimate: float | None = None
    growth_exponent: float | None = None


def _loglog_fit(xs, ys):
    lx = np.log10(xs)
    ly = np.log10(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    rms = float(np.sqrt(np.mean(resid ** 2)))
    return float(slope), rms


def inner_mu_probe(s, nu, cutoffs):
    """Partial sums of the inner series at the given cutoffs plus a verdict.

    Deciding divergence from finitely many terms is heuristic; the rules are
    deterministic: a positive log-log slope (> 0.1, clean fit) over the top
    decade of cutoffs means divergence, successive-decade increments that
    shrink by at least a factor 2 mean convergence, anything else is
    inconclusive.
    """
    cutoffs = tuple(cutoffs)
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing")
    sums = tuple(inner_partial_sum(s, nu, M) for M in cutoffs)

    # exact termination / numerically settled
    tail_change = abs(sums[-1] - sums[-2]) if len(sums) > 1 else 0.0
    if tail_change <= 1e-13 * (1.0 + abs(sums[-1])):
        return InnerSeriesProbe(nu, cutoffs, sums, Verdict.CONVERGES,
                                limit_estimate=sums[-1])

    top = [(m, abs(v)) for m, v in zip(cutoffs, sums) if m >= cutoffs[-1] / 10.0]
    if len(top) >= 3 and all(v > 0.0 for _, v in top):
        slope, rms = _loglog_fit([m for m, _ in top], [v for _, v in top])
        if slope > 0.1 and rms < 0.05:
            return InnerSeriesProbe(nu, cutoffs, sums, Verdict.DIVERGES,
                                    growth_exponent=slope)

    # successive increments across the cutoff ladder
    deltas = [abs(b - a) for a, b in zip(sums, sums[1:])]
    if len(deltas) >= 2 and all(d > 0.0 for d in deltas):
        shrinking = all(b <= a / 2.0 for a, b in zip(deltas, deltas[1:]))
        if shrinking:
            return InnerSeriesProbe(nu, cutoffs, sums, Verdict.CONVERGES,
                                    limit_estimate=sums[-1])
    return InnerSeriesProbe(nu, cutoffs, sums, Verdict.INCONCLUSIVE)


# ---------------------------------------------------------------------------
# decay classification


class DecayKind(Enum):
    ALGEBRAIC_MONOTONE = "AlgebraicMonotone"
    EXPONENTIAL_OR_FACTORIAL = "ExponentialOrFactorial"
    ALGEBRAIC_ALTERNATING = "AlgebraicAlternating"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DecayClass:
    kind: DecayKind
    exponent: float  # power-law exponent from the log-log fit
    ratio: float  # asymptotic |lambda_{n+1}/lambda_n| from the log-linear fit
    power_residual: float
    exp_residual: float


_SIGN_WINDOW = 32
_RESIDUAL_THRESHOLD = 0.05


def classify_decay(s, n_lo, n_hi):
    """Classify the large-index behavior of the coefficient stream.

    Fits log|lambda_n| against log n (algebraic) and against n (exponential or
    steeper) on [n_lo, n_hi]; the sign pattern of the last 32 coefficients
    separates the monotone and alternating algebraic prototypes.
    """
    if n_hi < n_lo + _SIGN_WINDOW:
        raise ValueError(f"need a window of at least {_SIGN_WINDOW} indices")
    idx = np.arange(n_lo, n_hi + 1)
    vals = np.array([s.coeff(int(n)) for n in idx])
    mags = np.abs(vals)
    if np.any(mags == 0.0):
        nz = mags > 0.0
        idx, vals, mags = idx[nz], vals[nz], mags[nz]
        if len(idx) < _SIGN_WINDOW:
            return DecayClass(DecayKind.INCONCLUSIVE, float("nan"), float("nan"),
                              float("inf"), float("inf"))
    logm = np.log10(mags)

    p_slope, p_int = np.polyfit(np.log10(idx.astype(float)), logm, 1)
    p_res = float(np.sqrt(np.mean(
        (logm - (p_slope * np.log10(idx.astype(float)) + p_int)) ** 2)))
    p_res /= max(1.0, float(np.std(logm)))

    e_slope, e_int = np.polyfit(idx.astype(float), logm, 1)
    e_res = float(np.sqrt(np.mean((logm - (e_slope * idx + e_int)) ** 2)))
    e_res /= max(1.0, float(np.std(logm)))

    signs = np.sign(vals[-_SIGN_WINDOW:])
    alternating = bool(np.all(signs[1:] * signs[:-1] < 0.0))
    monotone = bool(np.all(signs[1:] * signs[:-1] > 0.0))

    exponent = float(p_slope)
    ratio = float(10.0 ** e_slope)

    if p_res > _RESIDUAL_THRESHOLD and e_res > _RESIDUAL_THRESHOLD:
        return DecayClass(DecayKind.INCONCLUSIVE, exponent, ratio, p_res, e_res)
    if e_res < p_res:
        return DecayClass(DecayKind.EXPONENTIAL_OR_FACTORIAL, exponent, ratio, p_res, e_res)
    if alternating:
        return DecayClass(DecayKind.ALGEBRAIC_ALTERNATING, exponent, ratio, p_res, e_res)
    if monotone:
        return DecayClass(DecayKind.ALGEBRAIC_MONOTONE, exponent, ratio, p_res, e_res)
    return DecayClass(DecayKind.INCONCLUSIVE, exponent, ratio, p_res, e_res)


# ---------------------------------------------------------------------------
# zeta-type tails by Euler-Maclaurin

_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0)  # B2, B4, B6, B8


def power_tail(s_exp, M):
    """sum_{mu=M}^{infinity} mu^(-s) for s > 1, by Euler-Maclaurin.

    Direct terms up to N = max(M, 20), then the integral term, the half-term
    correction and four Bernoulli corrections (through B_8); accurate to well
    over ten digits for the exponents used here.
    """
    if s_exp <= 1.0:
        raise DomainError("tail exponent must exceed 1 for convergence")
    if M < 1:
        raise ValueError("tail start index must be >= 1")
    N = max(M, 20)
    head, comp = 0.0, 0.0
    for mu in range(M, N):
        head, comp = _kahan_add(head, comp, mu ** (-s_exp))
    tail = N ** (1.0 - s_exp) / (s_exp - 1.0) + 0.5 * N ** (-s_exp)
    # derivative corrections:  - sum B_2j/(2j)! f^(2j-1)(N),  f = x^(-s)
    poch = s_exp  # (s)_1; builds (s)_{2j-1}
    fact = 1.0
    for j, b in enumerate(_BERNOULLI, start=1):
        fact = math.factorial(2 * j)
        tail += b / fact * poch * N ** (-s_exp - 2.0 * j + 1.0)
        poch *= (s_exp + 2.0 * j - 1.0) * (s_exp + 2.0 * j)
    return head + tail


def zeta_tail(rho, alpha, nu, M):
    """Leading-order model of the inner-series tail:

    Gamma(rho+alpha+1)/(Gamma(-rho) Gamma(alpha+nu+1)) * sum_{mu>=M} mu^(nu-rho-1).

    Defined for nu < rho (convergent regime only).
    """
    if nu >= rho:
        raise DomainError("zeta-type tail converges only for nu < rho")
    if rho == math.floor(rho):
        raise DomainError("prefactor Gamma(-rho) undefined for integral rho")
    pref = math.exp(ln_gamma(rho + alpha + 1.0) - ln_gamma(alpha + nu + 1.0)) / math.gamma(-rho)
    return pref * power_tail(rho - nu + 1.0, M)


# ---------------------------------------------------------------------------
# formal power-series diagnosis


class PowerVerdict(Enum):
    VANISHES_TO_ZERO = "VanishesToZero"
    DIVERGES_TO_INFINITY = "DivergesToInfinity"
    FINITE_NONZERO = "FiniteNonzero"


@dataclass(frozen=True)
class PowerDiagnosisRow:
    nu: int
    verdict: PowerVerdict
    tail_magnitude: float | None = None


def formal_power_diagnosis(rho, u, alpha, nu_max, tail_start=100):
    """Per-nu fate of the rearranged power coefficients of z^rho e^(u z).

    Integral rho is the analytic case (all coefficients finite); otherwise the
    inner series vanishes for nu < rho and diverges for nu > rho.
    """
    if u >= 0.5:
        raise DomainError("requires u < 1/2")
    rows = []
    integral = rho >= 0.0 and rho == math.floor(rho)
    for nu in range(nu_max + 1):
        if integral:
            rows.append(PowerDiagnosisRow(nu, PowerVerdict.FINITE_NONZERO))
        elif nu < rho:
            mag = abs(zeta_tail(rho, alpha, nu, tail_start))
            rows.append(PowerDiagnosisRow(nu, PowerVerdict.VANISHES_TO_ZERO, mag))
        else:
            rows.append(PowerDiagnosisRow(nu, PowerVerdict.DIVERGES_TO_INFINITY))
    return rows


class LimitVerdict(Enum):
    ZERO = "0"
    INFINITE = "inf"
    FINITE = "finite"


def binomial_1f0_limit(k, rho):
    """Limit of the binomial series 1F0(k - rho; z) as z -> 1,
    i.e. lim (1-z)^(rho-k)."""
    if rho < 0.0:
        return LimitVerdict.INFINITE
    if k == rho:
        return LimitVerdict.FINITE
    if k < rho:
        return LimitVerdict.ZERO
    return LimitVerdict.INFINITE
