"""Laguerre-series construction and evaluation.

Coefficient streams for the closed-form radial functions (monomials, general
powers, power-times-exponential, Slater radial parts, Guseinov radial parts,
reduced Bessel radial parts), numerical projection by Gauss-Laguerre
quadrature, series evaluation, weighted norms, and the one-center
Slater/Guseinov expansions.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_genlaguerre

from .specfun import (
    DomainError,
    _kahan_add,
    gamma_ratio,
    hyp2f1_terminating,
    laguerre_recurrence,
    laguerre_sequence,
    ln_gamma,
    pochhammer,
    signlog_pochhammer,
)


# ---------------------------------------------------------------------------
# closed-form radial functions


@dataclass(frozen=True)
class Monomial:
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise DomainError("monomial degree must be nonnegative")

    def __call__(self, z):
        return z ** self.m


@dataclass(frozen=True)
class Power:
    rho: float

    def __call__(self, z):
        return z ** self.rho


@dataclass(frozen=True)
class PowerExp:
    rho: float
    u: float

    def __post_init__(self):
        if self.u >= 0.5:
            raise DomainError("power-times-exponential requires u < 1/2")

    def __call__(self, z):
        return z ** self.rho * math.exp(self.u * z)


@dataclass(frozen=True)
class StfRadial:
    """Unnormalized Slater radial part (beta r)^(N-1) e^(-beta r)."""

    N: float
    L: int
    beta: float
    k: float = 0.0

    def __post_init__(self):
        if self.beta <= 0.0:
            raise DomainError("Slater scaling parameter must be positive")
        if self.L < 0:
            raise DomainError("angular index must be nonnegative")
        if 2.0 * self.N + self.k <= -1.0:
            raise DomainError("Slater function outside the weighted space: need 2N + k > -1")

    def __call__(self, r):
        return (self.beta * r) ** (self.N - 1.0) * math.exp(-self.beta * r)


@dataclass(frozen=True)
class GuseinovRadial:
    k: float
    gamma: float
    n: int
    l: int

    def __post_init__(self):
        if self.k < -1.0:
            raise DomainError("weight exponent k must satisfy k >= -1")
        if self.gamma <= 0.0:
            raise DomainError("scaling parameter must be positive")
        if self.n < self.l + 1:
            raise DomainError("principal index requires n >= l+1")

    def __call__(self, r):
        return guseinov_radial(self.k, self.gamma, self.n, self.l, r)


@dataclass(frozen=True)
class RbfRadial:
    m: int
    beta: float

    def __post_init__(self):
        if self.m < 0:
            raise DomainError("order index must be nonnegative")
        if self.beta <= 0.0:
            raise DomainError("scaling parameter must be positive")

    def __call__(self, r):
        from .specfun import rbf_half

        return rbf_half(self.m, self.beta * r)


# ---------------------------------------------------------------------------
# series container


class LaguerreSeries:
    """A Laguerre expansion sum_n lambda_n L_n^(alpha), given by a lazy
    coefficient provider.

    Coefficients are cached per index; the cache fill is idempotent, so
    concurrent readers are safe.
    """

    def __init__(self, alpha, coeff, closed_form=None):
        if alpha <= -1.0:
            raise DomainError("laguerre order requires alpha > -1")
        self.alpha = float(alpha)
        self._coeff = coeff
        self.closed_form = closed_form
        self._cache = {}
        self._lock = threading.Lock()

    def coeff(self, n):
        val = self._cache.get(n)
        if val is None:
            val = float(self._coeff(n))
            if not math.isfinite(val):
                raise DomainError(f"coefficient lambda_{n} is not finite")
            with self._lock:
                self._cache.setdefault(n, val)
        return val


# ---------------------------------------------------------------------------
# analytic coefficient streams


def coeff_monomial(m, alpha, n):
    """Laguerre coefficient of z^m: (alpha+1)_m (-m)_n/(alpha+1)_n, zero past m."""
    if alpha + 2.0 * m <= -1.0:
        raise DomainError("monomial outside the weighted space")
    if n > m:
        return 0.0
    return pochhammer(alpha + 1.0, m) * pochhammer(-float(m), n) / pochhammer(alpha + 1.0, n)


def coeff_power(rho, alpha, n):
    """Laguerre coefficient of z^rho:
    Gamma(rho+alpha+1)/Gamma(alpha+1) * (-rho)_n/(alpha+1)_n.

    Carried in sign-and-log form so indices up to 1e4 neither overflow nor
    lose the sign.
    """
    if alpha + 2.0 * rho <= -1.0:
        raise DomainError("power outside the weighted space: need alpha + 2 rho > -1")
    s_num, log_num = signlog_pochhammer(-rho, n)
    if s_num == 0:
        return 0.0
    _, log_den = signlog_pochhammer(alpha + 1.0, n)
    log = ln_gamma(rho + alpha + 1.0) - ln_gamma(alpha + 1.0) + log_num - log_den
    return s_num * math.exp(log)


def _coeff_power_exp_pfaff(m, u, alpha, n):
    # integral rho = m: (1-u)^(-alpha-m-1) (alpha+1)_m [u/(u-1)]^n 2F1(-n,-m;alpha+1;1/u)
    s, comp = 0.0, 0.0
    term = 1.0
    for mu in range(min(m, n) + 1):
        if mu > 0:
            term *= (-n + mu - 1.0) * (-m + mu - 1.0) / ((alpha + mu) * mu) / u
        s, comp = _kahan_add(s, comp, term)
    ratio = u / (u - 1.0)
    return (1.0 - u) ** (-alpha - m - 1.0) * pochhammer(alpha + 1.0, m) * ratio ** n * s


def _coeff_power_exp_terminating(rho, u, alpha, n):
    # direct finite sum of LagCF_rho; fine up to n ~ 40 (growth ~1.5^n)
    x = 1.0 / (1.0 - u)
    s, comp = 0.0, 0.0
    term = 1.0
    for mu in range(n + 1):
        if mu > 0:
            term *= (-n + mu - 1.0) * (alpha + rho + mu) / ((alpha + mu) * mu) * x
        s, comp = _kahan_add(s, comp, term)
    pref = (1.0 - u) ** (-alpha - rho - 1.0) * gamma_ratio(alpha + rho + 1.0, alpha + 1.0)
    return pref * s


def _coeff_power_exp_large_n(rho, u, alpha, n):
    # coeff_power(n) * 2F1(rho+1, alpha+rho+1; rho-n+1; u), the 2F1 summed
    # adaptively; convergent for |u| < 1 and an asymptotic expansion (optimal
    # truncation at the minimal term) otherwise
    s, comp = 0.0, 0.0
    term = 1.0
    last = float("inf")
    k = 0
    while True:
        s, comp = _kahan_add(s, comp, term)
        term *= (rho + 1.0 + k) * (alpha + rho + 1.0 + k) * u / ((rho - n + 1.0 + k) * (k + 1.0))
        k += 1
        if abs(term) <= 1e-17 * abs(s) or k > 500:
            break
        if abs(term) > last and k > 3:
            break
        last = abs(term)
    return coeff_power(rho, alpha, n) * s


_TERMINATING_CUTOFF = 40


def coeff_power_exp(rho, u, alpha, n):
    """Laguerre coefficient of z^rho e^(u z), u < 1/2.

    Route selection: integral rho goes through the Pfaff form (exponentially
    decaying prefactor [u/(u-1)]^n), u = 0 reduces to coeff_power, small n
    uses the exact terminating sum, large n the asymptotic 2F1 form.
    """
    if u >= 0.5:
        raise DomainError("power-times-exponential requires u < 1/2")
    if alpha + 2.0 * rho <= -1.0:
        raise DomainError("power outside the weighted space")
    if u == 0.0:
        return coeff_power(rho, alpha, n)
    if rho >= 0.0 and rho == math.floor(rho):
        return _coeff_power_exp_pfaff(int(rho), u, alpha, n)
    if n <= _TERMINATING_CUTOFF:
        return _coeff_power_exp_terminating(rho, u, alpha, n)
    return _coeff_power_exp_large_n(rho, u, alpha, n)


def monomial_series(m, alpha):
    return LaguerreSeries(alpha, lambda n: coeff_monomial(m, alpha, n), Monomial(m))


def power_series(rho, alpha):
    return LaguerreSeries(alpha, lambda n: coeff_power(rho, alpha, n), Power(rho))


def power_exp_series(rho, u, alpha):
    return LaguerreSeries(alpha, lambda n: coeff_power_exp(rho, u, alpha, n), PowerExp(rho, u))


def series_for(form, alpha):
    """LaguerreSeries with the analytic coefficient stream for a closed form."""
    if isinstance(form, Monomial):
        return monomial_series(form.m, alpha)
    if isinstance(form, Power):
        return power_series(form.rho, alpha)
    if isinstance(form, PowerExp):
        return power_exp_series(form.rho, form.u, alpha)
    raise TypeError(f"no analytic coefficient stream for {type(form).__name__}")


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureRule:
    """Generalized Gauss-Laguerre rule for the weight z^alpha e^(-z).

    Exact for polynomial integrands of degree <= 2*count - 1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    alpha: float
    count: int

    @classmethod
    def gauss_laguerre(cls, count, alpha=0.0):
        if count <= 0:
            raise ValueError("node count must be positive")
        if alpha <= -1.0:
            raise DomainError("weight exponent requires alpha > -1")
        x, w = roots_genlaguerre(count, alpha)
        return cls(nodes=x, weights=w, alpha=float(alpha), count=count)

    def integrate(self, f):
        """Approximation of int_0^inf z^alpha e^(-z) f(z) dz."""
        vf = np.vectorize(f, otypes=[float])
        return float(np.dot(self.weights, vf(self.nodes)))


def coeff_numeric(f, alpha, n, rule):
    """lambda_n by quadrature projection, n!/Gamma(alpha+n+1) <L_n, f>.

    A closed-form input with a known power/exponential factor is integrated
    against a rule whose weight absorbs that factor, so the remaining
    integrand is polynomial and the projection is exact to rounding.
    A plain callable falls back to the supplied rule.
    """
    norm = math.exp(ln_gamma(n + 1.0) - ln_gamma(alpha + n + 1.0))
    if isinstance(f, Monomial):
        f = PowerExp(float(f.m), 0.0)
    elif isinstance(f, Power):
        f = PowerExp(f.rho, 0.0)
    if isinstance(f, PowerExp):
        # int z^(alpha+rho) e^(-(1-u)z) L_n(z) dz, t = (1-u) z
        scale = 1.0 - f.u
        x, w = roots_genlaguerre(max(n // 2 + 2, 8), alpha + f.rho)
        vals = np.array([laguerre_recurrence(n, alpha, t / scale) for t in x])
        integral = float(np.dot(w, vals)) * scale ** (-(alpha + f.rho + 1.0))
        return norm * integral
    lag = np.array([laguerre_recurrence(n, alpha, x) for x in rule.nodes])
    fv = np.array([f(x) for x in rule.nodes])
    return norm * float(np.dot(rule.weights, lag * fv))


def series_eval(s, z, M):
    """Partial sum sum_{n=0}^{M} lambda_n L_n^(alpha)(z)."""
    if z < 0.0:
        raise DomainError("evaluation point must be nonnegative")
    if M < 0:
        raise ValueError("truncation order must be nonnegative")
    lag = laguerre_sequence(M, s.alpha, z)
    tot, comp = 0.0, 0.0
    for n in range(M + 1):
        tot, comp = _kahan_add(tot, comp, s.coeff(n) * lag[n])
    return tot


def weighted_l2_norm(f, alpha, rule):
    """(int z^alpha e^(-z) |f|^2 dz)^(1/2) by quadrature."""
    val = rule.integrate(lambda z: f(z) ** 2)
    return math.sqrt(max(val, 0.0))


def parseval_gap(s, f, alpha, M, rule):
    """||f||^2 - sum_{n<=M} lambda_n^2 Gamma(alpha+n+1)/n!.

    Equals the squared mean-square deviation of the order-M truncation;
    nonnegative up to quadrature error.
    """
    norm_sq = rule.integrate(lambda z: f(z) ** 2)
    acc, comp = 0.0, 0.0
    for n in range(M + 1):
        weight = math.exp(ln_gamma(alpha + n + 1.0) - ln_gamma(n + 1.0))
        acc, comp = _kahan_add(acc, comp, s.coeff(n) ** 2 * weight)
    return norm_sq - acc


# ---------------------------------------------------------------------------
# Guseinov functions and the one-center Slater expansion


def guseinov_radial(k, gamma, n, l, r):
    """Radial part of the complete orthonormal set in the r^k-weighted space:

    [ (2 gamma)^(k+3) (n-l-1)! / Gamma(n+l+k+2) ]^(1/2)
        e^(-gamma r) L_{n-l-1}^(2l+k+2)(2 gamma r) (2 gamma r)^l.
    """
    if n < l + 1:
        raise DomainError("principal index requires n >= l+1")
    if gamma <= 0.0:
        raise DomainError("scaling parameter must be positive")
    if k < -1.0:
        raise DomainError("weight exponent requires k >= -1")
    if r < 0.0:
        raise DomainError("radius must be nonnegative")
    nr = n - l - 1
    pref = math.sqrt(
        (2.0 * gamma) ** (k + 3.0)
        * math.exp(ln_gamma(nr + 1.0) - ln_gamma(n + l + k + 2.0))
    )
    z = 2.0 * gamma * r
    return pref * math.exp(-gamma * r) * laguerre_recurrence(nr, 2.0 * l + k + 2.0, z) * z ** l


def guseinov_to_stf_coeffs(k, gamma, n, l):
    """Coefficients G_j turning the Guseinov radial part into a finite sum of
    Slater radial parts (gamma r)^(j+l) e^(-gamma r), j = 0..n-l-1.

    Signs strictly alternate in j.
    """
    if n < l + 1:
        raise DomainError("principal index requires n >= l+1")
    pref = 2.0 ** l * math.sqrt(
        (2.0 * gamma) ** (k + 3.0)
        * math.exp(ln_gamma(n + l + k + 2.0) - ln_gamma(n - l))
    )
    out = []
    for j in range(n - l):
        term = (pochhammer(float(-n + l + 1), j) * 2.0 ** j
                / (math.exp(ln_gamma(2.0 * l + k + j + 3.0)) * math.factorial(j)))
        out.append(pref * term)
    return out


def stf_in_guseinov_coeffs(N, L, beta, gamma, k, nu):
    """nu-th coefficient of the Slater radial part (beta r)^(N-1) e^(-beta r)
    in the Guseinov radial basis with parameters (k, gamma).

    Equal scaling parameters collapse to the Pochhammer form; for integral
    N >= L+1 with beta = gamma the stream terminates at nu = N-L-1.
    """
    if beta <= 0.0 or gamma <= 0.0:
        raise DomainError("scaling parameters must be positive")
    if L < 0 or nu < 0:
        raise ValueError("indices must be nonnegative")
    if 2.0 * N + k <= -1.0:
        raise DomainError("Slater function outside the weighted space")
    if beta == gamma:
        s_p, log_p = signlog_pochhammer(-N + L + 1.0, nu)
        if s_p == 0:
            return 0.0
        log = (-(k + 3.0) / 2.0 * math.log(2.0 * gamma) - (N - 1.0) * math.log(2.0)
               + ln_gamma(N + L + k + 2.0)
               - 0.5 * (ln_gamma(nu + 2.0 * L + k + 3.0) + ln_gamma(nu + 1.0))
               + log_p)
        return s_p * math.exp(log)
    pref = ((2.0 * gamma) ** (L + (k + 3.0) / 2.0) * beta ** (N - 1.0)
            / (beta + gamma) ** (N + L + k + 2.0)
            * math.exp(ln_gamma(N + L + k + 2.0) - ln_gamma(2.0 * L + k + 3.0)))
    ratio = math.exp(0.5 * (ln_gamma(nu + 2.0 * L + k + 3.0) - ln_gamma(nu + 1.0)))
    f21 = hyp2f1_terminating(-nu, N + L + k + 2.0, 2.0 * L + k + 3.0,
                             2.0 * gamma / (beta + gamma))
    return pref * ratio * f21
