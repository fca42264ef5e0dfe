"""Scalar special-function kernel.

Generalized Laguerre, Gegenbauer and Legendre polynomials, Pochhammer and
log-gamma utilities, terminating/convergent Gaussian hypergeometric series
with the linear transformations needed elsewhere, and modified/reduced
Bessel functions of half-integral order.

Everything here is pure and operates on plain floats; alternating sums use
compensated (Kahan) accumulation.
"""

from __future__ import annotations

import math


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(ValueError):
    """A denominator Pochhammer symbol vanished before termination."""


def _kahan_add(s, c, x):
    y = x - c
    t = s + y
    return t, (t - s) - y


def ln_gamma(x):
    """log Gamma(x) for x > 0."""
    if x <= 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    r = 1.0
    for j in range(n):
        r *= a + j
        if r == 0.0:
            return 0.0
    return r


def signlog_pochhammer(a, n):
    """(sign, log|(a)_n|) without overflow; sign is 0 when the product is 0.

    Uses lgamma splits so the cost is O(1) for any n.
    """
    if n == 0:
        return 1, 0.0
    if a > 0.0:
        return 1, math.lgamma(a + n) - math.lgamma(a)
    # a <= 0: check for an exact zero factor a + j = 0, 0 <= j < n
    if a == math.floor(a):
        ia = int(a)
        if -ia < n:  # factor a + (-a) = 0 is inside the product
            return 0, float("-inf")
        # all factors negative: (a)_n = (-1)^n (-a)! / (-a-n)!
        sign = -1 if n % 2 else 1
        return sign, math.lgamma(-a + 1.0) - math.lgamma(-a - n + 1.0)
    # a < 0 nonintegral: the first ceil(-a) factors are negative
    neg = min(int(math.ceil(-a)), n)
    sign = -1 if neg % 2 else 1
    # |(a)_neg| = Gamma(1-a)/Gamma(1-a-neg), remaining block has positive start
    log = math.lgamma(1.0 - a) - math.lgamma(1.0 - a - neg)
    if n > neg:
        log += math.lgamma(a + n) - math.lgamma(a + neg)
    return sign, log


def gamma_ratio(p, q):
    """Gamma(p)/Gamma(q) for p, q > 0 via the log route (no overflow)."""
    return math.exp(ln_gamma(p) - ln_gamma(q))


def laguerre_explicit(n, alpha, z):
    """L_n^(alpha)(z) from the explicit alternating hypergeometric sum.

    Numerically unstable for large n and z; kept as the textbook form and as
    the instability witness against laguerre_recurrence.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if alpha <= -1.0:
        raise DomainError("laguerre order requires alpha > -1")
    # (alpha+1)_n/n! * sum_nu (-n)_nu/(alpha+1)_nu z^nu/nu!
    s, c = 0.0, 0.0
    term = 1.0
    for nu in range(n + 1):
        if nu > 0:
            term *= (-n + nu - 1.0) / (alpha + nu) * z / nu
        s, c = _kahan_add(s, c, term)
    pref = 1.0
    for j in range(n):
        pref *= (alpha + 1.0 + j) / (j + 1.0)
    return pref * s


def laguerre_recurrence(n, alpha, z):
    """L_n^(alpha)(z) by the stable three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if alpha <= -1.0:
        raise DomainError("laguerre order requires alpha > -1")
    if n == 0:
        return 1.0
    lm1 = 1.0
    l = alpha + 1.0 - z
    for j in range(1, n):
        lm1, l = l, ((2.0 * j + alpha + 1.0 - z) * l - (j + alpha) * lm1) / (j + 1.0)
    return l


def laguerre_sequence(n_max, alpha, z):
    """[L_0, ..., L_{n_max}] at z via the recurrence (one pass)."""
    vals = [1.0]
    if n_max == 0:
        return vals
    vals.append(alpha + 1.0 - z)
    for j in range(1, n_max):
        vals.append(((2.0 * j + alpha + 1.0 - z) * vals[j]
                     - (j + alpha) * vals[j - 1]) / (j + 1.0))
    return vals


def hyp2f1_terminating(neg_n, b, c, z):
    """2F1(-n, b; c; z) as the exact finite sum of n+1 terms."""
    if neg_n > 0 or neg_n != int(neg_n):
        raise ValueError("first parameter must be a nonpositive integer")
    n = -int(neg_n)
    # reject a pole of (c)_mu inside the n+1 terms
    if c <= 0.0 and c == math.floor(c) and -int(c) < n:
        raise PoleError(f"denominator parameter c={c} hits a pole before termination")
    s, comp = 0.0, 0.0
    term = 1.0
    for mu in range(n + 1):
        if mu > 0:
            term *= (-n + mu - 1.0) * (b + mu - 1.0) / ((c + mu - 1.0) * mu) * z
        s, comp = _kahan_add(s, comp, term)
    return s


def hyp2f1_series(a, b, c, z, tol=1e-15, max_terms=5000):
    """2F1(a,b;c;z) by direct summation.

    Handles terminating series (a or b a nonpositive integer) exactly and
    convergent series |z| < 1 otherwise.
    """
    terminating = (a <= 0.0 and a == math.floor(a)) or (b <= 0.0 and b == math.floor(b))
    if not terminating and abs(z) >= 1.0:
        raise DomainError("nonterminating 2F1 series requires |z| < 1")
    s, comp = 0.0, 0.0
    term = 1.0
    k = 0
    while True:
        s, comp = _kahan_add(s, comp, term)
        denom = (c + k) * (k + 1.0)
        if denom == 0.0:
            raise PoleError("denominator parameter hit a pole")
        term *= (a + k) * (b + k) / denom * z
        k += 1
        if term == 0.0 or abs(term) <= tol * abs(s):
            break
        if k >= max_terms:
            raise DomainError("2F1 series failed to converge")
    return s


def hyp2f1_transform_pfaff(a, b, c, z):
    """2F1(a,b;c;z) via Pfaff's transformation (1-z)^(-a) 2F1(a,c-b;c;z/(z-1))."""
    if z >= 1.0:
        raise DomainError("Pfaff transformation requires z < 1")
    if z == 0.0:
        return 1.0
    return (1.0 - z) ** (-a) * hyp2f1_series(a, c - b, c, z / (z - 1.0))


def hyp2f1_asymptotic_series(rho, alpha, u, n, k_terms):
    """Partial sum of the large-n expansion of 2F1(rho+1, alpha+rho+1; rho-n+1; u).

    sum_{kappa=0}^{k} (rho+1)_k (alpha+rho+1)_k / ((rho-n+1)_k k!) u^k.
    """
    s, comp = 0.0, 0.0
    term = 1.0
    for kappa in range(k_terms + 1):
        if kappa > 0:
            denom = (rho - n + kappa) * kappa
            if denom == 0.0:
                raise PoleError("denominator Pochhammer vanished in asymptotic series")
            term *= (rho + kappa) * (alpha + rho + kappa) / denom * u
        s, comp = _kahan_add(s, comp, term)
    return s


def gegenbauer(n, lam, x):
    """Gegenbauer polynomial C_n^(lambda)(x); lambda may be negative."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 1.0
    cm1 = 1.0
    c = 2.0 * lam * x
    for j in range(2, n + 1):
        cm1, c = c, (2.0 * (j + lam - 1.0) * x * c - (j + 2.0 * lam - 2.0) * cm1) / j
    return c


def legendre(n, x):
    """Legendre polynomial P_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 1.0
    pm1 = 1.0
    p = x
    for j in range(1, n):
        pm1, p = p, ((2.0 * j + 1.0) * x * p - j * pm1) / (j + 1.0)
    return p


def gegenbauer_to_legendre(m, mu):
    """Coefficients of C_m^(mu) in the Legendre basis.

    Returns [(degree, weight), ...] with degree = m - 2s, s = 0..floor(m/2),
    weight = (mu)_{m-s} (mu-1/2)_s / ((3/2)_{m-s} s!) * (2m - 4s + 1).
    """
    out = []
    for s in range(m // 2 + 1):
        w = (pochhammer(mu, m - s) * pochhammer(mu - 0.5, s)
             / (pochhammer(1.5, m - s) * math.factorial(s))
             * (2.0 * m - 4.0 * s + 1.0))
        out.append((m - 2 * s, w))
    return out


def _bessel_i_series(order, z, max_terms=400):
    # I_nu(z) = sum_k (z/2)^(2k+nu) / (k! Gamma(k+nu+1))
    half = 0.5 * z
    s = 0.0
    for k in range(max_terms):
        lg = math.lgamma(k + 1.0)
        arg = k + order + 1.0
        if arg > 0.0:
            g = math.lgamma(arg)
            sgn = 1.0
        else:
            # reflection for negative-order small-k terms
            g = math.log(math.pi) - math.lgamma(1.0 - arg) - math.log(abs(math.sin(math.pi * arg)))
            sgn = math.copysign(1.0, math.sin(math.pi * arg))
        term = sgn * math.exp((2.0 * k + order) * math.log(half) - lg - g)
        s += term
        if abs(term) <= 1e-17 * abs(s) and k > 2:
            break
    return s


def bessel_i_halforder(j, z):
    """I_{j+1/2}(z) for any integer j (j may be negative)."""
    if z <= 0.0:
        raise DomainError("modified Bessel I of half order requires z > 0")
    pref = math.sqrt(2.0 / (math.pi * z))
    i_half = pref * math.sinh(z)
    if j == 0:
        return i_half
    i_mhalf = pref * math.cosh(z)
    if j == -1:
        return i_mhalf
    if j > 0:
        if z < j:
            # upward recurrence cancels for z < order; sum the series instead
            return _bessel_i_series(j + 0.5, z)
        prev, cur = i_mhalf, i_half  # orders -1/2, 1/2
        nu = 0.5
        for _ in range(j):
            prev, cur = cur, prev - (2.0 * nu / z) * cur
            nu += 1.0
        return cur
    # j < -1: downward recurrence I_{nu-1} = I_{nu+1} + (2 nu / z) I_nu is
    # stable (values grow toward negative order)
    above, cur = i_half, i_mhalf  # orders 1/2, -1/2
    nu = -0.5
    for _ in range(-j - 1):
        above, cur = cur, above + (2.0 * nu / z) * cur
        nu -= 1.0
    return cur


def bessel_i_half(m, z):
    """I_{m+1/2}(z), m >= 0, z > 0."""
    if m < 0:
        raise ValueError("order index must be nonnegative")
    return bessel_i_halforder(m, z)


def bessel_k_half(m, z):
    """K_{m+1/2}(z), m >= 0, z > 0, by stable upward recurrence."""
    if z <= 0.0:
        raise DomainError("modified Bessel K of half order requires z > 0")
    if m < 0:
        raise ValueError("order index must be nonnegative")
    k_half = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
    if m == 0:
        return k_half
    prev, cur = k_half, k_half * (1.0 + 1.0 / z)  # orders 1/2, 3/2
    nu = 1.5
    for _ in range(m - 1):
        prev, cur = cur, prev + (2.0 * nu / z) * cur
        nu += 1.0
    return cur


def rbf_half(m, z):
    """Reduced Bessel function of half-integral order.

    k_hat_{m+1/2}(z) = 2^m (1/2)_m e^{-z} 1F1(-m; -2m; 2z), an exponential
    times a degree-m polynomial; agrees with (2/pi)^(1/2) z^(m+1/2) K_{m+1/2}(z).
    """
    if z < 0.0:
        raise DomainError("reduced Bessel function requires z >= 0")
    if m < 0:
        raise ValueError("order index must be nonnegative")
    poly = 1.0
    term = 1.0
    for j in range(1, m + 1):
        term *= (-m + j - 1.0) / (-2.0 * m + j - 1.0) * 2.0 * z / j
        poly += term
    return 2.0 ** m * pochhammer(0.5, m) * math.exp(-z) * poly


def laguerre_bs_convert(n, m):
    """Scale factor between L_n^(m) and the Bethe-Salpeter associated function.

    L_n^(m)(z) = factor * [L_{n+m}^{m}(z)]_BS with factor = (-1)^m/(n+m)!.
    """
    sign = -1.0 if m % 2 else 1.0
    return sign / math.factorial(n + m)
