"""Experiment drivers behind the command-line interface.

Each run_* function takes a validated RunConfig and returns a result object
plus tabular rows ready for CSV/JSON serialization.  All runs are
deterministic for a given config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import addthm, rearrange, seqxform, series
from .specfun import DomainError, ln_gamma


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


_EXPERIMENTS = ("semiconv", "coeff-flow", "region-map", "decay", "sum", "check")


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data, experiment=None):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        exp = data.get("experiment", experiment)
        if exp not in _EXPERIMENTS:
            raise ConfigError(f"unknown experiment {exp!r}")
        params = data.get("params", {k: v for k, v in data.items()
                                     if k != "experiment"})
        if not isinstance(params, dict):
            raise ConfigError("params must be a JSON object")
        return cls(exp, params)


def _num(params, key, default=None, kind=float):
    if key not in params:
        if default is None:
            raise ConfigError(f"missing parameter {key!r}")
        return default
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"parameter {key!r} must be numeric")
    return kind(v)


def _num_list(params, key, default):
    v = params.get(key, default)
    if (not isinstance(v, (list, tuple)) or not v
            or any(isinstance(x, bool) or not isinstance(x, (int, float))
                   for x in v)):
        raise ConfigError(f"parameter {key!r} must be a nonempty numeric list")
    return list(v)


def _increasing(orders):
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ConfigError("truncation orders must be strictly increasing")
    return orders


# ---------------------------------------------------------------------------
# semiconvergence of the rearranged one-center Slater expansion


@dataclass(frozen=True)
class SemiconvergenceReport:
    orders: tuple
    weighted_errors: tuple
    sup_errors: tuple
    argmin_order: int
    argmin_interior: bool
    divergence_onset: int | None  # first order past the argmin with > 2x min
    segments: tuple  # (start_order, end_order, "decreasing"|"increasing")


def _monotone_segments(orders, errors):
    segs = []
    for i in range(1, len(errors)):
        direction = "increasing" if errors[i] > errors[i - 1] else "decreasing"
        if segs and segs[-1][2] == direction and segs[-1][1] == orders[i - 1]:
            segs[-1] = (segs[-1][0], orders[i], direction)
        else:
            segs.append((orders[i - 1], orders[i], direction))
    return tuple(segs)


def run_semiconvergence(cfg):
    p = cfg.params
    N = _num(p, "N")
    L = _num(p, "L", 0.0, int)
    beta = _num(p, "beta", 1.0)
    gamma = _num(p, "gamma", 1.0)
    k = _num(p, "k", 0.0)
    orders = [int(x) for x in
              _increasing(_num_list(p, "orders", list(range(1, 61))))]
    if orders[0] < 0:
        raise ConfigError("truncation orders must be nonnegative")
    if beta <= 0.0 or gamma <= 0.0:
        raise DomainError("scaling parameters must be positive")
    if 2.0 * N + k <= -1.0 or k < -1.0:
        raise DomainError("Slater function outside the weighted space")
    r_grid = _num_list(p, "r_grid", [0.05 * j for j in range(1, 201)])
    alpha = 2.0 * L + k + 2.0
    norm = [math.sqrt((2.0 * gamma) ** (k + 3.0)
                      * math.exp(ln_gamma(nu + 1.0)
                                 - ln_gamma(nu + 2.0 * L + k + 3.0)))
            for nu in range(orders[-1] + 1)]
    lam = [series.stf_in_guseinov_coeffs(N, L, beta, gamma, k, nu) * norm[nu]
           for nu in range(orders[-1] + 1)]
    s = series.LaguerreSeries(alpha, lam.__getitem__)

    def exact(r):
        return (beta * r) ** (N - 1.0) * math.exp(-beta * r)

    # target in the Laguerre variable z = 2 gamma r, with the exponential
    # and solid-harmonic powers of the basis divided out
    def target(z):
        r = z / (2.0 * gamma)
        return exact(r) * math.exp(gamma * r) / z ** L

    rule = series.QuadratureRule.gauss_laguerre(200, alpha)
    weighted = []
    sup = []
    for order in orders:
        poly = rearrange.rearrange_truncated(s, order)

        def approx(r):
            z = 2.0 * gamma * r
            return math.exp(-gamma * r) * z ** L * poly(z)

        sup.append(max(abs(approx(r) - exact(r)) for r in r_grid))
        gap = rule.integrate(lambda z: (poly(z) - target(z)) ** 2)
        weighted.append(math.sqrt(max(gap, 0.0)))
    i_min = min(range(len(orders)), key=weighted.__getitem__)
    onset = None
    for i in range(i_min + 1, len(orders)):
        if weighted[i] > 2.0 * weighted[i_min]:
            onset = orders[i]
            break
    return SemiconvergenceReport(
        orders=tuple(orders),
        weighted_errors=tuple(weighted),
        sup_errors=tuple(sup),
        argmin_order=orders[i_min],
        argmin_interior=0 < i_min < len(orders) - 1,
        divergence_onset=onset,
        segments=_monotone_segments(orders, weighted),
    )


def semiconvergence_rows(report):
    header = ["order", "weighted_error", "sup_error", "is_argmin"]
    rows = [[o, w, sup, int(o == report.argmin_order)]
            for o, w, sup in zip(report.orders, report.weighted_errors,
                                 report.sup_errors)]
    return header, rows


# ---------------------------------------------------------------------------
# coefficient flow of the rearranged truncations


def _flow_series(p):
    rho = _num(p, "rho")
    alpha = _num(p, "alpha", 0.0)
    u = _num(p, "u", 0.0)
    if u != 0.0:
        return series.power_exp_series(rho, u, alpha)
    return series.power_series(rho, alpha)


def run_coefficient_flow(cfg):
    p = cfg.params
    s = _flow_series(p)
    nus = [int(x) for x in _num_list(p, "nu", [0, 1, 2])]
    cutoffs = [int(x) for x in
               _increasing(_num_list(p, "cutoffs", [100, 1000, 10000]))]
    header = ["nu", "M", "gamma", "sign", "log10_abs_gamma"]
    rows = []
    for nu in nus:
        if nu < 0:
            raise ConfigError("outer index nu must be nonnegative")
        for M in cutoffs:
            if M < nu:
                continue
            g = rearrange.gamma_coefficient(s, nu, M)
            sign = 0 if g == 0.0 else int(math.copysign(1.0, g))
            log10 = math.log10(abs(g)) if g != 0.0 else float("-inf")
            rows.append([nu, M, g, sign, log10])
    return header, rows


# ---------------------------------------------------------------------------
# convergence-region map of the two-range expansion


def run_region_map(cfg):
    p = cfg.params
    eta = _num(p, "eta", 0.5)
    ratios = _num_list(p, "ratios", [0.2, 0.4, 0.6, 0.8, 1.2, 1.5, 2.0])
    thetas = _num_list(p, "thetas", [0.0, math.pi / 3, math.pi / 2])
    terms = _num(p, "terms", 200, int)
    header = ["ratio", "theta", "verdict", "geometric_rate"]
    rows = []
    for ratio in ratios:
        if ratio <= 0.0:
            raise ConfigError("radial ratios must be positive")
        for theta in thetas:
            _, diag = addthm.gegenbauer_expand_small(ratio, 1.0, theta,
                                                     eta, terms)
            rate = diag.geometric_rate
            rows.append([ratio, theta, diag.verdict.value,
                         "" if rate is None else rate])
    return header, rows


# ---------------------------------------------------------------------------
# decay classification report


def run_decay_report(cfg):
    p = cfg.params
    specs = p.get("series", [
        {"rho": 0.5, "u": 0.0, "alpha": 0.0},
        {"rho": 0.5, "u": -1.0, "alpha": 0.0},
        {"m": 2, "u": -1.0, "alpha": 0.0},
    ])
    if not isinstance(specs, list) or not specs:
        raise ConfigError("'series' must be a nonempty list of objects")
    n_lo = _num(p, "n_lo", 40, int)
    n_hi = _num(p, "n_hi", 160, int)
    header = ["form", "rho_or_m", "u", "alpha", "kind", "exponent", "ratio"]
    rows = []
    for entry in specs:
        if not isinstance(entry, dict):
            raise ConfigError("each series entry must be an object")
        alpha = _num(entry, "alpha", 0.0)
        u = _num(entry, "u", 0.0)
        if "m" in entry:
            degree = float(_num(entry, "m", None, int))
            form = "monomial_exp"
            s = series.power_exp_series(degree, u, alpha)
        else:
            degree = _num(entry, "rho")
            form = "power_exp" if u != 0.0 else "power"
            s = (series.power_exp_series(degree, u, alpha) if u != 0.0
                 else series.power_series(degree, alpha))
        cls = rearrange.classify_decay(s, n_lo, n_hi)
        rows.append([form, degree, u, alpha, cls.kind.value,
                     "" if cls.exponent is None else cls.exponent,
                     "" if cls.ratio is None else cls.ratio])
    return header, rows


# ---------------------------------------------------------------------------
# sequence transformation of a supplied series


def run_sum(cfg):
    p = cfg.params
    values = p.get("values")
    if (not isinstance(values, list) or len(values) < 3
            or any(isinstance(x, bool) or not isinstance(x, (int, float))
                   for x in values)):
        raise ConfigError("'values' must be a numeric list with >= 3 entries")
    kind = p.get("kind", "terms")
    if kind not in ("terms", "partial_sums"):
        raise ConfigError("'kind' must be 'terms' or 'partial_sums'")
    method = p.get("method", "weniger_s")
    if method not in seqxform._METHODS:
        raise ConfigError(f"unknown method {method!r}")
    if kind == "terms":
        sums = []
        acc = 0.0
        for t in values:
            acc += float(t)
            sums.append(acc)
    else:
        sums = [float(x) for x in values]
    table = seqxform._METHODS[method](sums)
    header = ["order", "estimate", "saturated"]
    rows = [[i, est, int(sat)]
            for i, (est, sat) in enumerate(zip(table.estimates,
                                               table.saturated))]
    rows.append(["best", table.best_estimate, 0])
    return header, rows


# ---------------------------------------------------------------------------
# built-in identity suite


def run_check(cfg):
    del cfg  # no parameters; the suite is fixed so results are comparable
    checks = []

    rule = series.QuadratureRule.gauss_laguerre(80, 0.0)
    for alpha in (0.0, 1.0, 2.5):
        r = series.QuadratureRule.gauss_laguerre(80, alpha)
        worst = 0.0
        for n in range(0, 13, 4):
            for m in range(n, 13, 4):
                from .specfun import laguerre_recurrence
                val = r.integrate(lambda z: laguerre_recurrence(n, alpha, z)
                                  * laguerre_recurrence(m, alpha, z))
                norm = math.exp(ln_gamma(alpha + n + 1.0) - ln_gamma(n + 1.0))
                want = norm if n == m else 0.0
                worst = max(worst, abs(val - want) / max(norm, 1.0))
        checks.append((f"orthogonality_alpha_{alpha}", worst, 1e-9))
    del rule

    worst = max(addthm.stf_to_bfun_radial_check(n, l, b, r)
                for n, l in ((1, 0), (3, 1), (4, 0), (5, 2))
                for b in (0.5, 1.0) for r in (0.7, 2.0, 5.0))
    checks.append(("stf_to_bfun", worst, 1e-11))

    worst = max(addthm.explag_to_rbf_check(n, a, z)
                for n in (0, 2, 5, 8) for a in (0.0, 2.5) for z in (0.7, 1.5))
    checks.append(("laguerre_to_rbf", worst, 1e-11))

    worst = max(addthm.gegenbauer_to_legendre_check(m, mu, x)
                for m in range(9) for mu in (0.75, 1.25, 2.0)
                for x in (-0.6, 0.1, 0.9))
    checks.append(("gegenbauer_to_legendre", worst, 1e-11))

    g = addthm.TwoRangeGeometry(0.5, 1.0, math.cos(math.pi / 3))
    val, _ = addthm.one_s_addition(1.0, g, 40)
    checks.append(("one_s_addition", abs(val - addthm.one_s_direct(1.0, g)),
                   1e-8))

    header = ["check", "residual", "tolerance", "status"]
    rows = [[name, res, tol, "pass" if res <= tol else "FAIL"]
            for name, res, tol in checks]
    return header, rows
