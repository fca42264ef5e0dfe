"""Sequence transformations: Wynn's epsilon algorithm, Levin-type
transformations with remainder estimates, and the factorial-series-based S
transformation, plus a driver that applies them to the inner series of the
rearranged Laguerre expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .rearrange import inner_partial_sum


class DegenerateTable(ArithmeticError):
    """Every transform denominator underflowed; no estimate available."""


_DENOM_GUARD = 1e-300


@dataclass(frozen=True)
class TransformTable:
    """Triangular array of transformed estimates of a sequence limit.

    estimates[k] is the order-k transform using the earliest available
    entries; saturated orders (denominator underflow) are skipped when the
    best estimate is selected.
    """

    partial_sums: tuple
    estimates: tuple
    saturated: tuple
    best_estimate: float
    stability: float  # smallest |denominator| met while building the table

    def last_valid(self, count):
        vals = [e for e, sat in zip(self.estimates, self.saturated) if not sat]
        return vals[-count:]


def _finish(partial_sums, estimates, saturated, min_denom):
    valid = [e for e, s in zip(estimates, saturated) if not s]
    if not valid:
        raise DegenerateTable("all transform denominators underflowed")
    return TransformTable(
        partial_sums=tuple(partial_sums),
        estimates=tuple(estimates),
        saturated=tuple(saturated),
        best_estimate=valid[-1],
        stability=min_denom,
    )


def _constant_tail(s, count=3):
    return len(s) >= count and all(x == s[-1] for x in s[-count:])


def _constant_table(s):
    # zero remainder estimates mean the sequence already reached its limit;
    # every transform is exact on constants, so report the constant directly
    return TransformTable(partial_sums=tuple(s), estimates=(s[-1],),
                          saturated=(False,), best_estimate=s[-1],
                          stability=0.0)


def wynn_epsilon(partial_sums):
    """Wynn's epsilon algorithm; even columns are the estimates."""
    s = [float(x) for x in partial_sums]
    if len(s) < 3:
        raise ValueError("epsilon algorithm needs at least 3 partial sums")
    if _constant_tail(s):
        return _constant_table(s)
    estimates = [s[-1]]
    saturated = [False]
    min_denom = float("inf")
    prev = [0.0] * (len(s) + 1)  # epsilon_{-1}
    cur = list(s)
    col = 0
    dead = False
    while len(cur) >= 2 and not dead:
        nxt = []
        for n in range(len(cur) - 1):
            diff = cur[n + 1] - cur[n]
            if abs(diff) < _DENOM_GUARD:
                dead = True
                break
            min_denom = min(min_denom, abs(diff))
            nxt.append(prev[n + 1] + 1.0 / diff)
        else:
            prev, cur = cur, nxt
            col += 1
            if col % 2 == 0 and cur:
                estimates.append(cur[-1])
                saturated.append(False)
    return _finish(s, estimates, saturated, min_denom)


def _levin_like(partial_sums, coeff_fn, omega, start):
    """Shared numerator/denominator recursion for Levin-type transforms."""
    s = [float(x) for x in partial_sums]
    if _constant_tail(s):
        return _constant_table(s)
    K = len(omega)
    for w in omega:
        if w == 0.0:
            raise DegenerateTable("vanishing remainder estimate")
    N = [s[start + n] / omega[n] for n in range(K)]
    D = [1.0 / omega[n] for n in range(K)]
    estimates = [s[-1]]
    saturated = [False]
    min_denom = float("inf")
    for k in range(K - 1):
        N = [N[n + 1] - coeff_fn(k, n) * N[n] for n in range(len(N) - 1)]
        D = [D[n + 1] - coeff_fn(k, n) * D[n] for n in range(len(D) - 1)]
        if abs(D[0]) < _DENOM_GUARD:
            estimates.append(float("nan"))
            saturated.append(True)
            continue
        min_denom = min(min_denom, abs(D[0]))
        estimates.append(N[0] / D[0])
        saturated.append(False)
    return _finish(s, estimates, saturated, min_denom)


def levin_type(partial_sums, remainder="d", beta=1.0):
    """Levin's transformation.

    The d variant uses omega_n = s_{n+1} - s_n (the next term); the u variant
    weights it by (beta + n).
    """
    s = [float(x) for x in partial_sums]
    if len(s) < 2:
        raise ValueError("need at least 2 partial sums")
    om = [s[n + 1] - s[n] for n in range(len(s) - 1)]
    if remainder == "u":
        om = [(beta + n) * om[n] for n in range(len(om))]
    elif remainder != "d":
        raise ValueError("remainder variant must be 'u' or 'd'")

    def coeff(k, n):
        if k == 0:
            return 1.0
        return (beta + n) * (beta + n + k) ** (k - 1) / (beta + n + k + 1.0) ** k

    return _levin_like(s, coeff, om, start=0)


def weniger_s(partial_sums, beta=1.0):
    """The nonlinear S transformation (factorial-series model) with d-type
    remainder estimates."""
    s = [float(x) for x in partial_sums]
    if len(s) < 2:
        raise ValueError("need at least 2 partial sums")
    om = [s[n + 1] - s[n] for n in range(len(s) - 1)]

    def coeff(k, n):
        if k == 0:
            return 1.0
        return ((beta + n + k) * (beta + n + k - 1.0)
                / ((beta + n + 2.0 * k) * (beta + n + 2.0 * k - 1.0)))

    return _levin_like(s, coeff, om, start=0)


# ---------------------------------------------------------------------------
# driver for the inner series of the rearrangement


class SummationVerdict(Enum):
    SUMMED = "Summed"
    NOT_SUMMABLE = "NotSummable"


@dataclass(frozen=True)
class InnerSumResult:
    nu: int
    method: str
    verdict: SummationVerdict
    estimate: float | None
    table: TransformTable | None
    spread: float  # relative disagreement of the last three valid orders


_METHODS = {
    "epsilon": wynn_epsilon,
    "levin": levin_type,
    "weniger_s": weniger_s,
}

_AGREEMENT = 0.10


def sum_inner_series(s, nu, K, method="weniger_s"):
    """Transform the (possibly divergent) inner series at outer index nu.

    NotSummable is a verdict, not an exception: it is declared when the last
    three transform orders disagree pairwise by more than 10% relative, or
    when the table degenerates.
    """
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    sums = [inner_partial_sum(s, nu, M) for M in range(K + 1)]
    if _constant_tail(sums):
        return InnerSumResult(nu, method, SummationVerdict.SUMMED,
                              sums[-1], _constant_table(sums), 0.0)
    try:
        table = _METHODS[method](sums)
    except DegenerateTable:
        return InnerSumResult(nu, method, SummationVerdict.NOT_SUMMABLE,
                              None, None, float("inf"))
    last = table.last_valid(3)
    if len(last) < 3:
        return InnerSumResult(nu, method, SummationVerdict.NOT_SUMMABLE,
                              None, table, float("inf"))
    scale = max(abs(v) for v in last)
    if scale == 0.0:
        spread = 0.0
    else:
        spread = max(abs(a - b) for a in last for b in last) / scale
    if spread > _AGREEMENT or not all(math.isfinite(v) for v in last):
        return InnerSumResult(nu, method, SummationVerdict.NOT_SUMMABLE,
                              None, table, spread)
    return InnerSumResult(nu, method, SummationVerdict.SUMMED,
                          table.best_estimate, table, spread)
