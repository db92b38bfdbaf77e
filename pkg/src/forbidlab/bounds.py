"""Closed-form bounds and parameter formulas, as pure numeric functions.

Inputs that are rational (biases, thresholds) are combined exactly and
only pushed through exp/log/sqrt at the last moment, so hypothesis checks
are exact and the float error in a returned bound is a few ulps. Mass
formulas with n^n-style growth are evaluated in log space to stay finite
at any n.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .measure import RationalLike, as_bias

SUBGAUSSIAN_DENOM = 58**2
SUPERSAT_C = 2**8 * 58**6 * 60**4


def _exp(x: Fraction | float) -> float:
    return math.exp(float(x))


def main_bound_rhs(n: int, p: RationalLike, ell: int) -> float:
    """Subgaussian ceiling 2*exp(-t^2 / (58^2 p n)) with t = min(ell, pn - ell).

    Valid for 0 <= ell <= pn; equals 2 when t = 0 (ell at either edge).
    """
    p = as_bias(p)
    pn = p * n
    if ell < 0 or ell > pn:
        raise ValueError(f"need 0 <= ell <= p*n = {pn}, got ell={ell}")
    t = min(Fraction(ell), pn - ell)
    return 2.0 * _exp(-(t * t) / (SUBGAUSSIAN_DENOM * pn))


def delta_choice(n: int, p: RationalLike, ell: int) -> Fraction:
    """Increment parameter min(ell/(58 p n), (pn - ell)/(51 p n)), exact.

    Requires 1 <= ell < pn; the result always lies strictly in (0, 1/10).
    """
    p = as_bias(p)
    pn = p * n
    if not (1 <= ell < pn):
        raise ValueError(f"need 1 <= ell < p*n = {pn}, got ell={ell}")
    delta = min(Fraction(ell) / (58 * pn), (pn - ell) / (51 * pn))
    if not (0 < delta < Fraction(1, 10)):
        raise AssertionError(f"delta {delta} escaped (0, 1/10)")
    return delta


def chernoff_upper(
    n: int, p: RationalLike, t: RationalLike | float, case: str | None = None
) -> float:
    """Upper tail bound for the biased measure of {A : |A| >= t}.

    case 'i'  (p <= 1/2, pn <= t <= 2pn): exp(-(t-pn)^2 / (6 p (1-p) n));
    case 'ii' (p >= 1/2, t >= pn):        exp(-(t-pn)^2 / (2 p (1-p) n)).
    With case=None, p < 1/2 selects 'i', p > 1/2 selects 'ii', and the
    overlap p = 1/2 defaults to 'i' (its range restriction t <= 2pn is
    the binding difference; both remain callable explicitly).
    """
    p = as_bias(p)
    pn = p * n
    tq = Fraction(t)
    if case is None:
        case = "i" if p <= Fraction(1, 2) else "ii"
    if case == "i":
        if p > Fraction(1, 2):
            raise ValueError("case 'i' needs p <= 1/2")
        if not (pn <= tq <= 2 * pn):
            raise ValueError(f"case 'i' needs pn <= t <= 2pn, got t={t}, pn={pn}")
        denom = 6 * p * (1 - p) * n
    elif case == "ii":
        if p < Fraction(1, 2):
            raise ValueError("case 'ii' needs p >= 1/2")
        if tq < pn:
            raise ValueError(f"case 'ii' needs t >= pn, got t={t}, pn={pn}")
        denom = 2 * p * (1 - p) * n
    else:
        raise ValueError(f"case must be 'i' or 'ii', got {case!r}")
    return _exp(-((tq - pn) ** 2) / denom)


def binomial_sandwich(n: int, k: int) -> tuple[float, float]:
    """Strict two-sided Stirling-type bracket of C(n, k).

    (1/5) sqrt(n/(k(n-k))) n^n/(k^k (n-k)^(n-k)) < C(n,k) < (2/5) (same).
    Needs n >= 2 and 1 <= k <= n-1.
    """
    if n < 2 or not (1 <= k <= n - 1):
        raise ValueError(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    log_mass = n * math.log(n) - k * math.log(k) - (n - k) * math.log(n - k)
    log_root = 0.5 * (math.log(n) - math.log(k) - math.log(n - k))
    lower = math.exp(log_mass + log_root - math.log(5))
    return lower, 2.0 * lower


def entropy_bounds(n: int, k: int) -> tuple[float, float]:
    """Binary-entropy bracket of C(n, k): prefactors 1/sqrt(8 ...) and
    1/sqrt(pi ...) around 2^(n H(k/n)); non-strict on both sides."""
    if n < 2 or not (1 <= k <= n - 1):
        raise ValueError(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    x = k / n
    entropy = -(x * math.log2(x) + (1 - x) * math.log2(1 - x))
    log_common = n * entropy * math.log(2) + 0.5 * (
        math.log(n) - math.log(k) - math.log(n - k)
    )
    lower = math.exp(log_common - 0.5 * math.log(8))
    upper = math.exp(log_common - 0.5 * math.log(math.pi))
    return lower, upper


def interval_bound_rhs(n: int, p: RationalLike, alpha: int, kind: str) -> float:
    """Product ceiling for pairs forbidding an initial or final interval.

    initial (window [0, alpha]):      exp(-alpha^2 / (24 p (1-p) n));
    final   (window [pn - alpha, n]): twice that.
    Needs 1 <= alpha <= pn.
    """
    p = as_bias(p)
    pn = p * n
    if not (1 <= alpha <= pn):
        raise ValueError(f"need 1 <= alpha <= p*n = {pn}, got alpha={alpha}")
    value = _exp(-Fraction(alpha) ** 2 / (24 * p * (1 - p) * n))
    if kind == "initial":
        return value
    if kind == "final":
        return 2.0 * value
    raise ValueError(f"kind must be 'initial' or 'final', got {kind!r}")


def layer_bound_rhs(n: int, k: int, m: int, ell: int, kind: str) -> float:
    """Density-product ceiling for layer families F in layer k, G in layer m
    whose cross intersections forbid ell.

    part_i  (ell <= k <= m, k <= n/2, m <= n-k):
        50 sqrt(k(n-k)m(n-m)/n^2) exp(-t^2/(58^2 k)), t = min(ell, k-ell);
    part_ii (k <= n/2 <= n-k < m <= n-k+ell, m < n):
        same prefactor, exp(-tbar^2/(58^2 (n-m))),
        tbar = min(k-ell, n-m-(k-ell)).
    """
    if not (1 <= k <= n and 1 <= m <= n):
        raise ValueError("layers k, m must lie in [1, n]")
    if not (0 <= ell <= k):
        raise ValueError(f"need 0 <= ell <= k, got ell={ell}, k={k}")
    prefactor = 50.0 * math.sqrt(k * (n - k) * m * (n - m)) / n
    if kind == "part_i":
        if 2 * k > n:
            raise ValueError("part_i needs k <= n/2")
        if not (k <= m <= n - k):
            raise ValueError(f"part_i needs k <= m <= n-k, got m={m}")
        t = min(ell, k - ell)
        return prefactor * math.exp(-(t * t) / (SUBGAUSSIAN_DENOM * k))
    if kind == "part_ii":
        if 2 * k > n:
            raise ValueError("part_ii needs k <= n/2")
        if not (n - k < m <= n - k + ell):
            raise ValueError(f"part_ii needs n-k < m <= n-k+ell, got m={m}")
        if m >= n:
            raise ValueError("part_ii needs m < n (layer n-m must be nonempty)")
        tbar = min(k - ell, (n - m) - (k - ell))
        return prefactor * math.exp(-(tbar * tbar) / (SUBGAUSSIAN_DENOM * (n - m)))
    raise ValueError(f"kind must be 'part_i' or 'part_ii', got {kind!r}")


def wide_range_bound(n: int, p: RationalLike, ell: int, kind: str) -> float:
    """Extensions of the subgaussian product bound to wider bias ranges.

    prop72: requires 0 < p < 1/2 and t = min(ell, pn - ell) >= 3; returns
            t * exp(-t^2 / (6 * 30^2 * p n)).
    cor73:  requires 6/n <= p <= 1/2 and t >= 210 sqrt(pn ln(pn)); returns
            exp(-t^2 / (90^2 p n)).
    Violations raise with the failed hypothesis named.
    """
    p = as_bias(p)
    pn = p * n
    if ell < 0 or ell > pn:
        raise ValueError(f"hypothesis failed: need 0 <= ell <= p*n = {pn}")
    t = min(Fraction(ell), pn - ell)
    if kind == "prop72":
        if p >= Fraction(1, 2):
            raise ValueError("hypothesis failed: prop72 needs p < 1/2")
        if t < 3:
            raise ValueError(f"hypothesis failed: prop72 needs t >= 3, got t={t}")
        return float(t) * _exp(-(t * t) / (5400 * pn))
    if kind == "cor73":
        if p < Fraction(6, n):
            raise ValueError(f"hypothesis failed: cor73 needs p >= 6/n = 6/{n}")
        if p > Fraction(1, 2):
            raise ValueError("hypothesis failed: cor73 needs p <= 1/2")
        threshold = 210.0 * math.sqrt(float(pn) * math.log(float(pn)))
        if float(t) < threshold:
            raise ValueError(
                f"hypothesis failed: cor73 needs t >= 210 sqrt(pn ln pn) "
                f"= {threshold:.6g}, got t={float(t):.6g}"
            )
        return _exp(-(t * t) / (8100 * pn))
    raise ValueError(f"kind must be 'prop72' or 'cor73', got {kind!r}")


def lower_tail_bound(n: int, k: int, p: RationalLike, kind: str) -> float:
    """Lower bounds on the biased measure of cardinality tails.

    at_most  (1 <= k <= pn):      bound on measure of {A : |A| <= k};
    at_least (pn <= k < 2pn):     bound on measure of {A : |A| >= k}.
    Both equal exp(-(k - pn)^2 / (p (1-p) n)) / sqrt(8 k (n-k) / n).
    Needs p <= 1/2.
    """
    p = as_bias(p)
    if p > Fraction(1, 2):
        raise ValueError("lower_tail_bound needs p <= 1/2")
    if k < 1:
        raise ValueError("need k >= 1 (prefactor undefined at k = 0)")
    pn = p * n
    if kind == "at_most":
        if k > pn:
            raise ValueError(f"at_most needs k <= p*n = {pn}, got k={k}")
    elif kind == "at_least":
        if not (pn <= k < 2 * pn):
            raise ValueError(f"at_least needs pn <= k < 2pn, pn={pn}, got k={k}")
    else:
        raise ValueError(f"kind must be 'at_most' or 'at_least', got {kind!r}")
    prefactor = 1.0 / math.sqrt(8.0 * k * (n - k) / n)
    return prefactor * _exp(-((k - pn) ** 2) / (p * (1 - p) * n))


def supersat_epsilon(n: int, k: int, ell: int, delta: float) -> float:
    """Density slack delta^4 / (C T^2 ell ln(n/delta)^4) with T = max(ell, k-ell)
    and C = 2^8 58^6 60^4."""
    if not (0 < delta < n):
        raise ValueError(f"need 0 < delta < n for ln(n/delta), got delta={delta}")
    if ell < 1:
        raise ValueError("need ell >= 1")
    if k <= ell:
        raise ValueError(f"need k > ell, got k={k}, ell={ell}")
    big_t = max(ell, k - ell)
    log_term = math.log(n / delta)
    return delta**4 / (SUPERSAT_C * big_t**2 * ell * log_term**4)


def supersat_hypothesis(n: int, k: int, ell: int, delta: float) -> bool:
    """Whether 10^5 sqrt(k) (ln n)^(3/2) <= delta <= min(ell, k - ell).

    At any enumerable n the left side dwarfs the right, so this predicate
    is the honest gate that keeps the supersaturation conclusion advisory
    at desk scale.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    floor_req = 1e5 * math.sqrt(k) * math.log(n) ** 1.5
    return floor_req <= delta <= min(ell, k - ell)
