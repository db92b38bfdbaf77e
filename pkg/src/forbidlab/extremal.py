"""Exhaustive and constructive exploration of the extremal product constant.

For fixed (n, p, p', ell) the quantity of interest is the largest value
of mu_p(F) mu_p'(G) over nonempty pairs whose cross intersections forbid
ell, reported as an exact rational together with eps = -ln(product).

The search space collapses from pairs to single families: for fixed F the
product is monotone in G, so the optimal partner is always the maximal
one (every subset not conflicting with any member of F).  The oracle
enumerates all 2^(2^n) - 1 nonempty F in contiguous blocks with a
word-parallel scan and recomputes the winning pair exactly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .families import (
    Family,
    Window,
    cardinality_filter,
    format_family,
    full_family,
)
from .measure import RationalLike, as_bias, format_rational, mu

ORACLE_MAX_N = 4
CONFLICT_TABLE_MAX = 5
_CHUNK_BITS = 20


def thread_count() -> int:
    """Worker cap for block-parallel scans; FORBID_LAB_THREADS overrides."""
    env = os.environ.get("FORBID_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def conflict_neighbors(m: int, ell: int) -> list[int]:
    """Per-subset conflict table: entry A is the indicator of
    {B : |A cap B| = ell}.  Symmetric.  Table size is 2^m x 2^m bits,
    so m is capped at CONFLICT_TABLE_MAX."""
    if m > CONFLICT_TABLE_MAX:
        raise ValueError(f"conflict table needs m <= {CONFLICT_TABLE_MAX}, got {m}")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    total = 1 << m
    table = []
    for a in range(total):
        row = 0
        for b in range(total):
            if (a & b).bit_count() == ell:
                row |= 1 << b
        table.append(row)
    return table


def _conflict_indicator(m: int, mask: int, window: Window) -> int:
    # Indicator over all B of window.lo <= |mask cap B| <= window.hi,
    # built coordinate by coordinate: register j tracks prefixes with j
    # in-mask hits, and the upper half of each doubling step promotes
    # j-1 to j when the new coordinate lies in the mask.
    hi = min(window.hi, m)
    lo = window.lo
    if lo > hi:
        return 0
    regs = [0] * (hi + 1)
    regs[0] = 1
    for i in range(m):
        width = 1 << i
        if mask >> i & 1:
            for j in range(hi, 0, -1):
                regs[j] |= regs[j - 1] << width
        else:
            for j in range(hi, -1, -1):
                regs[j] |= regs[j] << width
    out = 0
    for j in range(lo, hi + 1):
        out |= regs[j]
    return out


def maximal_partner(fam: Family, window: Window) -> Family:
    """The unique largest G with no cross pair landing in the window:
    all subsets whose intersection size with every member of F avoids
    [window.lo, window.hi]."""
    m = fam.m
    full = (1 << (1 << m)) - 1
    bad = 0
    for a in fam.members():
        bad |= _conflict_indicator(m, a, window)
        if bad == full:
            break
    return Family(m, full ^ bad)


def best_partner(fam: Family, ell: int) -> Family:
    """Maximal partner for the singleton window {ell}.  Enlarging a
    partner never lowers its measure, so this is the optimal companion
    of F in any product maximization."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return maximal_partner(fam, Window(ell, ell))


@dataclass(frozen=True)
class ExtremalRecord:
    """Optimal product for one parameter point, with a witnessing pair.

    product is exact; epsilon = -ln(product) is the float companion.
    When produced by epsilon_oracle the product is the exact maximum over
    all nonempty forbidding pairs."""

    n: int
    ell: int
    p: Fraction
    pp: Fraction
    product: Fraction
    epsilon: float
    witness_f: Family
    witness_g: Family


def _scan_block(lo, hi, n, weights_f, weights_g, conflict_arr, full_ind):
    total = 1 << n
    ar = np.arange(lo, hi, dtype=np.uint64)
    mu_f = np.zeros(ar.shape, dtype=np.uint64)
    bad = np.zeros(ar.shape, dtype=np.uint64)
    for a in range(total):
        sel = (ar >> a) & np.uint64(1)
        mu_f += weights_f[a] * sel
        bad |= conflict_arr[a] * sel
    partner = bad ^ np.uint64(full_ind)
    mu_g = np.zeros(ar.shape, dtype=np.uint64)
    for b in range(total):
        mu_g += weights_g[b] * ((partner >> b) & np.uint64(1))
    products = mu_f * mu_g
    i = int(np.argmax(products))
    return int(products[i]), lo + i


def epsilon_oracle(
    n: int,
    p: RationalLike,
    pp: RationalLike,
    ell: int,
    allow_slow: bool = False,
) -> ExtremalRecord:
    """Exact maximum of mu_p(F) mu_p'(G) over nonempty forbidding pairs.

    Enumerates every nonempty F over [n] (partner G derived maximally;
    pairs with an empty partner contribute nothing, matching the
    nonempty-pair quantifier).  n <= 4 runs freely; n = 5 is allowed only
    with allow_slow (2^32 candidate families); larger n is refused.

    The block scan works in integers scaled by the common denominator and
    the winner is recomputed with exact rationals; a mismatch would raise.
    """
    p = as_bias(p)
    pp = as_bias(pp)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if n < 1:
        raise ValueError("need n >= 1")
    if n > ORACLE_MAX_N and not (n == 5 and allow_slow):
        raise ValueError(
            f"oracle is exhaustive over 2^(2^n) families; n={n} needs "
            f"n <= {ORACLE_MAX_N}, or n = 5 with allow_slow"
        )
    total = 1 << n
    full_ind = (1 << total) - 1
    den = p.denominator**n * pp.denominator**n
    if den >= 1 << 31:
        raise ValueError(
            "bias denominators too large for the scaled integer scan; "
            "use smaller exact denominators"
        )
    af, bf = p.numerator, p.denominator
    ag, bg = pp.numerator, pp.denominator
    weights_f = np.array(
        [af ** a.bit_count() * (bf - af) ** (n - a.bit_count()) for a in map(int, range(total))],
        dtype=np.uint64,
    )
    weights_g = np.array(
        [ag ** a.bit_count() * (bg - ag) ** (n - a.bit_count()) for a in range(total)],
        dtype=np.uint64,
    )
    conflict_arr = np.array(
        [_conflict_indicator(n, a, Window(ell, ell)) for a in range(total)],
        dtype=np.uint64,
    )

    blocks = []
    step = 1 << _CHUNK_BITS
    lo = 1
    while lo < (1 << total):
        blocks.append((lo, min(lo + step, 1 << total)))
        lo += step

    def scan(block):
        return _scan_block(
            block[0], block[1], n, weights_f, weights_g, conflict_arr, full_ind
        )

    if len(blocks) > 1 and thread_count() > 1:
        with ThreadPoolExecutor(max_workers=thread_count()) as pool:
            results = list(pool.map(scan, blocks))
    else:
        results = [scan(b) for b in blocks]
    best_value, best_index = max(results, key=lambda r: (r[0], -r[1]))
    if best_value == 0:
        raise ValueError(f"no nonempty forbidding pair exists for ell={ell}, n={n}")

    witness_f = Family(n, best_index)
    witness_g = best_partner(witness_f, ell)
    product = mu(witness_f, p) * mu(witness_g, pp)
    scaled = Fraction(best_value, p.denominator**n * pp.denominator**n)
    if product != scaled:
        raise RuntimeError(
            f"scan/exact mismatch: scan {format_rational(scaled)} vs "
            f"exact {format_rational(product)}"
        )
    epsilon = math.log(product.denominator) - math.log(product.numerator)
    return ExtremalRecord(
        n=n,
        ell=ell,
        p=p,
        pp=pp,
        product=product,
        epsilon=epsilon,
        witness_f=witness_f,
        witness_g=witness_g,
    )


def construction_high_ell(n: int, ell: int) -> tuple[Family, Family]:
    """Feasible pair (all subsets smaller than ell, the full cube); every
    cross intersection has size below ell.  Needs 1 <= ell <= n."""
    if not (1 <= ell <= n):
        raise ValueError(f"need 1 <= ell <= n, got ell={ell}")
    small = cardinality_filter(full_family(n), 0, ell - 1)
    return small, full_family(n)


def construction_symmetric(n: int, p: RationalLike, ell: int) -> tuple[Family, Family]:
    """Feasible tail pair for the symmetric-bias regime: F holds the
    cardinalities strictly above p n + ell/2, G those at or above
    (1-p) n + ell/2.  Any cross pair then intersects in more than ell
    elements (|A cap B| >= |A| + |B| - n > ell).

    Needs ell <= p n / 2 and p n + ell/2 < n so that F is nonempty; G is
    meant to be weighed with the complementary bias 1 - p."""
    p = as_bias(p)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    pn = p * n
    if Fraction(ell) > pn / 2:
        raise ValueError(f"needs ell <= p*n/2 = {pn / 2}, got ell={ell}")
    f_threshold = pn + Fraction(ell, 2)
    if not f_threshold < n:
        raise ValueError("F would be empty: needs p*n + ell/2 < n")
    f_lo = math.floor(f_threshold) + 1
    g_lo = math.ceil((1 - p) * n + Fraction(ell, 2))
    if g_lo > n:
        raise ValueError("G would be empty")
    cube = full_family(n)
    return (
        cardinality_filter(cube, f_lo, n),
        cardinality_filter(cube, g_lo, n),
    )


def record_to_dict(record: ExtremalRecord) -> dict:
    """JSON-ready census row with exact-rational strings and fixture-format
    witnesses."""
    return {
        "n": record.n,
        "ell": record.ell,
        "p": format_rational(record.p),
        "pp": format_rational(record.pp),
        "product": format_rational(record.product),
        "epsilon": record.epsilon,
        "witness_f": format_family(record.witness_f),
        "witness_g": format_family(record.witness_g),
    }


def census_key(n: int, p: Fraction, pp: Fraction, ell: int) -> str:
    return f"n={n};p={format_rational(p)};pp={format_rational(pp)};ell={ell}"
