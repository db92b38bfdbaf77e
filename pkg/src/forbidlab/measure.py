"""Exact biased-measure computation for families and binomial tails.

The p-biased measure gives a subset A of [m] weight p^|A| (1-p)^(m-|A|).
Everything here is exact rational arithmetic on fractions.Fraction: the
deformation engine branches on strict inequalities between measure
products, and exact arithmetic keeps those branches deterministic.
Floats are for reporting only.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .families import Family, _layer_masks

RationalLike = Fraction | int | str


def as_bias(p: RationalLike) -> Fraction:
    """Validate and normalize a bias parameter to an exact rational in (0, 1)."""
    q = Fraction(p)
    if not (0 < q < 1):
        raise ValueError(f"bias must lie strictly between 0 and 1, got {q}")
    return q


def parse_rational(text: str) -> Fraction:
    """Parse `num/den` or a plain integer; rejects decimal notation so
    command-line probabilities stay exact."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(q: Fraction) -> str:
    """Locale-free `num/den` form used by all reports."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def layer_profile(fam: Family) -> list[int]:
    """Member counts per cardinality: entry k is |{A in F : |A| = k}|."""
    masks = _layer_masks(fam.m)
    return [(fam.bits & masks[k]).bit_count() for k in range(fam.m + 1)]


def mu(fam: Family, p: RationalLike) -> Fraction:
    """Exact biased measure of a family.

    Computed from the layer profile with a common denominator, so the
    cost is O(m) integer multiplications rather than O(|F|).
    """
    p = as_bias(p)
    a, b = p.numerator, p.denominator
    c = b - a
    m = fam.m
    num = 0
    for k, count in enumerate(layer_profile(fam)):
        if count:
            num += count * a**k * c ** (m - k)
    return Fraction(num, b**m)


def tail_measure(n: int, p: RationalLike, kind: str, threshold: int) -> Fraction:
    """Exact biased measure of a cardinality tail of the n-cube.

    kind `at_least`: measure of {A : |A| >= threshold};
    kind `at_most`:  measure of {A : |A| <= threshold}.
    Thresholds outside 0..n clamp (at_least 0 is 1, at_least n+1 is 0).
    """
    if n < 1:
        raise ValueError("tail_measure needs n >= 1")
    p = as_bias(p)
    if kind == "at_least":
        layers = range(max(threshold, 0), n + 1)
    elif kind == "at_most":
        layers = range(0, min(threshold, n) + 1)
    else:
        raise ValueError(f"kind must be 'at_least' or 'at_most', got {kind!r}")
    a, b = p.numerator, p.denominator
    c = b - a
    num = sum(comb(n, k) * a**k * c ** (n - k) for k in layers)
    return Fraction(num, b**n)
