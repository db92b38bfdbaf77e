"""Cross-intersection counting and the supersaturation ratio for layer pairs.

The counting primitives are exact integer counts of pairs with a given
intersection size.  The supersaturation statement itself (dense layer
pairs realize almost their share of size-ell intersections) carries a
lower bound on its slack parameter that no enumerable instance can meet,
so the check function reports the hypothesis verdict alongside the
conclusion instead of pretending to verify the theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bounds import supersat_epsilon, supersat_hypothesis
from .families import Family, intersection_spectrum
from .measure import layer_profile


def count_i_ell(fam: Family, other: Family, ell: int) -> int:
    """Number of cross pairs with intersection size exactly ell."""
    if not (0 <= ell <= fam.m):
        raise ValueError(f"ell must lie in [0, {fam.m}], got {ell}")
    return intersection_spectrum(fam, other)[ell]


def count_i_ell_set(mask: int, other: Family, ell: int) -> int:
    """Number of members of G meeting a fixed subset in exactly ell
    elements.  Summing over the members of F recovers count_i_ell.
    Sizes beyond the ground set give 0."""
    if mask < 0 or mask >> other.m:
        raise ValueError(f"mask {mask:#x} uses elements beyond [{other.m}]")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if other.is_empty or ell > other.m:
        return 0
    counts = np.bitwise_count(other.member_array() & np.int64(mask))
    return int((counts == ell).sum())


def full_layer_pair_count(n: int, k: int, ell: int) -> int:
    """Pairs (A, B) with |A| = k, |B| = n-k, |A cap B| = ell: choose A,
    the ell common elements inside it, and the n-k-ell others outside."""
    if not (0 <= k <= n):
        raise ValueError(f"layer k must lie in [0, {n}]")
    if ell < 0 or ell > k or ell > n - k:
        return 0
    return math.comb(n, k) * math.comb(k, ell) * math.comb(n - k, n - k - ell)


def _layer_of(fam: Family) -> int | None:
    profile = layer_profile(fam)
    layers = [k for k, c in enumerate(profile) if c]
    if not layers:
        return None
    if len(layers) > 1:
        raise ValueError(f"family spans layers {layers}, need a single layer")
    return layers[0]


def supersat_ratio(
    fam: Family, other: Family, ell: int, delta: float | None = None
) -> tuple[Fraction, float | None]:
    """Share of size-ell cross pairs realized by a layer pair.

    F must sit inside layer k and G inside layer n-k; the denominator is
    the full-layer pair count (must be nonzero).  Returns the exact ratio
    and, when delta is supplied, the conclusion floor exp(-delta) it is
    meant to clear."""
    if fam.m != other.m:
        raise ValueError(f"ground size mismatch: {fam.m} vs {other.m}")
    n = fam.m
    k = _layer_of(fam)
    co_layer = _layer_of(other)
    if k is None and co_layer is None:
        raise ValueError("both families empty: layer undetermined")
    if k is None:
        k = n - co_layer
    elif co_layer is not None and co_layer != n - k:
        raise ValueError(f"G sits in layer {co_layer}, expected {n - k}")
    denominator = full_layer_pair_count(n, k, ell)
    if denominator == 0:
        raise ValueError(f"no full-layer pairs with |A cap B| = {ell} for k={k}, n={n}")
    ratio = Fraction(count_i_ell(fam, other, ell), denominator)
    floor = math.exp(-delta) if delta is not None else None
    return ratio, floor


@dataclass(frozen=True)
class SupersatReport:
    """Hypothesis + formula + counting kit for one layer-pair instance.

    hypothesis_ok is the slack-parameter gate; it is false for every
    enumerable instance (the required delta exceeds min(ell, k-ell) by
    orders of magnitude at any desk-scale n), so conclusion_ok is
    advisory whenever advisory is True."""

    n: int
    k: int
    ell: int
    delta: float
    epsilon: float
    hypothesis_ok: bool
    density_ok: bool
    ratio: Fraction
    conclusion_floor: float
    conclusion_ok: bool
    advisory: bool


def supersat_check(fam: Family, other: Family, ell: int, delta: float) -> SupersatReport:
    """Evaluate the full supersaturation implication on one instance:
    the slack hypothesis, the exact density condition
    d(F) d(G) > exp(-eps(delta)), and the counting conclusion
    ratio > exp(-delta)."""
    n = fam.m
    k = _layer_of(fam)
    if k is None:
        raise ValueError("F must be nonempty to fix the layer")
    ratio, floor = supersat_ratio(fam, other, ell, delta)
    epsilon = supersat_epsilon(n, k, ell, delta)
    hypothesis_ok = supersat_hypothesis(n, k, ell, delta)
    density_f = Fraction(len(fam), math.comb(n, k))
    density_g = Fraction(len(other), math.comb(n, n - k))
    density_ok = float(density_f * density_g) > math.exp(-epsilon)
    return SupersatReport(
        n=n,
        k=k,
        ell=ell,
        delta=delta,
        epsilon=epsilon,
        hypothesis_ok=hypothesis_ok,
        density_ok=density_ok,
        ratio=ratio,
        conclusion_floor=floor,
        conclusion_ok=float(ratio) > floor,
        advisory=not hypothesis_ok,
    )
