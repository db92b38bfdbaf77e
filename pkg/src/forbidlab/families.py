"""Families of subsets of a finite ground set, stored as dense bit indicators.

A family over the ground set [m] = {1, ..., m} is a set of subsets of [m].
Each subset is encoded as an m-bit mask (element e <-> bit e-1), and the
family itself is a single Python integer of 2^m bits: bit A is set iff the
subset with mask A belongs to the family.  This makes membership O(1),
union/intersection single big-int operations, and the two coordinate
sections of a family literally the low and high halves of its indicator.

Ground sizes are capped by MAX_N (default 24, a 2 MiB indicator); rebind
the module attribute to raise the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_N = 24

_BYTE_REVERSE = bytes(int(f"{i:08b}"[::-1], 2) for i in range(256))


@dataclass(frozen=True)
class Window:
    """Integer interval [lo, hi] of forbidden cross-intersection sizes."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi):
            raise ValueError(f"window needs 0 <= lo <= hi, got [{self.lo}, {self.hi}]")

    def __contains__(self, value: int) -> bool:
        return self.lo <= value <= self.hi


class Family:
    """Immutable set of subsets of [m].

    `bits` is the 2^m-bit membership indicator.  Instances are never
    mutated after construction; all module operations return new values,
    so families can be shared freely across threads.
    """

    __slots__ = ("m", "bits", "_members", "_arr")

    def __init__(self, m: int, bits: int):
        if not (0 <= m <= MAX_N):
            raise ValueError(f"ground size {m} outside [0, {MAX_N}]")
        if bits < 0 or bits >> (1 << m):
            raise ValueError(f"indicator has bits beyond the 2^{m} subsets of [{m}]")
        self.m = m
        self.bits = bits
        self._members: list[int] | None = None
        self._arr: np.ndarray | None = None

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, mask: int) -> bool:
        return 0 <= mask < (1 << self.m) and bool(self.bits >> mask & 1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Family) and self.m == other.m and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.m, self.bits))

    def __repr__(self) -> str:
        if len(self) <= 8:
            inner = ",".join(
                "{" + ",".join(map(str, elements_from_mask(a))) + "}"
                for a in self.members()
            )
            return f"Family(m={self.m}, members=[{inner}])"
        return f"Family(m={self.m}, size={len(self)})"

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def members(self) -> list[int]:
        """Subset masks of all members, in increasing mask order."""
        if self._members is None:
            out = []
            bits = self.bits
            while bits:
                low = bits & -bits
                out.append(low.bit_length() - 1)
                bits ^= low
            self._members = out
        return self._members

    def member_array(self) -> np.ndarray:
        """Members as an int64 array (masks fit: m <= MAX_N < 63 bits)."""
        if self._arr is None:
            mem = self.members()
            self._arr = np.fromiter(mem, dtype=np.int64, count=len(mem))
        return self._arr


def mask_from_elements(elements: Iterable[int], m: int | None = None) -> int:
    """Encode a collection of elements of [m] as a subset mask."""
    mask = 0
    for e in elements:
        if e < 1 or (m is not None and e > m):
            raise ValueError(f"element {e} outside ground set [{m}]")
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: int) -> tuple[int, ...]:
    """Decode a subset mask into its sorted elements."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def make_family(m: int, members: Iterable[int]) -> Family:
    """Family over [m] containing exactly the given subset masks.

    Duplicates collapse.  Rejects m > MAX_N and masks with bits at or
    above position m.
    """
    if m < 0:
        raise ValueError("ground size must be nonnegative")
    if m > MAX_N:
        raise ValueError(f"ground size {m} exceeds MAX_N={MAX_N}")
    bits = 0
    for mask in members:
        if mask < 0 or mask >> m:
            raise ValueError(f"mask {mask:#x} uses elements beyond [{m}]")
        bits |= 1 << mask
    return Family(m, bits)


def empty_family(m: int) -> Family:
    return make_family(m, ())


def full_family(m: int) -> Family:
    if m > MAX_N:
        raise ValueError(f"ground size {m} exceeds MAX_N={MAX_N}")
    return Family(m, (1 << (1 << m)) - 1)


def _check_same_ground(fam: Family, other: Family) -> None:
    if fam.m != other.m:
        raise ValueError(f"ground size mismatch: {fam.m} vs {other.m}")


@lru_cache(maxsize=None)
def _coord_low_mask(m: int, j: int) -> int:
    # Indicator positions whose subset mask has bit j clear: blocks of
    # 2^j ones alternating with 2^j zeros, over all 2^m positions.
    unit = (1 << (1 << j)) - 1
    width = 1 << (j + 1)
    total = 1 << m
    while width < total:
        unit |= unit << width
        width <<= 1
    return unit


@lru_cache(maxsize=None)
def _layer_masks(m: int) -> tuple[int, ...]:
    # masks[k] = indicator of all subsets of [m] with exactly k elements.
    masks = [1] + [0] * m
    for j in range(m):
        width = 1 << j
        for k in range(j + 1, 0, -1):
            masks[k] |= masks[k - 1] << width
    return tuple(masks)


def layer_indicator(m: int, k: int) -> int:
    """Indicator of the k-th layer of the m-cube (0 outside 0..m)."""
    if k < 0 or k > m:
        return 0
    return _layer_masks(m)[k]


def sections(fam: Family) -> tuple[Family, Family]:
    """Split along the top element m: (members avoiding m, members
    containing m with m removed), both over ground size m-1."""
    if fam.m < 2:
        raise ValueError("sections need ground size >= 2")
    half = 1 << (fam.m - 1)
    low = fam.bits & ((1 << half) - 1)
    high = fam.bits >> half
    return Family(fam.m - 1, low), Family(fam.m - 1, high)


def union(fam: Family, other: Family) -> Family:
    _check_same_ground(fam, other)
    return Family(fam.m, fam.bits | other.bits)


def intersection(fam: Family, other: Family) -> Family:
    _check_same_ground(fam, other)
    return Family(fam.m, fam.bits & other.bits)


def complement_family(fam: Family) -> Family:
    """Family of set complements {[m] \\ A : A in F}; an involution.

    In the indicator this is a pure bit reversal: member mask A maps to
    full ^ A = 2^m - 1 - A.
    """
    total = 1 << fam.m
    if total >= 8:
        nbytes = total // 8
        data = fam.bits.to_bytes(nbytes, "little")
        bits = int.from_bytes(data[::-1].translate(_BYTE_REVERSE), "little")
    else:
        bits = 0
        for i in range(total):
            if fam.bits >> i & 1:
                bits |= 1 << (total - 1 - i)
    return Family(fam.m, bits)


def is_upper_closed(fam: Family) -> bool:
    """True iff every superset of a member is a member.

    Closure under single-element additions suffices, so this is m
    shifted-subset checks on the indicator.
    """
    bits = fam.bits
    for j in range(fam.m):
        with_j = (bits & _coord_low_mask(fam.m, j)) << (1 << j)
        if with_j & bits != with_j:
            return False
    return True


def is_downward_closed(fam: Family) -> bool:
    """True iff every subset of a member is a member."""
    bits = fam.bits
    for j in range(fam.m):
        without_j = (bits >> (1 << j)) & _coord_low_mask(fam.m, j)
        if without_j & bits != without_j:
            return False
    return True


def expand(fam: Family, t: int) -> Family:
    """Hamming closure: all subsets within symmetric difference <= t of a
    member.  t = 0 is the identity; t > m clamps to the full expansion.

    The cube metric is a path metric, so the t-ball equals t rounds of
    closed 1-neighborhoods; each round is m block swaps on the indicator.
    """
    if t < 0:
        raise ValueError("expansion radius must be nonnegative")
    bits = fam.bits
    if bits == 0:
        return fam
    m = fam.m
    for _ in range(min(t, m)):
        grown = bits
        for j in range(m):
            low_mask = _coord_low_mask(m, j)
            step = 1 << j
            grown |= (bits & low_mask) << step
            grown |= (bits >> step) & low_mask
        if grown == bits:
            break
        bits = grown
    return Family(m, bits)


def cardinality_filter(fam: Family, lo: int, hi: int) -> Family:
    """Members whose cardinality lies in [lo, hi]; empty range gives the
    empty family, [0, m] is the identity."""
    masks = _layer_masks(fam.m)
    keep = 0
    for k in range(max(lo, 0), min(hi, fam.m) + 1):
        keep |= masks[k]
    return Family(fam.m, fam.bits & keep)


def intersection_spectrum(fam: Family, other: Family) -> list[int]:
    """Counts of member pairs by intersection size: entry l is the number
    of (A, B) in F x G with |A cap B| = l.  Entries sum to |F|*|G|.

    Straight pair loop over the smaller family, popcounts vectorized over
    the larger one.
    """
    _check_same_ground(fam, other)
    m = fam.m
    if fam.is_empty or other.is_empty:
        return [0] * (m + 1)
    small, big = (fam, other) if len(fam) <= len(other) else (other, fam)
    big_arr = big.member_array()
    total = np.zeros(m + 1, dtype=np.int64)
    for a in small.members():
        counts = np.bitwise_count(big_arr & np.int64(a))
        total += np.bincount(counts.astype(np.intp), minlength=m + 1)
    return [int(v) for v in total]


def forbids(fam: Family, other: Family, window: Window) -> bool:
    """True iff no cross pair has |A cap B| inside the window.

    Vacuously true when either family is empty.  Same pair loop as the
    spectrum, with an early exit on the first witness.
    """
    _check_same_ground(fam, other)
    if fam.is_empty or other.is_empty:
        return True
    if window.lo > fam.m:
        return True
    lo = np.int64(window.lo)
    hi = np.int64(min(window.hi, fam.m))
    small, big = (fam, other) if len(fam) <= len(other) else (other, fam)
    big_arr = big.member_array()
    for a in small.members():
        counts = np.bitwise_count(big_arr & np.int64(a))
        if bool(((counts >= lo) & (counts <= hi)).any()):
            return False
    return True


def format_family(fam: Family) -> str:
    """Fixture text format: `m=<int>` then one member per line as sorted
    elements `e1,e2,...`, or `-` for the empty set.  Members are emitted
    in increasing mask order, so format/parse round-trip exactly."""
    lines = [f"m={fam.m}"]
    for mask in fam.members():
        elems = elements_from_mask(mask)
        lines.append(",".join(map(str, elems)) if elems else "-")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    """Inverse of format_family; blank lines are ignored."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("m="):
        raise ValueError("family text must start with 'm=<int>'")
    m = int(lines[0][2:])
    members = []
    for ln in lines[1:]:
        if ln == "-":
            members.append(0)
        else:
            members.append(mask_from_elements((int(tok) for tok in ln.split(",")), m))
    return make_family(m, members)


def subcube_windows(m: int) -> Sequence[Window]:
    """All windows [a, b] with 0 <= a <= b <= m, handy for sweeps."""
    return [Window(a, b) for a in range(m + 1) for b in range(a, m + 1)]
