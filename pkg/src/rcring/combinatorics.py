"""Desk-scale enumerators behind the total-distance estimates.

Everything here counts by brute enumeration on purpose: the point is to
check closed-form bounds against objects that were actually listed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, ParamsError

MAX_M = 24
MAX_BITS = 24


def ceil_log2(m: int) -> int:
    """ceil(log2 m) for m >= 1, exact on integers."""
    return (m - 1).bit_length()


def ceil_log2_squared(z: int) -> int:
    """ceil((log2 z)^2); exact when z is a power of two."""
    if z & (z - 1) == 0:
        return (z.bit_length() - 1) ** 2
    return math.ceil(math.log2(z) ** 2)


def iter_bounded_compositions(m: int, k: int, g: int) -> Iterator[tuple[int, ...]]:
    """k-compositions of m with every part in 1..g, in lexicographic order."""
    if k <= 0:
        if m == 0 and k == 0:
            yield ()
        return
    parts: list[int] = []

    def walk(left: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            if 1 <= left <= g:
                yield tuple(parts) + (left,)
            return
        # the remaining slots - 1 parts need at least slots - 1 and at most g * (slots - 1)
        lo = max(1, left - g * (slots - 1))
        hi = min(g, left - (slots - 1))
        for part in range(lo, hi + 1):
            parts.append(part)
            yield from walk(left - part, slots - 1)
            parts.pop()

    yield from walk(m, k)


def count_bounded_compositions(m: int, k: int, g: int) -> int:
    if m > MAX_M:
        raise BudgetExceeded("composition enumeration (m)", m, MAX_M)
    if m < 0 or g < 1:
        raise ParamsError("need m >= 0 and g >= 1")
    return sum(1 for _ in iter_bounded_compositions(m, k, g))


def bk_count(m: int, k: int) -> int:
    """Schedules 0 = x_0 < ... < x_k <= x_{k+1} = m with every gap at most ceil(log2 m).

    The last gap may be zero (x_k = m) or positive, which is why both k- and
    (k+1)-compositions are counted.
    """
    g = ceil_log2(m)
    return count_bounded_compositions(m, k, g) + count_bounded_compositions(m, k + 1, g)


@dataclass(frozen=True)
class BoundCheck:
    passed: bool
    value: Fraction | int | float
    lo: Fraction | float
    hi: Fraction | float


def avr_bound_check(m: int, z: int) -> BoundCheck:
    """(1 - (2/(z+1))^g)(z+1)^m <= sum_k b_k z^k <= (z+1)^m, exact arithmetic."""
    if m < 9:
        raise ParamsError("the weighted schedule bound is stated for m >= 9")
    if z < 2:
        raise ParamsError("need z >= 2")
    g = ceil_log2(m)
    k0 = -(-m // g)
    total = sum(bk_count(m, k) * z**k for k in range(k0, m + 1))
    hi = Fraction((z + 1) ** m)
    lo = (1 - Fraction(2, z + 1) ** g) * hi
    return BoundCheck(lo <= total <= hi, total, lo, hi)


def vz_count(d: int, z: int) -> int:
    """Size of V(z): bit vectors over coordinates d+1..dz whose occupied ring
    positions leave no gap wider than ceil(log2(z)^2) on the walk 0 -> z."""
    nbits = d * (z - 1)
    if nbits > MAX_BITS:
        raise BudgetExceeded("V(z) enumeration (bits)", nbits, MAX_BITS)
    if z < 2 or d < 1:
        raise ParamsError("need d >= 1 and z >= 2")
    limit = ceil_log2_squared(z)
    c = np.arange(1 << nbits, dtype=np.int64)
    # occupied[:, p] for ring positions p = 1..z-1 (coordinates d*p+1 .. d*p+d)
    occupied = np.zeros((len(c), z + 1), dtype=bool)
    occupied[:, 0] = True
    occupied[:, z] = True
    block = (1 << d) - 1
    for p in range(1, z):
        occupied[:, p] = ((c >> (d * (p - 1))) & block) != 0
    # widest gap between consecutive occupied positions
    pos = np.where(occupied, np.arange(z + 1), -1)
    last = np.maximum.accumulate(pos, axis=1)
    gap = np.where(occupied[:, 1:], np.arange(1, z + 1) - last[:, :-1], 0)
    return int((gap.max(axis=1) <= limit).sum())


def vx_lower_bound(d: int, z: int) -> float:
    return 2 ** (d * (z - 1)) * (1 - 2 * z ** (1 - d * math.log2(z)))


def vx_bound_check(d: int, z: int) -> BoundCheck:
    count = vz_count(d, z)
    lo = vx_lower_bound(d, z)
    hi = 2 ** (d * (z - 1))
    return BoundCheck(lo <= count <= hi, count, lo, hi)
