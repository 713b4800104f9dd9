"""Integer partitions and Young-diagram surgery.

A partition is a tuple of weakly decreasing positive integers; the empty
tuple is the unique partition of 0.  Lists of partitions are presented in
reverse-lexicographic order throughout: compare tuples padded with zeros,
largest first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from typing import Iterator, NamedTuple, Optional

from .exact import falling_factorial

Partition = tuple

__all__ = [
    "Partition",
    "is_partition",
    "check_partition",
    "partitions_of",
    "partition_count",
    "revlex_sorted",
    "conjugate",
    "hook_lengths",
    "dimension",
    "contains",
    "is_horizontal_strip",
    "horizontal_strips",
    "bar_partition",
    "prepend_partition",
    "strip_first_column",
    "inner_corners",
    "remove_corner",
    "add_corners",
    "below_first_row",
    "DimRatioReport",
    "dim_ratio_check",
]


def is_partition(parts) -> bool:
    try:
        tup = tuple(parts)
    except TypeError:
        return False
    return all(isinstance(p, int) and p > 0 for p in tup) and all(
        tup[i] >= tup[i + 1] for i in range(len(tup) - 1)
    )


def check_partition(parts) -> Partition:
    tup = tuple(parts)
    if not is_partition(tup):
        raise ValueError(f"not a partition: {parts!r}")
    return tup


def partitions_of(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n, reverse-lexicographically from (n) down to (1^n)."""
    if n < 0:
        raise ValueError("partitions of a negative integer requested")
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


@cache
def partition_count(n: int) -> int:
    return sum(1 for _ in partitions_of(n))


def revlex_sorted(parts_list, length: Optional[int] = None):
    items = [tuple(p) for p in parts_list]
    pad = length if length is not None else max(
        (len(p) for p in items), default=0
    )
    return sorted(items, key=lambda p: p + (0,) * (pad - len(p)), reverse=True)


def conjugate(lam: Partition) -> Partition:
    lam = check_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def hook_lengths(lam: Partition):
    """Hook length of every cell, row by row."""
    lam = check_partition(lam)
    conj = conjugate(lam)
    return [
        [lam[i] - j + conj[j] - i - 1 for j in range(lam[i])]
        for i in range(len(lam))
    ]


@cache
def dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam (hook length formula)."""
    lam = check_partition(lam)
    n = sum(lam)
    denom = 1
    for row in hook_lengths(lam):
        for h in row:
            denom *= h
    dim, rem = divmod(factorial(n), denom)
    if rem:
        raise ArithmeticError(f"hook product does not divide {n}! for {lam}")
    return dim


def contains(outer: Partition, inner: Partition) -> bool:
    outer, inner = check_partition(outer), check_partition(inner)
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def is_horizontal_strip(outer: Partition, inner: Partition) -> bool:
    """True when outer/inner is a skew shape with at most one cell per column."""
    outer, inner = check_partition(outer), check_partition(inner)
    if not contains(outer, inner):
        return False
    padded = inner + (0,) * (len(outer) - len(inner))
    return all(
        outer[i + 1] <= padded[i] for i in range(len(outer) - 1)
    )


def horizontal_strips(inner: Partition, total: int) -> Iterator[Partition]:
    """All partitions of `total` containing `inner` with a horizontal-strip
    difference, in reverse-lexicographic order."""
    inner = check_partition(inner)
    extra = total - sum(inner)
    if extra < 0:
        return
    rows = len(inner) + 1
    bounds = []
    padded = inner + (0,)
    for i in range(rows):
        low = padded[i]
        high = inner[i - 1] if i > 0 else None
        bounds.append((low, high))

    def rec(i, remaining, prev):
        if i == rows:
            if remaining == 0:
                yield ()
            return
        low, high = bounds[i]
        top = remaining + low if high is None else min(high, remaining + low)
        for val in range(top, low - 1, -1):
            if val > prev:
                continue
            for rest in rec(i + 1, remaining - (val - low), val):
                yield (val,) + rest

    for shape in rec(0, extra, extra + sum(inner)):
        yield tuple(p for p in shape if p > 0)


def bar_partition(lam: Partition, m: int) -> Partition:
    """Extend the first row of lam until the total is m."""
    lam = check_partition(lam)
    n = sum(lam)
    first = lam[0] if lam else 0
    if m - n < first:
        raise ValueError(
            f"need m - |lam| >= first part: m={m}, lam={lam}"
        )
    if not lam:
        return (m,) if m > 0 else ()
    return (first + m - n,) + lam[1:]


def prepend_partition(lam: Partition, m: int) -> Partition:
    """Put a new first row of size m - |lam| on top of lam."""
    lam = check_partition(lam)
    n = sum(lam)
    first = lam[0] if lam else 0
    if m - n < first:
        raise ValueError(
            f"need m - |lam| >= first part: m={m}, lam={lam}"
        )
    if m == n:
        return lam
    return (m - n,) + lam


def strip_first_column(lam: Partition) -> Partition:
    lam = check_partition(lam)
    return tuple(p - 1 for p in lam if p > 1)


def inner_corners(lam: Partition):
    """Row indices whose last cell can be removed leaving a partition."""
    lam = check_partition(lam)
    out = []
    for i in range(len(lam)):
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        if lam[i] > nxt:
            out.append(i)
    return out


def remove_corner(lam: Partition, row: int) -> Partition:
    lam = check_partition(lam)
    if row not in inner_corners(lam):
        raise ValueError(f"row {row} is not a removable corner of {lam}")
    out = list(lam)
    out[row] -= 1
    return tuple(p for p in out if p > 0)


def add_corners(lam: Partition):
    """All partitions obtained from lam by adding a single cell."""
    lam = check_partition(lam)
    out = []
    for i in range(len(lam) + 1):
        prev = lam[i - 1] if i > 0 else None
        cur = lam[i] if i < len(lam) else 0
        if prev is None or cur < prev:
            grown = list(lam) + [0] * (i + 1 - len(lam))
            grown[i] += 1
            out.append(tuple(p for p in grown if p > 0))
    return out


def below_first_row(lam: Partition) -> int:
    lam = check_partition(lam)
    return sum(lam) - (lam[0] if lam else 0)


class DimRatioReport(NamedTuple):
    lhs: Fraction
    paper_rhs: Optional[Fraction]
    proof_rhs: Fraction


def dim_ratio_check(
    theta: Partition, theta_plus: Partition, m: int
) -> DimRatioReport:
    """Ratio of dimensions after growing a small shape under a long first row.

    lhs is dim(m-k-1, theta_plus) / dim(m-k, theta) where k = |theta| and
    theta_plus adds one corner to theta.  Two candidate lower bounds are
    reported: the published one, (m/k)(1 - (2k+1)/m), which is wrong in
    general, and the working one, (m-2k-1)/(k+1), which the test suite
    asserts.  paper_rhs is None at k = 0 where its formula divides by zero.
    """
    theta = check_partition(theta)
    theta_plus = check_partition(theta_plus)
    k = sum(theta)
    if theta_plus not in add_corners(theta):
        raise ValueError(
            f"{theta_plus} does not add a single corner to {theta}"
        )
    top = (m - k - 1,) + theta_plus
    bottom = (m - k,) + theta
    if not is_partition(top) or not is_partition(bottom):
        raise ValueError(
            f"m={m} is too small to stack a first row over {theta_plus}"
        )
    lhs = Fraction(dimension(top), dimension(bottom))
    paper_rhs = (
        None
        if k == 0
        else Fraction(m, k) * (1 - Fraction(2 * k + 1, m))
    )
    proof_rhs = Fraction(m - 2 * k - 1, k + 1)
    return DimRatioReport(lhs, paper_rhs, proof_rhs)
