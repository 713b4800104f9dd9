"""Irreducible characters of the symmetric group, exactly.

Values are computed by the border-strip recursion: peel one part of the
cycle type at a time by removing border strips of that length from the
shape, with sign (-1)^height.  Everything is memoized, so building a full
table repeatedly is cheap.
"""

from __future__ import annotations

from functools import cache
from math import factorial

from .partitions import (
    Partition,
    check_partition,
    partitions_of,
    revlex_sorted,
)

__all__ = [
    "character",
    "character_table",
    "class_size",
    "cycle_type_of",
    "dimension_from_character",
]


def _border_strip_removals(lam: Partition, length: int):
    """All shapes obtained by removing a border strip of the given length,
    paired with the sign (-1)^(rows spanned - 1).

    A strip spanning rows top..bottom leaves lam[r+1]-1 cells in each row
    top <= r < bottom and c = lam[top] - length + (bottom - top) cells in row
    bottom; the removal is valid exactly when 0 <= c <= lam[bottom] - 1 and c
    does not undercut the row below."""
    rows = len(lam)
    out = []
    for top in range(rows):
        for bottom in range(top, rows):
            c = lam[top] - length + (bottom - top)
            if c < 0 or c > lam[bottom] - 1:
                continue
            if bottom + 1 < rows and c < lam[bottom + 1]:
                continue
            new = list(lam)
            for r in range(top, bottom):
                new[r] = lam[r + 1] - 1
            new[bottom] = c
            shape = tuple(p for p in new if p > 0)
            out.append((shape, -1 if (bottom - top) % 2 else 1))
    return out


@cache
def character(lam: Partition, cycle_type: Partition) -> int:
    """chi_lam evaluated on the class of the given cycle type."""
    lam = check_partition(lam)
    cycle_type = check_partition(cycle_type)
    if sum(lam) != sum(cycle_type):
        raise ValueError(
            f"size mismatch: |{lam}| != |{cycle_type}|"
        )
    if not lam:
        return 1
    length = cycle_type[0]
    rest = cycle_type[1:]
    total = 0
    for shape, sign in _border_strip_removals(lam, length):
        total += sign * character(shape, rest)
    return total


def character_table(n: int):
    """dict (shape, cycle_type) -> value over all pairs, both in
    reverse-lexicographic order."""
    shapes = revlex_sorted(partitions_of(n), n)
    return {
        (lam, mu): character(lam, mu) for lam in shapes for mu in shapes
    }


def class_size(cycle_type: Partition) -> int:
    """Number of permutations with the given cycle type."""
    cycle_type = check_partition(cycle_type)
    n = sum(cycle_type)
    denom = 1
    mult = {}
    for part in cycle_type:
        mult[part] = mult.get(part, 0) + 1
    for part, count in mult.items():
        denom *= part**count * factorial(count)
    return factorial(n) // denom


def cycle_type_of(perm) -> Partition:
    """Cycle type of a permutation given as a tuple of 1-based images."""
    n = len(perm)
    seen = [False] * (n + 1)
    parts = []
    for start in range(1, n + 1):
        if not seen[start]:
            ln = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = perm[x - 1]
                ln += 1
            parts.append(ln)
    return tuple(sorted(parts, reverse=True))


def dimension_from_character(lam: Partition) -> int:
    lam = check_partition(lam)
    return character(lam, (1,) * sum(lam))
