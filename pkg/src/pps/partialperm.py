"""Partial permutations and their pair types.

A partial permutation is a tuple f of n distinct symbols from 1..m, read as
the injection x -> f[x-1].  The ambient symbol count m is passed alongside
wherever it matters.  A pair (f, g) has a type made of two partitions: close
up the two-row multigraph with edges x -> f(x) and x -> g(x); components
that are cycles contribute their half-length to the first partition, and
components that are paths contribute their count of domain-side nodes to
the second.

Equivalently, and how it is computed here: translate symbols so that f
becomes the identity, then read g as a partial injection u on 1..m with
domain 1..n; cycles of u inside 1..n give the first partition and maximal
chains give the second, each chain counted by its domain-side length.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import factorial
from typing import Iterator, NamedTuple

from .exact import falling_factorial
from .partitions import partitions_of, revlex_sorted

__all__ = [
    "CyclePathType",
    "identity_partial_permutation",
    "check_partial_permutation",
    "act",
    "cycle_path_type",
    "type_of_translated",
    "enumerate_all",
    "johnson_index",
    "cycle_path_types",
    "class_representative",
    "sphere",
    "agrees",
    "assignment_type",
    "weight_k_subassignments",
]


class CyclePathType(NamedTuple):
    cycles: tuple
    paths: tuple


def identity_partial_permutation(n: int) -> tuple:
    return tuple(range(1, n + 1))


def check_partial_permutation(f, m: int) -> tuple:
    f = tuple(f)
    if len(set(f)) != len(f):
        raise ValueError(f"values are not distinct: {f!r}")
    if any(not isinstance(x, int) or x < 1 or x > m for x in f):
        raise ValueError(f"values must lie in 1..{m}: {f!r}")
    return f


def act(pi, sigma, f) -> tuple:
    """Image of f under (pi, sigma): x -> sigma^{-1}(f(pi^{-1}(x))).

    pi permutes 1..n and sigma permutes 1..m, both given as tuples of
    images.  Composing two actions composes the pi parts one way and the
    sigma parts the other; orbit computations never notice.
    """
    n = len(f)
    pinv = [0] * n
    for i, y in enumerate(pi):
        pinv[y - 1] = i + 1
    sinv = [0] * len(sigma)
    for i, y in enumerate(sigma):
        sinv[y - 1] = i + 1
    return tuple(sinv[f[pinv[x] - 1] - 1] for x in range(n))


def cycle_path_type(f, g, m: int) -> CyclePathType:
    """Type of the pair (f, g) of equal-length injections into 1..m."""
    n = len(f)
    if len(g) != n:
        raise ValueError("paired functions must have equal length")
    # translate so that f becomes the identity: u = relabel(g)
    inv = [0] * (m + 1)
    for x in range(1, n + 1):
        inv[f[x - 1]] = x
    nxt = m + 1
    for y in range(1, m + 1):
        if inv[y] == 0:
            inv[y] = nxt
            nxt += 1
    return type_of_translated([inv[y] for y in g], n)


def type_of_translated(u, n: int) -> CyclePathType:
    """Type of a partial injection u on domain 1..n given as a list of
    images, where any image beyond n means the chain leaves the domain."""
    seen = [False] * (n + 1)
    cycles = []
    paths = []
    # chains start at domain points nothing maps to
    hit = [False] * (n + 1)
    for val in u:
        if val <= n:
            hit[val] = True
    for start in range(1, n + 1):
        if not hit[start] and not seen[start]:
            length = 0
            x = start
            while x <= n:
                seen[x] = True
                length += 1
                x = u[x - 1]
            paths.append(length)
    for start in range(1, n + 1):
        if not seen[start]:
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                length += 1
                x = u[x - 1]
            cycles.append(length)
    return CyclePathType(
        tuple(sorted(cycles, reverse=True)),
        tuple(sorted(paths, reverse=True)),
    )


def enumerate_all(n: int, m: int):
    """All partial permutations, ordered by image subset then by the
    arrangement of the sorted subset, both lexicographically."""
    out = []
    for subset in combinations(range(1, m + 1), n):
        out.extend(permutations(subset))
    return out


def johnson_index(f, m: int) -> int:
    """Position of f in enumerate_all(len(f), m), computed directly."""
    n = len(f)
    f = check_partial_permutation(f, m)
    subset = sorted(f)
    # rank of the subset among n-subsets of 1..m, lexicographically
    subset_rank = 0
    prev = 0
    for i, s in enumerate(subset):
        for skipped in range(prev + 1, s):
            subset_rank += _comb(m - skipped, n - i - 1)
        prev = s
    # rank of the arrangement among permutations of the sorted subset
    perm_rank = 0
    remaining = list(subset)
    for i in range(n):
        pos = remaining.index(f[i])
        perm_rank += pos * factorial(n - i - 1)
        remaining.pop(pos)
    return subset_rank * factorial(n) + perm_rank


def _comb(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return falling_factorial(a, b) // factorial(b)


def cycle_path_types(n: int, m: int):
    """All pair types for parameters (n, m), reverse-lexicographically by
    the cycle partition and then the path partition."""
    if m < n:
        raise ValueError("need m >= n")
    out = []
    for cycle_total in range(n, -1, -1):
        for cycles in partitions_of(cycle_total):
            for paths in partitions_of(n - cycle_total):
                if len(paths) <= m - n:
                    out.append(CyclePathType(cycles, paths))

    def sort_key(t):
        ck = t.cycles + (0,) * (n - len(t.cycles))
        pk = t.paths + (0,) * (n - len(t.paths))
        return tuple(-x for x in ck) + tuple(-x for x in pk)

    out.sort(key=sort_key)
    return out


def class_representative(mu: CyclePathType, n: int, m: int) -> tuple:
    """A partial permutation g with cycle_path_type(identity, g) = mu."""
    cycles, paths = mu
    if sum(cycles) + sum(paths) != n:
        raise ValueError(f"type {mu} does not have total size {n}")
    if len(paths) > m - n:
        raise ValueError(f"type {mu} needs more than {m - n} spare symbols")
    g = [0] * n
    pos = 1
    for c in cycles:
        block = list(range(pos, pos + c))
        for i, x in enumerate(block):
            g[x - 1] = block[(i + 1) % c]
        pos += c
    spare = n + 1
    for p in paths:
        block = list(range(pos, pos + p))
        for i, x in enumerate(block[:-1]):
            g[x - 1] = block[i + 1]
        g[block[-1] - 1] = spare
        spare += 1
        pos += p
    return tuple(g)


def sphere(mu: CyclePathType, n: int, m: int):
    """All g at type mu from the identity."""
    ident = identity_partial_permutation(n)
    return [
        g
        for g in enumerate_all(n, m)
        if cycle_path_type(ident, g, m) == tuple(mu)
    ]


# ------------------------------------------------------------- assignments
#
# An assignment is a partial injection given as a collection of (position,
# value) pairs with distinct positions and distinct values.


def check_assignment(alpha) -> tuple:
    pairs = tuple(sorted(tuple(p) for p in alpha))
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise ValueError(f"assignment is not a partial injection: {alpha!r}")
    return pairs


def agrees(alpha, f) -> bool:
    """Does f take the value y at every (x, y) of the assignment?"""
    return all(f[x - 1] == y for x, y in check_assignment(alpha))


def assignment_type(alpha, n: int) -> CyclePathType:
    """Type of a weight-k assignment with values inside 1..n, taken in the
    scheme on k-of-n partial permutations.

    With X the sorted value list and a_X : i -> X[i], the type is that of
    the pair (alpha^{-1} o a_X, a_X)."""
    pairs = check_assignment(alpha)
    if not pairs:
        raise ValueError("assignment must have weight >= 1")
    if any(y < 1 or y > n for _, y in pairs):
        raise ValueError(f"assignment values must lie in 1..{n}: {alpha!r}")
    if any(x < 1 or x > n for x, _ in pairs):
        raise ValueError(f"assignment positions must lie in 1..{n}: {alpha!r}")
    values = sorted(y for _, y in pairs)
    back = {y: x for x, y in pairs}
    f = tuple(back[y] for y in values)
    g = tuple(values)
    return cycle_path_type(f, g, n)


def weight_k_subassignments(f, k: int, image_bound: int) -> Iterator[tuple]:
    """Weight-k assignments that agree with f and take values <= image_bound."""
    positions = [x for x in range(1, len(f) + 1) if f[x - 1] <= image_bound]
    for chosen in combinations(positions, k):
        yield tuple((x, f[x - 1]) for x in chosen)
