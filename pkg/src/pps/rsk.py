"""Row-insertion correspondence for partial permutations.

A partial permutation f on n points into 1..m is encoded as the two-line
array with top row 1..n followed by m - n copies of n + 1, and bottom row
f(1)..f(n) followed by the complement of the image in ascending order.
Row-inserting the bottom row gives a standard tableau p with m cells; the
recording tableau q holds the top-row labels, so its entries 1..n form a
standard tableau on a sub-shape and its n + 1 entries mark a horizontal
strip.  The map is a bijection, inverted here by reverse bumping.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import NamedTuple

from .exact import falling_factorial
from .partialperm import check_partial_permutation
from .partitions import dimension, is_horizontal_strip
from .scheme import irrep_labels

__all__ = [
    "TableauPair",
    "rsk_forward",
    "rsk_backward",
    "shape_of_tableau",
    "fibers",
    "count_identity",
    "CountIdentity",
]


class TableauPair(NamedTuple):
    """p: standard tableau on 1..m.  q: same shape, recording the top-row
    label of each insertion; entries up to n sit on the sub-shape, entries
    n + 1 on the strip.  n pins down the domain size (the markers alone
    cannot when only one cell is marked)."""

    p: tuple
    q: tuple
    n: int

    def outer_shape(self) -> tuple:
        return shape_of_tableau(self.p)

    def inner_shape(self) -> tuple:
        rows = []
        for row in self.q:
            count = sum(1 for x in row if x <= self.n)
            if count:
                rows.append(count)
        return tuple(rows)


def shape_of_tableau(rows) -> tuple:
    return tuple(len(row) for row in rows)


def rsk_forward(f, m: int) -> TableauPair:
    f = check_partial_permutation(f, m)
    n = len(f)
    complement = sorted(set(range(1, m + 1)) - set(f))
    letters = list(f) + complement
    labels = list(range(1, n + 1)) + [n + 1] * (m - n)
    p: list = []
    q: list = []
    for letter, label in zip(letters, labels):
        x = letter
        row_idx = 0
        while True:
            if row_idx == len(p):
                p.append([x])
                q.append([label])
                break
            row = p[row_idx]
            pos = bisect_right(row, x)
            if pos == len(row):
                row.append(x)
                q[row_idx].append(label)
                break
            x, row[pos] = row[pos], x
            row_idx += 1
    return TableauPair(
        tuple(tuple(r) for r in p), tuple(tuple(r) for r in q), n
    )


def _check_pair(t: TableauPair):
    p, q, n = t.p, t.q, t.n
    shape = shape_of_tableau(p)
    if shape != shape_of_tableau(q):
        raise ValueError("tableau pair invalid: p and q have different shapes")
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)) or any(
        length <= 0 for length in shape
    ):
        raise ValueError("tableau pair invalid: shape rows must not grow")
    m = sum(shape)
    seen = sorted(x for row in p for x in row)
    if seen != list(range(1, m + 1)):
        raise ValueError("tableau pair invalid: p entries must be 1..m once each")
    for row in p:
        if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
            raise ValueError("tableau pair invalid: p rows must strictly increase")
    for upper, lower in zip(p, p[1:]):
        if any(upper[c] >= lower[c] for c in range(len(lower))):
            raise ValueError(
                "tableau pair invalid: p columns must strictly increase"
            )
    if not 0 <= n <= m:
        raise ValueError("tableau pair invalid: n must lie between 0 and m")
    counts: dict = {}
    for row in q:
        for x in row:
            counts[x] = counts.get(x, 0) + 1
    expected = {x: 1 for x in range(1, n + 1)}
    if m > n:
        expected[n + 1] = m - n
    if counts != expected:
        raise ValueError(
            "tableau pair invalid: q entries must be 1..n once each "
            "plus n + 1 on the remaining cells"
        )
    inner = []
    for row in q:
        small = sum(1 for x in row if x <= n)
        if any(x <= n for x in row[small:]):
            raise ValueError(
                "tableau pair invalid: small q entries must form row prefixes"
            )
        if any(row[i] >= row[i + 1] for i in range(small - 1)):
            raise ValueError(
                "tableau pair invalid: small q entries must increase along rows"
            )
        inner.append(small)
    if any(inner[i] < inner[i + 1] for i in range(len(inner) - 1)):
        raise ValueError(
            "tableau pair invalid: small q cells must form a partition shape"
        )
    inner_shape = tuple(x for x in inner if x)
    for upper, lower in zip(q, q[1:]):
        for c in range(min(len(upper), len(lower))):
            if lower[c] <= n and upper[c] >= lower[c]:
                raise ValueError(
                    "tableau pair invalid: small q entries must increase "
                    "down columns"
                )
    if not is_horizontal_strip(shape, inner_shape):
        raise ValueError(
            "tableau pair invalid: marked cells must form a horizontal strip"
        )
    return shape, m


def rsk_backward(t: TableauPair) -> tuple:
    _check_pair(t)
    p = [list(row) for row in t.p]
    q = [list(row) for row in t.q]
    n = t.n
    m = sum(len(row) for row in p)

    marked = [
        (r, c)
        for r, row in enumerate(q)
        for c, x in enumerate(row)
        if x == n + 1
    ]
    marked.sort(key=lambda cell: cell[1], reverse=True)
    single = {}
    for r, row in enumerate(q):
        for c, x in enumerate(row):
            if x <= n:
                single[x] = (r, c)
    order = marked + [single[label] for label in range(n, 0, -1)]

    letters = []
    for r, c in order:
        if c != len(p[r]) - 1:
            raise ValueError(
                "tableau pair invalid: removal order never reaches a row end"
            )
        x = p[r].pop()
        if not p[r]:
            p.pop(r)
        for row in reversed(p[:r]):
            pos = bisect_left(row, x) - 1
            if pos < 0:
                raise ValueError(
                    "tableau pair invalid: reverse bumping fell off a row"
                )
            x, row[pos] = row[pos], x
        letters.append(x)

    strip_letters = letters[: m - n][::-1]
    f = tuple(letters[m - n :][::-1])
    if strip_letters != sorted(set(range(1, m + 1)) - set(f)):
        raise ValueError(
            "tableau pair invalid: marked cells do not reverse to an "
            "ascending complement block"
        )
    return f


class CountIdentity(NamedTuple):
    lhs: int
    rhs: int


def count_identity(n: int, m: int) -> CountIdentity:
    """Number of partial permutations two ways: the falling factorial, and
    the sum of products of tableau counts over horizontal-strip pairs."""
    lhs = falling_factorial(m, n)
    rhs = sum(
        dimension(label.mu) * dimension(label.lam)
        for label in irrep_labels(n, m)
    )
    if lhs != rhs:
        raise ValueError(
            f"count identity fails at ({n}, {m}): {lhs} != {rhs}"
        )
    return CountIdentity(lhs, rhs)


def fibers(n: int, m: int) -> dict:
    """How many partial permutations map to each shape pair."""
    from .partialperm import enumerate_all

    out: dict = {}
    for f in enumerate_all(n, m):
        pair = rsk_forward(f, m)
        key = (pair.inner_shape(), pair.outer_shape())
        out[key] = out.get(key, 0) + 1
    return out
