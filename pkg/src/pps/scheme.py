"""Parameters of the association scheme on partial permutations: classes,
valencies, multiplicities, and the three formula routes to dual eigenvalue
rows (the first nontrivial row, rows for minimal irreps, rows for maximal
irreps), plus Krein parameters computed from completed row tables.

Irreducible blocks are labeled mu x lam with mu a partition of n, lam a
partition of m, and lam/mu a horizontal strip.  Classes are cycle/path
types.  The two index sets are in bijection; see class_to_irrep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import permutations
from math import comb, factorial
from typing import NamedTuple, Optional

from .characters import character, cycle_type_of
from .exact import falling_factorial, invert_fraction_rows
from .partialperm import (
    CyclePathType,
    class_representative,
    cycle_path_types,
    weight_k_subassignments,
    assignment_type,
)
from .partitions import (
    Partition,
    bar_partition,
    check_partition,
    conjugate,
    dimension,
    is_horizontal_strip,
    partitions_of,
    prepend_partition,
    revlex_sorted,
)

__all__ = [
    "IrrepLabel",
    "number_of_elements",
    "valency",
    "class_to_irrep",
    "irrep_to_class",
    "irrep_labels",
    "is_scheme_irrep",
    "multiplicity",
    "first_label",
    "minimal_label",
    "maximal_label",
    "JohnsonTables",
    "johnson_tables",
    "johnson_q1_closed_form",
    "dual_row_first",
    "dual_row_maximal",
    "dual_row_minimal",
    "SchemeTable",
    "build_scheme_table",
    "krein",
]


class IrrepLabel(NamedTuple):
    mu: tuple
    lam: tuple


def number_of_elements(n: int, m: int) -> int:
    """How many partial permutations there are: m falling n."""
    if not 0 <= n <= m:
        raise ValueError(f"need 0 <= n <= m, got n={n}, m={m}")
    return falling_factorial(m, n)


def valency(mu, n: int, m: int) -> int:
    """Size of the sphere at a given cycle/path type.

    With the cycle partition holding c_i parts equal to i and the path
    partition holding p_i parts equal to i, the count is
    n! / (prod_i i^{c_i} c_i! p_i!) times (m - n) falling (number of paths).
    """
    cycles, paths = CyclePathType(*mu)
    check_partition(cycles)
    check_partition(paths)
    if sum(cycles) + sum(paths) != n:
        raise ValueError(f"type {mu} does not have total size {n}")
    if len(paths) > m - n:
        raise ValueError(f"type {mu} needs more than {m - n} spare symbols")
    denom = 1
    cyc_mult: dict = {}
    for part in cycles:
        cyc_mult[part] = cyc_mult.get(part, 0) + 1
    for part, count in cyc_mult.items():
        denom *= part**count * factorial(count)
    path_mult: dict = {}
    for part in paths:
        path_mult[part] = path_mult.get(part, 0) + 1
    for count in path_mult.values():
        denom *= factorial(count)
    out, rem = divmod(
        factorial(n) * falling_factorial(m - n, len(paths)), denom
    )
    if rem:
        raise ArithmeticError(f"valency denominator does not divide at {mu}")
    return out


def class_to_irrep(mu, n: int, m: int) -> IrrepLabel:
    """The irrep label paired with a class: transpose the multiset union of
    the two partitions, once as is and once with the path partition replaced
    by (m - n, conjugate(paths)) transposed back in."""
    cycles, paths = CyclePathType(*mu)
    if sum(cycles) + sum(paths) != n:
        raise ValueError(f"type {mu} does not have total size {n}")
    if len(paths) > m - n:
        raise ValueError(f"type {mu} needs more than {m - n} spare symbols")
    small = conjugate(tuple(sorted(cycles + paths, reverse=True)))
    widened = conjugate(prepend_partition(conjugate(paths), m - n + sum(paths)))
    big = conjugate(tuple(sorted(cycles + widened, reverse=True)))
    return IrrepLabel(small, big)


def irrep_to_class(label, n: int, m: int) -> CyclePathType:
    """Inverse of class_to_irrep: a column of mu whose length grows by one
    inside lam came from a path part, the others from cycle parts."""
    label = IrrepLabel(*label)
    if not is_scheme_irrep(label, n, m):
        raise ValueError(f"{label} is not an irrep label for ({n}, {m})")
    mu_t = conjugate(label.mu)
    lam_t = conjugate(label.lam)
    cycles = []
    paths = []
    for j, part in enumerate(mu_t):
        if lam_t[j] == part + 1:
            paths.append(part)
        elif lam_t[j] == part:
            cycles.append(part)
        else:
            raise ValueError(
                f"{label} is not in the image of the class labeling"
            )
    return CyclePathType(
        tuple(sorted(cycles, reverse=True)),
        tuple(sorted(paths, reverse=True)),
    )


def is_scheme_irrep(label, n: int, m: int) -> bool:
    mu, lam = label
    return (
        sum(mu) == n
        and sum(lam) == m
        and is_horizontal_strip(tuple(lam), tuple(mu))
    )


def irrep_labels(n: int, m: int):
    """All irrep labels, reverse-lexicographically by mu then lam."""
    out = []
    for mu in revlex_sorted(partitions_of(n), n):
        for lam in revlex_sorted(
            [
                lam
                for lam in partitions_of(m)
                if is_horizontal_strip(lam, mu)
            ],
            m,
        ):
            out.append(IrrepLabel(tuple(mu), tuple(lam)))
    return out


def multiplicity(key, n: int, m: int) -> int:
    """Multiplicity (eigenspace dimension), accepting either an irrep label
    or a class type."""
    a, b = key
    a, b = tuple(a), tuple(b)
    if sum(a) == n and sum(b) == m:
        label = IrrepLabel(a, b)
        if not is_scheme_irrep(label, n, m):
            raise ValueError(f"{label} is not an irrep label for ({n}, {m})")
    elif sum(a) + sum(b) == n:
        label = class_to_irrep((a, b), n, m)
    else:
        raise ValueError(f"{key!r} is neither an irrep label nor a class")
    return dimension(label.mu) * dimension(label.lam)


def first_label(n: int, m: int) -> IrrepLabel:
    if m <= n:
        raise ValueError("the standard row needs m > n")
    return IrrepLabel((n,), (m - 1, 1))


def minimal_label(theta, n: int, m: int) -> IrrepLabel:
    theta = check_partition(theta)
    k = sum(theta)
    mu = (n - k,) + theta if n > k else theta
    lam = (m - k,) + theta if m > k else theta
    label = IrrepLabel(mu, lam)
    if not is_scheme_irrep(label, n, m):
        raise ValueError(
            f"theta={theta} does not give an irrep label at ({n}, {m})"
        )
    return label


def maximal_label(lam, n: int, m: int) -> IrrepLabel:
    lam = check_partition(lam)
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    return IrrepLabel(lam, prepend_partition(lam, m))


# ------------------------------------------------------------ Johnson scheme


class JohnsonTables(NamedTuple):
    P: list
    Q: list


def _comb0(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def johnson_eigenvalue(i: int, j: int, n: int, m: int) -> int:
    """p_i(j) for the scheme on n-subsets of an m-set."""
    return sum(
        (-1) ** (r - i + j)
        * _comb0(r, i)
        * _comb0(m - 2 * r, n - r)
        * _comb0(m - r - j, r - j)
        for r in range(i, n + 1)
    )


def johnson_tables(n: int, m: int) -> JohnsonTables:
    """Eigenvalue and dual-eigenvalue tables of the scheme on n-subsets of
    an m-set: P[j][i] = p_i(j) and Q[j][i] = q_i(j) = (C(m,n) P^{-1})[j][i]."""
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    P = [
        [johnson_eigenvalue(i, j, n, m) for i in range(n + 1)]
        for j in range(n + 1)
    ]
    try:
        inv = invert_fraction_rows(P)
    except ValueError as err:
        raise ValueError(
            f"eigenvalue table at ({n}, {m}) is singular; "
            "the subset scheme needs m >= 2n to have n + 1 distinct classes"
        ) from err
    total = comb(m, n)
    Q = [[total * x for x in row] for row in inv]
    return JohnsonTables(P, Q)


def johnson_q1_closed_form(n: int, m: int, j: int) -> Fraction:
    """Closed form of the first dual eigenvalue column: q_1(j)."""
    return Fraction(comb(m, n), comb(m - 2, n - 1)) * (
        n - j - Fraction(n * n, m)
    )


# -------------------------------------------------------- dual rows, formula


def dual_row_first(n: int, m: int) -> dict:
    """Row for (n) x (m-1, 1): on a class whose image meets 1..n in k
    symbols, the value is (k m - n^2)(m - 1) / (n (m - n))."""
    if m <= n:
        raise ValueError("the standard row needs m > n")
    row = {}
    for t in cycle_path_types(n, m):
        k = n - len(t.paths)
        row[t] = Fraction((k * m - n * n) * (m - 1), n * (m - n))
    return row


def dual_row_maximal(lam, n: int, m: int) -> dict:
    """Row for lam x (m-n, lam), by the weighted sum over S_n.

    For a class representative f, sum chi_lam(pi) * w(f o pi) over all pi,
    where w(h) is (-1)^l / (m-n falling l) when h moves every point either
    nowhere or out of 1..n (l of them strictly), and 0 otherwise; scale by
    the dimension of (m-n, lam)."""
    lam = check_partition(lam)
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    if m - n < (lam[0] if lam else 0):
        raise ValueError(
            f"row for the widened label needs m - n >= {lam[0]}, "
            f"got m={m}, n={n}"
        )
    scale = dimension(prepend_partition(lam, m))
    row = {}
    for t in cycle_path_types(n, m):
        f = class_representative(t, n, m)
        total = Fraction(0)
        for pi in permutations(range(1, n + 1)):
            h = tuple(f[p - 1] for p in pi)
            moved = 0
            ok = True
            for x in range(1, n + 1):
                y = h[x - 1]
                if y == x:
                    continue
                if y <= n:
                    ok = False
                    break
                moved += 1
            if not ok:
                continue
            weight = Fraction(
                (-1) ** moved, falling_factorial(m - n, moved)
            )
            total += character(lam, cycle_type_of(pi)) * weight
        row[t] = scale * total
    return row


def dual_row_minimal(theta, n: int, m: int) -> dict:
    """Row for (n-k, theta) x (m-k, theta) where k = |theta|, via weight-k
    assignment sums against the widened row of the small scheme on k-of-n
    partial permutations."""
    theta = check_partition(theta)
    k = sum(theta)
    label = minimal_label(theta, n, m)
    if k == 0:
        return {t: Fraction(1) for t in cycle_path_types(n, m)}
    if 2 * k > n:
        raise ValueError(
            f"assignment route needs n >= 2|theta|, got n={n}, |theta|={k}"
        )
    small_row = dual_row_maximal(theta, k, n)
    scale = Fraction(dimension(label.lam), comb(n, k) * dimension(theta))
    row = {}
    for t in cycle_path_types(n, m):
        total = Fraction(0)
        for small_type, count in _subassignment_tally(t, k, n).items():
            total += count * small_row[small_type]
        row[t] = scale * total
    return row


@cache
def _subassignment_tally(t, k: int, n: int) -> dict:
    """Types of the weight-k subassignments of a class representative that
    stay inside 1..n, with counts.  Depends only on the class, k, and n;
    the ambient symbol count never matters because path targets sit outside
    1..n for any of its values."""
    f = class_representative(t, n, n + sum(t.paths))
    tally: dict = {}
    for alpha in weight_k_subassignments(f, k, n):
        key = assignment_type(alpha, n)
        tally[key] = tally.get(key, 0) + 1
    return tally


# ------------------------------------------------------------- scheme table


@dataclass
class SchemeTable:
    n: int
    m: int
    classes: list
    irreps: list
    valencies: dict
    multiplicities: dict
    dual_rows: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return number_of_elements(self.n, self.m)

    def add_row(self, label, row, source: str) -> None:
        label = IrrepLabel(*label)
        row = {CyclePathType(*t): Fraction(val) for t, val in row.items()}
        if set(row) != set(self.classes):
            raise ValueError(f"row for {label} does not cover all classes")
        if label in self.dual_rows:
            if self.dual_rows[label] != row:
                raise ValueError(
                    f"conflicting rows for {label}: "
                    f"{self.provenance[label]} vs {source}"
                )
            self.provenance[label] = f"{self.provenance[label]}+{source}"
            return
        self.dual_rows[label] = row
        self.provenance[label] = source

    def row(self, label) -> dict:
        label = IrrepLabel(*label)
        if label not in self.dual_rows:
            raise KeyError(f"no dual row stored for {label}")
        return self.dual_rows[label]

    @property
    def complete(self) -> bool:
        return all(label in self.dual_rows for label in self.irreps)

    def missing_rows(self):
        return [label for label in self.irreps if label not in self.dual_rows]


def build_scheme_table(
    n: int, m: int, include=("first", "minimal", "maximal")
) -> SchemeTable:
    """Assemble the scheme data with every requested formula route that is
    available at (n, m); routes whose preconditions fail are skipped."""
    classes = cycle_path_types(n, m)
    irreps = irrep_labels(n, m)
    table = SchemeTable(
        n=n,
        m=m,
        classes=classes,
        irreps=irreps,
        valencies={t: valency(t, n, m) for t in classes},
        multiplicities={
            label: multiplicity(label, n, m) for label in irreps
        },
    )
    if "first" in include and m > n:
        table.add_row(first_label(n, m), dual_row_first(n, m), "first")
    if "minimal" in include:
        for k in range(0, n // 2 + 1):
            for theta in partitions_of(k):
                if k > 0 and (n - k < theta[0] or m - k < theta[0]):
                    continue
                table.add_row(
                    minimal_label(theta, n, m),
                    dual_row_minimal(theta, n, m),
                    "minimal",
                )
    if "maximal" in include:
        for lam in partitions_of(n):
            if m - n < (lam[0] if lam else 0):
                continue
            table.add_row(
                maximal_label(lam, n, m),
                dual_row_maximal(lam, n, m),
                "maximal",
            )
    return table


def krein(label_i, label_j, label_k, table: SchemeTable) -> Fraction:
    """Krein parameter q_{i,j}(k) from a table holding the three rows:
    (1 / (v * mult_k)) * sum over classes of valency * q_i * q_j * q_k."""
    labels = [IrrepLabel(*lbl) for lbl in (label_i, label_j, label_k)]
    missing = [lbl for lbl in set(labels) if lbl not in table.dual_rows]
    if missing:
        raise ValueError(
            "krein needs dual rows for: "
            + ", ".join(str(lbl) for lbl in sorted(missing))
        )
    ri, rj, rk = (table.dual_rows[lbl] for lbl in labels)
    total = Fraction(0)
    for t in table.classes:
        total += table.valencies[t] * ri[t] * rj[t] * rk[t]
    return total / (
        table.size * table.multiplicities[labels[2]]
    )
