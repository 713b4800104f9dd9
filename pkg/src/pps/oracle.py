"""Brute-force oracle for the partial permutation scheme.

Everything here works on the full set of partial permutations for one pair
(n, m): dense exact projectors assembled by direct group averaging, dual
eigenvalue rows read from those projectors or from explicit character sums,
and structural verifications (scheme axioms, spectral resolution, junta
behavior of projectors, character-sum self-consistency, and ranks in the
quotient by image subsets).

Costs grow like the square of the number of functions times (m - n)!, so a
guard refuses sizes beyond configured limits; see SchemeOracle.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import NamedTuple, Optional

import numpy as np

from .characters import character, cycle_type_of
from .exact import RationalMatrix, rank_of_fraction_rows
from .partialperm import (
    CyclePathType,
    class_representative,
    cycle_path_type,
    cycle_path_types,
    enumerate_all,
    identity_partial_permutation,
    sphere,
    type_of_translated,
)
from .partitions import dimension, partitions_of
from .scheme import (
    IrrepLabel,
    SchemeTable,
    irrep_labels,
    johnson_tables,
    multiplicity,
    number_of_elements,
    valency,
)

__all__ = [
    "OracleSizeError",
    "SchemeOracle",
    "CheckResult",
]

DEFAULT_MAX_V = 5040
DEFAULT_MAX_COMPLETIONS = 24


class OracleSizeError(ValueError):
    pass


class CheckResult(NamedTuple):
    check: str
    ok: bool
    detail: str


def _env_max_v() -> int:
    raw = os.environ.get("PPS_MAX_V")
    if raw is None:
        return DEFAULT_MAX_V
    try:
        return int(raw)
    except ValueError:
        raise OracleSizeError(f"PPS_MAX_V is not an integer: {raw!r}")


class SchemeOracle:
    """Dense exact computations over all partial permutations at one (n, m).

    max_v bounds the number of functions (default 5040, or the PPS_MAX_V
    environment variable); max_completions bounds (m - n)! (default 24).
    """

    def __init__(
        self,
        n: int,
        m: int,
        max_v: Optional[int] = None,
        max_completions: Optional[int] = None,
    ):
        if not 1 <= n <= m:
            raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
        v = number_of_elements(n, m)
        if max_v is None:
            max_v = _env_max_v()
        if max_completions is None:
            max_completions = DEFAULT_MAX_COMPLETIONS
        if v > max_v:
            raise OracleSizeError(
                f"{v} functions at ({n}, {m}) exceeds the limit {max_v}; "
                "raise max_v (or PPS_MAX_V) to proceed"
            )
        if factorial(m - n) > max_completions:
            raise OracleSizeError(
                f"(m - n)! = {factorial(m - n)} exceeds the limit "
                f"{max_completions}; raise max_completions to proceed"
            )
        self.n = n
        self.m = m
        self.v = v
        self.functions = enumerate_all(n, m)
        self.index = {f: i for i, f in enumerate(self.functions)}
        self.classes = cycle_path_types(n, m)
        self.class_index = {tuple(t): i for i, t in enumerate(self.classes)}
        self.labels = irrep_labels(n, m)
        self._class_matrix: Optional[np.ndarray] = None
        self._sm_values: dict = {}
        self._sm_dense: dict = {}
        self._sn_dense: dict = {}
        self._idempotents: dict = {}
        self._group_tallies: Optional[list] = None

    # ------------------------------------------------------------ structure

    def class_matrix(self) -> np.ndarray:
        """Class index of every ordered pair of functions."""
        if self._class_matrix is None:
            n, m = self.n, self.m
            funcs = self.functions
            lookup = self.class_index
            mat = np.empty((self.v, self.v), dtype=np.int16)
            for i, f in enumerate(funcs):
                inv = [0] * (m + 1)
                for x in range(1, n + 1):
                    inv[f[x - 1]] = x
                nxt = n + 1
                for y in range(1, m + 1):
                    if inv[y] == 0:
                        inv[y] = nxt
                        nxt += 1
                row = mat[i]
                for j, g in enumerate(funcs):
                    row[j] = lookup[type_of_translated([inv[y] for y in g], n)]
            self._class_matrix = mat
        return self._class_matrix

    def orbital_matrix(self, mu) -> RationalMatrix:
        """0/1 adjacency matrix of one class."""
        idx = self.class_index[tuple(CyclePathType(*mu))]
        return RationalMatrix(
            (self.class_matrix() == idx).astype(np.int64), 1
        )

    def from_row_values(self, values_by_class) -> RationalMatrix:
        """Dense matrix whose entry at a pair of type t is values_by_class[t]."""
        values = [values_by_class[tuple(t)] for t in self.classes]
        return RationalMatrix.from_values_by_index(self.class_matrix(), values)

    # ------------------------------------------------- projectors, averaging

    def _completion_tally(self, pattern: dict) -> dict:
        """Cycle-type tally of all permutations of 1..m extending a partial
        injection given as a dict."""
        m = self.m
        sources = [x for x in range(1, m + 1) if x not in pattern]
        targets = [y for y in range(1, m + 1) if y not in set(pattern.values())]
        tally: dict = {}
        base = [0] * m
        for x, y in pattern.items():
            base[x - 1] = y
        for assignment in permutations(targets):
            sigma = list(base)
            for x, y in zip(sources, assignment):
                sigma[x - 1] = y
            ct = cycle_type_of(tuple(sigma))
            tally[ct] = tally.get(ct, 0) + 1
        return tally

    def sm_values(self, lam_m) -> list:
        """Per-class entries of the symbol-side isotypic projector."""
        lam_m = tuple(lam_m)
        if lam_m not in self._sm_values:
            d = dimension(lam_m)
            fact = factorial(self.m)
            values = []
            for t in self.classes:
                h = class_representative(t, self.n, self.m)
                pattern = {x: h[x - 1] for x in range(1, self.n + 1)}
                tally = self._completion_tally(pattern)
                acc = sum(
                    count * character(lam_m, ct) for ct, count in tally.items()
                )
                values.append(Fraction(d * acc, fact))
            self._sm_values[lam_m] = values
        return self._sm_values[lam_m]

    def projector_sm(self, lam_m) -> RationalMatrix:
        lam_m = tuple(lam_m)
        if lam_m not in self._sm_dense:
            self._sm_dense[lam_m] = RationalMatrix.from_values_by_index(
                self.class_matrix(), self.sm_values(lam_m)
            )
        return self._sm_dense[lam_m]

    def sn_values(self, mu_n) -> list:
        """Per-class entries of the index-side isotypic projector: zero off
        shared images, a character value over n! on path-free classes."""
        mu_n = tuple(mu_n)
        d = dimension(mu_n)
        fact = factorial(self.n)
        return [
            Fraction(d * character(mu_n, t.cycles), fact)
            if not t.paths
            else Fraction(0)
            for t in self.classes
        ]

    def projector_sn(self, mu_n) -> RationalMatrix:
        mu_n = tuple(mu_n)
        if mu_n not in self._sn_dense:
            self._sn_dense[mu_n] = RationalMatrix.from_values_by_index(
                self.class_matrix(), self.sn_values(mu_n)
            )
        return self._sn_dense[mu_n]

    def primitive_idempotent(self, label) -> RationalMatrix:
        label = IrrepLabel(*label)
        if label not in self._idempotents:
            self._idempotents[label] = self.projector_sn(
                label.mu
            ) @ self.projector_sm(label.lam)
        return self._idempotents[label]

    def extract_dual_row(self, label) -> dict:
        """Dual eigenvalue row read off a dense primitive idempotent."""
        E = self.primitive_idempotent(label)
        row = {}
        for t in self.classes:
            rep = class_representative(t, self.n, self.m)
            row[t] = self.v * E.entry(0, self.index[rep])
        return row

    # --------------------------------------------------- character-sum rows

    def _pair_tallies(self) -> list:
        """For each class, a tally over (index cycle type, symbol cycle type)
        of permutation pairs moving the identity onto the class representative."""
        if self._group_tallies is None:
            n, m = self.n, self.m
            out = []
            for t in self.classes:
                f = class_representative(t, n, m)
                tally: dict = {}
                for pi in permutations(range(1, n + 1)):
                    pinv = [0] * n
                    for i, y in enumerate(pi):
                        pinv[y - 1] = i + 1
                    pattern = {f[x - 1]: pinv[x - 1] for x in range(1, n + 1)}
                    tpi = cycle_type_of(pi)
                    for ct, count in self._completion_tally(pattern).items():
                        key = (tpi, ct)
                        tally[key] = tally.get(key, 0) + count
                out.append(tally)
            self._group_tallies = out
        return self._group_tallies

    def dual_row_group_sum(self, label) -> dict:
        """Dual eigenvalue row via summed products of characters over the
        full group, without building any dense matrix."""
        label = IrrepLabel(*label)
        d = dimension(label.mu) * dimension(label.lam)
        scale = Fraction(
            self.v * d, factorial(self.n) * factorial(self.m)
        )
        row = {}
        for t, tally in zip(self.classes, self._pair_tallies()):
            acc = 0
            for (tpi, tsig), count in tally.items():
                acc += (
                    character(label.mu, tpi)
                    * character(label.lam, tsig)
                    * count
                )
            row[t] = scale * acc
        return row

    def dual_row(self, label, method: str = "group_sum") -> dict:
        if method == "group_sum":
            return self.dual_row_group_sum(label)
        if method == "idempotent":
            return self.extract_dual_row(label)
        raise ValueError(f"unknown dual row method {method!r}")

    # -------------------------------------------------------------- checks

    def junta_check(self, alpha) -> list:
        """For each symbol-side shape whose complement-of-first-row exceeds
        the assignment weight, the projector must kill the indicator of
        functions agreeing with the assignment."""
        pairs = sorted(tuple(p) for p in alpha)
        weight = len(pairs)
        indicator = np.zeros((self.v, 1), dtype=np.int64)
        for i, f in enumerate(self.functions):
            if all(f[x - 1] == y for x, y in pairs):
                indicator[i, 0] = 1
        vec = RationalMatrix(indicator, 1)
        results = []
        for lam_m in partitions_of(self.m):
            if self.m - lam_m[0] <= weight:
                continue
            image = self.projector_sm(lam_m) @ vec
            results.append(
                CheckResult(
                    check=f"junta:{lam_m}:{pairs}",
                    ok=image.is_zero(),
                    detail=f"projector {lam_m} on weight-{weight} indicator",
                )
            )
        return results

    def charsum_check(self, label, pair_count: int = 10, seed: int = 0) -> bool:
        """Averaging a dual row against symbol-side characters reproduces the
        row: q(type(f, h)) = (d/m!) sum_sigma chi(sigma) q(type(sigma^-1 f, h))."""
        label = IrrepLabel(*label)
        row = self.dual_row_group_sum(label)
        by_type = {tuple(t): val for t, val in row.items()}
        d = dimension(label.lam)
        rng = np.random.default_rng(seed)
        fid = identity_partial_permutation(self.n)
        pairs = [(fid, fid)]
        for _ in range(pair_count - 1):
            i, j = rng.integers(0, self.v, size=2)
            pairs.append((self.functions[int(i)], self.functions[int(j)]))
        sigmas = [
            (cycle_type_of(s), _invert(s)) for s in permutations(range(1, self.m + 1))
        ]
        for f, h in pairs:
            acc = Fraction(0)
            for ct, sinv in sigmas:
                moved = tuple(sinv[y - 1] for y in f)
                acc += character(label.lam, ct) * by_type[
                    tuple(cycle_path_type(moved, h, self.m))
                ]
            expected = by_type[tuple(cycle_path_type(f, h, self.m))]
            if Fraction(d, factorial(self.m)) * acc != expected:
                return False
        return True

    def rank_in_column_space(self, label) -> int:
        """Rank of a primitive idempotent compressed onto indicator vectors
        of the classes (exact, over the rationals)."""
        row = self.dual_row_group_sum(label)
        by_type = {tuple(t): val for t, val in row.items()}
        size = len(self.classes)
        B = [[Fraction(0)] * size for _ in range(size)]
        spheres = [sphere(t, self.n, self.m) for t in self.classes]
        reps = [class_representative(t, self.n, self.m) for t in self.classes]
        for col, members in enumerate(spheres):
            for row_idx, g in enumerate(reps):
                acc = Fraction(0)
                for f in members:
                    acc += by_type[tuple(cycle_path_type(g, f, self.m))]
                B[row_idx][col] = acc / self.v
        return rank_of_fraction_rows(B)

    # ------------------------------------------------------- verify suites

    def verify_axioms(self) -> list:
        results = []
        cm = self.class_matrix()
        ident_idx = self.class_index[((1,) * self.n, ())]
        results.append(
            CheckResult(
                "axioms:identity",
                bool(
                    np.array_equal(
                        cm == ident_idx, np.eye(self.v, dtype=bool)
                    )
                ),
                "identity class is the diagonal",
            )
        )
        results.append(
            CheckResult(
                "axioms:symmetric",
                bool(np.array_equal(cm, cm.T)),
                "every class is symmetric",
            )
        )
        counts = np.bincount(cm.ravel(), minlength=len(self.classes))
        expect = [self.v * valency(t, self.n, self.m) for t in self.classes]
        results.append(
            CheckResult(
                "axioms:partition",
                counts.tolist() == expect,
                "classes partition all pairs with the right sizes",
            )
        )
        flat = cm.ravel()
        closure_ok = True
        detail = "products are constant on classes"
        adjacency = [
            (cm == idx).astype(np.int64) for idx in range(len(self.classes))
        ]
        for a in adjacency:
            for b in adjacency:
                prod = (a @ b).ravel()
                lo = np.full(len(self.classes), np.iinfo(np.int64).max)
                hi = np.full(len(self.classes), np.iinfo(np.int64).min)
                np.minimum.at(lo, flat, prod)
                np.maximum.at(hi, flat, prod)
                if not np.array_equal(lo, hi):
                    closure_ok = False
                    detail = "found a product not constant on classes"
                    break
            if not closure_ok:
                break
        results.append(CheckResult("axioms:closure", closure_ok, detail))
        return results

    def verify_spectral(self) -> list:
        results = []
        idempotents = [
            (label, self.primitive_idempotent(label)) for label in self.labels
        ]
        total = RationalMatrix.zeros((self.v, self.v))
        for label, E in idempotents:
            total = total + E
            results.append(
                CheckResult(
                    f"spectral:idempotent:{label}",
                    (E @ E) == E,
                    "E^2 = E",
                )
            )
            results.append(
                CheckResult(
                    f"spectral:trace:{label}",
                    E.trace() == multiplicity(label, self.n, self.m),
                    "trace equals multiplicity",
                )
            )
        results.append(
            CheckResult(
                "spectral:resolution",
                total == RationalMatrix.identity(self.v),
                "idempotents sum to the identity",
            )
        )
        bad_pairs = []
        for i, (la, Ea) in enumerate(idempotents):
            for lb, Eb in idempotents[i + 1 :]:
                if not (Ea @ Eb).is_zero():
                    bad_pairs.append((la, lb))
        results.append(
            CheckResult(
                "spectral:orthogonal",
                not bad_pairs,
                "distinct idempotents multiply to zero"
                if not bad_pairs
                else f"nonzero products at {bad_pairs[:3]}",
            )
        )
        return results

    def verify_duals(self, table: SchemeTable) -> list:
        """Formula rows against idempotent extraction and character sums."""
        results = []
        for label in self.labels:
            ext = self.extract_dual_row(label)
            grp = self.dual_row_group_sum(label)
            same = {tuple(t): v for t, v in ext.items()} == {
                tuple(t): v for t, v in grp.items()
            }
            results.append(
                CheckResult(
                    f"duals:oracle-consistency:{label}",
                    same,
                    "idempotent row equals character-sum row",
                )
            )
        for label, row in table.dual_rows.items():
            ext = self.extract_dual_row(label)
            same = {tuple(t): v for t, v in row.items()} == {
                tuple(t): v for t, v in ext.items()
            }
            results.append(
                CheckResult(
                    f"duals:formula-vs-oracle:{label}",
                    same,
                    f"formula route {table.provenance[label]}",
                )
            )
        return results

    def verify_johnson_quotient(self) -> list:
        """The standard-label idempotent refines the first Johnson idempotent:
        each entry is the Johnson entry at the image-distance over n!."""
        n, m = self.n, self.m
        Q = johnson_tables(n, m).Q
        total = comb(m, n)
        values = {
            tuple(t): Fraction(Q[len(t.paths)][1], total * factorial(n))
            for t in self.classes
        }
        expected = self.from_row_values(values)
        E = self.primitive_idempotent(IrrepLabel((n,), (m - 1, 1)))
        return [
            CheckResult(
                "johnson:quotient",
                E == expected,
                "standard idempotent is the lifted Johnson idempotent",
            )
        ]

    def verify_schur_triples(self) -> list:
        """Schur-multiplying any primitive idempotent by the standard-label
        idempotent keeps it orthogonal to every idempotent whose index-side
        shape differs.  Tested via sums of entrywise triple products."""
        if self.m == self.n:
            return [
                CheckResult(
                    "schur:triples", True, "skipped: no standard label at m = n"
                )
            ]
        rows = {
            label: self.dual_row_group_sum(label) for label in self.labels
        }
        first = IrrepLabel((self.n,), (self.m - 1, 1))
        ok = True
        detail = "standard Schur products stay within the index-side shape"
        for b in self.labels:
            for c in self.labels:
                if b.mu == c.mu:
                    continue
                acc = Fraction(0)
                for t in self.classes:
                    acc += (
                        valency(t, self.n, self.m)
                        * rows[first][t]
                        * rows[b][t]
                        * rows[c][t]
                    )
                if acc != 0:
                    ok = False
                    detail = f"nonzero at {first}, {b}, {c}"
                    break
            if not ok:
                break
        return [CheckResult("schur:triples", ok, detail)]

    def verify_junta(self, max_weight: int = 2) -> list:
        from itertools import combinations

        results = []
        symbols = range(1, self.m + 1)
        positions = range(1, self.n + 1)
        for weight in range(1, max_weight + 1):
            for pos in combinations(positions, weight):
                for vals in permutations(symbols, weight):
                    alpha = tuple(zip(pos, vals))
                    checks = self.junta_check(alpha)
                    bad = [c for c in checks if not c.ok]
                    results.append(
                        CheckResult(
                            f"junta:{alpha}",
                            not bad,
                            f"{len(checks)} projectors checked",
                        )
                    )
        return results

    def verify_charsum(self) -> list:
        return [
            CheckResult(
                f"charsum:{label}",
                self.charsum_check(label),
                "row reproduced by symbol-side averaging",
            )
            for label in self.labels
        ]

    def verify_rank(self) -> list:
        return [
            CheckResult(
                f"rank:{label}",
                self.rank_in_column_space(label) == 1,
                "idempotent has rank one on class indicators",
            )
            for label in self.labels
        ]

    def verify_all(self, table: Optional[SchemeTable] = None) -> list:
        from .scheme import build_scheme_table

        if table is None:
            table = build_scheme_table(self.n, self.m)
        out = []
        out.extend(self.verify_axioms())
        out.extend(self.verify_spectral())
        out.extend(self.verify_duals(table))
        out.extend(self.verify_johnson_quotient())
        out.extend(self.verify_schur_triples())
        out.extend(self.verify_junta())
        out.extend(self.verify_charsum())
        out.extend(self.verify_rank())
        return out


def _invert(perm):
    inv = [0] * len(perm)
    for i, y in enumerate(perm):
        inv[y - 1] = i + 1
    return tuple(inv)
