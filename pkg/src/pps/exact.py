"""Exact rational arithmetic helpers: dense matrices over the rationals and
small utilities shared across the package.

Dense matrices store one integer numerator per entry over a single shared
positive denominator.  Numerators live in a numpy int64 array when every
intermediate fits comfortably, and fall back to a numpy object array of
Python integers otherwise, so results are exact in both regimes.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

# Keep int64 intermediates clear of the 2**63 boundary.
_INT64_SAFE = 2**62


def falling_factorial(a: int, k: int) -> int:
    """a * (a-1) * ... * (a-k+1), with the empty product equal to 1."""
    if k < 0:
        raise ValueError("falling_factorial needs k >= 0")
    out = 1
    for i in range(k):
        out *= a - i
    return out


def format_rational(x) -> str:
    """Canonical string form of a rational: '5', '-5', or '10/3'."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _array_max_abs(arr) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max((abs(int(x)) for x in arr.flat), default=0)
    return int(np.max(np.abs(arr)))


def _array_gcd(arr, seed: int) -> int:
    if arr.dtype == object:
        g = seed
        for x in arr.flat:
            g = gcd(g, abs(int(x)))
            if g == 1:
                return 1
        return g
    flat = arr.ravel()
    if flat.size == 0:
        return seed
    return gcd(seed, int(np.gcd.reduce(np.abs(flat))))


class RationalMatrix:
    """Dense exact matrix of rationals: integer numerators over one positive
    shared denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: np.ndarray, den: int = 1, reduce_now: bool = True):
        if den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if den < 0:
            num = -num
            den = -den
        self.num = num
        self.den = den
        if reduce_now:
            self._reduce()

    # ------------------------------------------------------------- builders

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        fracs = [[Fraction(x) for x in row] for row in rows]
        den = 1
        for row in fracs:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        nums = [[int(x * den) for x in row] for row in fracs]
        return cls._from_int_grid(nums, den)

    @classmethod
    def _from_int_grid(cls, nums, den: int) -> "RationalMatrix":
        big = max((abs(x) for row in nums for x in row), default=0)
        dtype = np.int64 if big < _INT64_SAFE else object
        return cls(np.array(nums, dtype=dtype), den)

    @classmethod
    def from_values_by_index(
        cls, index: np.ndarray, values
    ) -> "RationalMatrix":
        """Matrix whose entry at position p is values[index[p]]."""
        fracs = [Fraction(x) for x in values]
        den = 1
        for x in fracs:
            den = den * x.denominator // gcd(den, x.denominator)
        nums = [int(x * den) for x in fracs]
        big = max((abs(x) for x in nums), default=0)
        dtype = np.int64 if big < _INT64_SAFE else object
        table = np.array(nums, dtype=dtype)
        return cls(table[index], den)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls(np.eye(size, dtype=np.int64), 1, reduce_now=False)

    @classmethod
    def zeros(cls, shape) -> "RationalMatrix":
        return cls(np.zeros(shape, dtype=np.int64), 1, reduce_now=False)

    @classmethod
    def all_ones(cls, shape) -> "RationalMatrix":
        return cls(np.ones(shape, dtype=np.int64), 1, reduce_now=False)

    # ------------------------------------------------------------ internals

    def _reduce(self) -> None:
        m = _array_max_abs(self.num)
        if m == 0:
            self.den = 1
            if self.num.dtype == object:
                self.num = np.zeros(self.num.shape, dtype=np.int64)
            return
        g = _array_gcd(self.num, self.den)
        if g > 1:
            if self.num.dtype == object:
                self.num = np.array(
                    [[int(x) // g for x in row] for row in self.num],
                    dtype=object,
                )
            else:
                self.num = self.num // g
            self.den //= g
            m //= g
        if self.num.dtype == object and m < _INT64_SAFE:
            self.num = self.num.astype(np.int64)

    def _as_object(self) -> np.ndarray:
        if self.num.dtype == object:
            return self.num
        return self.num.astype(object)

    def max_abs(self) -> int:
        return _array_max_abs(self.num)

    @property
    def shape(self):
        return self.num.shape

    # ----------------------------------------------------------- operations

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        k = self.num.shape[1]
        bound = self.max_abs() * other.max_abs() * max(k, 1)
        if (
            self.num.dtype == np.int64
            and other.num.dtype == np.int64
            and bound < _INT64_SAFE
        ):
            prod = self.num @ other.num
        else:
            prod = self._as_object() @ other._as_object()
        return RationalMatrix(prod, self.den * other.den)

    def _aligned(self, other: "RationalMatrix"):
        den = self.den * other.den // gcd(self.den, other.den)
        sa, sb = den // self.den, den // other.den
        bound = max(self.max_abs() * sa, other.max_abs() * sb) * 2
        if (
            self.num.dtype == np.int64
            and other.num.dtype == np.int64
            and bound < _INT64_SAFE
        ):
            return self.num * sa, other.num * sb, den
        return self._as_object() * sa, other._as_object() * sb, den

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        a, b, den = self._aligned(other)
        return RationalMatrix(a + b, den)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        a, b, den = self._aligned(other)
        return RationalMatrix(a - b, den)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(-self.num, self.den, reduce_now=False)

    def schur(self, other: "RationalMatrix") -> "RationalMatrix":
        bound = self.max_abs() * other.max_abs()
        if (
            self.num.dtype == np.int64
            and other.num.dtype == np.int64
            and bound < _INT64_SAFE
        ):
            prod = self.num * other.num
        else:
            prod = self._as_object() * other._as_object()
        return RationalMatrix(prod, self.den * other.den)

    def scale(self, factor) -> "RationalMatrix":
        f = Fraction(factor)
        bound = self.max_abs() * abs(f.numerator)
        if self.num.dtype == np.int64 and bound < _INT64_SAFE:
            num = self.num * f.numerator
        else:
            num = self._as_object() * f.numerator
        return RationalMatrix(num, self.den * f.denominator)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.num.T.copy(), self.den, reduce_now=False)

    # ------------------------------------------------------------- queries

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), self.den)

    def trace(self) -> Fraction:
        return Fraction(int(np.trace(self._as_object())), self.den)

    def total(self) -> Fraction:
        """Sum of all entries."""
        return Fraction(int(self._as_object().sum()), self.den)

    def is_zero(self) -> bool:
        return _array_max_abs(self.num) == 0

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.num, self.num.T))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        a = RationalMatrix(self.num.copy(), self.den)
        b = RationalMatrix(other.num.copy(), other.den)
        return a.den == b.den and bool(np.array_equal(a.num, b.num))

    def __hash__(self):
        raise TypeError("RationalMatrix is unhashable")

    def to_fraction_rows(self):
        return [
            [Fraction(int(x), self.den) for x in row] for row in self.num
        ]

    def to_float(self) -> np.ndarray:
        if self.num.dtype == object:
            return self.num.astype(np.float64) / float(self.den)
        return self.num.astype(np.float64) / float(self.den)


# ------------------------------------------------- fraction-level elimination


def rank_of_fraction_rows(rows) -> int:
    """Rank over the rationals by Gaussian elimination with exact pivots."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    row_at = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(row_at, len(mat)) if mat[r][col] != 0), None
        )
        if pivot is None:
            continue
        mat[row_at], mat[pivot] = mat[pivot], mat[row_at]
        inv = 1 / mat[row_at][col]
        mat[row_at] = [x * inv for x in mat[row_at]]
        for r in range(len(mat)):
            if r != row_at and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [
                    a - factor * b for a, b in zip(mat[r], mat[row_at])
                ]
        row_at += 1
        rank += 1
        if row_at == len(mat):
            break
    return rank


def invert_fraction_rows(rows):
    """Exact inverse of a square rational matrix; ValueError when singular."""
    size = len(rows)
    mat = [
        [Fraction(x) for x in row]
        + [Fraction(int(i == j)) for j in range(size)]
        for i, row in enumerate(rows)
    ]
    for col in range(size):
        pivot = next(
            (r for r in range(col, size) if mat[r][col] != 0), None
        )
        if pivot is None:
            raise ValueError("matrix is singular")
        mat[col], mat[pivot] = mat[pivot], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        for r in range(size):
            if r != col and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return [row[size:] for row in mat]
