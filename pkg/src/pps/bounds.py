"""Adversary-side quantities for the index erasure lower bound.

The adversary operator puts weight 1 - k/sqrt(n) on the isotypic component
of each small label whose shape below the first row has k cells, for k up
to sqrt(n).  This module computes its spectrum and support, the coherent
eta value, the exact per-overlap decomposition of the eta trace term with
its two proved bounds (k/n for the matching-overlap portion, 2 n^{2k+3}/m
for the larger-overlap tail), the trace inequality against widened labels,
the spectral norm of the masked adversary operator, and the final bound
evaluator.  Floating point appears only in spectral norms; everything else
is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, factorial, isqrt
from typing import NamedTuple

import numpy as np

from .exact import falling_factorial
from .partialperm import CyclePathType, cycle_path_types
from .partitions import (
    check_partition,
    dimension,
    partitions_of,
    prepend_partition,
    strip_first_column,
)
from .scheme import (
    IrrepLabel,
    dual_row_first,
    dual_row_maximal,
    dual_row_minimal,
    is_scheme_irrep,
    minimal_label,
    multiplicity,
    number_of_elements,
    valency,
)

__all__ = [
    "EtaReport",
    "overlap",
    "eta_term",
    "coherent_eta",
    "gamma_spectrum",
    "pi_gamma_support",
    "gamma_class_values",
    "Prop52Report",
    "prop52_check",
    "TraceBoundReport",
    "lambdabar_trace_check",
    "adversary_bound",
    "delta_gamma_norm",
    "IdentityReport",
    "class_volume_identity",
    "valency_ratio_identity",
    "small_scheme_norm_identity",
    "minimal_value_bound_check",
    "minimal_row_correspondence_check",
]


def overlap(t, n: int) -> int:
    """Number of points a class keeps inside the domain: n minus the count
    of path components."""
    t = CyclePathType(*t)
    return n - len(t.paths)


class EtaReport(NamedTuple):
    n: int
    m: int
    k: int
    theta: tuple
    total: Fraction
    part_lt: Fraction
    part_eq: Fraction
    part_gt: Fraction
    bound_eq: Fraction
    bound_gt: Fraction
    gt_bound_holds: bool
    gt_bound_asserted: bool


def eta_term(theta, n: int, m: int, path: str = "formula", oracle=None) -> EtaReport:
    """Exact value of the eta trace term for one small shape, split by the
    overlap statistic of the classes.

    The term is sum over classes of
    valency * (first-label row) * (minimal-label row)^2, divided by
    v * (m - 1) * multiplicity of the minimal label.  Classes with overlap
    below |theta| must contribute zero (their minimal-row values vanish;
    this is verified, not assumed).  The matching-overlap portion is
    checked against its bound k/n; the tail bound 2 n^{2k+3}/m is asserted
    only when m > n + n^3, where the geometric-series step it rests on
    converges.
    """
    theta = check_partition(theta)
    k = sum(theta)
    if k > n:
        raise ValueError(f"|theta| = {k} exceeds n = {n}")
    label = minimal_label(theta, n, m)
    if path == "formula":
        row = dual_row_minimal(theta, n, m)
    elif path == "oracle":
        if oracle is None:
            from .oracle import SchemeOracle

            oracle = SchemeOracle(n, m)
        row = oracle.dual_row_group_sum(label)
    else:
        raise ValueError(f"unknown path {path!r}")
    return _eta_from_row(theta, n, m, row)


def _eta_from_row(theta, n: int, m: int, row) -> EtaReport:
    k = sum(theta)
    label = minimal_label(theta, n, m)
    mult = multiplicity(label, n, m)
    v = number_of_elements(n, m)
    first = dual_row_first(n, m)
    by_type = {tuple(t): val for t, val in row.items()}
    first_by_type = {tuple(t): val for t, val in first.items()}
    parts = {"lt": Fraction(0), "eq": Fraction(0), "gt": Fraction(0)}
    for t in cycle_path_types(n, m):
        key = tuple(t)
        q = by_type[key]
        ell = overlap(t, n)
        if ell < k and q != 0:
            raise ValueError(
                f"minimal row for {theta} is nonzero on class {t} with "
                f"overlap {ell} < {k}"
            )
        term = (
            Fraction(valency(t, n, m))
            * first_by_type[key]
            * q
            * q
            / (v * (m - 1) * mult)
        )
        bucket = "lt" if ell < k else ("eq" if ell == k else "gt")
        parts[bucket] += term
    bound_eq = Fraction(k, n)
    bound_gt = Fraction(2 * n ** (2 * k + 3), m)
    if parts["eq"] > bound_eq:
        raise ValueError(
            f"matching-overlap portion {parts['eq']} exceeds its bound "
            f"{bound_eq} at theta={theta}, n={n}, m={m}"
        )
    gt_holds = parts["gt"] <= bound_gt
    gt_asserted = m > n + n**3
    if gt_asserted and not gt_holds:
        raise ValueError(
            f"tail portion {parts['gt']} exceeds its bound {bound_gt} "
            f"at theta={theta}, n={n}, m={m} despite m > n + n^3"
        )
    return EtaReport(
        n=n,
        m=m,
        k=k,
        theta=theta,
        total=parts["lt"] + parts["eq"] + parts["gt"],
        part_lt=parts["lt"],
        part_eq=parts["eq"],
        part_gt=parts["gt"],
        bound_eq=bound_eq,
        bound_gt=bound_gt,
        gt_bound_holds=gt_holds,
        gt_bound_asserted=gt_asserted,
    )


# ------------------------------------------------------- adversary operator


def gamma_spectrum(n: int, m: int) -> dict:
    """Eigenvalue of the adversary operator on each of its labels: the
    small label built from theta gets 1 - |theta|/sqrt(n), for |theta| up
    to sqrt(n) inclusive (so the boundary labels carry eigenvalue zero)."""
    root = isqrt(n)
    if root * root != n:
        raise ValueError(f"n must be a perfect square, got {n}")
    out = {}
    for k in range(root + 1):
        for theta in partitions_of(k):
            if theta and n - k < theta[0]:
                continue
            out[minimal_label(theta, n, m)] = Fraction(root - k, root)
    return out


def pi_gamma_support(n: int, m: int) -> list:
    """Labels spanning the image of the adversary operator: small labels
    whose shape has k cells below the first row with k^2 < n.  Defined for
    any n; squareness only matters for the eigenvalues themselves."""
    out = []
    k = 0
    while k * k < n:
        for theta in partitions_of(k):
            out.append(minimal_label(theta, n, m))
        k += 1
    return out


def gamma_class_values(n: int, m: int) -> dict:
    """Entry of the adversary operator on each class (it is constant on
    classes): one over v times the eigenvalue-weighted sum of dual rows."""
    v = number_of_elements(n, m)
    spectrum = gamma_spectrum(n, m)
    rows = {}
    for label, coeff in spectrum.items():
        if coeff == 0:
            continue
        theta = tuple(label.mu[1:])
        rows[label] = (dual_row_minimal(theta, n, m), coeff)
    values = {
        tuple(t): Fraction(0) for t in cycle_path_types(n, m)
    }
    for row, coeff in rows.values():
        for t, q in row.items():
            values[tuple(t)] += coeff * q / v
    return values


# ----------------------------------------------------- trace propositions


class Prop52Report(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    supported: bool


def prop52_check(lam_n, lam_prime, n: int, m: int, oracle=None) -> Prop52Report:
    """Compare the support-projected trace of the Schur product of a label's
    target matrix with the first label's target matrix (lhs) against the
    single-idempotent trace at the widened small label (rhs).

    They agree when the shape below the first row of lam_n has fewer than
    sqrt(n) cells, which puts that small label inside the support; outside
    the support the lhs vanishes while the rhs need not.
    """
    lam_n = check_partition(lam_n)
    lam_prime = check_partition(lam_prime)
    b = IrrepLabel(lam_n, lam_prime)
    if not is_scheme_irrep(b, n, m):
        raise ValueError(
            f"{lam_prime} does not cover {lam_n} by a horizontal strip "
            f"of size {m - n}"
        )
    if oracle is None:
        from .oracle import SchemeOracle

        oracle = SchemeOracle(n, m)
    row_b = oracle.dual_row_group_sum(b)
    nu = tuple(lam_n[1:])
    a = minimal_label(nu, n, m)
    row_a = oracle.dual_row_group_sum(a)
    lhs = Fraction(0)
    for support_label in pi_gamma_support(n, m):
        row_s = oracle.dual_row_group_sum(support_label)
        lhs += _schur_trace(row_s, row_b, n, m)
    rhs = _schur_trace(row_a, row_b, n, m)
    return Prop52Report(lhs=lhs, rhs=rhs, supported=sum(nu) ** 2 < n)


def _schur_trace(row_a, row_b, n: int, m: int) -> Fraction:
    """Tr[E_a (T_b o T_first)] / v through class sums: the Schur product of
    target matrices has class values q_first q_b / ((m-1) mult_b)."""
    v = number_of_elements(n, m)
    first = dual_row_first(n, m)
    first_by_type = {tuple(t): val for t, val in first.items()}
    b_by_type = {tuple(t): val for t, val in row_b.items()}
    a_by_type = {tuple(t): val for t, val in row_a.items()}
    mult_b = _row_multiplicity(row_b, n, m)
    acc = Fraction(0)
    for t in cycle_path_types(n, m):
        key = tuple(t)
        acc += (
            Fraction(valency(t, n, m))
            * a_by_type[key]
            * first_by_type[key]
            * b_by_type[key]
        )
    return acc / (v * (m - 1) * mult_b)


def _row_multiplicity(row, n: int, m: int) -> Fraction:
    """A dual row's value on the identity class is the multiplicity."""
    ident = CyclePathType((1,) * n, ())
    for t, val in row.items():
        if tuple(t) == tuple(ident):
            return val
    raise ValueError("row has no identity-class entry")


class TraceBoundReport(NamedTuple):
    trace: Fraction
    bound: Fraction
    is_self: bool


def lambdabar_trace_check(lam_prime, lam_n, n: int, m: int, oracle=None) -> TraceBoundReport:
    """Exact trace of the widened-label idempotent against the Schur product
    of the first-label and lam_n x lam_prime target matrices, with the
    dimension-ratio bound the trace must respect whenever lam_prime differs
    from the widened partner.

    Requires lam_n to keep at most sqrt(n) cells below its first row.
    """
    lam_n = check_partition(lam_n)
    lam_prime = check_partition(lam_prime)
    nu = tuple(lam_n[1:])
    k = sum(nu)
    if k * k > n:
        raise ValueError(
            f"shape {lam_n} has {k} cells below the first row, more than "
            f"sqrt({n})"
        )
    a = minimal_label(nu, n, m)
    bar = a.lam
    if oracle is None:
        from .oracle import SchemeOracle

        oracle = SchemeOracle(n, m)
    b = IrrepLabel(lam_n, lam_prime)
    if not is_scheme_irrep(b, n, m):
        raise ValueError(
            f"{lam_prime} does not cover {lam_n} by a horizontal strip "
            f"of size {m - n}"
        )
    row_a = oracle.dual_row_group_sum(a)
    row_b = oracle.dual_row_group_sum(b)
    trace = _schur_trace(row_a, row_b, n, m)
    bound = Fraction(dimension(bar), dimension(lam_prime))
    is_self = lam_prime == bar
    if not is_self and trace > bound:
        raise ValueError(
            f"trace {trace} exceeds the dimension-ratio bound {bound} at "
            f"lam={lam_n}, lam_prime={lam_prime}, n={n}, m={m}"
        )
    return TraceBoundReport(trace=trace, bound=bound, is_self=is_self)


# ----------------------------------------------------------- eta and bound


def coherent_eta(n: int, m: int) -> Fraction:
    """Support-projected trace of the coherent target matrix, using its
    decomposition into the trivial and first labels with weights n/m and
    1 - n/m; comes out to n/m."""
    v = number_of_elements(n, m)
    first = dual_row_first(n, m)
    first_by_type = {tuple(t): val for t, val in first.items()}
    weight = Fraction(n, m)
    total = Fraction(0)
    for label in pi_gamma_support(n, m):
        theta = tuple(label.mu[1:])
        row = dual_row_minimal(theta, n, m)
        for t, q in row.items():
            key = tuple(t)
            r = weight + (1 - weight) * first_by_type[key] / (m - 1)
            total += Fraction(valency(t, n, m)) * q * r
    return total / v


def adversary_bound(n: int, m: int, epsilon, eta, delta_norm: float) -> float:
    """Query lower bound (sqrt(1 - epsilon) - sqrt(eta))^2 / (2 norm)."""
    epsilon = Fraction(epsilon)
    eta = Fraction(eta)
    if not 0 <= epsilon < 1:
        raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
    if eta < 0:
        raise ValueError(f"eta must be nonnegative, got {eta}")
    if delta_norm <= 0:
        raise ValueError(f"norm must be positive, got {delta_norm}")
    if eta > 1 - epsilon:
        raise ValueError(
            f"bound is vacuous: eta = {eta} exceeds 1 - epsilon = "
            f"{1 - epsilon}"
        )
    numerator = (math.sqrt(1 - epsilon) - math.sqrt(eta)) ** 2
    return numerator / (2 * delta_norm)


def delta_gamma_norm(
    x: int,
    n: int,
    m: int,
    oracle=None,
    max_iter: int = 20000,
    tol: float = 1e-13,
    seed: int = 0,
) -> float:
    """Spectral norm of the adversary operator masked to pairs differing at
    position x, by power iteration on the squared matrix (floats built from
    the exact class values)."""
    if not 1 <= x <= n:
        raise ValueError(f"position must lie in 1..{n}, got {x}")
    if oracle is None:
        from .oracle import SchemeOracle

        oracle = SchemeOracle(n, m)
    values = gamma_class_values(n, m)
    per_class = np.array(
        [float(values[tuple(t)]) for t in oracle.classes], dtype=np.float64
    )
    G = per_class[oracle.class_matrix()]
    col = np.fromiter(
        (f[x - 1] for f in oracle.functions), dtype=np.int64, count=oracle.v
    )
    mask = col[:, None] != col[None, :]
    M = np.where(mask, G, 0.0)
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(oracle.v)
    vec /= np.linalg.norm(vec)
    prev = None
    streak = 0
    for _ in range(max_iter):
        w = M @ (M @ vec)
        lam = float(vec @ w)
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            return 0.0
        vec = w / norm_w
        if prev is not None and abs(lam - prev) <= tol * max(1.0, abs(lam)):
            streak += 1
            if streak >= 3:
                return math.sqrt(max(lam, 0.0))
        else:
            streak = 0
        prev = lam
    raise RuntimeError(
        f"power iteration did not converge in {max_iter} steps"
    )


# ----------------------------------------------------- counting identities


class IdentityReport(NamedTuple):
    lhs: Fraction
    rhs: Fraction


def class_volume_identity(n: int, m: int, ell: int) -> IdentityReport:
    """Total valency of the classes with a given overlap: number of
    functions whose image meets the domain in exactly ell points."""
    if not 0 <= ell <= n:
        raise ValueError(f"overlap must lie in 0..{n}, got {ell}")
    lhs = sum(
        valency(t, n, m)
        for t in cycle_path_types(n, m)
        if overlap(t, n) == ell
    )
    rhs = (
        factorial(ell)
        * comb(n, ell) ** 2
        * falling_factorial(m - n, n - ell)
    )
    return IdentityReport(Fraction(lhs), Fraction(rhs))


def reduced_class(t, n: int) -> CyclePathType:
    """Class of the small scheme obtained by shortening every path by one
    step; lives on overlap-many points of the domain."""
    t = CyclePathType(*t)
    return CyclePathType(t.cycles, strip_first_column(t.paths))


def valency_ratio_identity(t, n: int, m: int) -> IdentityReport:
    """A class valency against the matching valency in the small scheme on
    overlap-of-n points, scaled by binomial(n, k) (m - n falling n - k)."""
    t = CyclePathType(*t)
    k = overlap(t, n)
    small = reduced_class(t, n)
    lhs = Fraction(valency(t, n, m))
    rhs = Fraction(
        comb(n, k)
        * falling_factorial(m - n, n - k)
        * valency(small, k, n)
    )
    return IdentityReport(lhs, rhs)


def small_scheme_norm_identity(theta, n: int) -> IdentityReport:
    """Weighted square sum of the widened-label row of the scheme on
    |theta|-of-n points equals (n falling k) d_theta d_{(n-k,theta)}."""
    theta = check_partition(theta)
    k = sum(theta)
    if k == 0:
        return IdentityReport(Fraction(1), Fraction(1))
    row = dual_row_maximal(theta, k, n)
    lhs = sum(
        Fraction(valency(t, k, n)) * q * q for t, q in row.items()
    )
    rhs = Fraction(
        falling_factorial(n, k)
        * dimension(theta)
        * dimension(prepend_partition(theta, n))
    )
    return IdentityReport(lhs, rhs)


def minimal_value_bound_check(theta, n: int, m: int) -> list:
    """Violations of the pointwise bound on minimal-label row values over
    classes with overlap above |theta|:
    |q| <= d_{(m-k,theta)} d_{(n-k,theta)} (ell falling k)/(n falling k).
    Empty list when the bound holds everywhere."""
    theta = check_partition(theta)
    k = sum(theta)
    label = minimal_label(theta, n, m)
    row = dual_row_minimal(theta, n, m)
    scale = Fraction(
        dimension(label.lam) * dimension(label.mu), falling_factorial(n, k)
    )
    violations = []
    for t, q in row.items():
        ell = overlap(t, n)
        if ell <= k:
            continue
        bound = scale * falling_factorial(ell, k)
        if abs(q) > bound:
            violations.append((t, q, bound))
    return violations


def minimal_row_correspondence_check(theta, n: int, m: int) -> list:
    """Violations of the single-assignment identity on classes whose
    overlap equals |theta|: the minimal-row value there is the small-scheme
    widened row at the reduced class, scaled by
    d_{(m-k,theta)} / (binomial(n,k) d_theta).  Empty list when exact."""
    theta = check_partition(theta)
    k = sum(theta)
    if k == 0:
        return []
    label = minimal_label(theta, n, m)
    row = dual_row_minimal(theta, n, m)
    small_row = dual_row_maximal(theta, k, n)
    small_by_type = {tuple(t): val for t, val in small_row.items()}
    scale = Fraction(dimension(label.lam), comb(n, k) * dimension(theta))
    violations = []
    for t, q in row.items():
        if overlap(t, n) != k:
            continue
        expected = scale * small_by_type[tuple(reduced_class(t, n))]
        if q != expected:
            violations.append((t, q, expected))
    return violations
