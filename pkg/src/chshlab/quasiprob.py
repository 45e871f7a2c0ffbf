"""The 16x16 marginal-constraint system and its quasi-probability solutions.

The four measured pair laws stack into a vector p (16 entries).  A signed
weight vector P over the joint outcomes (z1, z2, z3, z4) in {-1,+1}^4 is a
solution of ``sigma @ P == p`` where ``sigma`` is a fixed 0/1 aggregation
matrix: row (pair, outcome) sums the four joint outcomes whose restriction
to that pair equals the outcome.

The coefficient matrix has rank 9 over the rationals, so solutions form a
7-parameter affine family.  ``solve_family`` pins seven chosen joint events
to caller-supplied values and determines the remaining nine entries by the
fixed back-substitution chain documented at FREE_EVENTS / _CHAIN.  Solutions
may break the probability axioms (negative entries, mass != 1); that is
exactly what ``kolmogorov_check`` reports rather than enforces.

Arithmetic modes: entries that are ints or Fractions are processed exactly;
float entries use a 1e-9 pivot threshold for rank and a 1e-10 residual
tolerance when verifying solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Real
from typing import Iterable, Sequence

from .errors import InconsistentSystemError, InvalidInputError
from .trig_model import (
    MEASURED_PAIRS,
    AngleSet,
    pair_distribution,
    pair_distribution_from_cos,
)

#: Joint outcomes (z1, z2, z3, z4), lexicographic with -1 before +1.
JOINT_OUTCOMES: tuple[tuple[int, int, int, int], ...] = tuple(product((-1, +1), repeat=4))

#: Pair outcomes in block order (-,-), (-,+), (+,-), (+,+).
PAIR_OUTCOMES = ((-1, -1), (-1, +1), (+1, -1), (+1, +1))

#: The seven joint events whose weights parameterize the solution family.
FREE_EVENTS: tuple[tuple[int, int, int, int], ...] = (
    (-1, -1, +1, +1),
    (-1, +1, +1, +1),
    (+1, -1, +1, +1),
    (+1, +1, -1, -1),
    (+1, +1, -1, +1),
    (+1, +1, +1, -1),
    (+1, +1, +1, +1),
)

#: Pivot threshold for floating-point rank computations.
FLOAT_PIVOT_TOL = 1e-9

#: Residual tolerance when verifying a floating-point solution.
FLOAT_RESIDUAL_TOL = 1e-10

#: Tolerance for the axiom checks in floating mode.
AXIOM_TOL = 1e-12


def joint_index(z1: int, z2: int, z3: int, z4: int) -> int:
    """Position of a joint outcome in the lexicographic ordering."""
    for z in (z1, z2, z3, z4):
        if z not in (-1, +1):
            raise InvalidInputError(f"joint outcome components must be +-1, got {z!r}")
    return ((z1 > 0) << 3) | ((z2 > 0) << 2) | ((z3 > 0) << 1) | (z4 > 0)


def build_sigma() -> list[list[int]]:
    """The exact 16x16 coefficient matrix.

    Rows iterate pairs (1,3), (1,4), (2,3), (2,4) and, within each pair, the
    outcomes (-,-), (-,+), (+,-), (+,+).  Columns follow JOINT_OUTCOMES.
    """
    rows = []
    for j, k in MEASURED_PAIRS:
        for s, sp in PAIR_OUTCOMES:
            rows.append(
                [1 if (z[j - 1], z[k - 1]) == (s, sp) else 0 for z in JOINT_OUTCOMES]
            )
    return rows


def build_marginals(angles: AngleSet) -> list[float]:
    """Stacked pair distributions for the four measured pairs (floats)."""
    out: list[float] = []
    for tb in angles.measured_thetabars():
        out.extend(pair_distribution(tb).as_tuple())
    return out


def marginals_from_cosines(cosines: Sequence[Real]) -> list[Real]:
    """Stacked pair distributions from the four cos(2*thetabar) values.

    Pass Fractions for the exact dyadic fixtures; floats otherwise.
    """
    if len(cosines) != 4:
        raise InvalidInputError(f"need 4 cosines, got {len(cosines)}")
    out: list[Real] = []
    for c in cosines:
        out.extend(pair_distribution_from_cos(c).as_tuple())
    return out


def _is_exact(values: Iterable) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def rank(matrix: Sequence[Sequence[Real]], pivot_tol: float = FLOAT_PIVOT_TOL) -> int:
    """Rank by Gaussian elimination.

    Exact over the rationals when every entry is an int or Fraction;
    otherwise floating-point with partial pivoting, treating pivots of
    magnitude <= pivot_tol as zero.
    """
    if not matrix:
        return 0
    exact = all(_is_exact(row) for row in matrix)
    if exact:
        m = [[Fraction(x) for x in row] for row in matrix]
        zero_pivot = lambda x: x == 0
    else:
        m = [[float(x) for x in row] for row in matrix]
        zero_pivot = lambda x: abs(x) <= pivot_tol
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        pivot_row = max(range(r, n_rows), key=lambda i: abs(m[i][c]), default=None)
        if pivot_row is None or zero_pivot(m[pivot_row][c]):
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, n_rows):
            if m[i][c] != 0:
                factor = m[i][c] / pivot
                row_i, row_r = m[i], m[r]
                for cc in range(c, n_cols):
                    row_i[cc] -= factor * row_r[cc]
        r += 1
        if r == n_rows:
            break
    return r


def augmented_rank(
    sigma: Sequence[Sequence[Real]],
    p: Sequence[Real],
    pivot_tol: float = FLOAT_PIVOT_TOL,
) -> int:
    """Rank of [sigma | p]; equals rank(sigma) exactly when the system is solvable."""
    if len(p) != len(sigma):
        raise InvalidInputError(f"marginal vector length {len(p)} != {len(sigma)} rows")
    return rank([list(row) + [p[i]] for i, row in enumerate(sigma)], pivot_tol)


@dataclass(frozen=True)
class FreeAssignment:
    """Values for the seven free joint events, in FREE_EVENTS order."""

    values: tuple[Real, ...] = (0,) * 7

    def __post_init__(self) -> None:
        if len(self.values) != 7:
            raise InvalidInputError(f"need 7 free values, got {len(self.values)}")
        for v in self.values:
            if isinstance(v, float) and not math.isfinite(v):
                raise InvalidInputError(f"free values must be finite, got {v!r}")

    @classmethod
    def zeros(cls) -> "FreeAssignment":
        return cls()

    def as_mapping(self) -> dict[tuple[int, int, int, int], Real]:
        return dict(zip(FREE_EVENTS, self.values))


@dataclass(frozen=True)
class QuasiDistribution:
    """Sixteen signed weights over the joint outcomes (JOINT_OUTCOMES order).

    Entries may be negative and need not sum to 1; use kolmogorov_check to
    report which axioms hold.
    """

    weights: tuple[Real, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != 16:
            raise InvalidInputError(f"need 16 weights, got {len(self.weights)}")

    def __getitem__(self, outcome: tuple[int, int, int, int]) -> Real:
        return self.weights[joint_index(*outcome)]

    def total_mass(self) -> Real:
        return sum(self.weights)

    def is_exact(self) -> bool:
        return _is_exact(self.weights)


@dataclass(frozen=True)
class KolmogorovReport:
    """Axiom audit of a quasi-distribution.

    nonneg_ok and total_ok are exact when the weights are rational and use
    AXIOM_TOL otherwise.
    """

    min_entry: Real
    negative_outcomes: tuple[tuple[int, int, int, int], ...]
    total_mass: Real
    nonneg_ok: bool
    total_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.nonneg_ok and self.total_ok


# Back-substitution chain: each step determines one joint event from one pair
# marginal minus three already-known events.  Entries are
# (target event, (pair index, outcome index), three prior events).
_CHAIN = (
    ((+1, -1, +1, -1), (0, 3), ((+1, -1, +1, +1), (+1, +1, +1, -1), (+1, +1, +1, +1))),
    ((-1, +1, +1, -1), (2, 3), ((+1, +1, +1, -1), (-1, +1, +1, +1), (+1, +1, +1, +1))),
    ((+1, -1, -1, +1), (1, 3), ((+1, +1, -1, +1), (+1, -1, +1, +1), (+1, +1, +1, +1))),
    ((-1, +1, -1, +1), (3, 3), ((-1, +1, +1, +1), (+1, +1, -1, +1), (+1, +1, +1, +1))),
    ((+1, -1, -1, -1), (0, 2), ((+1, -1, -1, +1), (+1, +1, -1, -1), (+1, +1, -1, +1))),
    ((-1, +1, -1, -1), (2, 2), ((-1, +1, -1, +1), (+1, +1, -1, -1), (+1, +1, -1, +1))),
    ((-1, -1, -1, +1), (3, 1), ((-1, -1, +1, +1), (+1, -1, -1, +1), (+1, -1, +1, +1))),
    ((-1, -1, +1, -1), (0, 1), ((-1, -1, +1, +1), (-1, +1, +1, -1), (-1, +1, +1, +1))),
    ((-1, -1, -1, -1), (0, 0), ((-1, -1, -1, +1), (-1, +1, -1, -1), (-1, +1, -1, +1))),
)


def apply_sigma(weights: Sequence[Real]) -> list[Real]:
    """sigma @ weights: the 16 stacked pair marginals induced by the weights."""
    if len(weights) != 16:
        raise InvalidInputError(f"need 16 weights, got {len(weights)}")
    sigma = build_sigma()
    return [sum(row[c] * weights[c] for c in range(16) if row[c]) for row in sigma]


def solve_family(
    p: Sequence[Real],
    free: FreeAssignment | None = None,
    residual_tol: float = FLOAT_RESIDUAL_TOL,
) -> QuasiDistribution:
    """The unique solution with the seven free events pinned to ``free``.

    Works exactly when p and the free values are rational, in floating point
    otherwise.  Raises InconsistentSystemError when p admits no solution
    (equivalently, when the augmented rank exceeds 9).
    """
    if len(p) != 16:
        raise InvalidInputError(f"need 16 marginal entries, got {len(p)}")
    free = free or FreeAssignment.zeros()
    values: dict[tuple[int, int, int, int], Real] = free.as_mapping()
    for target, (pair_i, out_i), known in _CHAIN:
        values[target] = p[4 * pair_i + out_i] - sum(values[e] for e in known)
    weights = tuple(values[z] for z in JOINT_OUTCOMES)

    # The chain enforces nine independent constraints; the remaining seven
    # hold iff the system is consistent, so a residual check is equivalent
    # to comparing ranks.
    residual = [lhs - rhs for lhs, rhs in zip(apply_sigma(weights), p)]
    exact = _is_exact(weights) and _is_exact(p)
    bad = any(r != 0 for r in residual) if exact else any(abs(r) > residual_tol for r in residual)
    if bad:
        raise InconsistentSystemError(
            "marginal vector is not consistent with any joint weight vector "
            f"(max residual {max(abs(r) for r in residual)!r})"
        )
    return QuasiDistribution(weights)


def kolmogorov_check(q: QuasiDistribution) -> KolmogorovReport:
    """Report both axioms: nonnegativity of every entry and total mass 1."""
    exact = q.is_exact()
    tol = 0 if exact else AXIOM_TOL
    min_entry = min(q.weights)
    negatives = tuple(
        z for z, w in zip(JOINT_OUTCOMES, q.weights) if w < -tol
    )
    total = q.total_mass()
    nonneg_ok = min_entry >= -tol
    total_ok = (total == 1) if exact else abs(total - 1) <= tol
    return KolmogorovReport(
        min_entry=min_entry,
        negative_outcomes=negatives,
        total_mass=total,
        nonneg_ok=nonneg_ok,
        total_ok=total_ok,
    )


def abs_variant(q: QuasiDistribution) -> QuasiDistribution:
    """Elementwise absolute value of the weights."""
    return QuasiDistribution(tuple(abs(w) for w in q.weights))


def expectations_from_quasi(q: QuasiDistribution) -> tuple[Real, Real, Real, Real]:
    """Pair expectations (E13, E14, E23, E24) induced by the weights.

    Applies the outcome signs (+1, -1, -1, +1) blockwise to sigma @ q.
    """
    stacked = apply_sigma(q.weights)
    return tuple(
        stacked[4 * b] - stacked[4 * b + 1] - stacked[4 * b + 2] + stacked[4 * b + 3]
        for b in range(4)
    )


def chsh_from_quasi(q: QuasiDistribution) -> Real:
    """E13 - E14 + E23 + E24 from the induced pair expectations."""
    e13, e14, e23, e24 = expectations_from_quasi(q)
    return e13 - e14 + e23 + e24
