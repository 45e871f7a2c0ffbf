"""Evaluators for the CHSH, Bell, Bell-CHSH, basic and Wigner inequalities.

Every inequality is normalized to a "first member": the expression F in the
rewritten form ``F >= 0``, so a strictly negative value signals violation.
Values within VIOLATION_TOL of zero are treated as boundary points, not
violations.

Two sign conventions for the CHSH combination circulate, differing only by
relabeling the third and fourth polarizers:

    minus-e14:  E13 - E14 + E23 + E24
    minus-e13: -E13 + E14 + E23 + E24

Both are exposed; grid scans default to minus-e13 while the worked
single-point example is violated under minus-e14.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Mapping

from .errors import InvalidInputError
from .trig_model import AngleSet, pair_expectation

#: Strict-negativity threshold below which a first member counts as violated.
VIOLATION_TOL = 1e-12

#: Signs applied to (E13, E14, E23, E24).
SIGN_PATTERNS: dict[str, tuple[int, int, int, int]] = {
    "minus-e14": (+1, -1, +1, +1),
    "minus-e13": (-1, +1, +1, +1),
}

DEFAULT_SCAN_PATTERN = "minus-e13"

#: Default grid axis values: k*pi/16 for k = 1..7.
DEFAULT_GRID_VALUES: tuple[float, ...] = tuple(k * math.pi / 16 for k in range(1, 8))

SCAN_KINDS = ("chsh", "bell", "bell_chsh", "basic", "wigner_prob")


def pattern_signs(pattern: str) -> tuple[int, int, int, int]:
    """The signs a named convention applies to (E13, E14, E23, E24)."""
    try:
        return SIGN_PATTERNS[pattern]
    except KeyError:
        raise InvalidInputError(
            f"unknown sign pattern {pattern!r}; choose from {sorted(SIGN_PATTERNS)}"
        ) from None


@dataclass(frozen=True)
class ExpectationQuad:
    """The four pair expectations entering the CHSH combination."""

    e13: float
    e14: float
    e23: float
    e24: float

    @classmethod
    def from_angles(cls, angles: AngleSet) -> "ExpectationQuad":
        return cls(*(pair_expectation(tb) for tb in angles.measured_thetabars()))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.e13, self.e14, self.e23, self.e24)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of evaluating one inequality at one parameter point."""

    kind: str
    first_member: float
    violated: bool
    components: Mapping[str, float | str] = field(default_factory=dict)


def chsh_combination(e: ExpectationQuad) -> float:
    """E13 - E14 + E23 + E24 (the minus-e14 convention)."""
    return e.e13 - e.e14 + e.e23 + e.e24


def signed_combination(e: ExpectationQuad, pattern: str = "minus-e14") -> float:
    s = pattern_signs(pattern)
    return sum(si * ei for si, ei in zip(s, e.as_tuple()))


def chsh_first_member(angles: AngleSet, pattern: str = DEFAULT_SCAN_PATTERN) -> InequalityReport:
    """2 - |signed combination of the four cos(2*thetabar) values|."""
    quad = ExpectationQuad.from_angles(angles)
    combination = signed_combination(quad, pattern)
    first = 2.0 - abs(combination)
    return InequalityReport(
        kind="chsh",
        first_member=first,
        violated=first < -VIOLATION_TOL,
        components={
            "e13": quad.e13,
            "e14": quad.e14,
            "e23": quad.e23,
            "e24": quad.e24,
            "combination": combination,
            "pattern": pattern,
        },
    )


def _validate_distribution(dist: Mapping[tuple[int, ...], float], n_vars: int) -> None:
    """Reject anything that is not a genuine law over {-1,+1}^n."""
    if n_vars not in (2, 3):
        raise InvalidInputError(f"distributions over 2 or 3 variables only, got {n_vars}")
    total = 0.0
    for outcome, mass in dist.items():
        if len(outcome) != n_vars or any(z not in (-1, +1) for z in outcome):
            raise InvalidInputError(f"bad outcome {outcome!r} for {n_vars} variables")
        if mass < -VIOLATION_TOL:
            raise InvalidInputError(f"negative mass {mass!r} at {outcome!r}")
        total += mass
    if abs(total - 1.0) > 1e-9:
        raise InvalidInputError(f"distribution mass {total!r} != 1")


def _expectation(dist: Mapping[tuple[int, ...], float], weight: Callable[[tuple[int, ...]], float]) -> float:
    return sum(weight(outcome) * mass for outcome, mass in dist.items())


def basic_inequality_margins(
    dist: Mapping[tuple[int, ...], float], j: int, k: int
) -> tuple[float, float]:
    """Slacks of 1 -+ E(Zj*Zk) >= |E(Zj) -+ E(Zk)| for a genuine distribution.

    ``dist`` maps outcomes in {-1,+1}^n (n = 2 or 3) to probabilities; j and k
    are 0-based variable positions.  Both returned slacks are >= 0 for any
    distribution satisfying the probability axioms.
    """
    if not dist:
        raise InvalidInputError("empty distribution")
    n_vars = len(next(iter(dist)))
    _validate_distribution(dist, n_vars)
    if not (0 <= j < n_vars and 0 <= k < n_vars and j != k):
        raise InvalidInputError(f"variable positions ({j}, {k}) invalid for {n_vars} variables")
    e_j = _expectation(dist, lambda z: z[j])
    e_k = _expectation(dist, lambda z: z[k])
    e_jk = _expectation(dist, lambda z: z[j] * z[k])
    return (
        (1.0 - e_jk) - abs(e_j - e_k),
        (1.0 + e_jk) - abs(e_j + e_k),
    )


def bell_first_member(
    dist: Mapping[tuple[int, int, int], float], j: int, k: int, l: int
) -> float:
    """(1 - E(Zj*Zl)) - |E(Zj*Zk) - E(Zk*Zl)| for a genuine 3-variable law."""
    _validate_distribution(dist, 3)
    if sorted((j, k, l)) != [0, 1, 2]:
        raise InvalidInputError(f"(j, k, l) must be a permutation of (0, 1, 2), got {(j, k, l)}")
    e_jl = _expectation(dist, lambda z: z[j] * z[l])
    e_jk = _expectation(dist, lambda z: z[j] * z[k])
    e_kl = _expectation(dist, lambda z: z[k] * z[l])
    return (1.0 - e_jl) - abs(e_jk - e_kl)


def bell_chsh_first_member(e: ExpectationQuad) -> float:
    """2 - (|E13 - E14| + |E23 + E24|).

    The sum of one Bell inequality (on variables 3, 1, 4) and a sign-modified
    one (on 3, 2, 4); never larger than the CHSH first member, so a CHSH
    violation forces a violation here.
    """
    return 2.0 - (abs(e.e13 - e.e14) + abs(e.e23 + e.e24))


@dataclass(frozen=True)
class WignerDecomposition:
    """The probability-form CHSH combination split into its two halves.

    half1 = P13(C) + P14(Cbar) - P34(C) and half2 = P34(C) - P23(Cbar) + P24(C),
    each expressible as twice a sum of joint probabilities, so each lies in
    [0, 2] for a genuine distribution.  total = half1 + half2 satisfies
    total = (E13 - E14 + E23 + E24)/2 + 1.
    """

    half1: float
    half2: float
    total: float


def wigner_decomposition(angles: AngleSet) -> WignerDecomposition:
    """Evaluate both Wigner halves under the pair law.

    P(C) = cos^2(thetabar) and P(Cbar) = sin^2(thetabar) for each pair.
    """
    tb13, tb14, tb23, tb24 = angles.measured_thetabars()
    tb34 = angles.thetabar(3, 4)
    p13_c = math.cos(tb13) ** 2
    p14_cbar = math.sin(tb14) ** 2
    p23_cbar = math.sin(tb23) ** 2
    p24_c = math.cos(tb24) ** 2
    p34_c = math.cos(tb34) ** 2
    half1 = p13_c + p14_cbar - p34_c
    half2 = p34_c - p23_cbar + p24_c
    return WignerDecomposition(half1=half1, half2=half2, total=half1 + half2)


def _wigner_report(angles: AngleSet) -> InequalityReport:
    w = wigner_decomposition(angles)
    return InequalityReport(
        kind="wigner_prob",
        first_member=w.total,
        violated=w.total < -VIOLATION_TOL,
        components={"half1": w.half1, "half2": w.half2},
    )


def _bell_report(angles: AngleSet) -> InequalityReport:
    # Bell on the triple (3, 1, 4): every expectation comes from the pair law.
    e34 = pair_expectation(angles.thetabar(3, 4))
    e13 = pair_expectation(angles.thetabar(1, 3))
    e14 = pair_expectation(angles.thetabar(1, 4))
    first = (1.0 - e34) - abs(e13 - e14)
    return InequalityReport(
        kind="bell",
        first_member=first,
        violated=first < -VIOLATION_TOL,
        components={"e34": e34, "e13": e13, "e14": e14},
    )


def _bell_chsh_report(angles: AngleSet) -> InequalityReport:
    quad = ExpectationQuad.from_angles(angles)
    first = bell_chsh_first_member(quad)
    return InequalityReport(
        kind="bell_chsh",
        first_member=first,
        violated=first < -VIOLATION_TOL,
        components={"term13_14": abs(quad.e13 - quad.e14), "term23_24": abs(quad.e23 + quad.e24)},
    )


def _basic_report(angles: AngleSet) -> InequalityReport:
    # Direct application to the pair law: both slacks reduce to 1 -+ cos(2*tb),
    # so the binding margin per pair is 1 - |cos(2*thetabar)|.
    margins = {
        f"pair{j}{k}": 1.0 - abs(pair_expectation(angles.thetabar(j, k)))
        for j, k in ((1, 3), (1, 4), (2, 3), (2, 4))
    }
    first = min(margins.values())
    return InequalityReport(
        kind="basic",
        first_member=first,
        violated=first < -VIOLATION_TOL,
        components=margins,
    )


@dataclass(frozen=True)
class ScanGrid:
    """Cartesian grid over (theta2, theta3, theta4) with theta1 held fixed."""

    theta1: float = 0.0
    theta2_values: tuple[float, ...] = DEFAULT_GRID_VALUES
    theta3_values: tuple[float, ...] = DEFAULT_GRID_VALUES
    theta4_values: tuple[float, ...] = DEFAULT_GRID_VALUES

    def __post_init__(self) -> None:
        for name in ("theta2_values", "theta3_values", "theta4_values"):
            values = getattr(self, name)
            if not values:
                raise InvalidInputError(f"{name} must be non-empty")
            if any(not math.isfinite(v) for v in values):
                raise InvalidInputError(f"{name} contains a non-finite angle")
        if not math.isfinite(self.theta1):
            raise InvalidInputError("theta1 must be finite")

    def __len__(self) -> int:
        return len(self.theta2_values) * len(self.theta3_values) * len(self.theta4_values)

    def points(self) -> Iterator[AngleSet]:
        """Deterministic order: theta2 outer, theta3 middle, theta4 inner."""
        for t2, t3, t4 in product(self.theta2_values, self.theta3_values, self.theta4_values):
            yield AngleSet(self.theta1, t2, t3, t4)


@dataclass(frozen=True)
class ScanRecord:
    angles: AngleSet
    report: InequalityReport


def scan(
    grid: ScanGrid,
    kind: str,
    pattern: str = DEFAULT_SCAN_PATTERN,
) -> list[ScanRecord]:
    """Evaluate one inequality's first member at every grid point.

    Output order matches ScanGrid.points regardless of how the evaluations
    are scheduled.
    """
    if kind == "chsh":
        evaluate = lambda a: chsh_first_member(a, pattern)
    elif kind == "bell":
        evaluate = _bell_report
    elif kind == "bell_chsh":
        evaluate = _bell_chsh_report
    elif kind == "basic":
        evaluate = _basic_report
    elif kind == "wigner_prob":
        evaluate = _wigner_report
    else:
        raise InvalidInputError(f"unknown scan kind {kind!r}; choose from {SCAN_KINDS}")
    return [ScanRecord(angles=a, report=evaluate(a)) for a in grid.points()]
