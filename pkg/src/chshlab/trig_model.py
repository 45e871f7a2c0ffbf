"""Closed-form probability law for one polarizer pair.

A pair of entangled photons meets two polarizers whose orientations differ
by an angle ``thetabar``.  Each photon either crosses its polarizer (+1) or
is blocked (-1).  The joint law depends only on ``thetabar``:

    P(z, z') = cos^2(thetabar) / 2   if z == z'   (classes C)
             = sin^2(thetabar) / 2   if z != z'   (classes C-bar)

Convention fixed here: ``thetabar(j, k) = theta_k - theta_j``.  Every use of
the law passes through ``cos(2*thetabar)``, which is even, so the opposite
sign convention found in parts of the literature gives identical values
(tested as the evenness property).

Angles are plain radians; no wrapping is performed.  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .errors import InvalidInputError

#: Absolute tolerance for floating probability checks.
PROB_TOL = 1e-12

#: Valid detector outcomes: blocked / passed.
OUTCOMES = (-1, +1)

#: Simulator alphabet: 0 marks a photon absent from a route.
EXTENDED_OUTCOMES = (-1, 0, +1)

#: The four polarizer pairs measured in the experiment, as (j, k) indices.
MEASURED_PAIRS = ((1, 3), (1, 4), (2, 3), (2, 4))


def _check_finite_angle(value: float, name: str = "angle") -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")
    return value


def _check_outcome(z: int, name: str = "outcome") -> int:
    if z not in OUTCOMES:
        raise InvalidInputError(f"{name} must be -1 or +1, got {z!r}")
    return z


@dataclass(frozen=True)
class AngleSet:
    """The four polarizer orientations, in radians.

    ``thetabar(j, k)`` is the difference ``theta_k - theta_j`` for any ordered
    pair of indices in 1..4.  ``vartheta(j, k)`` is the route-indexed variant
    used by the path model: ``theta'_k - theta_j`` with ``theta'_1 = theta3``
    and ``theta'_2 = theta4``, so the route pairs (1,1), (1,2), (2,1), (2,2)
    map onto the measured pairs (1,3), (1,4), (2,3), (2,4).
    """

    theta1: float
    theta2: float
    theta3: float
    theta4: float

    def __post_init__(self) -> None:
        for name in ("theta1", "theta2", "theta3", "theta4"):
            object.__setattr__(self, name, _check_finite_angle(getattr(self, name), name))

    def theta(self, j: int) -> float:
        if j not in (1, 2, 3, 4):
            raise InvalidInputError(f"polarizer index must be in 1..4, got {j!r}")
        return (self.theta1, self.theta2, self.theta3, self.theta4)[j - 1]

    def thetabar(self, j: int, k: int) -> float:
        """Angle difference theta_k - theta_j (antisymmetric in j, k)."""
        return self.theta(k) - self.theta(j)

    def vartheta(self, j: int, k: int) -> float:
        """Route-indexed difference theta'_k - theta_j for j, k in {1, 2}."""
        if j not in (1, 2) or k not in (1, 2):
            raise InvalidInputError(f"route indices must be in {{1, 2}}, got ({j!r}, {k!r})")
        return self.theta(k + 2) - self.theta(j)

    def measured_thetabars(self) -> tuple[float, float, float, float]:
        """The differences for the four measured pairs, in MEASURED_PAIRS order."""
        return tuple(self.thetabar(j, k) for j, k in MEASURED_PAIRS)


@dataclass(frozen=True)
class PairDistribution:
    """Joint law of one polarizer pair over {-1,+1}^2.

    Field order is (-1,-1), (-1,+1), (+1,-1), (+1,+1).  Entries may be floats
    or exact Fractions; when built from the pair law they satisfy
    p_mm == p_pp and p_mp == p_pm.
    """

    p_mm: Real
    p_mp: Real
    p_pm: Real
    p_pp: Real

    def as_tuple(self) -> tuple[Real, Real, Real, Real]:
        return (self.p_mm, self.p_mp, self.p_pm, self.p_pp)

    def probability(self, zj: int, zk: int) -> Real:
        _check_outcome(zj, "zj")
        _check_outcome(zk, "zk")
        return self.as_tuple()[(zj > 0) * 2 + (zk > 0)]

    def expectation(self) -> Real:
        """E(Zj * Zk) under this law."""
        return self.p_mm - self.p_mp - self.p_pm + self.p_pp

    def validate(self, tol: float = PROB_TOL) -> None:
        total = sum(self.as_tuple())
        for name, p in zip(("p_mm", "p_mp", "p_pm", "p_pp"), self.as_tuple()):
            if p < -tol or p > 1 + tol:
                raise InvalidInputError(f"{name}={p!r} outside [0, 1]")
        if abs(total - 1) > tol:
            raise InvalidInputError(f"entries sum to {total!r}, expected 1")


def pair_probability(zj: int, zk: int, thetabar: float) -> float:
    """Probability of the outcome pair (zj, zk) at angle difference thetabar."""
    _check_outcome(zj, "zj")
    _check_outcome(zk, "zk")
    thetabar = _check_finite_angle(thetabar, "thetabar")
    if zj == zk:
        return math.cos(thetabar) ** 2 / 2.0
    return math.sin(thetabar) ** 2 / 2.0


def pair_distribution(thetabar: float) -> PairDistribution:
    """The four-entry joint law at angle difference thetabar."""
    thetabar = _check_finite_angle(thetabar, "thetabar")
    equal = math.cos(thetabar) ** 2 / 2.0
    unequal = math.sin(thetabar) ** 2 / 2.0
    return PairDistribution(equal, unequal, unequal, equal)


def pair_distribution_from_cos(cos_two_thetabar: Real) -> PairDistribution:
    """Joint law expressed through c = cos(2*thetabar).

    Uses cos^2 = (1 + c)/2 and sin^2 = (1 - c)/2, so passing an exact
    Fraction c yields an exact dyadic distribution.
    """
    if isinstance(cos_two_thetabar, float) and not math.isfinite(cos_two_thetabar):
        raise InvalidInputError(f"cosine must be finite, got {cos_two_thetabar!r}")
    if not -1 <= cos_two_thetabar <= 1:
        raise InvalidInputError(f"cosine must lie in [-1, 1], got {cos_two_thetabar!r}")
    one = Fraction(1) if isinstance(cos_two_thetabar, (Fraction, int)) else 1.0
    equal = (one + cos_two_thetabar) / 4
    unequal = (one - cos_two_thetabar) / 4
    return PairDistribution(equal, unequal, unequal, equal)


def pair_expectation(thetabar: float) -> float:
    """E(Zj * Zk) = cos(2 * thetabar)."""
    thetabar = _check_finite_angle(thetabar, "thetabar")
    return math.cos(2.0 * thetabar)


def single_marginal(z: int, thetabar: float) -> float:
    """Marginal P(Zj = z): one row of the pair law, equal to 1/2 at any angle."""
    _check_outcome(z, "z")
    thetabar = _check_finite_angle(thetabar, "thetabar")
    return pair_probability(z, -1, thetabar) + pair_probability(z, +1, thetabar)
