"""Joint law over outcomes and mirror routes, and the bounded CHSH form.

Each photon meets a semitransparent mirror before any polarizer.  Route
variables W1, W2 record the choice: W = 1 means the photon passes the
mirror, W = 2 means it is deflected; photon k is deflected with probability
p_k.  The route pair selects which polarizer pair is actually measured, and
the two photons absent from the selected routes are recorded as 0.

Conditional on (w1, w2), the outcome pair follows the plain pair law at the
route-indexed angle difference vartheta(w1, w2), so conditional expectations
are cos(2*vartheta).  The unconditional expectation of Zj*Z'k carries the
route weights and is therefore bounded by P(W1=j)*P(W2=k); summing the
weights shows the route-weighted CHSH combination can never exceed 1 in
magnitude, leaving the first member at or above 1 for every parameter
choice.  Dropping the weights (the unconstrained naive form) allows the
combination to reach 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from .errors import InvalidInputError
from .inequalities import VIOLATION_TOL, InequalityReport, pattern_signs
from .trig_model import EXTENDED_OUTCOMES, AngleSet, pair_probability

#: Route values: passed the mirror / deflected by it.
ROUTE_PASSED = 1
ROUTE_DEFLECTED = 2
ROUTES = (ROUTE_PASSED, ROUTE_DEFLECTED)


@dataclass(frozen=True)
class PathParams:
    """Deflection probabilities of the two mirrors."""

    p1: float = 0.5
    p2: float = 0.5

    def __post_init__(self) -> None:
        for name in ("p1", "p2"):
            p = getattr(self, name)
            if not (isinstance(p, (int, float)) and math.isfinite(p) and 0 <= p <= 1):
                raise InvalidInputError(f"{name} must lie in [0, 1], got {p!r}")

    def route_probability(self, k: int, w: int) -> float:
        """P(W_k = w): p_k when deflected, 1 - p_k when passed."""
        if k not in (1, 2):
            raise InvalidInputError(f"photon index must be 1 or 2, got {k!r}")
        if w not in ROUTES:
            raise InvalidInputError(f"route must be 1 or 2, got {w!r}")
        p = self.p1 if k == 1 else self.p2
        return p if w == ROUTE_DEFLECTED else 1.0 - p


# For each route pair: ((positions that carry the outcome), (positions that
# must be absent)) within the tuple (z1, z2, z1p, z2p).
_SUPPORT = {
    (1, 1): ((0, 2), (1, 3)),
    (1, 2): ((0, 3), (1, 2)),
    (2, 1): ((1, 2), (0, 3)),
    (2, 2): ((1, 3), (0, 2)),
}


def joint_probability(
    z1: int,
    z2: int,
    z1p: int,
    z2p: int,
    w1: int,
    w2: int,
    params: PathParams,
    angles: AngleSet,
) -> float:
    """P(z1, z2, z1p, z2p, w1, w2) under the route-aware joint law.

    Zero for any tuple whose absent-photon coordinates are not 0 or whose
    active coordinates are not +-1; the z alphabet is {-1, 0, +1} and routes
    are {1, 2}.
    """
    zs = (z1, z2, z1p, z2p)
    for z in zs:
        if z not in EXTENDED_OUTCOMES:
            raise InvalidInputError(f"outcomes must be in {EXTENDED_OUTCOMES}, got {z!r}")
    if w1 not in ROUTES or w2 not in ROUTES:
        raise InvalidInputError(f"routes must be in {ROUTES}, got ({w1!r}, {w2!r})")
    active, absent = _SUPPORT[(w1, w2)]
    if any(zs[i] != 0 for i in absent) or any(zs[i] == 0 for i in active):
        return 0.0
    weight = params.route_probability(1, w1) * params.route_probability(2, w2)
    return weight * pair_probability(zs[active[0]], zs[active[1]], angles.vartheta(w1, w2))


def conditional_expectation(w1: int, w2: int, angles: AngleSet) -> float:
    """E(Z_w1 * Z'_w2 | W1 = w1, W2 = w2) = cos(2 * vartheta(w1, w2))."""
    if w1 not in ROUTES or w2 not in ROUTES:
        raise InvalidInputError(f"routes must be in {ROUTES}, got ({w1!r}, {w2!r})")
    return math.cos(2.0 * angles.vartheta(w1, w2))


def unconditional_expectation(j: int, k: int, params: PathParams, angles: AngleSet) -> float:
    """E(Zj * Z'k) = P(W1 = j) * P(W2 = k) * cos(2 * vartheta(j, k))."""
    return (
        params.route_probability(1, j)
        * params.route_probability(2, k)
        * conditional_expectation(j, k, angles)
    )


def weighted_combination(
    params: PathParams, angles: AngleSet, pattern: str = "minus-e14"
) -> float:
    """Signed combination of the four route-weighted expectations.

    Its magnitude never exceeds 1 because the route weights sum to 1 and each
    cosine is bounded by 1.
    """
    signs = pattern_signs(pattern)
    terms = (
        unconditional_expectation(1, 1, params, angles),
        unconditional_expectation(1, 2, params, angles),
        unconditional_expectation(2, 1, params, angles),
        unconditional_expectation(2, 2, params, angles),
    )
    return sum(s * t for s, t in zip(signs, terms))


def bounded_chsh_first_member(
    params: PathParams, angles: AngleSet, pattern: str = "minus-e14"
) -> InequalityReport:
    """2 - |weighted combination|; guaranteed >= 1 for every input."""
    combination = weighted_combination(params, angles, pattern)
    first = 2.0 - abs(combination)
    return InequalityReport(
        kind="chsh_conditional",
        first_member=first,
        violated=first < -VIOLATION_TOL,
        components={"combination": combination, "p1": params.p1, "p2": params.p2},
    )


@dataclass(frozen=True)
class NaiveCombinationMax:
    """Supremum of the unweighted combination over unconstrained varthetas."""

    value: float
    witness_varthetas: tuple[float, float, float, float]
    witness_cosines: tuple[float, float, float, float]


def naive_combination_max() -> NaiveCombinationMax:
    """The unconstrained maximum 4, with an explicit witness.

    With vartheta = (0, pi/2, 0, 0) the cosines are (1, -1, 1, 1) and the
    combination c11 - c12 + c21 + c22 reaches |1 + 1 + 1 + 1| = 4.  Physical
    angle sets cannot realize it: the four varthetas derive from only four
    polarizer orientations.
    """
    varthetas = (0.0, math.pi / 2.0, 0.0, 0.0)
    cosines = tuple(math.cos(2.0 * v) for v in varthetas)
    value = cosines[0] - cosines[1] + cosines[2] + cosines[3]
    return NaiveCombinationMax(
        value=value, witness_varthetas=varthetas, witness_cosines=cosines
    )
