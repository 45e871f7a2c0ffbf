"""Frozen fixtures shared across the suite.

The exact vectors below are the worked-example values, written out
literally so the tests do not depend on package constants.
"""

import math
from fractions import Fraction

import pytest

from chshlab.trig_model import AngleSet

F = Fraction

#: Orientations (-pi/3, 0, pi/3, 2*pi/3); differences (2pi/3, pi, pi/3, 2pi/3).
EXAMPLE_THETAS = (-math.pi / 3, 0.0, math.pi / 3, 2 * math.pi / 3)

#: cos(2*thetabar) for the four measured pairs of the example.
EXAMPLE_COSINES = (F(-1, 2), F(1), F(-1, 2), F(-1, 2))

#: Stacked pair marginals of the example, in (pair, outcome) block order.
EXAMPLE_MARGINALS = (
    F(1, 8), F(3, 8), F(3, 8), F(1, 8),
    F(1, 2), F(0), F(0), F(1, 2),
    F(1, 8), F(3, 8), F(3, 8), F(1, 8),
    F(1, 8), F(3, 8), F(3, 8), F(1, 8),
)

#: Zero-free-assignment solution, lexicographic joint-outcome order.
EXAMPLE_QUASI = (
    F(-1, 8), F(-1, 8), F(1, 4), F(0),
    F(1, 4), F(1, 8), F(1, 8), F(0),
    F(-1, 8), F(1, 2), F(1, 8), F(0),
    F(0), F(0), F(0), F(0),
)

#: Stacked marginals induced by |P|: differs from EXAMPLE_MARGINALS in 8 entries.
EXAMPLE_ABS_MARGINALS = (
    F(5, 8), F(3, 8), F(5, 8), F(1, 8),
    F(3, 4), F(1, 4), F(1, 4), F(1, 2),
    F(7, 8), F(3, 8), F(3, 8), F(1, 8),
    F(5, 8), F(5, 8), F(3, 8), F(1, 8),
)

#: The expected coefficient matrix (rows: pair blocks, outcomes
#: --, -+, +-, ++; columns: joint outcomes lexicographic, -1 first).
SIGMA_LITERAL = [
    [1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1],
    [1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1],
]


@pytest.fixture
def example_angles() -> AngleSet:
    return AngleSet(*EXAMPLE_THETAS)
