"""Symbolic angles given as rational multiples of pi.

The command line accepts angles like ``-pi/3``, ``2*pi/3``, ``0.25``.
Angles written as an exact multiple of pi are kept as a Fraction so that
later trigonometry can be done exactly where possible: by Niven's theorem
cos(q*pi) with rational q is itself rational only when it lies in
{0, +-1/2, +-1}, which covers every dyadic fixture in this package (angle
differences that are multiples of pi/4 or pi/3).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError

# k*pi/m with optional sign, optional k and m: "pi", "-pi/3", "2*pi/3", "3pi/16"
_PI_PATTERN = re.compile(
    r"""^\s*(?P<sign>[+-]?)\s*
         (?:(?P<num>\d+)\s*\*?\s*)?
         pi
         (?:\s*/\s*(?P<den>\d+))?\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


@dataclass(frozen=True)
class Angle:
    """An angle in radians, optionally carrying its exact pi-multiple."""

    radians: float
    pi_multiple: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return self.pi_multiple is not None


def parse_angle(text: str) -> Angle:
    """Parse "k*pi/m" or a decimal literal into an Angle.

    Raises InvalidInputError on anything else (including NaN and inf).
    """
    if not isinstance(text, str):
        raise InvalidInputError(f"angle must be a string, got {text!r}")
    match = _PI_PATTERN.match(text)
    if match:
        num = int(match.group("num") or 1)
        den = int(match.group("den") or 1)
        if den == 0:
            raise InvalidInputError(f"zero denominator in angle {text!r}")
        q = Fraction(num, den)
        if match.group("sign") == "-":
            q = -q
        return Angle(radians=float(q) * math.pi, pi_multiple=q)
    try:
        value = float(text)
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse angle {text!r}") from exc
    if not math.isfinite(value):
        raise InvalidInputError(f"angle must be finite, got {text!r}")
    if value == 0:
        return Angle(radians=0.0, pi_multiple=Fraction(0))
    return Angle(radians=value, pi_multiple=None)


def cos_pi_multiple(q: Fraction) -> Fraction | None:
    """Exact cos(q*pi) for rational q, or None when the value is irrational.

    Niven: the only rational values of cos at rational multiples of pi are
    0, +-1/2 and +-1, reached when q (mod 2) has denominator 1, 2 or 3.
    """
    q = Fraction(q) % 2  # cos has period 2*pi
    if q > 1:
        q = 2 - q  # cos(2*pi - x) = cos(x)
    # now q in [0, 1]; cos(q*pi) descends from 1 to -1
    table = {
        Fraction(0): Fraction(1),
        Fraction(1, 3): Fraction(1, 2),
        Fraction(1, 2): Fraction(0),
        Fraction(2, 3): Fraction(-1, 2),
        Fraction(1): Fraction(-1),
    }
    return table.get(q)


def exact_pair_cosines(
    angles: tuple[Angle, Angle, Angle, Angle],
) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
    """Exact cos(2*thetabar) for the four measured pairs, or None.

    Returns a value only when every angle is an exact pi-multiple and every
    doubled difference has a rational cosine, which is when the whole
    reconstruction can run in exact arithmetic.
    """
    if not all(a.is_exact for a in angles):
        return None
    qs = [a.pi_multiple for a in angles]
    out = []
    for j, k in ((1, 3), (1, 4), (2, 3), (2, 4)):
        c = cos_pi_multiple(2 * (qs[k - 1] - qs[j - 1]))
        if c is None:
            return None
        out.append(c)
    return tuple(out)
