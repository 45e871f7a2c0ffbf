"""Seeded simulation of the four-route polarizer experiment.

Protocol per draw: a uniform integer D in [1, 1000] selects one of four
equiprobable routes (j = ceil(D / 250)) and leaves a residual in [1, 250].
The residual then lands in one of four sub-intervals built from the route's
equal-outcome probability p_j = cos^2(thetabar_j) / 2:

    (0,            250*p_j]      -> (-1, -1)
    (250*p_j,      125]          -> (-1, +1)
    (125,          250*(1-p_j)]  -> (+1, -1)
    (250*(1-p_j),  250]          -> (+1, +1)

Integer-faithful mode quantizes outcome probabilities to multiples of 1/250;
continuous mode replaces the residual with a fresh uniform real on (0, 1]
per draw, removing the quantization while keeping the route draw intact.

Randomness: numpy PCG64 seeded with SeedSequence(entropy=seed,
spawn_key=(sample_index,)).  Every sample owns its stream, so results are
bit-identical regardless of execution order or worker count.

Two estimators of each pair correlation share the numerator
n-- - n-+ - n+- + n++: the conditional one divides by the draws routed to
that pair (n_jk), the unconditional one by the total draw count n.  The
unconditional form keeps the CHSH first member at or above 1 for every
possible counts table.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Real

import numpy as np

from .errors import InvalidInputError, UndefinedEstimateError
from .inequalities import DEFAULT_SCAN_PATTERN, ScanGrid, pattern_signs
from .trig_model import MEASURED_PAIRS, AngleSet, pair_probability

ESTIMATOR_MODES = ("conditional", "unconditional")
SAMPLING_MODES = ("integer_faithful", "continuous")

_DRAW_MAX = 1000
_ROUTE_SPAN = 250


@dataclass(frozen=True)
class SimConfig:
    """One experiment configuration: angles, sample sizes, seed, sampling mode."""

    angles: AngleSet
    n_samples: int = 100
    draws_per_sample: int = 1000
    seed: int = 0
    mode: str = "integer_faithful"

    def __post_init__(self) -> None:
        if not (isinstance(self.n_samples, int) and self.n_samples >= 1):
            raise InvalidInputError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not (isinstance(self.draws_per_sample, int) and self.draws_per_sample >= 1):
            raise InvalidInputError(
                f"draws_per_sample must be a positive integer, got {self.draws_per_sample!r}"
            )
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise InvalidInputError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.mode not in SAMPLING_MODES:
            raise InvalidInputError(f"mode must be one of {SAMPLING_MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class CountsTable:
    """Occurrence counts per measured pair and outcome.

    ``counts[i]`` holds (n--, n-+, n+-, n++) for MEASURED_PAIRS[i].
    """

    counts: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.counts) != 4 or any(len(row) != 4 for row in self.counts):
            raise InvalidInputError("counts must be 4 rows of 4 entries")
        if any(c < 0 or not isinstance(c, int) for row in self.counts for c in row):
            raise InvalidInputError("counts must be nonnegative integers")

    @classmethod
    def from_rows(cls, rows) -> "CountsTable":
        return cls(tuple(tuple(int(c) for c in row) for row in rows))

    def pair_row(self, j: int, k: int) -> tuple[int, int, int, int]:
        try:
            i = MEASURED_PAIRS.index((j, k))
        except ValueError:
            raise InvalidInputError(f"({j}, {k}) is not a measured pair") from None
        return self.counts[i]

    def n_pair(self, j: int, k: int) -> int:
        return sum(self.pair_row(j, k))

    @property
    def n(self) -> int:
        return sum(sum(row) for row in self.counts)


def map_number_to_path(d: int) -> tuple[int, int]:
    """Route index in 1..4 and residual in 1..250 for a draw in 1..1000."""
    if not (isinstance(d, int) and 1 <= d <= _DRAW_MAX):
        raise InvalidInputError(f"draw must be an integer in [1, {_DRAW_MAX}], got {d!r}")
    j = (d - 1) // _ROUTE_SPAN + 1
    return j, d - (j - 1) * _ROUTE_SPAN


def path_p(j: int, angles: AngleSet) -> float:
    """Equal-outcome probability cos^2(thetabar)/2 of the pair measured on route j."""
    if j not in (1, 2, 3, 4):
        raise InvalidInputError(f"route index must be in 1..4, got {j!r}")
    pair = MEASURED_PAIRS[j - 1]
    return pair_probability(-1, -1, angles.thetabar(*pair))


def _snap_threshold(t: float) -> float:
    # Integer thresholds hit exactly by dyadic fixtures must not drift a hair
    # below the integer they represent.
    nearest = round(t)
    return float(nearest) if abs(t - nearest) < 1e-9 else t


def map_residual_to_outcome(residual: int, p_j: Real) -> tuple[int, int]:
    """Outcome pair for a residual in 1..250 given the route's p_j in [0, 1/2]."""
    if not (isinstance(residual, int) and 1 <= residual <= _ROUTE_SPAN):
        raise InvalidInputError(
            f"residual must be an integer in [1, {_ROUTE_SPAN}], got {residual!r}"
        )
    if not 0 <= p_j <= Fraction(1, 2):
        raise InvalidInputError(f"p_j must lie in [0, 1/2], got {p_j!r}")
    if isinstance(p_j, Fraction):
        low = _ROUTE_SPAN * p_j
        high = _ROUTE_SPAN * (1 - p_j)
    else:
        low = _snap_threshold(_ROUTE_SPAN * float(p_j))
        high = _snap_threshold(_ROUTE_SPAN * (1.0 - float(p_j)))
    if residual <= low:
        return (-1, -1)
    if residual <= _ROUTE_SPAN // 2:
        return (-1, +1)
    if residual <= high:
        return (+1, -1)
    return (+1, +1)


def _sample_rng(seed: int, sample_index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(sample_index,)))
    )


def run_sample(config: SimConfig, sample_index: int) -> CountsTable:
    """Draw one full sample and accumulate its counts table."""
    if not (isinstance(sample_index, int) and sample_index >= 0):
        raise InvalidInputError(f"sample_index must be a nonnegative integer, got {sample_index!r}")
    rng = _sample_rng(config.seed, sample_index)
    draws = rng.integers(1, _DRAW_MAX + 1, size=config.draws_per_sample)
    route = (draws - 1) // _ROUTE_SPAN  # 0..3

    p = np.array([path_p(j, config.angles) for j in (1, 2, 3, 4)])
    if config.mode == "continuous":
        u = 1.0 - rng.random(config.draws_per_sample)  # uniform on (0, 1]
        low = p[route]
        high = 1.0 - p[route]
        code = np.where(
            u <= low, 0, np.where(u <= 0.5, 1, np.where(u <= high, 2, 3))
        )
    else:
        residual = draws - route * _ROUTE_SPAN  # 1..250
        low = np.array([_snap_threshold(_ROUTE_SPAN * pj) for pj in p])
        high = np.array([_snap_threshold(_ROUTE_SPAN * (1.0 - pj)) for pj in p])
        code = np.where(
            residual <= low[route],
            0,
            np.where(residual <= _ROUTE_SPAN // 2, 1, np.where(residual <= high[route], 2, 3)),
        )
    cells = np.bincount(route * 4 + code, minlength=16).reshape(4, 4)
    return CountsTable.from_rows(cells.tolist())


def _numerator(row: tuple[int, int, int, int]) -> int:
    n_mm, n_mp, n_pm, n_pp = row
    return n_mm - n_mp - n_pm + n_pp


def estimate_conditional(counts: CountsTable, j: int, k: int) -> float:
    """Correlation estimate dividing by the draws routed to pair (j, k)."""
    n_jk = counts.n_pair(j, k)
    if n_jk == 0:
        raise UndefinedEstimateError(f"no draws routed to pair ({j}, {k})")
    return _numerator(counts.pair_row(j, k)) / n_jk


def estimate_unconditional(counts: CountsTable, j: int, k: int) -> float:
    """Correlation estimate dividing by the total draw count."""
    n = counts.n
    if n == 0:
        raise UndefinedEstimateError("counts table is empty")
    return _numerator(counts.pair_row(j, k)) / n


def first_member(
    counts: CountsTable, mode: str, pattern: str = DEFAULT_SCAN_PATTERN
) -> float:
    """2 - |signed combination of the four estimates of the chosen mode|."""
    if mode not in ESTIMATOR_MODES:
        raise InvalidInputError(f"mode must be one of {ESTIMATOR_MODES}, got {mode!r}")
    estimate = estimate_conditional if mode == "conditional" else estimate_unconditional
    signs = pattern_signs(pattern)
    combination = sum(
        s * estimate(counts, j, k) for s, (j, k) in zip(signs, MEASURED_PAIRS)
    )
    return 2.0 - abs(combination)


@dataclass(frozen=True)
class SimulationSummary:
    """Per-grid-point statistics of the sampled first members.

    sample_values holds one first member per sample, NaN where the chosen
    estimator was undefined (possible only when a route receives no draws);
    such samples are counted in n_undefined and excluded from mean and std.
    The std uses the population divisor (the number of defined samples).
    """

    angles: AngleSet
    estimator_mode: str
    mean_first_member: float
    std_first_member: float
    sample_values: tuple[float, ...]
    n_undefined: int = 0


def _summarize(angles: AngleSet, mode: str, values: list[float]) -> SimulationSummary:
    arr = np.asarray(values, dtype=float)
    defined = arr[~np.isnan(arr)]
    n_undefined = int(np.isnan(arr).sum())
    if defined.size:
        mean = float(defined.mean())
        std = float(defined.std())  # population divisor
    else:
        mean = math.nan
        std = math.nan
    return SimulationSummary(
        angles=angles,
        estimator_mode=mode,
        mean_first_member=mean,
        std_first_member=std,
        sample_values=tuple(float(v) for v in arr),
        n_undefined=n_undefined,
    )


def run_point(
    config: SimConfig, mode: str, pattern: str = DEFAULT_SCAN_PATTERN
) -> SimulationSummary:
    """All samples for a single angle set."""
    values: list[float] = []
    for i in range(config.n_samples):
        counts = run_sample(config, i)
        try:
            values.append(first_member(counts, mode, pattern))
        except UndefinedEstimateError:
            values.append(math.nan)
    return _summarize(config.angles, mode, values)


def run_experiment(
    config: SimConfig,
    grid: ScanGrid,
    mode: str,
    pattern: str = DEFAULT_SCAN_PATTERN,
    workers: int = 1,
) -> list[SimulationSummary]:
    """One summary per grid point, in grid order.

    Samples own independent streams keyed by (seed, sample_index), so any
    worker count yields identical output.
    """
    if mode not in ESTIMATOR_MODES:
        raise InvalidInputError(f"mode must be one of {ESTIMATOR_MODES}, got {mode!r}")
    if not (isinstance(workers, int) and workers >= 1):
        raise InvalidInputError(f"workers must be a positive integer, got {workers!r}")
    configs = [replace(config, angles=a) for a in grid.points()]
    if workers == 1:
        return [run_point(c, mode, pattern) for c in configs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c: run_point(c, mode, pattern), configs))
