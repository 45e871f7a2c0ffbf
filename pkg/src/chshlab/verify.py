"""One-shot golden checks of the exact fixtures and bound theorems.

Each check re-derives its claim from the library at run time; nothing is
read from disk.  The CLI's ``verify`` command runs them all and maps any
failure to a nonzero exit status.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import inequalities, montecarlo, pathmodel, quasiprob
from .montecarlo import CountsTable
from .pathmodel import PathParams
from .trig_model import AngleSet

#: Exact cos(2*thetabar) values for the worked example.
EXAMPLE_COSINES = (Fraction(-1, 2), Fraction(1), Fraction(-1, 2), Fraction(-1, 2))

_EIGHTH = Fraction(1, 8)

#: The worked-example quasi-distribution under the zero free assignment.
EXAMPLE_QUASI = (
    -_EIGHTH, -_EIGHTH, Fraction(1, 4), Fraction(0),
    Fraction(1, 4), _EIGHTH, _EIGHTH, Fraction(0),
    -_EIGHTH, Fraction(1, 2), _EIGHTH, Fraction(0),
    Fraction(0), Fraction(0), Fraction(0), Fraction(0),
)

EXAMPLE_MARGINALS = (
    _EIGHTH, 3 * _EIGHTH, 3 * _EIGHTH, _EIGHTH,
    Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2),
    _EIGHTH, 3 * _EIGHTH, 3 * _EIGHTH, _EIGHTH,
    _EIGHTH, 3 * _EIGHTH, 3 * _EIGHTH, _EIGHTH,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _result(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, ok=bool(ok), detail=detail)


def check_exact_rank() -> CheckResult:
    sigma = quasiprob.build_sigma()
    r = quasiprob.rank(sigma)
    p = quasiprob.marginals_from_cosines(EXAMPLE_COSINES)
    ra = quasiprob.augmented_rank(sigma, p)
    return _result(
        "exact-rank",
        r == 9 and ra == 9,
        f"rank={r}, augmented rank={ra} (expected 9 and 9)",
    )


def check_worked_example() -> CheckResult:
    p = quasiprob.marginals_from_cosines(EXAMPLE_COSINES)
    solution = quasiprob.solve_family(p)
    ok = (
        tuple(p) == EXAMPLE_MARGINALS
        and solution.weights == EXAMPLE_QUASI
        and tuple(quasiprob.apply_sigma(solution.weights)) == tuple(p)
        and solution.total_mass() == 1
        and sum(1 for w in solution.weights if w == Fraction(-1, 8)) == 3
    )
    return _result("worked-example", ok, "marginals, solution, residual, mass, -1/8 count")


def check_expectations_and_chsh() -> CheckResult:
    q = quasiprob.QuasiDistribution(EXAMPLE_QUASI)
    e = quasiprob.expectations_from_quasi(q)
    c = quasiprob.chsh_from_quasi(q)
    ok = e == (Fraction(-1, 2), Fraction(1), Fraction(-1, 2), Fraction(-1, 2))
    ok = ok and c == Fraction(-5, 2) and abs(c) > 2
    return _result("expectations-chsh", ok, f"expectations={e}, combination={c}")


def check_abs_variant() -> CheckResult:
    q = quasiprob.QuasiDistribution(EXAMPLE_QUASI)
    qa = quasiprob.abs_variant(q)
    e = quasiprob.expectations_from_quasi(qa)
    report = quasiprob.kolmogorov_check(qa)
    ok = (
        qa.total_mass() == Fraction(7, 4)
        and not report.total_ok
        and report.nonneg_ok
        and e == (Fraction(-1, 4), Fraction(3, 4), Fraction(1, 4), Fraction(-1, 4))
        and quasiprob.chsh_from_quasi(qa) == Fraction(-1)
    )
    return _result("abs-variant", ok, f"mass={qa.total_mass()}, expectations={e}")


def check_grid_kolmogorov_link() -> CheckResult:
    grid = inequalities.ScanGrid()
    bad_points = 0
    for angles in grid.points():
        report = inequalities.chsh_first_member(angles)
        p = quasiprob.build_marginals(angles)
        solution = quasiprob.solve_family(p)
        axioms = quasiprob.kolmogorov_check(solution)
        if report.violated and min(solution.weights) >= 0:
            bad_points += 1
        if axioms.all_ok and report.violated:
            bad_points += 1
    return _result(
        "grid-kolmogorov-link",
        bad_points == 0,
        f"{len(grid)} grid points, {bad_points} counterexamples",
    )


def check_conditional_bound(n_random: int = 10_000, seed: int = 2024) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_random):
        params = PathParams(*rng.uniform(0.0, 1.0, size=2))
        angles = AngleSet(*rng.uniform(-math.pi, math.pi, size=4))
        worst = max(worst, abs(pathmodel.weighted_combination(params, angles)))
    witness = pathmodel.naive_combination_max()
    ok = (
        worst <= 1.0 + 1e-12
        and witness.value == 4.0
        and witness.witness_cosines == (1.0, -1.0, 1.0, 1.0)
    )
    return _result(
        "conditional-bound",
        ok,
        f"max |weighted combination| over {n_random} draws = {worst:.15f}; naive max = {witness.value}",
    )


def check_estimator_bound(n_random: int = 10_000, seed: int = 4096) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = math.inf
    for _ in range(n_random):
        cells = rng.integers(0, 50, size=(4, 4))
        if cells.sum() == 0:
            cells[0][0] = 1
        counts = CountsTable.from_rows(cells.tolist())
        worst = min(worst, montecarlo.first_member(counts, "unconditional"))
    return _result(
        "estimator-bound",
        worst >= 1.0,
        f"min unconditional first member over {n_random} tables = {worst:.15f}",
    )


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_exact_rank,
    check_worked_example,
    check_expectations_and_chsh,
    check_abs_variant,
    check_grid_kolmogorov_link,
    check_conditional_bound,
    check_estimator_bound,
)


def run_all_checks() -> list[CheckResult]:
    results = []
    for check in ALL_CHECKS:
        name = check.__name__.removeprefix("check_").replace("_", "-")
        try:
            results.append(check())
        except Exception as exc:  # a raising check is a failing check
            results.append(_result(name, False, f"raised {type(exc).__name__}: {exc}"))
    return results
