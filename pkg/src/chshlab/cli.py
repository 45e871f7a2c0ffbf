"""Command-line front end.

Subcommands:

    solve      reconstruct the joint weight vector for four orientations
    scan       evaluate an inequality's first member over an angle grid
    simulate   run the seeded sampling experiment and summarize per point
    verify     run the built-in golden checks

Exit codes: 0 success, 1 a verify check failed, 2 usage error.

All CSV output uses comma separators, "." decimals, LF line endings, floats
with 17 significant digits and exact rationals as "num/den" strings, so a
fixed (command, seed, config) reproduces files byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import montecarlo, pathmodel, quasiprob, verify
from .angles import Angle, exact_pair_cosines, parse_angle
from .errors import ChshLabError, InvalidInputError
from .inequalities import (
    DEFAULT_SCAN_PATTERN,
    SCAN_KINDS,
    SIGN_PATTERNS,
    ScanGrid,
    scan,
)
from .montecarlo import ESTIMATOR_MODES, SAMPLING_MODES, SimConfig
from .pathmodel import PathParams
from .quasiprob import JOINT_OUTCOMES
from .trig_model import MEASURED_PAIRS, AngleSet

_PAIR_LABELS = tuple(f"({j},{k})" for j, k in MEASURED_PAIRS)
_OUTCOME_LABELS = ("--", "-+", "+-", "++")


def format_value(value) -> str:
    """Canonical text form: rationals as num/den, floats at 17 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _joint_label(outcome: tuple[int, int, int, int]) -> str:
    return "".join("+" if z > 0 else "-" for z in outcome)


def parse_angle_list(text: str, expected: int | None = None) -> list[Angle]:
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if expected is not None and len(tokens) != expected:
        raise InvalidInputError(f"expected {expected} angles, got {len(tokens)} in {text!r}")
    if not tokens:
        raise InvalidInputError(f"no angles in {text!r}")
    return [parse_angle(t) for t in tokens]


def load_config_file(path: str) -> dict[str, str]:
    """Plain key=value lines; blank lines and '#' comments ignored."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidInputError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


_CONFIG_CONVERTERS = {
    "samples": int,
    "draws": int,
    "seed": int,
    "workers": int,
    "theta1": str,
    "p1": float,
    "p2": float,
}


def resolve_option(args: argparse.Namespace, config: dict[str, str], key: str, default):
    """Flag value if given, else config-file value, else the hard default."""
    flag_value = getattr(args, key, None)
    if flag_value is not None:
        return flag_value
    if key in config:
        converter = _CONFIG_CONVERTERS.get(key, str)
        try:
            return converter(config[key])
        except ValueError as exc:
            raise InvalidInputError(f"config value {key}={config[key]!r} is invalid") from exc
    return default


def _angles_from_parsed(parsed: Sequence[Angle]) -> AngleSet:
    return AngleSet(*(a.radians for a in parsed))


def _open_out(path: str):
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise InvalidInputError(f"cannot write to {path!r}: {exc}") from exc


def _writer(handle) -> csv.writer:
    return csv.writer(handle, lineterminator="\n")


# ---------------------------------------------------------------- solve ----


def cmd_solve(args: argparse.Namespace, config: dict[str, str]) -> int:
    angles_text = resolve_option(args, config, "angles", None)
    if angles_text is None:
        raise InvalidInputError("solve requires --angles")
    parsed = parse_angle_list(angles_text, expected=4)
    angle_set = _angles_from_parsed(parsed)
    cosines = exact_pair_cosines(tuple(parsed))

    if cosines is not None:
        p = quasiprob.marginals_from_cosines(cosines)
        arithmetic = "exact"
    else:
        p = quasiprob.build_marginals(angle_set)
        arithmetic = "floating"
    solution = quasiprob.solve_family(p)
    report = quasiprob.kolmogorov_check(solution)
    expectations = quasiprob.expectations_from_quasi(solution)
    combination = quasiprob.chsh_from_quasi(solution)
    residual = max(
        abs(lhs - rhs) for lhs, rhs in zip(quasiprob.apply_sigma(solution.weights), p)
    )

    lines: list[str] = []
    lines.append("angles: " + " ".join(format_value(a.radians) for a in parsed))
    lines.append(f"arithmetic: {arithmetic}")
    lines.append("marginal vector:")
    for i, value in enumerate(p):
        lines.append(f"  {_PAIR_LABELS[i // 4]} {_OUTCOME_LABELS[i % 4]}: {format_value(value)}")
    lines.append("quasi-distribution (zero free assignment):")
    for outcome, weight in zip(JOINT_OUTCOMES, solution.weights):
        lines.append(f"  {_joint_label(outcome)}: {format_value(weight)}")
    lines.append(f"residual max |sigma.P - p|: {format_value(residual)}")
    lines.append("kolmogorov check:")
    lines.append(f"  min entry: {format_value(report.min_entry)}")
    negatives = ", ".join(_joint_label(z) for z in report.negative_outcomes) or "none"
    lines.append(f"  negative outcomes: {negatives}")
    lines.append(f"  total mass: {format_value(report.total_mass)}")
    lines.append(f"  nonnegativity: {'ok' if report.nonneg_ok else 'violated'}")
    lines.append(f"  unit total mass: {'ok' if report.total_ok else 'violated'}")
    lines.append("pair expectations:")
    for label, value in zip(("E13", "E14", "E23", "E24"), expectations):
        lines.append(f"  {label}: {format_value(value)}")
    lines.append(f"chsh combination E13 - E14 + E23 + E24: {format_value(combination)}")
    lines.append(
        "chsh inequality: " + ("violated" if abs(combination) > 2 else "satisfied")
    )
    print("\n".join(lines))

    out = resolve_option(args, config, "out", None)
    if out:
        with _open_out(out) as handle:
            w = _writer(handle)
            w.writerow(["section", "label", "value"])
            w.writerow(["meta", "arithmetic", arithmetic])
            for i, value in enumerate(p):
                label = f"{_PAIR_LABELS[i // 4]}{_OUTCOME_LABELS[i % 4]}"
                w.writerow(["marginal", label, format_value(value)])
            for outcome, weight in zip(JOINT_OUTCOMES, solution.weights):
                w.writerow(["quasi", _joint_label(outcome), format_value(weight)])
            w.writerow(["kolmogorov", "min_entry", format_value(report.min_entry)])
            w.writerow(["kolmogorov", "total_mass", format_value(report.total_mass)])
            w.writerow(["kolmogorov", "nonneg_ok", format_value(report.nonneg_ok)])
            w.writerow(["kolmogorov", "total_ok", format_value(report.total_ok)])
            for label, value in zip(("e13", "e14", "e23", "e24"), expectations):
                w.writerow(["expectation", label, format_value(value)])
            w.writerow(["chsh", "combination", format_value(combination)])
    return 0


# ----------------------------------------------------------------- scan ----


def _grid_from_args(args: argparse.Namespace, config: dict[str, str]) -> ScanGrid:
    theta1 = parse_angle(str(resolve_option(args, config, "theta1", "0"))).radians
    grid_text = resolve_option(args, config, "grid", None)
    if grid_text is None or grid_text == "default":
        return ScanGrid(theta1=theta1)
    values = tuple(a.radians for a in parse_angle_list(grid_text))
    return ScanGrid(
        theta1=theta1, theta2_values=values, theta3_values=values, theta4_values=values
    )


def _scan_rows(grid: ScanGrid, kind: str, pattern: str, params: PathParams):
    if kind == "chsh_conditional":
        for angles in grid.points():
            yield angles, pathmodel.bounded_chsh_first_member(params, angles, pattern)
    else:
        for record in scan(grid, kind, pattern):
            yield record.angles, record.report


def cmd_scan(args: argparse.Namespace, config: dict[str, str]) -> int:
    kind = resolve_option(args, config, "kind", "chsh")
    pattern = resolve_option(args, config, "pattern", DEFAULT_SCAN_PATTERN)
    out = resolve_option(args, config, "out", None)
    if out is None:
        raise InvalidInputError("scan requires --out")
    params = PathParams(
        resolve_option(args, config, "p1", 0.5), resolve_option(args, config, "p2", 0.5)
    )
    grid = _grid_from_args(args, config)

    with _open_out(out) as handle:
        w = _writer(handle)
        w.writerow(["theta2", "theta3", "theta4", "kind", "first_member", "violated"])
        for angles, report in _scan_rows(grid, kind, pattern, params):
            w.writerow(
                [
                    format_value(angles.theta2),
                    format_value(angles.theta3),
                    format_value(angles.theta4),
                    report.kind,
                    format_value(report.first_member),
                    format_value(report.violated),
                ]
            )

    if kind == "chsh":
        companion = _companion_path(out)
        with _open_out(companion) as handle:
            w = _writer(handle)
            w.writerow(["theta2", "theta3", "theta4", "min_entry", "n_negative", "total_mass"])
            for angles in grid.points():
                solution = quasiprob.solve_family(quasiprob.build_marginals(angles))
                report = quasiprob.kolmogorov_check(solution)
                w.writerow(
                    [
                        format_value(angles.theta2),
                        format_value(angles.theta3),
                        format_value(angles.theta4),
                        format_value(report.min_entry),
                        str(len(report.negative_outcomes)),
                        format_value(report.total_mass),
                    ]
                )
        print(f"wrote {out} and {companion}")
    else:
        print(f"wrote {out}")
    return 0


def _companion_path(out: str) -> str:
    path = Path(out)
    return str(path.with_name(path.stem + "_kolmogorov" + (path.suffix or ".csv")))


# ------------------------------------------------------------- simulate ----


def cmd_simulate(args: argparse.Namespace, config: dict[str, str]) -> int:
    mode = resolve_option(args, config, "mode", "conditional")
    if mode not in ESTIMATOR_MODES:
        raise InvalidInputError(f"--mode must be one of {ESTIMATOR_MODES}, got {mode!r}")
    sampling = resolve_option(args, config, "sampling", "integer_faithful")
    pattern = resolve_option(args, config, "pattern", DEFAULT_SCAN_PATTERN)
    n_samples = resolve_option(args, config, "samples", 100)
    draws = resolve_option(args, config, "draws", 1000)
    seed = resolve_option(args, config, "seed", 0)
    workers = resolve_option(args, config, "workers", 1)
    out = resolve_option(args, config, "out", None)
    if out is None:
        raise InvalidInputError("simulate requires --out")

    angles_text = resolve_option(args, config, "angles", None)
    if angles_text is not None:
        parsed = parse_angle_list(angles_text, expected=4)
        point = _angles_from_parsed(parsed)
        grid = ScanGrid(
            theta1=point.theta1,
            theta2_values=(point.theta2,),
            theta3_values=(point.theta3,),
            theta4_values=(point.theta4,),
        )
    else:
        grid = _grid_from_args(args, config)

    base = SimConfig(
        angles=next(grid.points()),
        n_samples=n_samples,
        draws_per_sample=draws,
        seed=seed,
        mode=sampling,
    )
    summaries = montecarlo.run_experiment(base, grid, mode, pattern, workers=workers)

    with _open_out(out) as handle:
        handle.write(
            f"# std_divisor=population pattern={pattern} sampling={sampling}\n"
        )
        w = _writer(handle)
        w.writerow(
            [
                "theta2",
                "theta3",
                "theta4",
                "mode",
                "mean_first_member",
                "std_first_member",
                "n_samples",
                "draws_per_sample",
                "seed",
                "n_undefined",
            ]
        )
        for s in summaries:
            w.writerow(
                [
                    format_value(s.angles.theta2),
                    format_value(s.angles.theta3),
                    format_value(s.angles.theta4),
                    s.estimator_mode,
                    format_value(s.mean_first_member),
                    format_value(s.std_first_member),
                    str(n_samples),
                    str(draws),
                    str(seed),
                    str(s.n_undefined),
                ]
            )
    print(f"wrote {out}")
    return 0


# --------------------------------------------------------------- verify ----


def cmd_verify(args: argparse.Namespace, config: dict[str, str]) -> int:
    results = verify.run_all_checks()
    failures = 0
    for result in results:
        status = "PASS" if result.ok else "FAIL"
        print(f"[{status}] {result.name}: {result.detail}")
        failures += not result.ok
    if failures:
        print(f"{failures} of {len(results)} checks failed")
        return 1
    print(f"all {len(results)} checks passed")
    return 0


# ----------------------------------------------------------------- main ----


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chshlab",
        description="Exact and simulated analysis of the CHSH inequality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key=value file; explicit flags win")
        p.add_argument("--out", help="output file path")

    p_solve = sub.add_parser("solve", help="reconstruct the joint weight vector")
    p_solve.add_argument(
        "--angles", help='four angles, e.g. "-pi/3 0 pi/3 2*pi/3" (radians or k*pi/m)'
    )
    add_common(p_solve)

    p_scan = sub.add_parser("scan", help="first-member grid scan to CSV")
    p_scan.add_argument("--kind", choices=SCAN_KINDS + ("chsh_conditional",))
    p_scan.add_argument("--pattern", choices=tuple(SIGN_PATTERNS))
    p_scan.add_argument("--grid", help='grid values, e.g. "pi/16 2*pi/16 ..." or "default"')
    p_scan.add_argument("--theta1", help="fixed first orientation (default 0)")
    p_scan.add_argument("--p1", type=float, help="mirror 1 deflection probability")
    p_scan.add_argument("--p2", type=float, help="mirror 2 deflection probability")
    add_common(p_scan)

    p_sim = sub.add_parser("simulate", help="seeded sampling experiment to CSV")
    p_sim.add_argument("--mode", choices=ESTIMATOR_MODES)
    p_sim.add_argument("--sampling", choices=SAMPLING_MODES)
    p_sim.add_argument("--pattern", choices=tuple(SIGN_PATTERNS))
    p_sim.add_argument("--samples", type=int)
    p_sim.add_argument("--draws", type=int)
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--workers", type=int)
    p_sim.add_argument("--angles", help="simulate a single angle set instead of a grid")
    p_sim.add_argument("--grid", help="grid values (same syntax as scan)")
    p_sim.add_argument("--theta1", help="fixed first orientation (default 0)")
    add_common(p_sim)

    p_verify = sub.add_parser("verify", help="run the built-in golden checks")
    add_common(p_verify)

    return parser


_COMMANDS = {
    "solve": cmd_solve,
    "scan": cmd_scan,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config_file(args.config) if getattr(args, "config", None) else {}
        return _COMMANDS[args.command](args, config)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ChshLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
