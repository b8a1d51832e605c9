"""Command-line entry point: one subcommand per analysis.

Every subcommand loads a scenario (shipped preset or user file), runs
its analysis, writes delimited output atomically, and by default drops
a rendered figure next to it.  Exit codes: 0 success, 1 usage error,
2 scenario/configuration error, 3 numeric or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import report
from .antenna import pattern_gain
from .constellation import (
    MIN_VISIBLE_FOR_REPORTING,
    brute_force_visibility,
    latitude_sweep,
    visible_satellites,
)
from .errors import ConfigurationError, UsageError
from .layout import build_grid, gain_map
from .link import KA_BAND, S_BAND
from .scenario import PRESET_NAMES, Scenario, load_preset, load_scenario
from .snapshot import beam_pattern, downlink_snapshot, summarize, uplink_snapshot


class _Parser(argparse.ArgumentParser):
    """Argparse with usage failures routed to the usage exit code."""

    def error(self, message):
        raise UsageError(message)


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value <= 0.0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit an unsigned 64-bit integer")
    return value


def _density_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad densities list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("densities list is empty")
    if min(values) <= 0.0:
        raise argparse.ArgumentTypeError("densities must be positive")
    return values


def _add_scenario_flags(parser: argparse.ArgumentParser, default_preset: str) -> None:
    parser.add_argument(
        "--scenario", type=Path, metavar="PATH", help="scenario INI file"
    )
    parser.add_argument(
        "--preset",
        choices=PRESET_NAMES,
        help=f"shipped preset (default {default_preset})",
    )
    parser.set_defaults(default_preset=default_preset)


def _load(args) -> Scenario:
    if args.scenario is not None and args.preset is not None:
        raise UsageError("give either --scenario or --preset, not both")
    if args.scenario is not None:
        return load_scenario(args.scenario)
    return load_preset(args.preset or args.default_preset)


def _system_label(scenario: Scenario) -> str:
    return f"{scenario.band.name} band, {scenario.terminal.kind}"


def cmd_antenna(args) -> None:
    scenario = _load(args)
    if args.step_deg <= 0.0:
        raise UsageError("--step-deg must be positive")
    if not 0.0 < args.theta_max_deg <= 90.0:
        raise UsageError("--theta-max-deg must lie in (0, 90]")
    n_rows = int(round(args.theta_max_deg / args.step_deg)) + 1
    theta_deg = np.arange(n_rows) * args.step_deg
    pattern = beam_pattern(scenario.band)
    gain = pattern_gain(pattern, np.radians(theta_deg))
    gain_db = 10.0 * np.log10(np.maximum(gain, 1e-30))
    report.write_csv(args.out, report.ANTENNA_HEADER, zip(theta_deg, gain_db))
    print(f"wrote {args.out} ({n_rows} rows)")
    if not args.no_plot:
        figure_path = args.out.with_suffix(".png")
        report.save_figure(
            report.antenna_figure(theta_deg, gain_db, _system_label(scenario)),
            figure_path,
        )
        print(f"wrote {figure_path}")


def cmd_capacity(args) -> None:
    scenario = _load(args)
    if args.step_deg <= 0.0:
        raise UsageError("--step-deg must be positive")
    step = math.radians(args.step_deg)
    profile_s = latitude_sweep(
        scenario.shell,
        scenario.capacity_inputs("s", "dl"),
        scenario.capacity_inputs("s", "ul"),
        S_BAND.sat_hpbw_rad,
        step,
    )
    profile_ka = latitude_sweep(
        scenario.shell,
        scenario.capacity_inputs("ka", "dl"),
        scenario.capacity_inputs("ka", "ul"),
        KA_BAND.sat_hpbw_rad,
        step,
    )
    rows = report.sweep_rows(profile_s, profile_ka)
    if all(rec.n_visible < MIN_VISIBLE_FOR_REPORTING for rec in profile_s.records):
        print(
            "warning: no latitude reaches the visibility reporting threshold;"
            " density columns are zero",
            file=sys.stderr,
        )
    report.write_csv(args.out, report.SWEEP_HEADER, rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_plot:
        figure_path = args.out.with_suffix(".png")
        report.save_figure(report.sweep_figure(rows), figure_path)
        print(f"wrote {figure_path}")


def cmd_snapshot(args) -> None:
    scenario = _load(args)
    cfg = scenario.snapshot_config(
        seed=args.seed, densities=args.densities, drops=args.drops
    )
    run = downlink_snapshot if args.direction == "dl" else uplink_snapshot
    summaries = summarize(run(cfg))
    out = args.out or Path(f"snapshot_{args.direction}.csv")
    report.write_csv(out, report.SNAPSHOT_HEADER, report.snapshot_rows(summaries))
    print(f"wrote {out} ({len(summaries)} rows)")
    if not args.no_plot:
        figure_path = out.with_suffix(".png")
        label = f"{_system_label(scenario)}, {args.direction}"
        report.save_figure(report.snapshot_figure(summaries, label), figure_path)
        print(f"wrote {figure_path}")


def cmd_visible(args) -> None:
    scenario = _load(args)
    if not -90.0 <= args.latitude_deg <= 90.0:
        raise UsageError("latitude must lie within [-90, 90] degrees")
    latitude = math.radians(args.latitude_deg)
    quadrature = visible_satellites(scenario.shell, latitude)
    print(
        f"visible satellites at {args.latitude_deg:g} deg latitude:"
        f" {format(quadrature, '.9g')}"
    )
    row = [args.latitude_deg, quadrature]
    header = ["lat_deg", "n_visible"]
    if args.oracle:
        estimate = brute_force_visibility(
            scenario.shell, latitude, args.samples, args.seed
        )
        gap = abs(estimate - quadrature) / quadrature if quadrature > 0 else 0.0
        print(
            f"orbit-counting oracle ({args.samples} samples):"
            f" {format(estimate, '.9g')}, relative gap {gap:.4%}"
        )
        row += [estimate, gap]
        header += ["n_visible_oracle", "relative_gap"]
    if args.out is not None:
        report.write_csv(args.out, header, [row])
        print(f"wrote {args.out}")


def cmd_beammap(args) -> None:
    scenario = _load(args)
    if args.step_deg <= 0.0:
        raise UsageError("--step-deg must be positive")
    grid = build_grid(
        scenario.band, scenario.geometry, scenario.center_elevation_rad
    )
    rows = gain_map(grid, beam_pattern(scenario.band), args.step_deg)
    report.write_csv(args.out, report.GAIN_MAP_HEADER, rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_plot:
        figure_path = args.out.with_suffix(".png")
        report.save_figure(report.gain_map_figure(rows), figure_path)
        print(f"wrote {figure_path}")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="leontn",
        description=(
            "Throughput and capacity analyses for LEO non-terrestrial"
            " networks: beam patterns, analytical capacity density, and"
            " snapshot SINR/throughput simulation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("antenna", help="sample the satellite beam pattern")
    _add_scenario_flags(p, "s-handheld")
    p.add_argument("--theta-max-deg", type=float, default=10.0)
    p.add_argument("--step-deg", type=float, default=0.01)
    p.add_argument("--out", type=Path, default=Path("antenna.csv"))
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_antenna)

    p = sub.add_parser(
        "capacity", help="latitude sweep of analytical capacity density"
    )
    _add_scenario_flags(p, "kuiper")
    p.add_argument("--step-deg", type=float, default=0.5)
    p.add_argument("--out", type=Path, default=Path("capacity.csv"))
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser(
        "snapshot", help="Monte Carlo snapshot SINR and throughput sweep"
    )
    p.add_argument("direction", choices=("dl", "ul"), help="link direction")
    _add_scenario_flags(p, "s-handheld")
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--densities", type=_density_list, default=None)
    p.add_argument("--drops", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_snapshot)

    p = sub.add_parser(
        "visible", help="mean visible satellites at one latitude"
    )
    p.add_argument("latitude_deg", type=float)
    _add_scenario_flags(p, "kuiper")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="also run the orbit-counting estimate and report the gap",
    )
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_visible)

    p = sub.add_parser(
        "beammap", help="strongest-beam ground map around the boresight"
    )
    _add_scenario_flags(p, "s-handheld")
    p.add_argument("--step-deg", type=float, default=0.02)
    p.add_argument("--out", type=Path, default=Path("beammap.csv"))
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_beammap)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
