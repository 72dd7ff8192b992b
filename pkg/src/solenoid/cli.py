"""Command-line interface.

Subcommands: solve, observe, sweep, figure <label>, validate, parse-check.
Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import math
import sys
from pathlib import Path

from . import scenarios, validation
from .errors import ProfileSyntaxError, SolenoidError
from .profiles import GaugeKind, format_profile, parse_profile

USAGE_EXIT = 2
NUMERIC_EXIT = 1


def config_to_scenario(path) -> scenarios.Scenario:
    """Read the flat key = value config into a Scenario."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    read = cp.read(path)
    if not read or "scenario" not in cp:
        raise ProfileSyntaxError(f"config {path} has no [scenario] section", 0)
    sec = cp["scenario"]
    profile = parse_profile(sec.get("profile", ""))
    t_start_raw = sec.get("t_start", "auto").strip()
    t_start = None if t_start_raw == "auto" else float(t_start_raw)
    outputs = tuple(tok.strip() for tok in sec.get("outputs", "observables").split(",")
                    if tok.strip())
    return scenarios.Scenario(
        profile=profile,
        gauge=GaugeKind(sec.get("gauge", "circular").strip()),
        beta=float(sec.get("beta", "inf")),
        nu=float(sec.get("nu", "0.01")),
        s=float(sec.get("s", "1.0")),
        t_start=t_start,
        t_end=float(sec.get("t_end", "30")),
        sample_count=int(sec.get("samples", "801")),
        outputs=outputs,
        ode_tol=float(sec.get("ode_tol", "1e-10")),
        units=sec.get("units", "natural").strip(),
        name=sec.get("name", "scenario").strip(),
    )


def scenario_to_config(scenario: scenarios.Scenario) -> str:
    """Serialize a Scenario back into config text (round-trip stable)."""
    lines = [
        "[scenario]",
        f"name = {scenario.name}",
        f"profile = {format_profile(scenario.profile)}",
        f"gauge = {scenario.gauge.value}",
        f"beta = {scenario.beta}",
        f"nu = {scenario.nu}",
        f"s = {scenario.s}",
        f"t_start = {'auto' if scenario.t_start is None else scenario.t_start}",
        f"t_end = {scenario.t_end}",
        f"samples = {scenario.sample_count}",
        f"outputs = {', '.join(scenario.outputs)}",
        f"ode_tol = {scenario.ode_tol}",
        f"units = {scenario.units}",
    ]
    return "\n".join(lines) + "\n"


def config_to_sweep(path, base: scenarios.Scenario) -> scenarios.SweepSpec:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.read(path)
    if "sweep" not in cp:
        raise ProfileSyntaxError(f"config {path} has no [sweep] section", 0)
    sec = cp["sweep"]
    axes = []
    for suffix in ("", "2"):
        name = sec.get(f"parameter{suffix}", "").strip()
        if not name:
            continue
        raw = sec.get(f"values{suffix}", "").strip()
        if raw:
            values = tuple(float(tok) for tok in raw.split(","))
        else:
            start = float(sec.get(f"start{suffix}"))
            stop = float(sec.get(f"stop{suffix}"))
            num = int(sec.get(f"num{suffix}"))
            spacing = sec.get(f"spacing{suffix}", "linear").strip()
            if spacing == "log":
                import numpy as np

                values = tuple(float(v) for v in np.geomspace(start, stop, num))
            else:
                values = tuple(start + (stop - start) * k / (num - 1)
                               for k in range(num))
        axes.append(scenarios.SweepAxis(name=name, values=values))
    max_runs = int(sec.get("max_runs", "100000"))
    return scenarios.SweepSpec(base=base, axes=tuple(axes), max_runs=max_runs)


def _apply_overrides(scenario, args):
    changes = {}
    if args.gauge:
        changes["gauge"] = GaugeKind(args.gauge)
    if args.units:
        changes["units"] = args.units
    return dataclasses.replace(scenario, **changes) if changes else scenario


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="solenoid",
        description="Energy and magnetic moment of a charged particle in "
                    "time-dependent magnetic fields (circular/Landau gauges)")
    sub = parser.add_subparsers(dest="command")

    def add_common(p, needs_config=True):
        p.add_argument("--config", required=needs_config,
                       help="scenario config file (key = value sections)")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--gauge", choices=["circular", "landau"], default=None)
        p.add_argument("--units", choices=["paper", "natural"], default=None)
        p.add_argument("--threads", type=int, default=1)

    add_common(sub.add_parser("solve", help="emit the trajectory dataset"))
    add_common(sub.add_parser("observe", help="emit the observable time series"))
    add_common(sub.add_parser("sweep", help="run the parameter sweep of the config"))

    p_fig = sub.add_parser("figure", help="emit a named figure dataset")
    p_fig.add_argument("label", help="figure label, e.g. fig-EfEi-wf")
    p_fig.add_argument("--out", default=".")

    p_val = sub.add_parser("validate", help="run the acceptance/validation suite")
    group = p_val.add_mutually_exclusive_group()
    group.add_argument("--fast", action="store_true")
    group.add_argument("--full", action="store_true")

    p_parse = sub.add_parser("parse-check", help="parse a profile expression")
    p_parse.add_argument("profile_text")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT

    try:
        if args.command in ("solve", "observe"):
            scenario = _apply_overrides(config_to_scenario(args.config), args)
            forced = "trajectory" if args.command == "solve" else "observables"
            if forced not in scenario.outputs:
                scenario = dataclasses.replace(
                    scenario, outputs=scenario.outputs + (forced,))
            summary, _ = scenarios.run_scenario(scenario, out_dir=args.out)
            for key in sorted(summary):
                print(f"{key} = {summary[key]}")
            return 0

        if args.command == "sweep":
            base = _apply_overrides(config_to_scenario(args.config), args)
            spec = config_to_sweep(args.config, base)
            out_path = Path(args.out) / f"{base.name}_sweep.csv"
            (header, rows), failures = scenarios.run_sweep(
                spec, out_path=out_path, threads=args.threads)
            print(f"wrote {len(rows)} rows to {out_path}")
            if failures:
                print(f"{len(failures)} grid points failed:", file=sys.stderr)
                for values, reason in failures:
                    print(f"  {values}: {reason}", file=sys.stderr)
                return NUMERIC_EXIT
            return 0

        if args.command == "figure":
            scenarios.run_figure(args.label, out_dir=args.out)
            print(f"wrote dataset for {args.label} to {args.out}")
            return 0

        if args.command == "validate":
            which = "fast" if args.fast else "full"
            results = validation.run_suite(which)
            for res in results:
                print(res.line())
            n_fail = sum(1 for r in results if not r.passed)
            print(f"{len(results) - n_fail}/{len(results)} checks passed "
                  f"({which} suite)")
            return NUMERIC_EXIT if n_fail else 0

        if args.command == "parse-check":
            profile = parse_profile(args.profile_text)
            print(format_profile(profile))
            return 0
    except ProfileSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT if args.command == "parse-check" else NUMERIC_EXIT
    except SolenoidError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERIC_EXIT
    parser.print_usage(sys.stderr)
    return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
