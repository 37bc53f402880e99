"""Command line interface.

Subcommands:

* ``run --config FILE [--out DIR]`` — run a configured scenario, write CSV.
* ``preset NAME [--out DIR]`` — run a named preset.
* ``fpf --phi V [--points N]`` — sample the factor price frontier.
* ``static --K V --phi V`` — print one static equilibrium.
* ``sweep --key K --from A --to B --steps N [--config FILE]`` — vary one
  config key and print a summary row per run.
* ``curve-fig7`` — predicted vs simulated asymptotic wage growth over a
  grid of automation rates.
* ``check [--only TAG]`` — run the acceptance suite.

Exit codes: 0 success, 1 configuration error, 2 solver failure,
3 acceptance failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import acceptance, analysis, distributions, dynamics, scenarios
from .dynamics import ConstantSavings, SolverSettings, SolverError
from .scenarios import ConfigError
from .static_economy import EconomyParams, fpf_samples, static_equilibrium

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_ACCEPTANCE = 3


def _default_economy() -> EconomyParams:
    return scenarios.get_preset("business_as_usual").economy


def _emit(result: scenarios.RunResult, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{result.spec.name}.csv")
    scenarios.emit_csv(result, path)
    if result.spec.svg:
        _render_svg(result, os.path.join(out_dir, f"{result.spec.name}.svg"))
    return path


def _render_svg(result: scenarios.RunResult, path: str) -> None:
    try:
        import matplotlib

        matplotlib.use("svg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("svg output requested but matplotlib is not installed", file=sys.stderr)
        return
    traj = result.trajectory
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(traj.t, traj.w, label="w")
    ax.plot(traj.t, traj.R, label="R")
    ax.plot(traj.t, traj.Y, label="Y")
    ax.set_yscale("log")
    ax.set_xlabel("years")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _print_summary(result: scenarios.RunResult) -> None:
    print(f"scenario: {result.spec.name}")
    if result.regime is not None:
        print(f"regime: {result.regime.regime.value}")
        print(f"predicted wage growth: {result.regime.asymptotic_wage_growth:.6g}")
    for key in sorted(result.summary):
        print(f"{key}: {result.summary[key]:.6g}")
    if result.trajectory is not None:
        for kind, t in result.trajectory.events:
            print(f"event {kind}: t = {t:.6g}")


def cmd_run(args) -> int:
    spec = scenarios.load_config(args.config)
    result = scenarios.run(spec)
    _print_summary(result)
    if result.trajectory is not None:
        path = _emit(result, args.out)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_preset(args) -> int:
    spec = scenarios.get_preset(args.name)
    result = scenarios.run(spec)
    _print_summary(result)
    if args.out is not None:
        path = _emit(result, args.out)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_fpf(args) -> int:
    params = _default_economy()
    print("R,w")
    for r, w in fpf_samples(params, args.phi, args.points):
        print("%.17g,%.17g" % (r, w))
    return EXIT_OK


def cmd_static(args) -> int:
    params = _default_economy()
    eq = static_equilibrium(params, args.K, args.phi)
    print(f"region: {int(eq.region)}")
    for name, value in (
        ("Y", eq.Y), ("w", eq.w), ("R", eq.R),
        ("labor_share", eq.labor_share), ("k", eq.k), ("ell", eq.ell),
    ):
        print(f"{name}: {value:.17g}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.config is not None:
        base_text = open(args.config, encoding="utf-8").read()
    else:
        base_text = "scenario = business_as_usual\n"
    values = np.linspace(args.start, args.stop, args.steps)
    print(f"{args.key},terminal_output_growth,terminal_wage_growth,region2_entry")
    for v in map(float, values):
        spec = scenarios.parse_config(base_text + f"\n{args.key} = {v!r}\n")
        result = scenarios.run(spec)
        entry = (
            result.trajectory.event_time("region2_entry")
            if result.trajectory is not None
            else None
        )
        print(
            "%.17g,%.6g,%.6g,%s"
            % (
                v,
                result.summary.get("terminal_output_growth", float("nan")),
                result.summary.get("terminal_wage_growth", float("nan")),
                "%.6g" % entry if entry is not None else "",
            )
        )
    return EXIT_OK


def cmd_curve(args) -> int:
    params = _default_economy()
    prefs = scenarios.get_preset("business_as_usual").prefs
    hi, _ = analysis.thresholds(params, prefs)
    grid = np.linspace(0.01, 2.0 * hi, args.points)
    print("lambda_g,predicted_growth,simulated_growth")
    for lam_g in grid:
        predicted = analysis.predicted_wage_growth(params, prefs, float(lam_g))
        dist, path = distributions.pareto_from_initial_share(0.608, float(lam_g))
        traj = dynamics.simulate(
            dist, path, params, prefs, 4.6,
            ConstantSavings(None), SolverSettings(horizon=300.0),
        )
        simulated = analysis.tail_growth(traj.t, traj.w)
        print("%.17g,%.17g,%.17g" % (lam_g, predicted, simulated))
    return EXIT_OK


def cmd_check(args) -> int:
    results = acceptance.run_checks(args.only)
    failed = 0
    for res in results:
        print(res.line())
        if not res.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_ACCEPTANCE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autoecon",
        description="Task-based automation economy simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("preset", help="run a named preset scenario")
    p.add_argument("name")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("fpf", help="sample the factor price frontier")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--points", type=int, default=100)
    p.set_defaults(func=cmd_fpf)

    p = sub.add_parser("static", help="print one static equilibrium")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--phi", type=float, required=True)
    p.set_defaults(func=cmd_static)

    p = sub.add_parser("sweep", help="vary one config key over a range")
    p.add_argument("--key", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "curve-fig7", help="wage growth vs automation rate, predicted and simulated"
    )
    p.add_argument("--points", type=int, default=13)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("check", help="run the acceptance suite")
    p.add_argument("--only", default=None)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
