"""Compare the compiled integrator against the pure-Python fallback.

The backend is chosen at import time from AUTOECON_DISABLE_NUMBA, so the
script re-executes itself in a subprocess for each backend and times the
same workload: a 100-year Ramsey shoot plus a 300-year constant-savings
run at a 0.01-year step.

Usage: python benchmarks/benchmark_kernels.py [--repeats N]
"""

import argparse
import os
import subprocess
import sys
import time


def workload():
    from autoecon import (
        ConstantSavings,
        EconomyParams,
        PreferenceParams,
        Ramsey,
        SolverSettings,
        pareto_from_initial_share,
        simulate,
    )

    params = EconomyParams(A=0.5, sigma=0.5, L=1.0)
    prefs = PreferenceParams(rho=0.04, eta=2.0, delta=0.1)
    dist, path = pareto_from_initial_share(0.608, 0.02)
    simulate(dist, path, params, prefs, 4.6, Ramsey(), SolverSettings(horizon=100.0))
    simulate(
        dist, path, params, prefs, 4.6, ConstantSavings(0.4),
        SolverSettings(horizon=300.0),
    )


def measure(repeats):
    workload()  # warm-up: triggers JIT compilation where applicable
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        workload()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        print("%.6f" % measure(args.repeats))
        return

    results = {}
    for label, disable in (("numba", ""), ("fallback", "1")):
        env = dict(os.environ)
        if disable:
            env["AUTOECON_DISABLE_NUMBA"] = disable
        else:
            env.pop("AUTOECON_DISABLE_NUMBA", None)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--repeats", str(args.repeats)],
            capture_output=True, text=True, env=env, check=True,
        )
        results[label] = float(proc.stdout.strip())
        print(f"{label:10s} {results[label] * 1e3:10.1f} ms")
    print(f"{'speedup':10s} {results['fallback'] / results['numba']:10.1f} x")


if __name__ == "__main__":
    main()
