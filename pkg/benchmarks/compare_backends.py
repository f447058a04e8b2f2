"""Timing comparison of the compiled and pure-Python walk kernels.

Builds forced-q instances over a q sweep, solves each with every
available backend, checks that cost, selection, and counters agree bit
for bit, then reports per-backend wall times.  Exits nonzero on any
disagreement, so the script doubles as an integration check.

Run from the repository root:

    python3 benchmarks/compare_backends.py
    python3 benchmarks/compare_backends.py --qs 12 16 20 --repeats 5
"""

import argparse
import sys
import time

from tspvr.exact import solve_exact
from tspvr.generator import GenConfig, generate
from tspvr.kernels import available_backends


def time_solve(inst, backend: str, repeats: int):
    best = None
    sol = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        sol = solve_exact(inst, backend=backend)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return sol, best


def fingerprint(sol):
    return (sol.cost, sol.delta, sol.objective_evaluations, sol.delta_work)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qs", type=int, nargs="+",
                        default=[10, 12, 14, 16, 18],
                        help="cycle counts to sweep")
    parser.add_argument("--n", type=int, default=1000,
                        help="positions per instance")
    parser.add_argument("--wmax", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--repeats", type=int, default=3,
                        help="take the best of this many runs")
    args = parser.parse_args(argv)

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"n={args.n} wmax={args.wmax} seed={args.seed} "
          f"repeats={args.repeats}")
    header = f"{'q':>4} {'evals':>9}"
    for name in backends:
        header += f" {name + ' (ms)':>14}"
    if len(backends) > 1:
        header += f" {'speedup':>8} {'identical':>10}"
    print(header)

    mismatches = 0
    for q in args.qs:
        n = max(args.n, 2 * q)
        inst = generate(GenConfig(n=n, seed=args.seed, weight_max=args.wmax,
                                  forced_q=q))
        results = {name: time_solve(inst, name, args.repeats)
                   for name in backends}
        first = backends[0]
        row = f"{q:>4} {results[first][0].objective_evaluations:>9}"
        for name in backends:
            row += f" {results[name][1] * 1e3:>14.2f}"
        if len(backends) > 1:
            prints = {fingerprint(sol) for sol, _ in results.values()}
            same = len(prints) == 1
            if not same:
                mismatches += 1
            ratio = results["python"][1] / results["compiled"][1]
            row += f" {ratio:>7.1f}x {'yes' if same else 'NO':>10}"
        print(row)

    if mismatches:
        print(f"{mismatches} backend disagreement(s)", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
