"""Command-line front end.

Verbs: solve, ls, export-lp, gen, stats, dump.  Results are line-oriented
``key value`` records on standard output; timing goes to standard error so
identical invocations produce byte-identical standard output.  Exit codes:
0 success, 2 infeasible instance or rejected draw (the message names the
witness), 1 usage or file errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import IO

from .contacts import compute_contact_tables
from .exact import GuardError, Solution, solve_exact, solve_naive, brute_force_oracle
from .generator import GenConfig, generate, good_graph_stats, format_stats
from .instance import Instance, InstanceError, parse_instance, serialize_instance
from .kernels import available_backends
from .localsearch import SearchConfig, local_search
from .mip import build_mip, write_lp
from .structure import Infeasible, build_structure


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract wants 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="tspvr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="exact minimisation over all feasible tours")
    solve.add_argument("instance", help="instance file path, or - for stdin")
    mode = solve.add_mutually_exclusive_group()
    mode.add_argument("--naive", action="store_true",
                      help="re-evaluate the full objective at every step")
    mode.add_argument("--oracle", action="store_true",
                      help="brute-force enumeration over assignments (small n only)")
    solve.add_argument("--backend", default="auto",
                       choices=("auto", "compiled", "python"),
                       help="walk kernel for the default solver")
    solve.add_argument("--quiet", action="store_true", help="print the cost only")

    ls = sub.add_parser("ls", help="exchange-neighborhood local search")
    ls.add_argument("instance", help="instance file path, or - for stdin")
    ls.add_argument("--pivot", default="best", choices=("best", "first"))
    ls.add_argument("--start", default="zero", choices=("zero", "random"))
    ls.add_argument("--seed", type=int, default=0, help="seed for random starts")
    ls.add_argument("--max-iter", type=int, default=None, metavar="N")
    ls.add_argument("--trace", metavar="FILE",
                    help="append one 'iteration j cost' line per move")
    ls.add_argument("--quiet", action="store_true", help="print the cost only")

    export = sub.add_parser("export-lp", help="write the 0-1 linear model")
    export.add_argument("instance", help="instance file path, or - for stdin")
    export.add_argument("-o", "--output", metavar="FILE",
                        help="destination (default: stdout)")
    export.add_argument("--no-const", action="store_true",
                        help="omit the objective constant")

    gen = sub.add_parser("gen", help="generate a random or forced-q instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--wmax", type=int, required=True, help="maximum arc weight")
    gen.add_argument("--forced-q", type=int, default=None, metavar="Q",
                     help="force exactly Q cycles instead of uniform pairs")
    gen.add_argument("-o", "--output", metavar="FILE",
                     help="destination (default: stdout)")

    stats = sub.add_parser("stats", help="goodness statistics over random draws")
    stats.add_argument("--n", type=int, required=True)
    stats.add_argument("--trials", type=int, required=True,
                       help="number of feasible samples to collect")
    stats.add_argument("--seed", type=int, required=True)
    stats.add_argument("--max-draws", type=int, default=None, metavar="M",
                       help="stop after M draws even if trials are incomplete")

    dump = sub.add_parser("dump", help="diagnostic dumps of the reduced structure")
    dump.add_argument("instance", help="instance file path, or - for stdin")
    dump.add_argument("--dump-structure", action="store_true",
                      help="special edges and cycles")
    dump.add_argument("--dump-tables", action="store_true",
                      help="contact tables")
    return parser


def _load_instance(path: str) -> Instance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance(handle.read())


def _print_record(sol: Solution, quiet: bool) -> None:
    if quiet:
        print(sol.cost)
        return
    print(f"cost {sol.cost}")
    print(f"tour {' '.join(str(v) for v in sol.tour)}")
    if sol.q is not None:
        print(f"q {sol.q}")
    if sol.specials is not None:
        print(f"specials {sol.specials}")
    print(f"evaluations {sol.objective_evaluations}")
    print(f"delta-work {sol.delta_work}")


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    t0 = time.perf_counter()
    if args.oracle:
        sol = brute_force_oracle(inst)
    elif args.naive:
        sol = solve_naive(inst)
    else:
        sol = solve_exact(inst, backend=args.backend)
    elapsed = time.perf_counter() - t0
    _print_record(sol, args.quiet)
    print(f"elapsed {elapsed:.6f}", file=sys.stderr)
    return 0


def _cmd_ls(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    config = SearchConfig(pivot=args.pivot, start=args.start, seed=args.seed,
                          max_iterations=args.max_iter)
    t0 = time.perf_counter()
    s = build_structure(inst)
    tables = compute_contact_tables(inst, s)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as trace:
            sol = local_search(s, tables, config, trace=trace)
    else:
        sol = local_search(s, tables, config)
    elapsed = time.perf_counter() - t0
    _print_record(sol, args.quiet)
    print(f"elapsed {elapsed:.6f}", file=sys.stderr)
    return 0


def _cmd_export_lp(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    s = build_structure(inst)
    model = build_mip(compute_contact_tables(inst, s))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as out:
            write_lp(model, out, include_constant=not args.no_const)
    else:
        write_lp(model, sys.stdout, include_constant=not args.no_const)
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(n=args.n, seed=args.seed, weight_max=args.wmax,
                    forced_q=args.forced_q)
    inst = generate(cfg)
    if inst is None:
        # Re-run the reduction to name the witness for the rejection.
        from .generator import _uniform_requisitions
        from .structure import structure_from_requisitions
        try:
            structure_from_requisitions(cfg.n, _uniform_requisitions(cfg.n, cfg.seed))
        except Infeasible as exc:
            print(f"rejected: {exc}")
        return 2
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as out:
            out.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    report = good_graph_stats(args.n, args.trials, args.seed,
                              max_draws=args.max_draws)
    sys.stdout.write(format_stats(report))
    return 0


def _dump_structure(out: IO[str], s) -> None:
    for i in sorted(s.specials):
        out.write(f"S {i} {s.specials[i]}\n")
    for j, cycle in enumerate(s.cycles, start=1):
        pairs = " ".join(f"{i} {u}" for i, u in zip(cycle.positions, cycle.vertices))
        out.write(f"C {j}: {pairs}\n")


def _dump_tables(out: IO[str], t) -> None:
    for j in range(t.q):
        out.write(f"P {j + 1} 0 {t.p0[j]}\n")
        out.write(f"P {j + 1} 1 {t.p1[j]}\n")
    for j in range(t.q):
        for jp in t.adjacency[j]:
            if jp <= j:
                continue
            for k in (0, 1):
                for l in (0, 1):
                    out.write(f"Q {j + 1} {jp + 1} {k} {l} "
                              f"{t.pair_value(j, jp, k, l)}\n")
    out.write(f"C {t.constant}\n")


def _cmd_dump(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    s = build_structure(inst)
    both = not (args.dump_structure or args.dump_tables)
    if args.dump_structure or both:
        _dump_structure(sys.stdout, s)
    if args.dump_tables or both:
        _dump_tables(sys.stdout, compute_contact_tables(inst, s))
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "ls": _cmd_ls,
    "export-lp": _cmd_export_lp,
    "gen": _cmd_gen,
    "stats": _cmd_stats,
    "dump": _cmd_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.verb](args)
    except Infeasible as exc:
        print(f"infeasible: {exc}")
        return 2
    except (InstanceError, GuardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
