"""Command-line interface.

Usage::

    mmdc solve instance.json [--output sol.json] [--epsilon E] [--check-oracle]
    mmdc verify instance.json sol.json
    mmdc oracle instance.json [--output sol.json] [--check-oracle]
    mmdc gen --mode uniform|euclidean --s 3 --t 3 --seed 7 [--output inst.json]
    mmdc dump-gadget instance.json [--output gadget.json]
    mmdc bench [--sizes 100,200,400] [--family product|uniform] [--ranges 0-1,0-1000]

Exit codes: 0 ok, 1 verification failed, 2 parse or usage error,
3 infeasible instance, 4 oracle size cap exceeded, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace

from . import bench as bench_mod
from .generate import euclidean_instance, uniform_instance
from .hungarian import InvariantViolation
from .io import (FormatError, InstanceFile, SolutionFile, check_gadget_dump, gadget_to_json,
                 instance_from_json, instance_to_json, read_text, solution_from_json,
                 solution_to_json, write_text)
from .model import InfeasibleInstanceError, MmdcInstance, normalize
from .oracle import OracleSizeError, brute_force_mmdc, verify_solution
from .reduction import MmdcSolution, SentinelMatchedError, build_gadget, solve_mmdc

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_ORACLE_CAP = 4
EXIT_INTERNAL = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(text: str, output: str | None) -> None:
    if output:
        write_text(output, text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str) -> MmdcInstance:
    try:
        return instance_from_json(read_text(path)).instance
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc
    except FormatError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _as_float(inst: MmdcInstance) -> MmdcInstance:
    return replace(inst, cost=tuple(tuple(float(c) for c in row) for row in inst.cost))


def _oracle_solution(inst: MmdcInstance) -> MmdcSolution:
    try:
        found = brute_force_mmdc(inst)
    except OracleSizeError as exc:
        raise CliError(EXIT_ORACLE_CAP, str(exc)) from exc
    if found is None:
        raise CliError(EXIT_INFEASIBLE, "infeasible instance: no pair set meets every bound")
    cost, pairs = found
    deg_a = [0] * inst.s
    deg_b = [0] * inst.t
    for i, j in pairs:
        deg_a[i] += 1
        deg_b[j] += 1
    return MmdcSolution(tuple(pairs), tuple(deg_a), tuple(deg_b), cost, None)


def _costs_agree(a, b) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    return abs(a - b) <= 1e-6 * max(1.0, abs(a), abs(b))


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.mode == "float":
        inst = _as_float(inst)
    t0 = time.perf_counter()
    try:
        sol = solve_mmdc(inst, epsilon=args.epsilon, debug=args.debug)
    except (InfeasibleInstanceError, SentinelMatchedError) as exc:
        raise CliError(EXIT_INFEASIBLE, str(exc)) from exc
    elapsed = time.perf_counter() - t0
    report = verify_solution(inst, sol)
    if not report.passed:
        raise CliError(EXIT_INTERNAL, "solver output failed verification: "
                       + "; ".join(report.problems))
    if args.check_oracle:
        ref = _oracle_solution(inst)
        if not _costs_agree(sol.cost, ref.cost):
            raise CliError(EXIT_INTERNAL, f"solver cost {sol.cost} != oracle cost {ref.cost}")
        print(f"oracle agrees: cost {ref.cost}", file=sys.stderr)
    seconds = None if args.no_timing else round(elapsed, 6)
    _emit(solution_to_json(SolutionFile(sol, seconds=seconds)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    try:
        sf = solution_from_json(read_text(args.solution))
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {args.solution}: {exc}") from exc
    except FormatError as exc:
        raise CliError(EXIT_PARSE, f"{args.solution}: {exc}") from exc
    report = verify_solution(inst, sf.solution)
    if report.passed:
        print("PASS")
        return EXIT_OK
    print("FAIL")
    for p in report.problems:
        print(f"  {p}")
    return EXIT_VERIFY_FAILED


def cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    t0 = time.perf_counter()
    ref = _oracle_solution(inst)
    elapsed = time.perf_counter() - t0
    if args.check_oracle:
        sol = solve_mmdc(inst)
        if not _costs_agree(sol.cost, ref.cost):
            raise CliError(EXIT_INTERNAL, f"solver cost {sol.cost} != oracle cost {ref.cost}")
        print(f"solver agrees: cost {sol.cost}", file=sys.stderr)
    seconds = None if args.no_timing else round(elapsed, 6)
    _emit(solution_to_json(SolutionFile(ref, solver="brute-force", seconds=seconds)), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    common = dict(seed=args.seed, min_demand=args.min_demand, max_bound=args.max_bound,
                  density=args.density)
    try:
        if args.mode == "uniform":
            inst, meta = uniform_instance(args.s, args.t, cost_max=args.cost_max, **common)
        else:
            inst, meta = euclidean_instance(args.s, args.t, box=args.box, **common)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad generator parameters: {exc}") from exc
    _emit(instance_to_json(InstanceFile(inst, meta)), args.output)
    return EXIT_OK


def cmd_dump_gadget(args) -> int:
    inst = _load_instance(args.instance)
    try:
        g = build_gadget(normalize(inst))
    except InfeasibleInstanceError as exc:
        raise CliError(EXIT_INFEASIBLE, str(exc)) from exc
    text = gadget_to_json(g)
    problems = check_gadget_dump(text, inst)
    if problems:
        raise CliError(EXIT_INTERNAL, "gadget failed its own check: " + "; ".join(problems[:5]))
    _emit(text, args.output)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _ranges(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        lo, hi = part.split("-")
        out.append((int(lo), int(hi)))
    return out


def cmd_bench(args) -> int:
    try:
        rows = bench_mod.run_bench(_int_list(args.sizes), _ranges(args.ranges), reps=args.reps,
                                   seed=args.seed, family=args.family)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad bench parameters: {exc}") from exc
    _emit(bench_mod.to_csv(rows), args.output)
    meds = sorted(bench_mod.median_seconds(rows).items())
    prev = {}
    for (family, n, lo, hi), sec in meds:
        key = (family, lo, hi)
        growth = f"  x{sec / prev[key]:.2f}" if key in prev else ""
        print(f"{family} [{lo},{hi}] N={n}: median {sec:.4f}s{growth}", file=sys.stderr)
        prev[key] = sec
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmdc",
        description="Minimum-cost many-to-many matching with demands and capacities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance with the gadget reduction")
    p.add_argument("instance")
    p.add_argument("--output", "-o")
    p.add_argument("--mode", choices=("auto", "float"), default="auto",
                   help="arithmetic: auto (exact for integer costs) or float")
    p.add_argument("--epsilon", type=float, default=None, help="tightness tolerance in float mode")
    p.add_argument("--check-oracle", action="store_true",
                   help="also run the brute-force oracle and compare costs")
    p.add_argument("--debug", action="store_true", help="check solver invariants at every step")
    p.add_argument("--no-timing", action="store_true", help="write null timing")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against its instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="solve by exhaustive enumeration (small instances only)")
    p.add_argument("instance")
    p.add_argument("--output", "-o")
    p.add_argument("--check-oracle", action="store_true",
                   help="also run the gadget solver and compare costs")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a random feasible instance")
    p.add_argument("--mode", choices=("uniform", "euclidean"), default="uniform")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cost-max", type=int, default=9, help="uniform mode: costs in [0, cost-max]")
    p.add_argument("--box", type=float, default=100.0, help="euclidean mode: points in [0, box]^2")
    p.add_argument("--min-demand", type=int, default=0)
    p.add_argument("--max-bound", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dump-gadget", help="write the gadget graph of an instance")
    p.add_argument("instance")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_dump_gadget)

    p = sub.add_parser("bench", help="time the solver over gadget sizes (CSV)")
    p.add_argument("--sizes", default="100,200,400")
    p.add_argument("--family", choices=bench_mod.FAMILIES, default="product")
    p.add_argument("--ranges", default="0-1000", help="uniform family: lo-hi[,lo-hi...]")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"mmdc {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except InvariantViolation as exc:
        print(f"mmdc {args.command}: internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
