"""Acceptance criteria 1-9, each checked at its stated size and tolerance.

Criteria 2-6 share one sweep: every instance with s, t <= 2, bounds <= 2 and
costs in {0, 1, 2}, plus 500 random feasible instances with s, t <= 3,
bounds <= 3 and costs in [0, 9].  The sweep runs the solver with debug
checks on, so it also serves criterion 4.
"""

import csv
import json
import random
import time
from dataclasses import dataclass, field

import pytest

from mmdc.bench import BenchRow, median_seconds
from mmdc.cli import EXIT_OK, main
from mmdc.hungarian import InvariantViolation, SolveStats, solve_assignment
from mmdc.io import instance_from_json, read_text
from mmdc.model import validate
from mmdc.oracle import (all_instances, brute_force_assignment, brute_force_mmdc, random_instance,
                         verify_solution)
from mmdc.reduction import extract_solution, nonmain_weight, solve_gadget

RANDOM_FEASIBLE = 500


@dataclass
class Sweep:
    instances: int = 0
    exhaustive: int = 0
    feasible: int = 0
    random_feasible: int = 0
    seconds: float = 0.0
    cost_mismatch: list = field(default_factory=list)
    feasibility_mismatch: list = field(default_factory=list)
    invariant_failures: list = field(default_factory=list)
    debug_checks: int = 0
    accounting_mismatch: list = field(default_factory=list)
    verify_failures: list = field(default_factory=list)
    duplicate_pairs: int = 0


def _check(sweep: Sweep, x) -> bool:
    sweep.instances += 1
    ref = brute_force_mmdc(x)
    verdict = validate(x).feasible
    if verdict != (ref is not None):
        sweep.feasibility_mismatch.append(x)
    if ref is None:
        return False
    sweep.feasible += 1
    stats = SolveStats()
    try:
        g, m = solve_gadget(x, debug=True, stats=stats)
    except InvariantViolation as exc:
        sweep.invariant_failures.append((x, str(exc)))
        return True
    sweep.debug_checks += stats.checks
    sol = extract_solution(g, m)
    if sol.cost != ref[0]:
        sweep.cost_mismatch.append((x, sol.cost, ref[0]))

    n = g.norm.instance
    L = len(sol.pairs)
    g1, g2 = g.gamma_prime, g.gamma_double_prime
    closed = (sum(n.beta_cap) - L) * g1 + (L - sum(n.beta)) * g2 + (sum(n.alpha_cap) - L) * g1
    if nonmain_weight(g, m) != closed:
        sweep.accounting_mismatch.append(x)

    if not verify_solution(x, sol).passed:
        sweep.verify_failures.append(x)
    sweep.duplicate_pairs += len(sol.pairs) - len(set(sol.pairs))
    return True


@pytest.fixture(scope="module")
def sweep():
    result = Sweep()
    t0 = time.perf_counter()
    for x in all_instances(2, 2, 2, costs=(0, 1, 2)):
        _check(result, x)
        result.exhaustive += 1
    rng = random.Random(2024)
    while result.random_feasible < RANDOM_FEASIBLE:
        if _check(result, random_instance(rng, 3, 3, 3, cost_max=9)):
            result.random_feasible += 1
    result.seconds = time.perf_counter() - t0
    return result


def test_criterion_1_assignment_oracle(record):
    rng = random.Random(1)
    mismatches = 0
    t0 = time.perf_counter()
    for n in range(1, 8):
        for _ in range(1000):
            w = [[rng.randint(0, 9) for _ in range(n)] for _ in range(n)]
            m, _ = solve_assignment(w)
            if m.weight != brute_force_assignment(w)[0]:
                mismatches += 1
    elapsed = time.perf_counter() - t0
    record(1, mismatches == 0 and elapsed < 120,
           f"7000 matrices, {mismatches} mismatches, {elapsed:.1f}s (limit 120s)")


def test_criterion_2_mmdc_oracle(sweep, record):
    # 6 (lo, hi) bound pairs per element and 3 costs per cell, over the four shapes
    assert sweep.exhaustive == 6**2 * 3 + 2 * 6**3 * 9 + 6**4 * 81
    ok = (not sweep.cost_mismatch and not sweep.invariant_failures
          and sweep.random_feasible >= RANDOM_FEASIBLE and sweep.seconds < 300)
    record(2, ok, f"{sweep.feasible} feasible of {sweep.instances} "
                  f"({sweep.random_feasible} random), {len(sweep.cost_mismatch)} cost mismatches, "
                  f"{sweep.seconds:.1f}s (limit 300s)")


def test_criterion_3_feasibility_agreement(sweep, record):
    record(3, not sweep.feasibility_mismatch,
           f"{sweep.instances} instances, {len(sweep.feasibility_mismatch)} disagreements")


def test_criterion_4_labeling_invariants(sweep, record):
    ok = not sweep.invariant_failures and sweep.debug_checks > 0
    record(4, ok, f"{sweep.debug_checks} debug checkpoints, "
                  f"{len(sweep.invariant_failures)} violations")


def test_criterion_5_nonmain_accounting(sweep, record):
    record(5, not sweep.accounting_mismatch,
           f"{sweep.feasible} solved, {len(sweep.accounting_mismatch)} closed-form mismatches")


def test_criterion_6_degree_safety(sweep, record):
    ok = not sweep.verify_failures and sweep.duplicate_pairs == 0
    record(6, ok, f"{sweep.feasible} solutions, {len(sweep.verify_failures)} verify failures, "
                  f"{sweep.duplicate_pairs} duplicate pairs")


def _read_bench(path):
    with open(path) as fh:
        rows = []
        for r in csv.DictReader(fh):
            rows.append(BenchRow(r["family"], int(r["target"]), int(r["N"]), int(r["cost_lo"]),
                                 int(r["cost_hi"]), int(r["rep"]), float(r["seconds"]),
                                 int(r["label_updates"]), int(r["augmentations"]),
                                 int(r["tree_steps"]), int(r["cost"])))
    return rows


def test_criterion_7_cubic_scaling(tmp_path, record):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sizes", "100,200,400", "--reps", "5", "-o", str(out)]) == EXIT_OK
    meds = {n: sec for (_, n, _, _), sec in median_seconds(_read_bench(out)).items()}
    ratios = [meds[200] / meds[100], meds[400] / meds[200]]
    ok = all(4 <= r <= 16 for r in ratios) and max(meds.values()) < 60
    record(7, ok, "medians " + ", ".join(f"N={n} {meds[n]:.3f}s" for n in sorted(meds))
           + f"; doubling ratios {ratios[0]:.2f}, {ratios[1]:.2f} (band [4, 16])")


def test_criterion_8_determinism(tmp_path, record):
    inst = tmp_path / "inst.json"
    main(["gen", "--s", "6", "--t", "5", "--seed", "8", "--min-demand", "1", "-o", str(inst)])
    outs = []
    for k in range(2):
        path = tmp_path / f"sol{k}.json"
        assert main(["solve", str(inst), "-o", str(path)]) == EXIT_OK
        outs.append(path)
    docs = [json.loads(p.read_text()) for p in outs]
    for d in docs:
        d.pop("timing")
    same_modulo_timing = docs[0] == docs[1]
    bare = []
    for k in range(2):
        path = tmp_path / f"bare{k}.json"
        main(["solve", str(inst), "-o", str(path), "--no-timing"])
        bare.append(path.read_bytes())
    ok = same_modulo_timing and bare[0] == bare[1]
    record(8, ok, f"timed runs equal modulo timing: {same_modulo_timing}; "
                  f"untimed runs byte-identical: {bare[0] == bare[1]}")


def test_criterion_9_float_mode(tmp_path, record):
    worst = 0.0
    failures = 0
    for seed in range(200):
        s, t = 1 + seed % 3, 1 + (seed // 3) % 3
        inst, sol = tmp_path / "inst.json", tmp_path / "sol.json"
        assert main(["gen", "--mode", "euclidean", "--s", str(s), "--t", str(t),
                     "--seed", str(seed), "--min-demand", str(seed % 2), "-o", str(inst)]) == 0
        assert main(["solve", str(inst), "--mode", "float", "-o", str(sol)]) == EXIT_OK
        got = json.loads(sol.read_text())["cost"]
        want = brute_force_mmdc(instance_from_json(read_text(inst)).instance)[0]
        rel = abs(got - want) / max(abs(want), 1e-12) if want else abs(got)
        worst = max(worst, rel)
        failures += rel > 1e-6
    record(9, failures == 0, f"200 euclidean instances, {failures} outside 1e-6, "
                             f"worst relative error {worst:.2e}")
