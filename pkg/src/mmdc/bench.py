"""Timing sweeps over gadget size.

Each target size ``N`` maps to an instance with ``s = t = k`` where
``k = isqrt(N)``, unit demands, and ``alpha_cap`` spread so that
``sum(alpha_cap) - sum(beta) = N - k*k``; the gadget then has exactly ``N``
vertices per side.  Only measurement happens here, nothing is asserted.

Cost families:

``product``
    ``cost[i][j] = (i + 1) * (j + 1)``, a classic hard input for the
    Hungarian method; the cost range arguments are ignored.
``uniform``
    integers drawn uniformly from ``[cost_lo, cost_hi]``.
"""

from __future__ import annotations

import csv
import io
import math
import random
import statistics
import time
from dataclasses import asdict, dataclass

from .hungarian import SolveStats, solve_assignment
from .model import MmdcInstance, normalize
from .reduction import build_gadget, extract_solution


@dataclass
class BenchRow:
    family: str
    target: int
    N: int
    cost_lo: int
    cost_hi: int
    rep: int
    seconds: float
    label_updates: int
    augmentations: int
    tree_steps: int
    cost: int


FAMILIES = ("product", "uniform")


def bench_instance(target: int, cost_lo: int, cost_hi: int, seed: int,
                   family: str = "uniform") -> MmdcInstance:
    k = math.isqrt(target)
    if k < 1:
        raise ValueError("target gadget size must be at least 1")
    extra = target - k * k  # 0 <= extra <= 2k
    rng = random.Random(seed)
    caps = [1] * k
    for _ in range(extra):
        # k * (k - 1) >= 2k spare units whenever k >= 3
        open_slots = [i for i in range(k) if caps[i] < k]
        if not open_slots:
            raise ValueError(f"cannot reach gadget size {target}")
        caps[rng.choice(open_slots)] += 1
    beta_cap = tuple(rng.randint(1, k) for _ in range(k))
    if family == "product":
        cost = tuple(tuple((i + 1) * (j + 1) for j in range(k)) for i in range(k))
    elif family == "uniform":
        cost = tuple(tuple(rng.randint(cost_lo, cost_hi) for _ in range(k)) for _ in range(k))
    else:
        raise ValueError(f"unknown cost family {family!r}")
    return MmdcInstance((1,) * k, tuple(caps), (1,) * k, beta_cap, cost)


def run_bench(sizes, cost_ranges=((0, 1000),), reps: int = 3, seed: int = 0,
              family: str = "product") -> list[BenchRow]:
    """Solve one instance per (size, cost range) ``reps`` times and time the gadget solve."""
    if family == "product":
        cost_ranges = [(0, 0)]
    rows = []
    for target in sizes:
        for lo, hi in cost_ranges:
            inst = bench_instance(target, lo, hi, seed, family)
            g = build_gadget(normalize(inst))
            for rep in range(reps):
                stats = SolveStats()
                t0 = time.perf_counter()
                m, _ = solve_assignment(g.cost, stats=stats)
                elapsed = time.perf_counter() - t0
                sol = extract_solution(g, m)
                rows.append(BenchRow(family, target, g.size, lo, hi, rep, elapsed, stats.label_updates,
                                     stats.augmentations, stats.tree_steps, sol.cost))
    return rows


def median_seconds(rows: list[BenchRow]) -> dict[tuple[str, int, int, int], float]:
    groups: dict[tuple[str, int, int, int], list[float]] = {}
    for r in rows:
        groups.setdefault((r.family, r.N, r.cost_lo, r.cost_hi), []).append(r.seconds)
    return {key: statistics.median(v) for key, v in groups.items()}


def to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    fields = list(BenchRow.__dataclass_fields__)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        d["seconds"] = f"{r.seconds:.6f}"
        w.writerow(d)
    return buf.getvalue()
