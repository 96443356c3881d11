"""Seeded random instance generators.

Bounds are drawn around a hidden witness pair set, so every generated
instance is feasible by construction.
"""

from __future__ import annotations

import math
import random

from .model import MmdcInstance, validate
from .reduction import solve_mmdc


def _witness(rng: random.Random, s: int, t: int, min_demand: int, max_bound: int,
             density: float) -> set[tuple[int, int]]:
    """A random pair set whose degrees all lie in [min_demand, max_bound]."""
    base = MmdcInstance(
        alpha=(min_demand,) * s,
        alpha_cap=(max_bound,) * s,
        beta=(min_demand,) * t,
        beta_cap=(max_bound,) * t,
        cost=tuple(tuple(rng.randint(0, 99) for _ in range(t)) for _ in range(s)),
    )
    report = validate(base)
    if not report.feasible:
        raise ValueError("no instance can meet these bounds: "
                         + "; ".join(v.message for v in report.violations))
    pairs = set(solve_mmdc(base).pairs)
    deg_a, deg_b = _degrees(pairs, s, t)
    extra = [(i, j) for i in range(s) for j in range(t) if (i, j) not in pairs]
    rng.shuffle(extra)
    for i, j in extra:
        if rng.random() < density and deg_a[i] < max_bound and deg_b[j] < max_bound:
            pairs.add((i, j))
            deg_a[i] += 1
            deg_b[j] += 1
    return pairs


def _bounds(rng: random.Random, degrees, min_demand: int, max_bound: int):
    lo = tuple(rng.randint(min_demand, d) for d in degrees)
    hi = tuple(rng.randint(d, max_bound) for d in degrees)
    return lo, hi


def _check_params(s: int, t: int, min_demand: int, max_bound: int, density: float) -> None:
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    if min_demand < 0 or max_bound < min_demand:
        raise ValueError("need 0 <= min_demand <= max_bound")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")


def _degrees(pairs, s, t):
    deg_a = [0] * s
    deg_b = [0] * t
    for i, j in pairs:
        deg_a[i] += 1
        deg_b[j] += 1
    return deg_a, deg_b


def uniform_instance(s: int, t: int, *, seed: int, cost_max: int = 9, min_demand: int = 0,
                     max_bound: int = 3, density: float = 0.5) -> tuple[MmdcInstance, dict]:
    """Integer costs drawn uniformly from ``[0, cost_max]``."""
    _check_params(s, t, min_demand, max_bound, density)
    if cost_max < 0:
        raise ValueError("cost_max must be nonnegative")
    rng = random.Random(seed)
    pairs = _witness(rng, s, t, min_demand, max_bound, density)
    deg_a, deg_b = _degrees(pairs, s, t)
    alpha, alpha_cap = _bounds(rng, deg_a, min_demand, max_bound)
    beta, beta_cap = _bounds(rng, deg_b, min_demand, max_bound)
    cost = tuple(tuple(rng.randint(0, cost_max) for _ in range(t)) for _ in range(s))
    meta = {"generator": "uniform", "seed": seed, "cost_max": cost_max,
            "min_demand": min_demand, "max_bound": max_bound, "density": density}
    return MmdcInstance(alpha, alpha_cap, beta, beta_cap, cost), meta


def euclidean_instance(s: int, t: int, *, seed: int, box: float = 100.0, min_demand: int = 0,
                       max_bound: int = 3, density: float = 0.5,
                       points_a=None, points_b=None) -> tuple[MmdcInstance, dict]:
    """Costs are planar distances between points drawn uniformly in ``[0, box]^2``.

    ``points_a``/``points_b`` override the random points.
    """
    _check_params(s, t, min_demand, max_bound, density)
    if not box > 0:
        raise ValueError("box must be positive")
    rng = random.Random(seed)
    pairs = _witness(rng, s, t, min_demand, max_bound, density)
    deg_a, deg_b = _degrees(pairs, s, t)
    alpha, alpha_cap = _bounds(rng, deg_a, min_demand, max_bound)
    beta, beta_cap = _bounds(rng, deg_b, min_demand, max_bound)
    if points_a is None:
        points_a = [(rng.uniform(0, box), rng.uniform(0, box)) for _ in range(s)]
    if points_b is None:
        points_b = [(rng.uniform(0, box), rng.uniform(0, box)) for _ in range(t)]
    if len(points_a) != s or len(points_b) != t:
        raise ValueError("point lists do not match s and t")
    cost = tuple(tuple(float(math.dist(p, q)) for q in points_b) for p in points_a)
    meta = {"generator": "euclidean", "seed": seed, "box": box, "min_demand": min_demand,
            "max_bound": max_bound, "density": density,
            "points_a": [list(p) for p in points_a], "points_b": [list(q) for q in points_b]}
    return MmdcInstance(alpha, alpha_cap, beta, beta_cap, cost), meta
