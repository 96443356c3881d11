"""Exhaustive reference solvers for small instances.

Nothing here uses matching theory: assignments are found by trying every
permutation and MMDCs by trying every pair set.  Use them to check the
real solvers, never in production paths.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .model import MmdcInstance

MAX_ASSIGNMENT_N = 9
MAX_MMDC_PAIRS = 20


class OracleSizeError(ValueError):
    pass


def brute_force_assignment(cost) -> tuple[int | float, tuple[int, ...]]:
    """Return the minimum weight over all permutations and the lexicographically first argmin."""
    rows = [list(r) for r in cost]
    n = len(rows)
    if n > MAX_ASSIGNMENT_N:
        raise OracleSizeError(f"n={n} exceeds the oracle cap of {MAX_ASSIGNMENT_N}")
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("cost matrix must be square and nonempty")
    best, arg = None, None
    for perm in itertools.permutations(range(n)):
        total = sum(rows[i][perm[i]] for i in range(n))
        if best is None or total < best:
            best, arg = total, perm
    return best, arg


def pair_cost(instance: MmdcInstance, pairs) -> int | float:
    return sum((instance.cost[i][j] for i, j in sorted(pairs)), 0 if instance.integer_costs else 0.0)


def brute_force_mmdc(instance: MmdcInstance):
    """Cheapest pair set meeting every bound, or ``None`` if there is none.

    Returns ``(cost, pairs)`` with ``pairs`` the lexicographically smallest
    optimal sorted pair tuple.  Rows are enumerated one at a time; a branch
    is cut as soon as some column is over capacity or can no longer reach its
    demand with the rows left.
    """
    s, t = instance.s, instance.t
    if s * t > MAX_MMDC_PAIRS:
        raise OracleSizeError(f"s*t={s * t} exceeds the oracle cap of {MAX_MMDC_PAIRS}")

    # all column subsets per row, in lexicographic order of the pair tuple
    choices = []
    for i in range(s):
        lo, hi = instance.alpha[i], min(instance.alpha_cap[i], t)
        subsets = [c for k in range(lo, hi + 1) for c in itertools.combinations(range(t), k)]
        subsets.sort()
        choices.append(subsets)

    best: list = [None, None]
    deg = [0] * t
    chosen: list[tuple[int, ...]] = []

    def visit(i: int) -> None:
        rows_left = s - i
        for j in range(t):
            if deg[j] + rows_left < instance.beta[j]:
                return
        if i == s:
            pairs = tuple((r, j) for r, cols in enumerate(chosen) for j in cols)
            c = pair_cost(instance, pairs)
            if best[0] is None or c < best[0] or (c == best[0] and pairs < best[1]):
                best[0], best[1] = c, pairs
            return
        for cols in choices[i]:
            if any(deg[j] >= instance.beta_cap[j] for j in cols):
                continue
            for j in cols:
                deg[j] += 1
            chosen.append(cols)
            visit(i + 1)
            chosen.pop()
            for j in cols:
                deg[j] -= 1

    visit(0)
    if best[0] is None:
        return None
    return best[0], best[1]


@dataclass
class VerificationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems


def verify_solution(instance: MmdcInstance, sol, rel_tol: float = 1e-9) -> VerificationReport:
    """Check a solution against the MMDC definition and its own stated cost.

    ``sol`` needs ``pairs`` and ``cost`` attributes; ``deg_a``/``deg_b`` are
    checked too when present.
    """
    rep = VerificationReport()
    pairs = [tuple(p) for p in sol.pairs]
    seen = set()
    for p in pairs:
        if p in seen:
            rep.problems.append(f"duplicate pair {p}")
        seen.add(p)
    deg_a = [0] * instance.s
    deg_b = [0] * instance.t
    valid = []
    for i, j in seen:
        if not (0 <= i < instance.s and 0 <= j < instance.t):
            rep.problems.append(f"pair ({i}, {j}) is out of range")
            continue
        deg_a[i] += 1
        deg_b[j] += 1
        valid.append((i, j))
    for i, d in enumerate(deg_a):
        if d < instance.alpha[i]:
            rep.problems.append(f"demand violated: a{i} has {d} < {instance.alpha[i]}")
        if d > instance.alpha_cap[i]:
            rep.problems.append(f"capacity violated: a{i} has {d} > {instance.alpha_cap[i]}")
    for j, d in enumerate(deg_b):
        if d < instance.beta[j]:
            rep.problems.append(f"demand violated: b{j} has {d} < {instance.beta[j]}")
        if d > instance.beta_cap[j]:
            rep.problems.append(f"capacity violated: b{j} has {d} > {instance.beta_cap[j]}")
    for name, stated, actual in (("deg_a", getattr(sol, "deg_a", None), deg_a),
                                 ("deg_b", getattr(sol, "deg_b", None), deg_b)):
        if stated is not None and list(stated) != actual:
            rep.problems.append(f"{name} {list(stated)} does not match pairs ({actual})")
    actual = pair_cost(instance, valid)
    if instance.integer_costs and isinstance(sol.cost, int):
        ok = sol.cost == actual
    else:
        ok = math.isclose(sol.cost, actual, rel_tol=rel_tol, abs_tol=rel_tol)
    if not ok:
        rep.problems.append(f"cost mismatch: stated {sol.cost}, pairs sum to {actual}")
    return rep


def _bound_pairs(max_bound: int):
    return [(lo, hi) for hi in range(max_bound + 1) for lo in range(hi + 1)]


def all_instances(max_s: int, max_t: int, max_bound: int, costs=(0, 1, 2)):
    """Every instance with ``s <= max_s``, ``t <= max_t``, bounds in ``[0, max_bound]``
    and each cost drawn from ``costs``."""
    bounds = _bound_pairs(max_bound)
    for s in range(1, max_s + 1):
        for t in range(1, max_t + 1):
            for a in itertools.product(bounds, repeat=s):
                for b in itertools.product(bounds, repeat=t):
                    for flat in itertools.product(costs, repeat=s * t):
                        yield MmdcInstance(
                            alpha=tuple(x[0] for x in a),
                            alpha_cap=tuple(x[1] for x in a),
                            beta=tuple(x[0] for x in b),
                            beta_cap=tuple(x[1] for x in b),
                            cost=tuple(flat[i * t:(i + 1) * t] for i in range(s)),
                        )


def random_instance(rng, max_s: int = 3, max_t: int = 3, max_bound: int = 3,
                    cost_max: int = 9) -> MmdcInstance:
    """Uniformly random bounds and integer costs; the result may be infeasible."""
    s, t = rng.randint(1, max_s), rng.randint(1, max_t)
    bounds = _bound_pairs(max_bound)
    a = [rng.choice(bounds) for _ in range(s)]
    b = [rng.choice(bounds) for _ in range(t)]
    return MmdcInstance(
        alpha=tuple(x[0] for x in a),
        alpha_cap=tuple(x[1] for x in a),
        beta=tuple(x[0] for x in b),
        beta_cap=tuple(x[1] for x in b),
        cost=tuple(tuple(rng.randint(0, cost_max) for _ in range(t)) for _ in range(s)),
    )
