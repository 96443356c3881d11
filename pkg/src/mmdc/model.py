"""Problem instances for many-to-many matching with demands and capacities.

An instance pairs elements ``a_0..a_{s-1}`` with ``b_0..b_{t-1}``.  Element
``a_i`` must be matched to between ``alpha[i]`` and ``alpha_cap[i]`` distinct
partners, element ``b_j`` to between ``beta[j]`` and ``beta_cap[j]``.  All
indices are zero-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from numbers import Integral, Real


class InfeasibleInstanceError(ValueError):
    """Raised when an instance admits no pair set meeting all bounds."""

    def __init__(self, report: "FeasibilityReport"):
        self.report = report
        super().__init__("infeasible instance: " + "; ".join(v.message for v in report.violations))


def _as_number(x):
    if isinstance(x, bool):
        raise TypeError("costs must be numbers, not bool")
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Real):
        # floats stay floats even when integral: the numeric mode follows the input
        return float(x)
    raise TypeError(f"cost {x!r} is not a real number")


@dataclass(frozen=True)
class MmdcInstance:
    alpha: tuple[int, ...]
    alpha_cap: tuple[int, ...]
    beta: tuple[int, ...]
    beta_cap: tuple[int, ...]
    cost: tuple[tuple[int | float, ...], ...]

    def __post_init__(self):
        for name in ("alpha", "alpha_cap", "beta", "beta_cap"):
            vals = tuple(getattr(self, name))
            for v in vals:
                if isinstance(v, bool) or not isinstance(v, Integral) or v < 0:
                    raise ValueError(f"{name} entries must be nonnegative integers, got {v!r}")
            object.__setattr__(self, name, tuple(int(v) for v in vals))
        s, t = len(self.alpha), len(self.beta)
        if s < 1 or t < 1:
            raise ValueError("both sides need at least one element")
        if len(self.alpha_cap) != s or len(self.beta_cap) != t:
            raise ValueError("demand and capacity vectors differ in length")
        rows = tuple(tuple(_as_number(c) for c in row) for row in self.cost)
        if len(rows) != s or any(len(r) != t for r in rows):
            raise ValueError(f"cost matrix must be {s}x{t}")
        for row in rows:
            for c in row:
                if not math.isfinite(c) or c < 0:
                    raise ValueError(f"costs must be finite and nonnegative, got {c!r}")
        object.__setattr__(self, "cost", rows)
        for i, (lo, hi) in enumerate(zip(self.alpha, self.alpha_cap)):
            if lo > hi:
                raise ValueError(f"alpha[{i}]={lo} exceeds alpha_cap[{i}]={hi}")
        for j, (lo, hi) in enumerate(zip(self.beta, self.beta_cap)):
            if lo > hi:
                raise ValueError(f"beta[{j}]={lo} exceeds beta_cap[{j}]={hi}")

    @property
    def s(self) -> int:
        return len(self.alpha)

    @property
    def t(self) -> int:
        return len(self.beta)

    @property
    def integer_costs(self) -> bool:
        return all(isinstance(c, int) for row in self.cost for c in row)

    def transpose(self) -> "MmdcInstance":
        """Swap the roles of the two sides."""
        return MmdcInstance(
            alpha=self.beta,
            alpha_cap=self.beta_cap,
            beta=self.alpha,
            beta_cap=self.alpha_cap,
            cost=tuple(zip(*self.cost)),
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    side: str | None
    index: int | None
    message: str


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class NormalizedInstance:
    instance: MmdcInstance
    transposed: bool = False
    original: MmdcInstance | None = None


def _prefix_condition(demands, caps, partners):
    """Return the smallest k whose k largest demands exceed sum(min(cap, k)), or None."""
    ordered = sorted(demands, reverse=True)
    total = 0
    for k, d in enumerate(ordered, start=1):
        total += d
        if total > sum(min(c, k) for c in caps):
            return k
    return None


def validate(instance: MmdcInstance) -> FeasibilityReport:
    """Decide whether any pair set meets every demand and capacity.

    Besides the per-element and sum checks, two degree-sequence conditions
    are tested: for every k, the k largest demands on one side must fit in
    ``sum(min(cap, k))`` of the other side.  Together these are necessary
    and sufficient (Hoffman's circulation theorem on the bounded flow
    network source -> A -> B -> sink).
    """
    s, t = instance.s, instance.t
    out: list[Violation] = []
    for i, (lo, hi) in enumerate(zip(instance.alpha, instance.alpha_cap)):
        if lo > min(hi, t):
            out.append(Violation("demand_exceeds_partners", "A", i,
                                 f"a{i} demands {lo} partners but only {min(hi, t)} are available"))
    for j, (lo, hi) in enumerate(zip(instance.beta, instance.beta_cap)):
        if lo > min(hi, s):
            out.append(Violation("demand_exceeds_partners", "B", j,
                                 f"b{j} demands {lo} partners but only {min(hi, s)} are available"))
    room_a = sum(min(c, t) for c in instance.alpha_cap)
    room_b = sum(min(c, s) for c in instance.beta_cap)
    need = max(sum(instance.alpha), sum(instance.beta))
    if need > min(room_a, room_b):
        out.append(Violation("demand_sum", None, None,
                             f"total demand {need} exceeds total capacity {min(room_a, room_b)}"))
    if not out:
        k = _prefix_condition(instance.alpha, instance.beta_cap, s)
        if k is not None:
            out.append(Violation("degree_sequence", "A", k,
                                 f"the {k} most demanding elements of A cannot be served by B's capacities"))
        k = _prefix_condition(instance.beta, instance.alpha_cap, t)
        if k is not None:
            out.append(Violation("degree_sequence", "B", k,
                                 f"the {k} most demanding elements of B cannot be served by A's capacities"))
    return FeasibilityReport(tuple(out))


def normalize(instance: MmdcInstance) -> NormalizedInstance:
    """Clamp capacities to the other side's size and orient so sum(alpha_cap) >= sum(beta).

    Raises InfeasibleInstanceError when ``validate`` rejects the instance.
    """
    report = validate(instance)
    if not report.feasible:
        raise InfeasibleInstanceError(report)
    s, t = instance.s, instance.t
    clamped = replace(
        instance,
        alpha_cap=tuple(min(c, t) for c in instance.alpha_cap),
        beta_cap=tuple(min(c, s) for c in instance.beta_cap),
    )
    if sum(clamped.alpha_cap) < sum(clamped.beta):
        return NormalizedInstance(clamped.transpose(), transposed=True, original=instance)
    return NormalizedInstance(clamped, transposed=False, original=instance)
