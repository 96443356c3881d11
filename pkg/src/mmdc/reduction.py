"""Reduction of a min-cost MMDC to one minimum-weight perfect matching.

The gadget is a complete bipartite graph.  Its row side holds, for each
``a_i``, ``alpha[i]`` mandatory copies (``A``) and ``alpha_cap[i] - alpha[i]``
optional copies (``A'``); for each ``b_j``, ``beta_cap[j] - beta[j]`` slack
dummies (``X``) and ``s - beta_cap[j]`` blockers (``W``).  Its column side
holds one copy ``b_{ji}`` of each ``b_j`` per ``a_i`` (``B``) plus the
compensator set ``Y`` of size ``sum(alpha_cap) - sum(beta)``.

Edge weights::

    A(i,.)  x B(j,i)   cost[i][j]
    A'(i,.) x B(j,i)   cost[i][j]
    A'(i,.) x Y        gamma'
    W(j,.)  x B(j,.)   0
    X(j,.)  x B(j,.)   gamma'
    X(j,.)  x Y        gamma''

Every other entry gets the ``forbidden`` sentinel.  With ``L`` main edges
the remaining edges of any sentinel-free perfect matching weigh
``(sum(beta_cap) - L) g' + (L - sum(beta)) g'' + (sum(alpha_cap) - L) g'``,
which is independent of ``L`` exactly when ``g'' = 2 g'``.  That is the
default; other values of ``g''`` can be passed to study their effect.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hungarian import InvariantViolation, Matching, SolveStats, solve_assignment
from .model import MmdcInstance, NormalizedInstance, normalize

MAIN_ROW_KINDS = ("A", "A'")


class SentinelMatchedError(RuntimeError):
    """The optimal gadget matching needs a forbidden edge: no MMDC exists."""


class Role(NamedTuple):
    """Vertex of the gadget.

    ``kind`` is one of ``A``, ``A'``, ``X``, ``W`` (rows) or ``B``, ``Y``
    (columns).  For ``A``/``A'`` the index is ``i``; for ``X``/``W`` it is
    ``j``; for ``B`` it is ``j`` and ``copy`` is ``i`` (the vertex ``b_{ji}``);
    for ``Y`` the index is the position inside ``Y`` and ``copy`` is 0.
    """

    kind: str
    index: int
    copy: int

    def label(self) -> str:
        if self.kind == "Y":
            return f"Y[{self.index}]"
        return f"{self.kind}[{self.index},{self.copy}]"

    @classmethod
    def parse(cls, text: str) -> "Role":
        kind, rest = text.split("[", 1)
        nums = [int(x) for x in rest.rstrip("]").split(",")]
        if kind == "Y":
            return cls("Y", nums[0], 0)
        return cls(kind, nums[0], nums[1])


@dataclass(frozen=True)
class GadgetGraph:
    norm: NormalizedInstance
    cost: np.ndarray
    rows: tuple[Role, ...]
    cols: tuple[Role, ...]
    gamma: int | float
    gamma_prime: int | float
    gamma_double_prime: int | float
    forbidden: int | float

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Certificate:
    gadget_size: int
    matching_weight: int | float
    main_weight: int | float
    nonmain_weight: int | float
    gamma: int | float
    gamma_prime: int | float
    gamma_double_prime: int | float
    forbidden: int | float
    transposed: bool


@dataclass(frozen=True)
class MmdcSolution:
    pairs: tuple[tuple[int, int], ...]
    deg_a: tuple[int, ...]
    deg_b: tuple[int, ...]
    cost: int | float
    certificate: Certificate | None = None


def gadget_size(inst: MmdcInstance) -> int:
    return inst.s * inst.t + sum(inst.alpha_cap) - sum(inst.beta)


def build_gadget(norm: NormalizedInstance, gamma_double_prime=None) -> GadgetGraph:
    """Lay out the gadget for a normalized instance.

    Rows are ordered A blocks, A' blocks, X blocks, W blocks; columns are the
    B copies grouped by ``i`` (``Bset_0`` first) followed by Y.  Inside each
    block vertices are ordered by their indices.
    """
    inst = norm.instance
    s, t = inst.s, inst.t
    if any(c > t for c in inst.alpha_cap) or any(c > s for c in inst.beta_cap):
        raise ValueError("capacities are not clamped; pass the instance through normalize()")
    if sum(inst.alpha_cap) < sum(inst.beta):
        raise ValueError("sum(alpha_cap) < sum(beta); pass the instance through normalize()")

    rows: list[Role] = []
    for i in range(s):
        rows += [Role("A", i, k) for k in range(inst.alpha[i])]
    for i in range(s):
        rows += [Role("A'", i, k) for k in range(inst.alpha_cap[i] - inst.alpha[i])]
    for j in range(t):
        rows += [Role("X", j, k) for k in range(inst.beta_cap[j] - inst.beta[j])]
    for j in range(t):
        rows += [Role("W", j, k) for k in range(s - inst.beta_cap[j])]
    cols = [Role("B", j, i) for i in range(s) for j in range(t)]
    cols += [Role("Y", k, 0) for k in range(sum(inst.alpha_cap) - sum(inst.beta))]
    n = len(rows)
    if len(cols) != n:
        raise InvariantViolation(f"unbalanced gadget: {n} rows, {len(cols)} columns")

    integer = inst.integer_costs
    gamma = max(max(row) for row in inst.cost)
    one = 1 if integer else 1.0
    g1 = gamma + one
    g2 = 2 * g1 if gamma_double_prime is None else gamma_double_prime
    if not g2 > g1:
        raise ValueError(f"gamma'' = {g2} must exceed gamma' = {g1}")
    forbidden = n * g2 + one

    dtype = np.int64 if integer and isinstance(forbidden, int) and forbidden < 2**62 // 4 else (
        object if integer else np.float64)
    w = np.full((n, n), forbidden, dtype=dtype)
    y_cols = np.arange(s * t, n)
    for r, role in enumerate(rows):
        if role.kind in MAIN_ROW_KINDS:
            i = role.index
            w[r, i * t:(i + 1) * t] = inst.cost[i]
            if role.kind == "A'":
                w[r, y_cols] = g1
        elif role.kind == "W":
            w[r, role.index::t][:s] = 0
        elif role.kind == "X":
            w[r, role.index::t][:s] = g1
            w[r, y_cols] = g2
    return GadgetGraph(norm, w, tuple(rows), tuple(cols), gamma, g1, g2, forbidden)


def _matched_edges(g: GadgetGraph, m: Matching):
    if not m.is_perfect or len(m.mate_a) != g.size:
        raise ValueError("expected a perfect matching on the gadget")
    for r, c in enumerate(m.mate_a):
        yield g.rows[r], g.cols[int(c)], g.cost[r, int(c)]


def _is_main(row: Role, col: Role) -> bool:
    return row.kind in MAIN_ROW_KINDS and col.kind == "B" and col.copy == row.index


def edge_census(g: GadgetGraph, m: Matching) -> Counter:
    """Count matched edges by (row kind, column kind)."""
    return Counter((row.kind, col.kind) for row, col, _ in _matched_edges(g, m))


def nonmain_weight(g: GadgetGraph, m: Matching):
    """Summed weight of the matched edges that do not encode a pair."""
    total = 0
    for row, col, wt in _matched_edges(g, m):
        if wt == g.forbidden:
            raise SentinelMatchedError(f"forbidden edge {row.label()} - {col.label()} is matched")
        if not _is_main(row, col):
            total += wt
    return total.item() if isinstance(total, np.generic) else total


def nonmain_closed_form(g: GadgetGraph, main_edges: int):
    """Non-main weight predicted by edge accounting for ``main_edges`` pairs."""
    inst = g.norm.instance
    g1, g2 = g.gamma_prime, g.gamma_double_prime
    return ((sum(inst.beta_cap) - main_edges) * g1
            + (main_edges - sum(inst.beta)) * g2
            + (sum(inst.alpha_cap) - main_edges) * g1)


def extract_solution(g: GadgetGraph, m: Matching) -> MmdcSolution:
    """Read the pair set off the main edges of a perfect gadget matching."""
    pairs = []
    main = 0
    for row, col, wt in _matched_edges(g, m):
        if wt == g.forbidden:
            raise SentinelMatchedError(f"forbidden edge {row.label()} - {col.label()} is matched")
        if _is_main(row, col):
            pairs.append((row.index, col.index))
            main += wt
    norm = g.norm
    original = norm.original if norm.original is not None else norm.instance
    if norm.transposed:
        pairs = [(j, i) for i, j in pairs]
    pairs.sort()
    if len(set(pairs)) != len(pairs):
        raise InvariantViolation("duplicate pair extracted from the gadget")

    deg_a = [0] * original.s
    deg_b = [0] * original.t
    for i, j in pairs:
        deg_a[i] += 1
        deg_b[j] += 1
    for i, d in enumerate(deg_a):
        if not original.alpha[i] <= d <= original.alpha_cap[i]:
            raise InvariantViolation(f"a{i} has degree {d} outside "
                                     f"[{original.alpha[i]}, {original.alpha_cap[i]}]")
    for j, d in enumerate(deg_b):
        if not original.beta[j] <= d <= original.beta_cap[j]:
            raise InvariantViolation(f"b{j} has degree {d} outside "
                                     f"[{original.beta[j]}, {original.beta_cap[j]}]")

    cost = sum((original.cost[i][j] for i, j in pairs), 0 if original.integer_costs else 0.0)
    extra = nonmain_weight(g, m)
    main = main.item() if isinstance(main, np.generic) else main
    cert = Certificate(
        gadget_size=g.size,
        matching_weight=main + extra,
        main_weight=main,
        nonmain_weight=extra,
        gamma=g.gamma,
        gamma_prime=g.gamma_prime,
        gamma_double_prime=g.gamma_double_prime,
        forbidden=g.forbidden,
        transposed=norm.transposed,
    )
    return MmdcSolution(tuple(pairs), tuple(deg_a), tuple(deg_b), cost, cert)


def solve_mmdc(instance: MmdcInstance, *, epsilon: float | None = None, debug: bool = False,
               stats: SolveStats | None = None, gamma_double_prime=None) -> MmdcSolution:
    """Minimum-cost MMDC via the gadget.

    Raises ``InfeasibleInstanceError`` when no pair set meets the bounds.
    """
    norm = normalize(instance)
    g = build_gadget(norm, gamma_double_prime)
    m, _ = solve_assignment(g.cost, epsilon=epsilon, debug=debug, stats=stats)
    return extract_solution(g, m)


def solve_gadget(instance: MmdcInstance, **kwargs) -> tuple[GadgetGraph, Matching]:
    """Like ``solve_mmdc`` but return the gadget and its matching."""
    gamma_double_prime = kwargs.pop("gamma_double_prime", None)
    g = build_gadget(normalize(instance), gamma_double_prime)
    m, _ = solve_assignment(g.cost, **kwargs)
    return g, m
