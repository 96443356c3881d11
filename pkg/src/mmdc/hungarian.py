"""Minimum-weight perfect matching on a square cost matrix.

This is the basic Hungarian method with vertex labels and a slack array.
Rows are the A side, columns the B side.  Slack is kept in the form
``w[i][j] - la[i] - lb[j]`` so it is nonnegative for a feasible labeling
and a column is in the equality graph exactly when its slack is zero.

Integer matrices are solved in exact (unbounded) integer arithmetic.
Anything else is solved in floating point with a tightness tolerance
``eps``.  The inner loops are plain Python on lists: each tree step costs
O(n), so run time tracks the algorithm's operation count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Integral

FREE = -1


class InvariantViolation(AssertionError):
    """A solver invariant failed.  Always a bug, never bad input."""


@dataclass
class Labeling:
    la: list
    lb: list

    def copy(self) -> "Labeling":
        return Labeling(list(self.la), list(self.lb))

    def slack(self, w, i: int, j: int):
        return w[i][j] - self.la[i] - self.lb[j]

    def is_feasible(self, w, eps=0) -> bool:
        return all(w[i][j] - a - b >= -eps
                   for i, a in enumerate(self.la) for j, b in enumerate(self.lb))

    def dual_value(self):
        return sum(self.la) + sum(self.lb)


@dataclass
class Matching:
    mate_a: list[int]
    mate_b: list[int]
    weight: int | float = 0

    @classmethod
    def empty(cls, n: int) -> "Matching":
        return cls([FREE] * n, [FREE] * n, 0)

    @property
    def size(self) -> int:
        return sum(1 for j in self.mate_a if j != FREE)

    @property
    def is_perfect(self) -> bool:
        return FREE not in self.mate_a

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.mate_a) if j != FREE]


@dataclass
class SearchState:
    """Alternating tree grown from one free row.

    ``parent[j]`` is the row through which column ``j`` entered the tree; it
    is the row attaining ``slack[j]`` at that moment.  ``end`` is set once a
    free column has been reached.
    """

    w: list
    root: int
    in_s: list[bool]
    in_t: list[bool]
    slack: list
    slack_arg: list[int]
    parent: list[int]
    S: list[int] = field(default_factory=list)
    T: list[int] = field(default_factory=list)
    end: int = FREE

    @classmethod
    def start(cls, w, labels: Labeling, root: int) -> "SearchState":
        n = len(w)
        row, lr, lb = w[root], labels.la[root], labels.lb
        in_s = [False] * n
        in_s[root] = True
        return cls(w, root, in_s, [False] * n, [row[j] - lr - lb[j] for j in range(n)],
                   [root] * n, [FREE] * n, [root], [])

    def add_row(self, z: int, labels: Labeling) -> None:
        self.in_s[z] = True
        self.S.append(z)
        row, lz, lb = self.w[z], labels.la[z], labels.lb
        slack, arg, in_t = self.slack, self.slack_arg, self.in_t
        for j in range(len(row)):
            if not in_t[j]:
                v = row[j] - lz - lb[j]
                if v < slack[j]:
                    slack[j] = v
                    arg[j] = z

    def add_column(self, j: int) -> None:
        self.in_t[j] = True
        self.T.append(j)
        self.parent[j] = self.slack_arg[j]


@dataclass
class SolveStats:
    label_updates: int = 0
    augmentations: int = 0
    tree_steps: int = 0
    checks: int = 0


def as_cost_matrix(cost) -> tuple[list[list], bool]:
    """Copy ``cost`` into a list of rows; return it and whether it is all-integer.

    Accepts nested sequences or a 2-D numpy array.
    """
    rows = cost.tolist() if hasattr(cost, "tolist") else [list(r) for r in cost]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("cost matrix must be square and nonempty")
    flat = [x for r in rows for x in r]
    if all(isinstance(x, Integral) and not isinstance(x, bool) for x in flat):
        return [[int(x) for x in r] for r in rows], True
    out = [[float(x) for x in r] for r in rows]
    if any(x != x or x in (float("inf"), float("-inf")) for r in out for x in r):
        raise ValueError("cost matrix entries must be finite")
    return out, False


def tolerance(w, integer: bool, epsilon: float | None = None):
    if integer:
        return 0
    if epsilon is not None:
        return epsilon
    return 1e-9 * (1.0 + max(abs(x) for r in w for x in r))


def initial_labeling(cost) -> Labeling:
    """Column labels zero, row labels the row minima."""
    w, integer = as_cost_matrix(cost)
    return Labeling([min(r) for r in w], [0 if integer else 0.0] * len(w))


def update_labels(labels: Labeling, S, T, cost, eps=0) -> tuple[Labeling, int | float]:
    """Lift the labels of ``S`` and lower those of ``T`` by the smallest slack leaving ``T``.

    ``S`` and ``T`` are collections of row and column indices.  Returns the
    new labeling and the step size.  Edges between ``S`` and ``T`` keep their
    slack, and at least one edge from ``S`` to a column outside ``T`` becomes
    tight.
    """
    w = cost if isinstance(cost, list) else as_cost_matrix(cost)[0]
    S, T = set(S), set(T)
    outside = [j for j in range(len(w[0])) if j not in T]
    if not outside:
        raise ValueError("T covers every column; there is nothing to reach")
    if not S:
        raise ValueError("S is empty")
    step = min(labels.slack(w, i, j) for i in S for j in outside)
    if step < -eps:
        raise InvariantViolation(f"negative label step {step}: labeling was not feasible")
    out = labels.copy()
    for i in S:
        out.la[i] += step
    for j in T:
        out.lb[j] -= step
    return out, step


def augment(m: Matching, state: SearchState) -> Matching:
    """Flip the alternating path from ``state.root`` to ``state.end``.

    Returns a new matching with exactly one more edge.
    """
    w = state.w
    if state.end == FREE or m.mate_b[state.end] != FREE:
        raise InvariantViolation("augmenting path must end at a free column")
    if m.mate_a[state.root] != FREE:
        raise InvariantViolation("augmenting path must start at a free row")
    mate_a, mate_b = list(m.mate_a), list(m.mate_b)
    weight = m.weight
    j = state.end
    for _ in range(len(mate_a)):
        i = state.parent[j]
        if i == FREE or not state.in_s[i]:
            raise InvariantViolation(f"column {j} has no tree parent")
        prev = mate_a[i]
        if prev != FREE:
            weight -= w[i][prev]
        mate_a[i], mate_b[j] = j, i
        weight += w[i][j]
        if i == state.root:
            if prev != FREE:
                raise InvariantViolation("root row was already matched")
            break
        if prev == FREE:
            raise InvariantViolation(f"row {i} inside the path is free: path is not alternating")
        j = prev
    else:
        raise InvariantViolation("augmenting path does not reach the root")
    return Matching(mate_a, mate_b, weight)


def _check_tight(w, labels: Labeling, m: Matching, eps) -> None:
    for i, j in m.pairs():
        gap = labels.slack(w, i, j)
        if abs(gap) > eps:
            raise InvariantViolation(f"matched edge ({i}, {j}) is not tight (slack {gap})")


def _check_step(w, labels: Labeling, state: SearchState, m: Matching, eps, stats) -> None:
    n = len(w)
    for i in range(n):
        for j in range(n):
            if labels.slack(w, i, j) < -eps:
                raise InvariantViolation(f"labeling infeasible at ({i}, {j})")
    for j in range(n):
        if not state.in_t[j]:
            direct = min(labels.slack(w, i, j) for i in state.S)
            if abs(direct - state.slack[j]) > eps:
                raise InvariantViolation(
                    f"slack[{j}] = {state.slack[j]} but recomputation gives {direct}")
    _check_tight(w, labels, m, eps)
    stats.checks += 1


def solve_assignment(cost, *, epsilon: float | None = None, debug: bool = False,
                     stats: SolveStats | None = None) -> tuple[Matching, Labeling]:
    """Minimum-weight perfect matching of a square cost matrix.

    Ties go to the lowest index: the lowest free row is grown next and the
    lowest tight column is scanned first.  With ``debug`` every label update
    is followed by a full recheck of labeling feasibility, slack consistency
    and matched-edge tightness, and the final labeling must certify the
    matching weight.  Pass a ``SolveStats`` to collect operation counts.
    """
    w, integer = as_cost_matrix(cost)
    n = len(w)
    eps = tolerance(w, integer, epsilon)
    stats = stats if stats is not None else SolveStats()
    labels = initial_labeling(w)
    la, lb = labels.la, labels.lb
    m = Matching.empty(n)

    for root in range(n):
        # rows are matched in order, so ``root`` is always the lowest free row
        state = SearchState.start(w, labels, root)
        slack, in_t = state.slack, state.in_t
        while True:
            j = FREE
            low = None
            for c in range(n):
                if not in_t[c]:
                    v = slack[c]
                    if v <= eps:
                        j = c
                        break
                    if low is None or v < low:
                        low = v
            if j == FREE:
                if debug:
                    _, direct = update_labels(labels, state.S, state.T, w, eps)
                    if abs(direct - low) > eps:
                        raise InvariantViolation(f"slack minimum {low} != label step {direct}")
                for i in state.S:
                    la[i] += low
                for c in state.T:
                    lb[c] -= low
                for c in range(n):
                    if not in_t[c]:
                        v = slack[c] - low
                        slack[c] = v
                        if j == FREE and v <= eps:
                            j = c
                stats.label_updates += 1
                if debug:
                    _check_step(w, labels, state, m, eps, stats)
            state.add_column(j)
            stats.tree_steps += 1
            z = m.mate_b[j]
            if z == FREE:
                state.end = j
                break
            state.add_row(z, labels)
        before = m.size if debug else 0
        m = augment(m, state)
        stats.augmentations += 1
        if debug and m.size != before + 1:
            raise InvariantViolation("augmentation did not grow the matching by one")

    if debug:
        if not labels.is_feasible(w, eps):
            raise InvariantViolation("final labeling infeasible")
        _check_tight(w, labels, m, eps)
        dual = labels.dual_value()
        if abs(dual - m.weight) > eps * n:
            raise InvariantViolation(f"dual value {dual} != matching weight {m.weight}")
    return m, labels
