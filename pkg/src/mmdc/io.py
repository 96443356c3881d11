"""JSON file formats for instances, solutions and gadget dumps.

All three are single JSON objects written with sorted keys and two-space
indentation, so equal content gives byte-identical files.  Every document
carries ``format`` and ``version`` fields.  Indices are zero-based.

Instance::

    {"format": "mmdc-instance", "version": 1, "s": 2, "t": 3,
     "alpha": [...], "alpha_cap": [...], "beta": [...], "beta_cap": [...],
     "costs": [[...], ...], "metadata": {...}}

Solution::

    {"format": "mmdc-solution", "version": 1, "pairs": [[i, j], ...],
     "cost": ..., "deg_a": [...], "deg_b": [...], "certificate": {...} | null,
     "solver": {"name": ..., "version": ...}, "timing": {"seconds": ...}}

Gadget dump::

    {"format": "mmdc-gadget", "version": 1, "N": ..., "gamma": ...,
     "gamma_prime": ..., "gamma_double_prime": ..., "forbidden": ...,
     "transposed": ..., "rows": ["A[i,k]", "A'[i,k]", "X[j,k]", "W[j,k]", ...],
     "cols": ["B[j,i]", ..., "Y[k]", ...], "weights": [[...], ...]}

Floats are written with ``repr`` precision, so they round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .model import MmdcInstance, normalize
from .reduction import Certificate, GadgetGraph, MmdcSolution, Role, gadget_size

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


@dataclass
class InstanceFile:
    instance: MmdcInstance
    metadata: dict = field(default_factory=dict)


@dataclass
class SolutionFile:
    solution: MmdcSolution
    solver: str = "gadget-hungarian"
    version: str = __version__
    seconds: float | None = None


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _num(x):
    if isinstance(x, np.generic):
        return x.item()
    return x


def _check_header(doc, fmt: str) -> None:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    if doc.get("format") != fmt:
        raise FormatError(f"expected format {fmt!r}, got {doc.get('format')!r}")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported {fmt} version {doc.get('version')!r}")


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc


def instance_to_json(f: InstanceFile) -> str:
    inst = f.instance
    return _dumps({
        "format": "mmdc-instance",
        "version": FORMAT_VERSION,
        "s": inst.s,
        "t": inst.t,
        "alpha": list(inst.alpha),
        "alpha_cap": list(inst.alpha_cap),
        "beta": list(inst.beta),
        "beta_cap": list(inst.beta_cap),
        "costs": [list(row) for row in inst.cost],
        "metadata": f.metadata,
    })


def instance_from_json(text: str) -> InstanceFile:
    doc = _loads(text)
    _check_header(doc, "mmdc-instance")
    try:
        inst = MmdcInstance(
            alpha=tuple(doc["alpha"]),
            alpha_cap=tuple(doc["alpha_cap"]),
            beta=tuple(doc["beta"]),
            beta_cap=tuple(doc["beta_cap"]),
            cost=tuple(tuple(row) for row in doc["costs"]),
        )
    except KeyError as exc:
        raise FormatError(f"missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    if doc.get("s", inst.s) != inst.s or doc.get("t", inst.t) != inst.t:
        raise FormatError("s/t do not match the vector lengths")
    return InstanceFile(inst, doc.get("metadata") or {})


def solution_to_json(f: SolutionFile) -> str:
    sol = f.solution
    cert = None
    if sol.certificate is not None:
        cert = {k: _num(v) for k, v in asdict(sol.certificate).items()}
    return _dumps({
        "format": "mmdc-solution",
        "version": FORMAT_VERSION,
        "pairs": [list(p) for p in sol.pairs],
        "cost": _num(sol.cost),
        "deg_a": list(sol.deg_a),
        "deg_b": list(sol.deg_b),
        "certificate": cert,
        "solver": {"name": f.solver, "version": f.version},
        "timing": {"seconds": f.seconds},
    })


def solution_from_json(text: str) -> SolutionFile:
    doc = _loads(text)
    _check_header(doc, "mmdc-solution")
    try:
        cert = doc.get("certificate")
        sol = MmdcSolution(
            pairs=tuple(tuple(p) for p in doc["pairs"]),
            deg_a=tuple(doc["deg_a"]),
            deg_b=tuple(doc["deg_b"]),
            cost=doc["cost"],
            certificate=Certificate(**cert) if cert is not None else None,
        )
        solver = doc.get("solver") or {}
        seconds = (doc.get("timing") or {}).get("seconds")
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed solution: {exc}") from exc
    return SolutionFile(sol, solver.get("name", ""), solver.get("version", ""), seconds)


def gadget_to_json(g: GadgetGraph) -> str:
    return _dumps({
        "format": "mmdc-gadget",
        "version": FORMAT_VERSION,
        "N": g.size,
        "gamma": _num(g.gamma),
        "gamma_prime": _num(g.gamma_prime),
        "gamma_double_prime": _num(g.gamma_double_prime),
        "forbidden": _num(g.forbidden),
        "transposed": g.norm.transposed,
        "rows": [r.label() for r in g.rows],
        "cols": [c.label() for c in g.cols],
        "weights": g.cost.tolist(),
    })


def check_gadget_dump(text: str, instance: MmdcInstance) -> list[str]:
    """Re-derive every structural rule of a gadget dump from scratch.

    Returns a list of problems; empty means the dump is consistent with
    ``instance``.
    """
    doc = _loads(text)
    _check_header(doc, "mmdc-gadget")
    problems: list[str] = []
    norm = normalize(instance)
    inst = norm.instance
    if doc["transposed"] != norm.transposed:
        problems.append("transposed flag disagrees with normalization")
    s, t = inst.s, inst.t
    n = doc["N"]
    rows = [Role.parse(x) for x in doc["rows"]]
    cols = [Role.parse(x) for x in doc["cols"]]
    w = doc["weights"]
    if n != gadget_size(inst):
        problems.append(f"N={n}, expected {gadget_size(inst)}")
    if len(rows) != n or len(cols) != n or len(w) != n or any(len(r) != n for r in w):
        problems.append("row/column/weight dimensions disagree with N")
        return problems

    want = {}
    for i in range(s):
        want[("A", i)] = inst.alpha[i]
        want[("A'", i)] = inst.alpha_cap[i] - inst.alpha[i]
    for j in range(t):
        want[("X", j)] = inst.beta_cap[j] - inst.beta[j]
        want[("W", j)] = s - inst.beta_cap[j]
    have = {}
    for r in rows:
        have[(r.kind, r.index)] = have.get((r.kind, r.index), 0) + 1
    for key, k in want.items():
        if have.get(key, 0) != k:
            problems.append(f"block {key} has {have.get(key, 0)} vertices, expected {k}")
    b_cols = sorted((c.index, c.copy) for c in cols if c.kind == "B")
    if b_cols != sorted((j, i) for i in range(s) for j in range(t)):
        problems.append("B copies are not exactly one per (j, i)")
    y = sum(1 for c in cols if c.kind == "Y")
    if y != sum(inst.alpha_cap) - sum(inst.beta):
        problems.append(f"|Y|={y}, expected {sum(inst.alpha_cap) - sum(inst.beta)}")

    gamma = max(max(r) for r in inst.cost)
    g1, g2, bad = doc["gamma_prime"], doc["gamma_double_prime"], doc["forbidden"]
    if doc["gamma"] != gamma:
        problems.append(f"gamma={doc['gamma']}, expected max cost {gamma}")
    if not g1 > gamma:
        problems.append("gamma' does not exceed gamma")
    if not g2 > g1:
        problems.append("gamma'' does not exceed gamma'")
    if not bad > n * g2:
        problems.append("forbidden sentinel does not exceed N * gamma''")
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            if r.kind in ("A", "A'") and c.kind == "B" and c.copy == r.index:
                expect = inst.cost[r.index][c.index]
            elif r.kind == "A'" and c.kind == "Y":
                expect = g1
            elif r.kind == "W" and c.kind == "B" and c.index == r.index:
                expect = 0
            elif r.kind == "X" and c.kind == "B" and c.index == r.index:
                expect = g1
            elif r.kind == "X" and c.kind == "Y":
                expect = g2
            else:
                expect = bad
            if w[a][b] != expect:
                problems.append(f"weight {r.label()} x {c.label()} = {w[a][b]}, expected {expect}")
    return problems


def read_text(path) -> str:
    return Path(path).read_text()


def write_text(path, text: str) -> None:
    Path(path).write_text(text)
