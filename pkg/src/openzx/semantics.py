"""Matrix semantics for open graphs via tensor-network contraction.

Every non-open node carries a small complex tensor with one port per
incident edge end.  Open nodes are wire segments: their incident edge ends
and interface occurrences (at most two in total) are merged into a single
index class.  Closed wire loops contribute a factor of 2.  The result of
evaluating an (m, n) cell is a 2^n by 2^m complex matrix; rule soundness is
equality of the two sides' matrices up to a nonzero scalar.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .cospan import OpenGraph
from .dpo import RewriteRule
from .labels import DIAMOND, GREEN, HADAMARD, OPEN, RED

DEFAULT_TOL = 1e-9

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


class NonWireOpenNode(Exception):
    """An open node with more than two wire ends has no interpretation."""


class ShapeMismatch(Exception):
    """Proportionality is only defined for matrices of equal shape."""


def _spider_tensor(degree: int, phase_radians: float) -> np.ndarray:
    t = np.zeros((2,) * degree, dtype=complex) if degree else \
        np.zeros((), dtype=complex)
    if degree == 0:
        return np.array(1.0 + np.exp(1j * phase_radians), dtype=complex)
    t[(0,) * degree] = 1.0
    t[(1,) * degree] = np.exp(1j * phase_radians)
    return t


def _node_tensor(kind: str, phase_radians: float, degree: int) -> np.ndarray:
    if kind == GREEN:
        return _spider_tensor(degree, phase_radians)
    if kind == RED:
        t = _spider_tensor(degree, phase_radians)
        for axis in range(degree):
            t = np.tensordot(t, _H, axes=([axis], [0]))
            t = np.moveaxis(t, -1, axis)
        if degree == 0:
            t = np.asarray(t, dtype=complex)
        return t
    if kind == HADAMARD:
        return _H
    if kind == DIAMOND:
        return np.array(math.sqrt(2.0), dtype=complex)
    raise ValueError(f"no tensor for label kind {kind!r}")


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


def evaluate(f: OpenGraph) -> np.ndarray:
    """The complex matrix of an (m, n) cell, shape (2^n, 2^m).

    Row and column indices are big-endian in interface position: interface
    position 0 is the most significant bit, so tensoring cells corresponds
    to the Kronecker product of their matrices.
    """
    body = f.body
    m, n = f.arity_in, f.arity_out

    # wire variables: one per edge end is excessive; one per edge suffices
    # since each edge has at least one open endpoint and opens merge ends
    uf = _UnionFind()
    incidences: dict[int, list] = {v: [] for v in body.nodes}
    for e, (s, t) in body.edges.items():
        uf.find(("e", e))
        incidences[s].append(("e", e))
        incidences[t].append(("e", e))
    for i, v in enumerate(f.inputs):
        uf.find(("in", i))
        incidences[v].append(("in", i))
    for j, v in enumerate(f.outputs):
        uf.find(("out", j))
        incidences[v].append(("out", j))

    isolated_loops = 0
    for v, lab in body.nodes.items():
        if lab.kind != OPEN:
            continue
        ends = incidences[v]
        if not ends:
            # an open node with no wire ends at all is a closed loop
            isolated_loops += 1
            continue
        if len(ends) > 2:
            raise NonWireOpenNode(
                f"open node {v} has {len(ends)} wire ends")
        for a, b in zip(ends, ends[1:]):
            uf.union(a, b)

    # tensors for the non-open nodes, ports in edge-id order
    operands: list[np.ndarray] = []
    subscripts: list[list] = []
    classes_with_port = set()
    for v, lab in sorted(body.nodes.items()):
        if lab.kind == OPEN:
            continue
        ports = sorted(var for var in incidences[v])
        phase = lab.phase.as_float() if lab.phase is not None else 0.0
        operands.append(_node_tensor(lab.kind, phase, len(ports)))
        subs = [uf.find(p) for p in ports]
        subscripts.append(subs)
        classes_with_port.update(subs)

    slot_class: dict[tuple, object] = {}
    for i in range(m):
        slot_class[("in", i)] = uf.find(("in", i))
    for j in range(n):
        slot_class[("out", j)] = uf.find(("out", j))
    external = set(slot_class.values())

    all_classes = {uf.find(x) for x in uf.parent}
    closed = [c for c in all_classes
              if c not in external and c not in classes_with_port]
    scalar = 2.0 ** (len(closed) + isolated_loops)

    out_classes = sorted((c for c in external if c in classes_with_port),
                         key=repr)
    if operands:
        index_of = {}
        for subs in subscripts:
            for c in subs:
                index_of.setdefault(c, len(index_of))
        for c in out_classes:
            index_of.setdefault(c, len(index_of))
        args = []
        for op, subs in zip(operands, subscripts):
            args.append(op)
            args.append([index_of[c] for c in subs])
        args.append([index_of[c] for c in out_classes])
        core = np.einsum(*args)
    else:
        core = np.asarray(1.0, dtype=complex)

    result = np.zeros((2 ** n, 2 ** m), dtype=complex)
    for out_bits in itertools.product((0, 1), repeat=n):
        for in_bits in itertools.product((0, 1), repeat=m):
            value: dict = {}
            ok = True
            for i in range(m):
                c = slot_class[("in", i)]
                if value.setdefault(c, in_bits[i]) != in_bits[i]:
                    ok = False
                    break
            if ok:
                for j in range(n):
                    c = slot_class[("out", j)]
                    if value.setdefault(c, out_bits[j]) != out_bits[j]:
                        ok = False
                        break
            if not ok:
                continue
            idx = tuple(value[c] for c in out_classes)
            entry = core[idx] if out_classes else core.item()
            row = sum(b << (n - 1 - j) for j, b in enumerate(out_bits))
            col = sum(b << (m - 1 - i) for i, b in enumerate(in_bits))
            result[row, col] = scalar * entry
    return result


def _deviation(a: np.ndarray, b: np.ndarray, tol: float) -> float:
    """Smallest witnessed value of the relative infinity-norm residual
    ‖a - c*b‖ with c read off the largest entry of b, or inf when no
    nonzero scalar can work."""
    norm_a = np.abs(a).max() if a.size else 0.0
    norm_b = np.abs(b).max() if b.size else 0.0
    if norm_a <= tol and norm_b <= tol:
        return 0.0
    if norm_a <= tol or norm_b <= tol:
        return math.inf
    pivot = np.unravel_index(np.abs(b).argmax(), b.shape)
    c = a[pivot] / b[pivot]
    if abs(c) <= tol:
        return math.inf
    return float(np.abs(a - c * b).max() / max(1.0, norm_a))


def proportional(a: np.ndarray, b: np.ndarray,
                 tol: float = DEFAULT_TOL) -> bool:
    """True when a = c * b for some nonzero complex scalar c."""
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return _deviation(a, b, tol) <= tol


@dataclass(frozen=True)
class SoundnessReport:
    rule: str
    sound: bool
    max_deviation: float

    def __bool__(self) -> bool:
        return self.sound

    def to_json(self) -> dict:
        return {"rule": self.rule, "sound": self.sound,
                "maxDeviation": self.max_deviation}


def verify_rule_soundness(rule: RewriteRule,
                          tol: float = DEFAULT_TOL) -> SoundnessReport:
    left = evaluate(rule.lhs)
    right = evaluate(rule.rhs)
    if left.shape != right.shape:
        return SoundnessReport(rule.name, False, math.inf)
    dev = _deviation(left, right, tol)
    return SoundnessReport(rule.name, dev <= tol, dev)
