"""Open graphs: cospans from ordinal interfaces into a typed body.

The interface maps are encoded as ordered node lists (repeats allowed, so
evaluation/coevaluation can share a body node between two interface
positions).  Composition is pushout over the shared interface; equality of
1-cells is boundary-pinned isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    GraphMorphism,
    TypedGraph,
    canonical_form,
    find_isomorphism,
    pushout,
)
from .labels import OPEN_LABEL, NodeLabel, Phase


class ArityMismatch(Exception):
    """Interface sizes do not line up for composition."""


def interface_graph(size: int) -> TypedGraph:
    """Edgeless all-open graph on nodes 0..size-1."""
    return TypedGraph.build([OPEN_LABEL] * size)


@dataclass(frozen=True)
class OpenGraph:
    """A 1-cell: ordered input interface -> body <- ordered output interface."""

    body: TypedGraph
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        for n in self.inputs + self.outputs:
            if n not in self.body.nodes:
                raise ValueError(f"interface node {n} not in body")
            if not self.body.nodes[n].is_open():
                raise ValueError(f"interface node {n} is not open")

    @property
    def arity_in(self) -> int:
        return len(self.inputs)

    @property
    def arity_out(self) -> int:
        return len(self.outputs)

    def input_leg(self) -> GraphMorphism:
        src = interface_graph(self.arity_in)
        return GraphMorphism(src, self.body,
                             {i: n for i, n in enumerate(self.inputs)}, {})

    def output_leg(self) -> GraphMorphism:
        src = interface_graph(self.arity_out)
        return GraphMorphism(src, self.body,
                             {i: n for i, n in enumerate(self.outputs)}, {})

    def boundary(self) -> list[int]:
        return list(self.inputs) + list(self.outputs)

    def canonical_key(self) -> bytes:
        return canonical_form(self.body, self.boundary())

    def renumbered(self) -> OpenGraph:
        body, iso = self.body.renumbered()
        return OpenGraph(body,
                         tuple(iso.node_map[n] for n in self.inputs),
                         tuple(iso.node_map[n] for n in self.outputs))

    def to_json(self) -> dict:
        g = self.renumbered()
        nodes = [{"id": n, **g.body.nodes[n].to_json()}
                 for n in sorted(g.body.nodes)]
        edges = [{"src": s, "tgt": t}
                 for _, (s, t) in sorted(g.body.edges.items())]
        return {"nodes": nodes, "edges": edges,
                "inputs": list(g.inputs), "outputs": list(g.outputs)}

    @staticmethod
    def from_json(obj: dict) -> OpenGraph:
        nodes = {int(n["id"]): NodeLabel.from_json(n) for n in obj["nodes"]}
        edges = {i: (int(e["src"]), int(e["tgt"]))
                 for i, e in enumerate(obj["edges"])}
        return OpenGraph(TypedGraph(nodes, edges),
                         tuple(int(i) for i in obj["inputs"]),
                         tuple(int(i) for i in obj["outputs"]))


def identity(n: int) -> OpenGraph:
    nodes = tuple(range(n))
    return OpenGraph(interface_graph(n), nodes, nodes)


def twist(m: int, n: int) -> OpenGraph:
    body = interface_graph(m + n)
    inputs = tuple(range(m + n))
    outputs = tuple(range(m, m + n)) + tuple(range(m))
    return OpenGraph(body, inputs, outputs)


def evaluation(n: int) -> OpenGraph:
    """2n -> 0 cell pairing input i with input i+n on a shared body node."""
    body = interface_graph(n)
    return OpenGraph(body, tuple(range(n)) + tuple(range(n)), ())


def coevaluation(n: int) -> OpenGraph:
    body = interface_graph(n)
    return OpenGraph(body, (), tuple(range(n)) + tuple(range(n)))


def compose_with_injections(f: OpenGraph, g: OpenGraph
                            ) -> tuple[OpenGraph, GraphMorphism, GraphMorphism]:
    """Compose f then g by pushout; also return the body injections."""
    if f.arity_out != g.arity_in:
        raise ArityMismatch(
            f"cannot compose: {f.arity_out} outputs vs {g.arity_in} inputs")
    p, in_f, in_g = pushout(f.output_leg(), g.input_leg())
    composed = OpenGraph(p,
                         tuple(in_f.node_map[n] for n in f.inputs),
                         tuple(in_g.node_map[n] for n in g.outputs))
    return composed, in_f, in_g


def compose(f: OpenGraph, g: OpenGraph) -> OpenGraph:
    return compose_with_injections(f, g)[0]


def tensor_with_injections(f: OpenGraph, g: OpenGraph
                           ) -> tuple[OpenGraph, GraphMorphism, GraphMorphism]:
    """Disjoint union; f's ids first, then g's shifted."""
    empty = TypedGraph.empty()
    to_f = GraphMorphism(empty, f.body, {}, {})
    to_g = GraphMorphism(empty, g.body, {}, {})
    p, in_f, in_g = pushout(to_f, to_g)
    out = OpenGraph(p,
                    tuple(in_f.node_map[n] for n in f.inputs)
                    + tuple(in_g.node_map[n] for n in g.inputs),
                    tuple(in_f.node_map[n] for n in f.outputs)
                    + tuple(in_g.node_map[n] for n in g.outputs))
    return out, in_f, in_g


def tensor(f: OpenGraph, g: OpenGraph) -> OpenGraph:
    return tensor_with_injections(f, g)[0]


def dagger(f: OpenGraph) -> OpenGraph:
    """Swap interfaces, reverse edges, negate spider phases."""
    nodes = {}
    for n, label in f.body.nodes.items():
        if label.phase is not None:
            nodes[n] = NodeLabel(label.kind, -label.phase)
        else:
            nodes[n] = label
    edges = {e: (t, s) for e, (s, t) in f.body.edges.items()}
    return OpenGraph(TypedGraph(nodes, edges), f.outputs, f.inputs)


def boundary_pins(f: OpenGraph, g: OpenGraph) -> dict[int, int] | None:
    """Positional pin map between boundaries, or None if inconsistent."""
    pins: dict[int, int] = {}
    for a, b in zip(f.boundary(), g.boundary()):
        if pins.get(a, b) != b:
            return None
        pins[a] = b
    if len(set(pins.values())) != len(pins):
        return None
    return pins


def iso_between(f: OpenGraph, g: OpenGraph) -> GraphMorphism | None:
    """Boundary-pinned isomorphism of bodies, or None."""
    if f.arity_in != g.arity_in or f.arity_out != g.arity_out:
        return None
    pins = boundary_pins(f, g)
    if pins is None:
        return None
    return find_isomorphism(f.body, g.body, pins)


def equal_up_to_iso(f: OpenGraph, g: OpenGraph) -> bool:
    return iso_between(f, g) is not None
