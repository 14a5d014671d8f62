"""Rewrite witnesses: spans of open graphs with fixed feet.

A TwoCell keeps its concrete apex (useful for replay and display) but is
compared as a parallel class: two cells are equal when their domain and
codomain 1-cells are boundary-pinned isomorphic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cospan import (
    OpenGraph,
    compose_with_injections,
    equal_up_to_iso,
    iso_between,
    tensor_with_injections,
)
from .graph import GraphMorphism, pullback


class MiddleMismatch(Exception):
    """Vertical composition: codomain and domain don't agree up to iso."""


@dataclass(frozen=True)
class TwoCell:
    dom: OpenGraph
    cod: OpenGraph
    apex: OpenGraph
    leg_down: GraphMorphism  # apex.body -> dom.body
    leg_up: GraphMorphism    # apex.body -> cod.body

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for g in (self.dom, self.cod):
            if (g.arity_in != self.apex.arity_in
                    or g.arity_out != self.apex.arity_out):
                raise ValueError("two-cell feet have mismatched interface sizes")
        if self.leg_down.source != self.apex.body \
                or self.leg_down.target != self.dom.body:
            raise ValueError("lower leg has wrong endpoints")
        if self.leg_up.source != self.apex.body \
                or self.leg_up.target != self.cod.body:
            raise ValueError("upper leg has wrong endpoints")
        for i, n in enumerate(self.apex.inputs):
            if self.leg_down.node_map[n] != self.dom.inputs[i]:
                raise ValueError("lower leg does not fix the input interface")
            if self.leg_up.node_map[n] != self.cod.inputs[i]:
                raise ValueError("upper leg does not fix the input interface")
        for i, n in enumerate(self.apex.outputs):
            if self.leg_down.node_map[n] != self.dom.outputs[i]:
                raise ValueError("lower leg does not fix the output interface")
            if self.leg_up.node_map[n] != self.cod.outputs[i]:
                raise ValueError("upper leg does not fix the output interface")

    def to_json(self) -> dict:
        return {
            "dom": self.dom.to_json(),
            "cod": self.cod.to_json(),
            "apex": self.apex.to_json(),
            "legDown": _morphism_json(self.leg_down),
            "legUp": _morphism_json(self.leg_up),
        }


def _morphism_json(m: GraphMorphism) -> dict:
    return {"nodeMap": {str(k): v for k, v in sorted(m.node_map.items())},
            "edgeMap": {str(k): v for k, v in sorted(m.edge_map.items())}}


def identity_cell(f: OpenGraph) -> TwoCell:
    ident = GraphMorphism.identity(f.body)
    return TwoCell(f, f, f, ident, ident)


def reverse(a: TwoCell) -> TwoCell:
    return TwoCell(a.cod, a.dom, a.apex, a.leg_up, a.leg_down)


def parallel_equal(a: TwoCell, b: TwoCell) -> bool:
    return equal_up_to_iso(a.dom, b.dom) and equal_up_to_iso(a.cod, b.cod)


def vertical_compose(a: TwoCell, b: TwoCell) -> TwoCell:
    """Paste a: f => g on top of b: g' => h where g and g' agree up to iso."""
    align = iso_between(a.cod, b.dom)
    if align is None:
        raise MiddleMismatch("middle 1-cells are not isomorphic over the boundary")
    left = a.leg_up.then(align)
    q, pr_a, pr_b = pullback(left, b.leg_down)
    pair_to_q = {(pr_a.node_map[n], pr_b.node_map[n]): n for n in q.nodes}
    inputs = tuple(pair_to_q[(a.apex.inputs[i], b.apex.inputs[i])]
                   for i in range(a.apex.arity_in))
    outputs = tuple(pair_to_q[(a.apex.outputs[i], b.apex.outputs[i])]
                    for i in range(a.apex.arity_out))
    apex = OpenGraph(q, inputs, outputs)
    return TwoCell(a.dom, b.cod, apex,
                   pr_a.then(a.leg_down), pr_b.then(b.leg_up))


def _induced_leg(apex_in_a, apex_in_b, leg_a, leg_b, foot_in_a, foot_in_b,
                 apex_body, foot_body) -> GraphMorphism:
    """Leg out of a pushout apex, induced componentwise from the two sides."""
    node_map: dict[int, int] = {}
    edge_map: dict[int, int] = {}
    for inj, leg, foot_inj in ((apex_in_a, leg_a, foot_in_a),
                               (apex_in_b, leg_b, foot_in_b)):
        for n, p in inj.node_map.items():
            node_map[p] = foot_inj.node_map[leg.node_map[n]]
        for e, p in inj.edge_map.items():
            edge_map[p] = foot_inj.edge_map[leg.edge_map[e]]
    return GraphMorphism(apex_body, foot_body, node_map, edge_map)


def horizontal_compose(a: TwoCell, b: TwoCell) -> TwoCell:
    """Compose side by side: dom, cod, and apex each compose by pushout and
    the legs are induced by the universal property."""
    dom, dom_in_a, dom_in_b = compose_with_injections(a.dom, b.dom)
    cod, cod_in_a, cod_in_b = compose_with_injections(a.cod, b.cod)
    apex, apex_in_a, apex_in_b = compose_with_injections(a.apex, b.apex)
    leg_down = _induced_leg(apex_in_a, apex_in_b, a.leg_down, b.leg_down,
                            dom_in_a, dom_in_b, apex.body, dom.body)
    leg_up = _induced_leg(apex_in_a, apex_in_b, a.leg_up, b.leg_up,
                          cod_in_a, cod_in_b, apex.body, cod.body)
    return TwoCell(dom, cod, apex, leg_down, leg_up)


def tensor_cells(a: TwoCell, b: TwoCell) -> TwoCell:
    dom, dom_in_a, dom_in_b = tensor_with_injections(a.dom, b.dom)
    cod, cod_in_a, cod_in_b = tensor_with_injections(a.cod, b.cod)
    apex, apex_in_a, apex_in_b = tensor_with_injections(a.apex, b.apex)
    leg_down = _induced_leg(apex_in_a, apex_in_b, a.leg_down, b.leg_down,
                            dom_in_a, dom_in_b, apex.body, dom.body)
    leg_up = _induced_leg(apex_in_a, apex_in_b, a.leg_up, b.leg_up,
                          cod_in_a, cod_in_b, apex.body, cod.body)
    return TwoCell(dom, cod, apex, leg_down, leg_up)
