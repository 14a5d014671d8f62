"""Double-pushout rule application on open graphs.

Rules are spans L <- K -> R with an edgeless all-open apex K carrying the
interface data.  Forward application needs kl mono; the wire-expansion
direction (non-mono leg, no unique pushout complement) is a dedicated
operation with a hand-built witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cospan import OpenGraph
from .graph import (
    DanglingCondition,
    GraphMorphism,
    TypedGraph,
    find_monomorphisms,
    pushout,
    pushout_complement,
)
from .labels import OPEN_LABEL
from .spans import TwoCell


class BoundaryViolation(Exception):
    """Match would delete or move a host interface node."""


class NotOpenNode(Exception):
    """Wire expansion requested at a non-open node."""


@dataclass(frozen=True)
class RewriteRule:
    """A named span L <- K -> R with interface data."""

    name: str
    lhs: OpenGraph
    rhs: OpenGraph
    apex: TypedGraph
    kl: GraphMorphism  # apex -> lhs.body
    kr: GraphMorphism  # apex -> rhs.body
    tag: str = "basic"

    def __post_init__(self):
        if (self.lhs.arity_in != self.rhs.arity_in
                or self.lhs.arity_out != self.rhs.arity_out):
            raise ValueError("rule sides have mismatched interfaces")
        for n, lab in self.apex.nodes.items():
            if not lab.is_open():
                raise ValueError("rule apex must be all-open")
        if self.apex.edges:
            raise ValueError("rule apex must be edgeless")

    @staticmethod
    def basic(name: str, lhs: OpenGraph, rhs: OpenGraph,
              tag: str = "basic") -> RewriteRule:
        """Rule whose apex is the disjoint union of the input and output
        interfaces, mapped positionally into both sides."""
        size = lhs.arity_in + lhs.arity_out
        apex = TypedGraph.build([OPEN_LABEL] * size)
        kl = GraphMorphism(apex, lhs.body,
                           dict(enumerate(lhs.boundary())), {})
        kr = GraphMorphism(apex, rhs.body,
                           dict(enumerate(rhs.boundary())), {})
        return RewriteRule(name, lhs, rhs, apex, kl, kr, tag)

    def reversed(self) -> RewriteRule:
        return RewriteRule(self.name + "~", self.rhs, self.lhs,
                           self.apex, self.kr, self.kl, self.tag)

    def forward_applicable(self) -> bool:
        return self.kl.is_mono()

    def to_json(self) -> dict:
        lhs = self.lhs.renumbered()
        rhs = self.rhs.renumbered()
        # re-derive the positional apex maps against the dense encoding
        rule = RewriteRule.basic(self.name, lhs, rhs, self.tag)
        return {"name": rule.name,
                "L": rule.lhs.to_json(),
                "R": rule.rhs.to_json(),
                "K": {"nodes": sorted(rule.apex.nodes)},
                "kl": {str(k): v for k, v in sorted(rule.kl.node_map.items())},
                "kr": {str(k): v for k, v in sorted(rule.kr.node_map.items())}}


@dataclass(frozen=True)
class Match:
    rule: RewriteRule
    m: GraphMorphism  # rule.lhs.body -> host.body
    host: OpenGraph


def _boundary_safe(rule: RewriteRule, m: GraphMorphism,
                   host: OpenGraph) -> bool:
    """Host interface nodes may be hit only through the rule apex."""
    kept = {m.node_map[rule.kl.node_map[k]] for k in rule.apex.nodes}
    image = set(m.node_map.values())
    return all(n not in image or n in kept for n in host.boundary())


def find_rule_matches(rule: RewriteRule, host: OpenGraph) -> list[Match]:
    """All monic, boundary-safe, dangling-free matches, deterministic order."""
    if not rule.forward_applicable():
        raise ValueError(f"rule {rule.name} has a non-mono left leg")
    out = []
    for m in find_monomorphisms(rule.lhs.body, host.body):
        if not _boundary_safe(rule, m, host):
            continue
        try:
            pushout_complement(rule.kl, m)
        except DanglingCondition:
            continue
        out.append(Match(rule, m, host))
    return out


def apply(match: Match) -> tuple[OpenGraph, TwoCell]:
    """Rewrite at the match; returns the result and the witnessing 2-cell."""
    rule, m, host = match.rule, match.m, match.host
    if not _boundary_safe(rule, m, host):
        raise BoundaryViolation("match hits the host boundary outside the apex")
    k_to_d, d_to_g = pushout_complement(rule.kl, m)
    result_body, in_r, in_d = pushout(rule.kr, k_to_d)
    result = OpenGraph(result_body,
                       tuple(in_d.node_map[n] for n in host.inputs),
                       tuple(in_d.node_map[n] for n in host.outputs))
    context = OpenGraph(d_to_g.source, host.inputs, host.outputs)
    witness = TwoCell(host, result, context, d_to_g, in_d)
    return result, witness


def apply_wire_expansion(host: OpenGraph, node: int
                         ) -> tuple[OpenGraph, TwoCell]:
    """Split an open node into an edge-joined pair.

    Incoming edges and input occurrences go to the source copy, outgoing
    edges and output occurrences to the target copy.  The witness apex is
    the split body without the joining edge; its lower leg collapses the
    two copies (the non-mono leg that motivates the parallel-class 2-cells).
    """
    body = host.body
    if node not in body.nodes or not body.nodes[node].is_open():
        raise NotOpenNode(f"node {node} is not an open node of the host")
    src_copy = max(body.nodes) + 1
    tgt_copy = src_copy + 1
    nodes = {n: lab for n, lab in body.nodes.items() if n != node}
    nodes[src_copy] = OPEN_LABEL
    nodes[tgt_copy] = OPEN_LABEL

    # incoming edges keep their source and land on the source copy;
    # outgoing edges leave from the target copy
    apex_edges = {}
    for e, (s, t) in body.edges.items():
        s2 = tgt_copy if s == node else s
        t2 = src_copy if t == node else t
        apex_edges[e] = (s2, t2)

    join = (max(body.edges) + 1) if body.edges else 0
    result_edges = dict(apex_edges)
    result_edges[join] = (src_copy, tgt_copy)

    inputs = tuple(src_copy if n == node else n for n in host.inputs)
    outputs = tuple(tgt_copy if n == node else n for n in host.outputs)
    result = OpenGraph(TypedGraph(nodes, result_edges), inputs, outputs)
    apex = OpenGraph(TypedGraph(dict(nodes), apex_edges), inputs, outputs)

    collapse = GraphMorphism(
        apex.body, body,
        {n: (node if n in (src_copy, tgt_copy) else n) for n in apex.body.nodes},
        {e: e for e in apex.body.edges})
    include = GraphMorphism(
        apex.body, result.body,
        {n: n for n in apex.body.nodes},
        {e: e for e in apex.body.edges})
    witness = TwoCell(host, result, apex, collapse, include)
    return result, witness
