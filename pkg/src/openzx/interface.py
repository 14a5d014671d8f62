"""Shared engine facade for the CLI and the HTTP service.

Both frontends call these functions so their outputs cannot drift apart.
Diagrams are addressed by a content hash of their canonical JSON (sorted
keys, dense renumbered ids), which makes the store idempotent and the ids
stable across runs.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

import numpy as np

from .cospan import ArityMismatch, OpenGraph, compose, tensor
from .labels import Phase
from .dpo import Match, RewriteRule, apply, apply_wire_expansion, \
    find_rule_matches
from .prover import Budget, Derivation, normalize, prove_equal
from .rules import RuleSet, basic_rules
from .semantics import evaluate, verify_rule_soundness

# 12 rational multiples of pi covering [-pi, pi)
PHASE_GRID = [Phase.of(k, 6) for k in range(-6, 6)]


class UnknownRule(Exception):
    pass


class UnknownDiagram(Exception):
    pass


class StaleMatch(Exception):
    pass


def canonical_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def diagram_id(f: OpenGraph) -> str:
    return hashlib.sha256(canonical_json(f.to_json()).encode()).hexdigest()


class DiagramStore:
    """Insert-only content-addressed map, optionally mirrored to disk."""

    def __init__(self, snapshot_dir: str | None = None):
        self._by_id: dict[str, OpenGraph] = {}
        self._snapshot_dir = snapshot_dir
        if snapshot_dir and os.path.isdir(snapshot_dir):
            for name in sorted(os.listdir(snapshot_dir)):
                if name.endswith(".json"):
                    with open(os.path.join(snapshot_dir, name)) as fh:
                        self.put(OpenGraph.from_json(json.load(fh)))

    def put(self, f: OpenGraph) -> str:
        key = diagram_id(f)
        if key not in self._by_id:
            self._by_id[key] = f.renumbered()
            if self._snapshot_dir:
                os.makedirs(self._snapshot_dir, exist_ok=True)
                path = os.path.join(self._snapshot_dir, key + ".json")
                with open(path, "w") as fh:
                    fh.write(canonical_json(f.to_json()))
        return key

    def get(self, key: str) -> OpenGraph:
        if key not in self._by_id:
            raise UnknownDiagram(key)
        return self._by_id[key]


@dataclass(frozen=True)
class NamedMatch:
    """One applicable rewrite at a host: a rule instance plus either a DPO
    match or, for the expansion direction of the wire rule, an open node."""

    rule: RewriteRule
    direction: str
    match: Match | None
    expand_node: int | None

    def to_json(self) -> dict:
        obj = {"rule": self.rule.name, "direction": self.direction}
        if self.match is not None:
            obj["nodeMap"] = {str(k): v
                              for k, v in sorted(self.match.m.node_map.items())}
        if self.expand_node is not None:
            obj["expandNode"] = self.expand_node
        return obj


def enumerate_matches(rules: RuleSet, name: str, host: OpenGraph,
                      direction: str = "forward") -> list[NamedMatch]:
    instances = rules.lookup(name, host)
    if not instances and name not in rules.names():
        raise UnknownRule(name)
    out: list[NamedMatch] = []
    for rule in instances:
        directed = rule if direction == "forward" else rule.reversed()
        if directed.forward_applicable():
            for m in find_rule_matches(directed, host):
                out.append(NamedMatch(rule, direction, m, None))
        else:
            # the non-mono reversal of the wire rule: expansion at a node
            for node in sorted(host.body.nodes):
                if host.body.nodes[node].is_open():
                    out.append(NamedMatch(rule, direction, None, node))
    return out


def apply_named_match(host: OpenGraph, named: NamedMatch):
    if named.match is not None:
        return apply(named.match)
    return apply_wire_expansion(host, named.expand_node)


def rewrite(rules: RuleSet, name: str, host: OpenGraph, match_index: int,
            direction: str = "forward"):
    found = enumerate_matches(rules, name, host, direction)
    if match_index < 0 or match_index >= len(found):
        raise StaleMatch(
            f"match index {match_index} out of range ({len(found)} matches)")
    return apply_named_match(host, found[match_index])


def matrix_json(matrix: np.ndarray) -> dict:
    entries = [[float(z.real), float(z.imag)] for z in matrix.flatten()]
    return {"rows": matrix.shape[0], "cols": matrix.shape[1],
            "entries": entries}


def eval_diagram(f: OpenGraph) -> dict:
    return matrix_json(evaluate(f))


def soundness_rules(rules: RuleSet, name: str | None = None,
                    max_arity: int = 3) -> list[RewriteRule]:
    """The concrete rules covered by a soundness run: every shipped rule
    plus sampled family instances over the rational phase grid."""
    if name is not None:
        if name in rules.concrete:
            return [rules.concrete[name]]
        if name in rules.families:
            return rules.families[name].sample_instances(max_arity, PHASE_GRID)
        raise UnknownRule(name)
    out = [rules.concrete[n] for n in sorted(rules.concrete)]
    out += rules.families["spider"].sample_instances(max_arity, PHASE_GRID)
    out += rules.families["color"].sample_instances(2, PHASE_GRID)
    out += rules.families["loop"].sample_instances(2, PHASE_GRID[::3])
    out += rules.families["pi-comm"].sample_instances(1, PHASE_GRID)
    return out


def run_soundness(rules: RuleSet, name: str | None = None) -> list:
    return [verify_rule_soundness(rule)
            for rule in soundness_rules(rules, name)]


def rules_json(rules: RuleSet) -> dict:
    return {
        "concrete": [rules.concrete[n].to_json()
                     for n in sorted(rules.concrete)],
        "families": sorted(rules.families),
    }


def prove_diagrams(f: OpenGraph, g: OpenGraph,
                   budget: Budget) -> Derivation:
    return prove_equal(f, g, budget)


__all__ = [
    "Budget", "DiagramStore", "NamedMatch", "StaleMatch", "UnknownDiagram",
    "UnknownRule", "ArityMismatch", "apply_named_match", "basic_rules",
    "canonical_json", "compose", "diagram_id", "enumerate_matches",
    "eval_diagram", "matrix_json", "normalize", "prove_diagrams", "rewrite",
    "rules_json", "run_soundness", "soundness_rules", "tensor",
]
