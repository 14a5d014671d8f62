"""Bounded bidirectional search for 2-cells connecting two 1-cells.

States are diagrams up to boundary-pinned isomorphism, deduplicated by
canonical form.  Moves are single rule applications (forward and, where
the left leg stays mono, reversed) plus wire expansion, which realizes
the reversed wire rule.  When the two frontiers meet, the step witnesses
are spliced by vertical composition into one 2-cell.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cospan import ArityMismatch, OpenGraph
from .dpo import apply, apply_wire_expansion, find_rule_matches
from .rules import RuleSet, basic_rules
from .spans import TwoCell, identity_cell, reverse, vertical_compose


@dataclass(frozen=True)
class Budget:
    max_steps: int = 16
    max_states: int = 10_000
    max_nodes: int = 64

    @staticmethod
    def from_json(obj: dict) -> Budget:
        return Budget(int(obj.get("maxSteps", 16)),
                      int(obj.get("maxStates", 10_000)),
                      int(obj.get("maxNodes", 64)))

    def to_json(self) -> dict:
        return {"maxSteps": self.max_steps, "maxStates": self.max_states,
                "maxNodes": self.max_nodes}


@dataclass(frozen=True)
class Step:
    rule: str
    direction: str  # forward | reversed | expand
    node_map: dict[int, int]

    def to_json(self) -> dict:
        return {"rule": self.rule, "direction": self.direction,
                "nodeMap": {str(k): v for k, v in sorted(self.node_map.items())}}


@dataclass
class Derivation:
    start: OpenGraph
    end: OpenGraph
    steps: list[Step]
    cells: list[TwoCell]
    witness: TwoCell | None
    found: bool
    states_explored: int = 0

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "statesExplored": self.states_explored,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _successors(h: OpenGraph, rules: RuleSet, max_nodes: int):
    """All one-step rewrites of h: (step, result, witness cell)."""
    out = []
    for rule in rules.concrete_for(h):
        directed = [("forward", rule)]
        rev = rule.reversed()
        if rev.forward_applicable():
            directed.append(("reversed", rev))
        for direction, r in directed:
            if not r.forward_applicable():
                continue
            for match in find_rule_matches(r, h):
                result, cell = apply(match)
                if result.body.node_count() > max_nodes:
                    continue
                out.append((Step(rule.name, direction, dict(match.m.node_map)),
                            result, cell))
    if h.body.node_count() + 2 <= max_nodes:
        for node in sorted(h.body.nodes):
            if not h.body.nodes[node].is_open():
                continue
            try:
                result, cell = apply_wire_expansion(h, node)
            except Exception:
                continue
            out.append((Step("wire", "expand", {node: node}), result, cell))
    return out


@dataclass
class _State:
    graph: OpenGraph
    parent: bytes | None
    step: Step | None
    cell: TwoCell | None  # parent graph => this graph
    depth: int


def _chain(states: dict[bytes, _State], key: bytes):
    """Steps and cells from the side's root down to the given state."""
    steps: list[Step] = []
    cells: list[TwoCell] = []
    while states[key].parent is not None:
        st = states[key]
        steps.append(st.step)
        cells.append(st.cell)
        key = st.parent
    steps.reverse()
    cells.reverse()
    return steps, cells


_FLIP = {"forward": "reversed", "reversed": "forward", "expand": "forward"}


def _splice(fwd: dict[bytes, _State], bwd: dict[bytes, _State],
            meet_fwd: bytes, meet_bwd: bytes,
            start: OpenGraph, end: OpenGraph, explored: int) -> Derivation:
    f_steps, f_cells = _chain(fwd, meet_fwd)
    b_steps, b_cells = _chain(bwd, meet_bwd)
    steps = f_steps + [Step(s.rule, _FLIP[s.direction], s.node_map)
                       for s in reversed(b_steps)]
    cells = f_cells + [reverse(c) for c in reversed(b_cells)]
    witness = identity_cell(start)
    for cell in cells:
        witness = vertical_compose(witness, cell)
    return Derivation(start, end, steps, cells, witness, True, explored)


def prove_equal(f: OpenGraph, g: OpenGraph, budget: Budget = Budget(),
                rules: RuleSet | None = None) -> Derivation:
    """Search for a chain of basic 2-cells from f to g.

    Returns a Derivation with found=False when the budget runs out; an
    interface-size mismatch is the only case decided negatively, by error.
    """
    if f.arity_in != g.arity_in or f.arity_out != g.arity_out:
        raise ArityMismatch("cannot relate cells of different interface sizes")
    rules = rules if rules is not None else basic_rules()

    start_key, goal_key = f.canonical_key(), g.canonical_key()
    fwd = {start_key: _State(f, None, None, None, 0)}
    bwd = {goal_key: _State(g, None, None, None, 0)}
    if start_key == goal_key:
        return _splice(fwd, bwd, start_key, goal_key, f, g, 1)

    frontier_f = [start_key]
    frontier_b = [goal_key]
    depth_f = depth_b = 0
    explored = 2

    while frontier_f and frontier_b:
        if depth_f + depth_b >= budget.max_steps:
            break
        if len(frontier_f) <= len(frontier_b):
            side, other = fwd, bwd
            frontier = frontier_f
            forward_side = True
        else:
            side, other = bwd, fwd
            frontier = frontier_b
            forward_side = False
        next_frontier: list[bytes] = []
        for key in frontier:
            state = side[key]
            for step, result, cell in _successors(
                    state.graph, rules, budget.max_nodes):
                rkey = result.canonical_key()
                if rkey in side:
                    continue
                explored += 1
                side[rkey] = _State(result, key, step, cell, state.depth + 1)
                if rkey in other:
                    return _splice(fwd, bwd, rkey, rkey, f, g, explored)
                next_frontier.append(rkey)
                if explored >= budget.max_states:
                    return Derivation(f, g, [], [], None, False, explored)
        if forward_side:
            frontier_f = next_frontier
            depth_f += 1
        else:
            frontier_b = next_frontier
            depth_b += 1

    return Derivation(f, g, [], [], None, False, explored)


def _size(h: OpenGraph) -> tuple[int, int]:
    return (h.body.node_count(), h.body.edge_count())


def _normalize_rule_order(rules: RuleSet, host: OpenGraph):
    preferred = [rules.concrete["wire"]]
    preferred += rules.families["spider"].instances_for(host)
    preferred += [r for name, r in sorted(rules.concrete.items())
                  if name.startswith("trivial")]
    seen = {r.name for r in preferred}
    preferred += [r for r in rules.concrete_for(host) if r.name not in seen]
    return preferred


def normalize(f: OpenGraph, budget: Budget = Budget(),
              rules: RuleSet | None = None) -> OpenGraph:
    """Greedy size reduction; deterministic; never grows the diagram."""
    rules = rules if rules is not None else basic_rules()
    current = f
    for _ in range(budget.max_steps):
        improved = None
        for rule in _normalize_rule_order(rules, current):
            if not rule.forward_applicable():
                continue
            for match in find_rule_matches(rule, current):
                result, _ = apply(match)
                if _size(result) < _size(current):
                    improved = result
                    break
            if improved is not None:
                break
        if improved is None:
            break
        current = improved
    return current
