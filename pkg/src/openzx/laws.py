"""Randomized structural law checks: interchange, the codiagonal pushout
lemma, companions for invertible vertical morphisms, monoidal unit cells,
and the bent-wire (snake) identities.

These guard the implementation against drift from the categorical laws it
is supposed to satisfy; each check returns a report suitable for JSON
output and the CLI exit code.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cospan import OpenGraph, compose, equal_up_to_iso, identity, \
    interface_graph, coevaluation, evaluation, tensor
from .graph import GraphMorphism, TypedGraph, pushout
from .labels import H_LABEL, OPEN_LABEL, Phase, ZERO, green, red
from .prover import Budget, prove_equal
from .spans import (
    TwoCell,
    horizontal_compose,
    identity_cell,
    parallel_equal,
    vertical_compose,
)
from .dpo import apply, apply_wire_expansion, find_rule_matches
from .rules import WIRE, basic_rules, generator


@dataclass
class LawReport:
    law: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, description: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(description)

    def to_json(self) -> dict:
        return {"law": self.law, "cases": self.cases,
                "ok": self.ok, "failures": self.failures}


# ---------------------------------------------------------------------------
# interchange


def _random_wire_graph(rng: random.Random, arity_in: int, arity_out: int,
                       max_nodes: int = 6) -> OpenGraph:
    n = max(1, min(max_nodes, arity_in + arity_out + rng.randint(0, 2)))
    edges = [(rng.randrange(n), rng.randrange(n))
             for _ in range(rng.randint(0, n - 1))]
    body = TypedGraph.build([OPEN_LABEL] * n, edges)
    inputs = tuple(rng.randrange(n) for _ in range(arity_in))
    outputs = tuple(rng.randrange(n) for _ in range(arity_out))
    return OpenGraph(body, inputs, outputs)


_WIRE_RULE_CACHE = None


def _wire_rule():
    global _WIRE_RULE_CACHE
    if _WIRE_RULE_CACHE is None:
        _WIRE_RULE_CACHE = basic_rules().concrete["wire"]
    return _WIRE_RULE_CACHE


def _random_cell(rng: random.Random, f: OpenGraph) -> TwoCell:
    """A small 2-cell out of f: identity, a wire expansion, or a wire
    contraction when one applies."""
    choice = rng.randrange(3)
    if choice == 0:
        return identity_cell(f)
    if choice == 2:
        matches = find_rule_matches(_wire_rule(), f)
        if matches:
            _, cell = apply(rng.choice(matches))
            return cell
    node = rng.choice(sorted(f.body.nodes))
    _, cell = apply_wire_expansion(f, node)
    return cell


def check_interchange(seed: int = 0, cases: int = 100) -> LawReport:
    """Horizontal-then-vertical equals vertical-then-horizontal on random
    composable quadruples of small 2-cells."""
    rng = random.Random(seed)
    report = LawReport("interchange")
    while report.cases < cases:
        m = rng.randint(0, 2)
        k = rng.randint(0, 2)
        n = rng.randint(0, 2)
        f = _random_wire_graph(rng, m, k)
        f2 = _random_wire_graph(rng, k, n)
        alpha = _random_cell(rng, f)
        beta = _random_cell(rng, alpha.cod)
        alpha2 = _random_cell(rng, f2)
        beta2 = _random_cell(rng, alpha2.cod)
        try:
            lhs = vertical_compose(horizontal_compose(alpha, alpha2),
                                   horizontal_compose(beta, beta2))
            rhs = horizontal_compose(vertical_compose(alpha, beta),
                                     vertical_compose(alpha2, beta2))
            lhs.validate()
            rhs.validate()
            ok = parallel_equal(lhs, rhs)
        except Exception as exc:  # noqa: BLE001 - report, don't crash
            ok = False
            report.record(ok, f"case {report.cases}: raised {exc!r}")
            continue
        report.record(ok, f"case {report.cases}: composites not parallel")
    return report


# ---------------------------------------------------------------------------
# codiagonal pushout lemma


def _disjoint(graphs: list[TypedGraph]) -> tuple[TypedGraph,
                                                 list[GraphMorphism]]:
    nodes: dict[int, object] = {}
    edges: dict[int, tuple[int, int]] = {}
    injections = []
    node_off = edge_off = 0
    for g in graphs:
        node_map = {}
        edge_map = {}
        for i, v in enumerate(sorted(g.nodes)):
            node_map[v] = node_off + i
        for j, e in enumerate(sorted(g.edges)):
            edge_map[e] = edge_off + j
        for v, lab in g.nodes.items():
            nodes[node_map[v]] = lab
        for e, (s, t) in g.edges.items():
            edges[edge_map[e]] = (node_map[s], node_map[t])
        node_off += g.node_count()
        edge_off += g.edge_count()
        injections.append((node_map, edge_map))
    total = TypedGraph(nodes, edges)
    return total, [GraphMorphism(g, total, nm, em)
                   for g, (nm, em) in zip(graphs, injections)]


def check_pushout_lemma(x: TypedGraph) -> bool:
    """The pushout of the two partial codiagonals out of x+x+x is x, with
    both injections the codiagonal x+x -> x."""
    double, (j1, j2) = _disjoint([x, x])
    triple, (k1, k2, k3) = _disjoint([x, x, x])

    def fold(first, second, third):
        node_map = {}
        edge_map = {}
        for src, dst in ((k1, first), (k2, second), (k3, third)):
            for v, p in src.node_map.items():
                node_map[p] = dst.node_map[v]
            for e, p in src.edge_map.items():
                edge_map[p] = dst.edge_map[e]
        return GraphMorphism(triple, double, node_map, edge_map)

    left = fold(j1, j1, j2)    # fold the first two copies
    right = fold(j1, j2, j2)   # fold the last two copies
    p, in_l, in_r = pushout(left, right)

    via1 = j1.then(in_l)
    candidates = [j1.then(in_l), j2.then(in_l), j1.then(in_r), j2.then(in_r)]
    if any(c.node_map != via1.node_map or c.edge_map != via1.edge_map
           for c in candidates):
        return False
    return via1.is_iso()


def pushout_lemma_suite() -> list[TypedGraph]:
    """Named small graphs, at most 4 nodes each, over the zx sort graph."""
    a = Phase.of(1, 3)
    suite = [
        TypedGraph.empty(),
        TypedGraph.build([OPEN_LABEL]),
        TypedGraph.build([green(ZERO)]),
        TypedGraph.build([red(a)]),
        TypedGraph.build([H_LABEL]),
        TypedGraph.build([OPEN_LABEL, OPEN_LABEL], [(0, 1)]),
        TypedGraph.build([OPEN_LABEL, OPEN_LABEL], [(0, 1), (1, 0)]),
        TypedGraph.build([OPEN_LABEL], [(0, 0)]),
        TypedGraph.build([OPEN_LABEL] * 3, [(0, 1), (1, 2)]),
        TypedGraph.build([OPEN_LABEL] * 3, [(0, 1), (1, 2), (2, 0)]),
        TypedGraph.build([OPEN_LABEL] * 4, [(0, 1), (1, 2), (2, 3)]),
        TypedGraph.build([OPEN_LABEL] * 4, [(0, 1), (2, 3)]),
        TypedGraph.build([green(a), OPEN_LABEL], [(1, 0)]),
        TypedGraph.build([green(a), OPEN_LABEL], [(1, 0), (0, 1)]),
        TypedGraph.build([red(ZERO), OPEN_LABEL, OPEN_LABEL],
                         [(1, 0), (0, 2)]),
        TypedGraph.build([green(a), OPEN_LABEL, red(ZERO)],
                         [(1, 0), (1, 2)]),
        TypedGraph.build([H_LABEL, OPEN_LABEL, OPEN_LABEL],
                         [(1, 0), (0, 2)]),
        TypedGraph.build([green(a), OPEN_LABEL, OPEN_LABEL, OPEN_LABEL],
                         [(1, 0), (2, 0), (0, 3)]),
        TypedGraph.build([OPEN_LABEL, OPEN_LABEL], []),
        TypedGraph.build([green(ZERO), green(a)], []),
        TypedGraph.build([OPEN_LABEL] * 4,
                         [(0, 1), (1, 2), (2, 3), (3, 0)]),
        TypedGraph.build([green(a), OPEN_LABEL, H_LABEL, OPEN_LABEL],
                         [(1, 0), (1, 2), (2, 3)]),
    ]
    return suite


def check_pushout_lemma_suite() -> LawReport:
    report = LawReport("pushout-lemma")
    for i, x in enumerate(pushout_lemma_suite()):
        report.record(check_pushout_lemma(x), f"suite graph {i}")
    return report


# ---------------------------------------------------------------------------
# companions and monoidal unit cells for invertible vertical morphisms


@dataclass(frozen=True)
class CubicalCell:
    """A square cell whose vertical sides are permutations of the ordinal
    interfaces (the invertible-legged case of general vertical morphisms)."""

    top: OpenGraph
    bottom: OpenGraph
    left: tuple[int, ...]   # permutation of the input interface
    right: tuple[int, ...]  # permutation of the output interface
    apex: OpenGraph
    leg_down: GraphMorphism
    leg_up: GraphMorphism

    def __post_init__(self):
        if len(self.left) != self.top.arity_in \
                or len(self.right) != self.top.arity_out:
            raise ValueError("vertical sides have wrong sizes")
        for i, node in enumerate(self.apex.inputs):
            if self.leg_down.node_map[node] != self.top.inputs[i]:
                raise ValueError("lower leg breaks the input interface")
            if self.leg_up.node_map[node] != self.bottom.inputs[self.left[i]]:
                raise ValueError("upper leg breaks the left vertical side")
        for j, node in enumerate(self.apex.outputs):
            if self.leg_down.node_map[node] != self.top.outputs[j]:
                raise ValueError("lower leg breaks the output interface")
            if self.leg_up.node_map[node] != self.bottom.outputs[self.right[j]]:
                raise ValueError("upper leg breaks the right vertical side")


def cubical_parallel_equal(a: CubicalCell, b: CubicalCell) -> bool:
    return (a.left == b.left and a.right == b.right
            and equal_up_to_iso(a.top, b.top)
            and equal_up_to_iso(a.bottom, b.bottom))


def _perm_leg(f: OpenGraph, perm_map: dict[int, int]) -> GraphMorphism:
    return GraphMorphism(f.body, f.body, perm_map,
                         {e: e for e in f.body.edges})


def unit_square(sigma: tuple[int, ...]) -> CubicalCell:
    """The vertical identity-shaped cell on a permutation."""
    m = len(sigma)
    ident = identity(m)
    down = GraphMorphism.identity(ident.body)
    up = GraphMorphism(ident.body, ident.body, dict(enumerate(sigma)), {})
    return CubicalCell(ident, ident, sigma, sigma, ident, down, up)


def companion(sigma: tuple[int, ...]) -> OpenGraph:
    """The horizontal 1-cell standing in for the vertical permutation."""
    m = len(sigma)
    return OpenGraph(interface_graph(m), tuple(sigma), tuple(range(m)))


def conjoint(sigma: tuple[int, ...]) -> OpenGraph:
    m = len(sigma)
    return OpenGraph(interface_graph(m), tuple(range(m)), tuple(sigma))


def companion_unit(sigma: tuple[int, ...]) -> CubicalCell:
    m = len(sigma)
    ident = identity(m)
    hat = companion(sigma)
    down = GraphMorphism.identity(ident.body)
    up = GraphMorphism(ident.body, hat.body, dict(enumerate(sigma)), {})
    return CubicalCell(ident, hat, tuple(range(m)), sigma, ident, down, up)


def companion_counit(sigma: tuple[int, ...]) -> CubicalCell:
    m = len(sigma)
    hat = companion(sigma)
    ident_map = GraphMorphism.identity(hat.body)
    return CubicalCell(hat, identity(m), sigma, tuple(range(m)),
                       hat, ident_map, ident_map)


def _compose_perm(first: tuple[int, ...], second: tuple[int, ...]
                  ) -> tuple[int, ...]:
    return tuple(second[first[i]] for i in range(len(first)))


def cubical_vertical(a: CubicalCell, b: CubicalCell) -> CubicalCell:
    """Paste a on top of b; a's bottom must agree with b's top up to iso."""
    from .cospan import iso_between
    from .graph import pullback
    align = iso_between(a.bottom, b.top)
    if align is None:
        raise ValueError("middle 1-cells do not align")
    left_leg = a.leg_up.then(align)
    q, pr_a, pr_b = pullback(left_leg, b.leg_down)
    pair_to_q = {(pr_a.node_map[n], pr_b.node_map[n]): n for n in q.nodes}
    inputs = tuple(pair_to_q[(a.apex.inputs[i], b.apex.inputs[a.left[i]])]
                   for i in range(a.apex.arity_in))
    outputs = tuple(pair_to_q[(a.apex.outputs[j], b.apex.outputs[a.right[j]])]
                    for j in range(a.apex.arity_out))
    apex = OpenGraph(q, inputs, outputs)
    return CubicalCell(a.top, b.bottom,
                       _compose_perm(a.left, b.left),
                       _compose_perm(a.right, b.right),
                       apex, pr_a.then(a.leg_down), pr_b.then(b.leg_up))


def cubical_horizontal(a: CubicalCell, b: CubicalCell) -> CubicalCell:
    if a.right != b.left:
        raise ValueError("middle vertical sides differ")
    from .cospan import compose_with_injections
    from .spans import _induced_leg
    top, t_in_a, t_in_b = compose_with_injections(a.top, b.top)
    bottom, b_in_a, b_in_b = compose_with_injections(a.bottom, b.bottom)
    apex, x_in_a, x_in_b = compose_with_injections(a.apex, b.apex)
    leg_down = _induced_leg(x_in_a, x_in_b, a.leg_down, b.leg_down,
                            t_in_a, t_in_b, apex.body, top.body)
    leg_up = _induced_leg(x_in_a, x_in_b, a.leg_up, b.leg_up,
                          b_in_a, b_in_b, apex.body, bottom.body)
    return CubicalCell(top, bottom, a.left, b.right, apex, leg_down, leg_up)


def cubical_tensor(a: CubicalCell, b: CubicalCell) -> CubicalCell:
    from .cospan import tensor_with_injections
    from .spans import _induced_leg
    top, t_in_a, t_in_b = tensor_with_injections(a.top, b.top)
    bottom, b_in_a, b_in_b = tensor_with_injections(a.bottom, b.bottom)
    apex, x_in_a, x_in_b = tensor_with_injections(a.apex, b.apex)
    leg_down = _induced_leg(x_in_a, x_in_b, a.leg_down, b.leg_down,
                            t_in_a, t_in_b, apex.body, top.body)
    leg_up = _induced_leg(x_in_a, x_in_b, a.leg_up, b.leg_up,
                          b_in_a, b_in_b, apex.body, bottom.body)
    left = a.left + tuple(len(a.left) + i for i in b.left)
    right = a.right + tuple(len(a.right) + j for j in b.right)
    return CubicalCell(top, bottom, left, right, apex, leg_down, leg_up)


def identity_square(f: OpenGraph) -> CubicalCell:
    ident = GraphMorphism.identity(f.body)
    return CubicalCell(f, f, tuple(range(f.arity_in)),
                       tuple(range(f.arity_out)), f, ident, ident)


def check_companion_equations(sigma: tuple[int, ...]) -> bool:
    """The two zig-zag pastings for the companion collapse to identities."""
    eta = companion_unit(sigma)
    eps = companion_counit(sigma)
    hat = companion(sigma)

    vertical = cubical_vertical(eta, eps)
    if not cubical_parallel_equal(vertical, unit_square(sigma)):
        return False

    horizontal = cubical_horizontal(eta, eps)
    return cubical_parallel_equal(horizontal, identity_square(hat))


def check_companions(seed: int = 0, cases: int = 25) -> LawReport:
    rng = random.Random(seed)
    report = LawReport("companions")
    report.record(check_companion_equations(()), "identity on 0")
    report.record(check_companion_equations((0,)), "identity on 1")
    while report.cases < cases:
        m = rng.randint(1, 4)
        perm = list(range(m))
        rng.shuffle(perm)
        try:
            ok = check_companion_equations(tuple(perm))
        except Exception as exc:  # noqa: BLE001
            report.record(False, f"perm {perm}: raised {exc!r}")
            continue
        report.record(ok, f"perm {perm}")
    return report


def check_monoidal_unit_cells(sigma: tuple[int, ...],
                              tau: tuple[int, ...]) -> bool:
    """The unit square of a block sum agrees with the tensor of the unit
    squares."""
    combined = tuple(sigma) + tuple(len(sigma) + t for t in tau)
    lhs = unit_square(combined)
    rhs = cubical_tensor(unit_square(sigma), unit_square(tau))
    return cubical_parallel_equal(lhs, rhs)


def check_monoidal_units(seed: int = 0, cases: int = 25) -> LawReport:
    rng = random.Random(seed)
    report = LawReport("monoidal-units")
    report.record(check_monoidal_unit_cells((), ()), "empty pair")
    while report.cases < cases:
        sigma = list(range(rng.randint(0, 3)))
        tau = list(range(rng.randint(0, 3)))
        rng.shuffle(sigma)
        rng.shuffle(tau)
        try:
            ok = check_monoidal_unit_cells(tuple(sigma), tuple(tau))
        except Exception as exc:  # noqa: BLE001
            report.record(False, f"{sigma}/{tau}: raised {exc!r}")
            continue
        report.record(ok, f"{sigma}/{tau}")
    return report


# ---------------------------------------------------------------------------
# snake


def wire_strands(n: int) -> OpenGraph:
    strands = identity(0)
    for _ in range(n):
        strands = tensor(strands, generator(WIRE, 1, 1))
    return strands


def snake_composite(n: int) -> OpenGraph:
    """Straight strands bent through evaluation and coevaluation."""
    return compose(tensor(wire_strands(n), coevaluation(n)),
                   tensor(evaluation(n), wire_strands(n)))


def check_snake(n: int, budget: Budget | None = None) -> bool:
    budget = budget or Budget(max_steps=4 * n, max_states=10_000,
                              max_nodes=8 * n + 8)
    d = prove_equal(snake_composite(n), identity(n), budget)
    if not d.found:
        return False
    d.witness.validate()
    return True


def check_snakes(max_n: int = 2) -> LawReport:
    report = LawReport("snake")
    for n in range(1, max_n + 1):
        report.record(check_snake(n), f"n={n}")
    from .cospan import dagger
    flipped = dagger(snake_composite(1))
    report.record(prove_equal(flipped, identity(1),
                              Budget(max_steps=4, max_states=10_000,
                                     max_nodes=16)).found,
                  "dagger-flipped snake")
    return report


# ---------------------------------------------------------------------------
# aggregate runner

LAWS = {
    "interchange": lambda seed, cases: check_interchange(seed, cases),
    "pushout-lemma": lambda seed, cases: check_pushout_lemma_suite(),
    "companions": lambda seed, cases: check_companions(seed, cases),
    "monoidal-units": lambda seed, cases: check_monoidal_units(seed, cases),
    "snake": lambda seed, cases: check_snakes(),
}


def run_laws(law: str = "all", seed: int = 0,
             cases: int = 100) -> list[LawReport]:
    names = sorted(LAWS) if law == "all" else [law]
    return [LAWS[name](seed, cases) for name in names]
