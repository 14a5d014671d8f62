"""Generator 1-cells, the zx term language, and the basic rule set.

Rules whose left sides depend on arities or phases (spider fusion, color
change, pi-commutation, loops) are rule families: templates instantiated
lazily against a host diagram.  The rule set is closed under color swap,
dagger, and span reversal; every shipped rule is validated against the
matrix semantics (see semantics.verify_rule_soundness).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cospan import (
    OpenGraph,
    compose,
    coevaluation,
    dagger,
    evaluation,
    identity,
    tensor,
    twist,
)
from .dpo import RewriteRule
from .graph import TypedGraph
from .labels import (
    DIAMOND,
    DIAMOND_LABEL,
    GREEN,
    H_LABEL,
    HADAMARD,
    OPEN_LABEL,
    PI,
    RED,
    ZERO,
    NodeLabel,
    Phase,
)

WIRE = "wire"


class ArityUnsupported(Exception):
    pass


class ArityMismatch(Exception):
    pass


def generator(kind: str, m: int, n: int, phase: Phase | None = None
              ) -> OpenGraph:
    """A basic 1-cell: spider, hadamard, wire, or diamond."""
    if kind in (GREEN, RED):
        if m < 0 or n < 0:
            raise ArityUnsupported("spider arities must be non-negative")
        labels = [NodeLabel(kind, phase if phase is not None else ZERO)]
        labels += [OPEN_LABEL] * (m + n)
        edges = [(1 + i, 0) for i in range(m)]
        edges += [(0, 1 + m + j) for j in range(n)]
        return OpenGraph(TypedGraph.build(labels, edges),
                         tuple(range(1, 1 + m)),
                         tuple(range(1 + m, 1 + m + n)))
    if kind == HADAMARD:
        if (m, n) != (1, 1):
            raise ArityUnsupported("hadamard is 1 -> 1")
        g = TypedGraph.build([H_LABEL, OPEN_LABEL, OPEN_LABEL],
                             [(1, 0), (0, 2)])
        return OpenGraph(g, (1,), (2,))
    if kind == WIRE:
        if (m, n) != (1, 1):
            raise ArityUnsupported("wire is 1 -> 1")
        return OpenGraph(TypedGraph.build([OPEN_LABEL, OPEN_LABEL], [(0, 1)]),
                         (0,), (1,))
    if kind == DIAMOND:
        if (m, n) != (0, 0):
            raise ArityUnsupported("diamond is 0 -> 0")
        return OpenGraph(TypedGraph.build([DIAMOND_LABEL]), (), ())
    raise ArityUnsupported(f"unknown generator kind {kind!r}")


def _swap_color(kind: str) -> str:
    return {GREEN: RED, RED: GREEN}[kind]


def color_swap_graph(f: OpenGraph) -> OpenGraph:
    nodes = {n: (NodeLabel(_swap_color(l.kind), l.phase)
                 if l.kind in (GREEN, RED) else l)
             for n, l in f.body.nodes.items()}
    return OpenGraph(TypedGraph(nodes, dict(f.body.edges)),
                     f.inputs, f.outputs)


# ---------------------------------------------------------------------------
# term language


@dataclass(frozen=True)
class ZxTerm:
    pos: int = field(default=0, compare=False, kw_only=True)

    def arity(self) -> tuple[int, int]:
        raise NotImplementedError


@dataclass(frozen=True)
class Gen(ZxTerm):
    kind: str
    m: int
    n: int
    phase: Phase | None = None

    def arity(self):
        return (self.m, self.n)


@dataclass(frozen=True)
class Id(ZxTerm):
    n: int

    def arity(self):
        return (self.n, self.n)


@dataclass(frozen=True)
class Swap(ZxTerm):
    m: int
    n: int

    def arity(self):
        return (self.m + self.n, self.n + self.m)


@dataclass(frozen=True)
class Cup(ZxTerm):
    n: int

    def arity(self):
        return (2 * self.n, 0)


@dataclass(frozen=True)
class Cap(ZxTerm):
    n: int

    def arity(self):
        return (0, 2 * self.n)


@dataclass(frozen=True)
class Seq(ZxTerm):
    first: ZxTerm
    second: ZxTerm

    def arity(self):
        m, k1 = self.first.arity()
        k2, n = self.second.arity()
        if k1 != k2:
            raise ArityMismatch(
                f"at position {self.pos}: cannot compose {k1} outputs "
                f"with {k2} inputs")
        return (m, n)


@dataclass(frozen=True)
class Par(ZxTerm):
    left: ZxTerm
    right: ZxTerm

    def arity(self):
        m1, n1 = self.left.arity()
        m2, n2 = self.right.arity()
        return (m1 + m2, n1 + n2)


@dataclass(frozen=True)
class Dag(ZxTerm):
    inner: ZxTerm

    def arity(self):
        m, n = self.inner.arity()
        return (n, m)


def translate(term: ZxTerm) -> OpenGraph:
    """Interpret a term as an open graph, generator by generator."""
    term.arity()  # fail fast on ill-aried terms
    return _translate(term)


def _translate(term: ZxTerm) -> OpenGraph:
    if isinstance(term, Gen):
        return generator(term.kind, term.m, term.n, term.phase)
    if isinstance(term, Id):
        return identity(term.n)
    if isinstance(term, Swap):
        return twist(term.m, term.n)
    if isinstance(term, Cup):
        return evaluation(term.n)
    if isinstance(term, Cap):
        return coevaluation(term.n)
    if isinstance(term, Seq):
        return compose(_translate(term.first), _translate(term.second))
    if isinstance(term, Par):
        return tensor(_translate(term.left), _translate(term.right))
    if isinstance(term, Dag):
        return dagger(_translate(term.inner))
    raise TypeError(f"unknown term {term!r}")


class TermSyntaxError(Exception):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.pos = pos
        self.line = line
        self.column = col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise TermSyntaxError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def phase(self) -> Phase:
        num = self.integer()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
        return Phase.of(num, den)

    def bracket_args(self, count: int, with_phase: bool = False):
        self.expect("[")
        args = [self.integer()]
        for _ in range(count - 1):
            self.expect(",")
            args.append(self.integer())
        phase = None
        if with_phase:
            self.expect(",")
            phase = self.phase()
        self.expect("]")
        return args, phase

    def atom(self) -> ZxTerm:
        self.skip_ws()
        start = self.pos
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            left = self.term()
            op = self.peek()
            if op not in ";+":
                self.error("expected ';' or '+'")
            self.pos += 1
            right = self.term()
            self.expect(")")
            if op == ";":
                return Seq(left, right, pos=start)
            return Par(left, right, pos=start)
        word = self._keyword()
        if word in ("g", "r"):
            (m, n), phase = self.bracket_args(2, with_phase=True)
            kind = GREEN if word == "g" else RED
            return Gen(kind, m, n, phase, pos=start)
        if word == "h":
            return Gen(HADAMARD, 1, 1, pos=start)
        if word == "w":
            return Gen(WIRE, 1, 1, pos=start)
        if word == "d":
            return Gen(DIAMOND, 0, 0, pos=start)
        if word == "id":
            (n,), _ = self.bracket_args(1)
            return Id(n, pos=start)
        if word == "sw":
            (m, n), _ = self.bracket_args(2)
            return Swap(m, n, pos=start)
        if word == "cup":
            (n,), _ = self.bracket_args(1)
            return Cup(n, pos=start)
        if word == "cap":
            (n,), _ = self.bracket_args(1)
            return Cap(n, pos=start)
        self.error(f"unexpected token {word or ch!r}")

    def _keyword(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def term(self) -> ZxTerm:
        t = self.atom()
        while self.peek() == "^":
            self.pos += 1
            t = Dag(t, pos=t.pos)
        return t

    def parse(self) -> ZxTerm:
        t = self.term()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return t


def parse_term(text: str) -> ZxTerm:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# the basic rule set


@dataclass(frozen=True)
class RuleFamily:
    """A rule template instantiated lazily against a host diagram."""

    name: str
    build: Callable[..., RewriteRule]
    host_params: Callable[[OpenGraph], list[tuple]]
    sample_params: Callable[[int, list[Phase]], list[tuple]]

    def instances_for(self, host: OpenGraph) -> list[RewriteRule]:
        out = []
        for params in self.host_params(host):
            try:
                out.append(self.build(*params))
            except ArityUnsupported:
                continue
        return out

    def sample_instances(self, max_arity: int,
                         phases: list[Phase]) -> list[RewriteRule]:
        return [self.build(*params)
                for params in self.sample_params(max_arity, phases)]


def _spider_stats(host: OpenGraph):
    """(node, kind, phase, in-degree, out-degree) for each host spider."""
    stats = []
    for n, lab in sorted(host.body.nodes.items()):
        if lab.kind in (GREEN, RED):
            indeg = sum(1 for s, t in host.body.edges.values() if t == n)
            outdeg = sum(1 for s, t in host.body.edges.values() if s == n)
            stats.append((n, lab.kind, lab.phase, indeg, outdeg))
    return stats


def build_spider_rule(color: str, m: int, n: int,
                      a: Phase, b: Phase) -> RewriteRule:
    lhs = compose(generator(color, m, 1, a), generator(color, 1, n, b))
    rhs = generator(color, m, n, a + b)
    return RewriteRule.basic(f"spider[{color},{m},{n},{a},{b}]", lhs, rhs)


def _spider_host_params(host: OpenGraph) -> list[tuple]:
    params = set()
    stats = _spider_stats(host)
    by_node = {s[0]: s for s in stats}
    for c, lab in sorted(host.body.nodes.items()):
        if not lab.is_open():
            continue
        nbrs = sorted({x for s, t in host.body.edges.values()
                       if (s == c or t == c)
                       for x in (s, t) if x != c})
        spiders = [by_node[x] for x in nbrs if x in by_node]
        for _, k1, p1, i1, o1 in spiders:
            for _, k2, p2, i2, o2 in spiders:
                if k1 == k2:
                    params.add((k1, i1 + o1 - 1, i2 + o2 - 1, p1, p2))
    return sorted(params, key=repr)


def _spider_sample_params(max_arity: int, phases: list[Phase]) -> list[tuple]:
    return [(color, m, n, a, b)
            for color in (GREEN, RED)
            for m in range(max_arity + 1)
            for n in range(max_arity + 1)
            for a in phases
            for b in phases]


def build_color_change_rule(color: str, m: int, n: int,
                            a: Phase) -> RewriteRule:
    """Spider of one color flanked by hadamards on every leg becomes the
    other color."""
    h = generator(HADAMARD, 1, 1)

    def h_layer(k):
        layer = identity(0)
        for _ in range(k):
            layer = tensor(layer, h)
        return layer

    lhs = compose(h_layer(m), compose(generator(color, m, n, a), h_layer(n)))
    rhs = generator(_swap_color(color), m, n, a)
    return RewriteRule.basic(f"color[{color},{m},{n},{a}]", lhs, rhs)


def _color_change_host_params(host: OpenGraph) -> list[tuple]:
    params = set()
    for _, kind, phase, indeg, outdeg in _spider_stats(host):
        params.add((kind, indeg, outdeg, phase))
    return sorted(params, key=repr)


def _color_change_sample_params(max_arity, phases):
    return [(color, m, n, a)
            for color in (GREEN, RED)
            for m in range(max_arity + 1)
            for n in range(max_arity + 1)
            if m + n > 0
            for a in phases]


def build_loop_rule(color: str, m: int, n: int, a: Phase,
                    orient: str) -> RewriteRule:
    """Spider with a self-loop through an open node drops the loop."""
    rhs = generator(color, m, n, a)
    base = generator(color, m, n, a)
    body_nodes = dict(base.body.nodes)
    loop_node = 1 + m + n
    body_nodes[loop_node] = OPEN_LABEL
    edges = dict(base.body.edges)
    next_edge = len(edges)
    if orient == "out-out":
        loop_edges = [(0, loop_node), (0, loop_node)]
    elif orient == "in-in":
        loop_edges = [(loop_node, 0), (loop_node, 0)]
    else:
        loop_edges = [(0, loop_node), (loop_node, 0)]
    for e in loop_edges:
        edges[next_edge] = e
        next_edge += 1
    lhs = OpenGraph(TypedGraph(body_nodes, edges), base.inputs, base.outputs)
    return RewriteRule.basic(f"loop[{color},{m},{n},{a},{orient}]", lhs, rhs)


def _loop_host_params(host: OpenGraph) -> list[tuple]:
    params = set()
    by_node = {s[0]: s for s in _spider_stats(host)}
    for c, lab in sorted(host.body.nodes.items()):
        if not lab.is_open():
            continue
        incident = [(s, t) for s, t in host.body.edges.values()
                    if s == c or t == c]
        if len(incident) != 2:
            continue
        ends = [s if t == c else t for s, t in incident]
        if ends[0] != ends[1] or ends[0] not in by_node:
            continue
        spider = ends[0]
        _, kind, phase, indeg, outdeg = by_node[spider]
        outs = sum(1 for s, t in incident if s == spider)
        if outs == 2:
            orient, din, dout = "out-out", indeg, outdeg - 2
        elif outs == 0:
            orient, din, dout = "in-in", indeg - 2, outdeg
        else:
            orient, din, dout = "mixed", indeg - 1, outdeg - 1
        params.add((kind, din, dout, phase, orient))
    return sorted(params, key=repr)


def _loop_sample_params(max_arity, phases):
    return [(color, m, n, a, orient)
            for color in (GREEN, RED)
            for m in range(max_arity + 1)
            for n in range(max_arity + 1)
            for a in phases[::4] or phases
            for orient in ("out-out", "in-in", "mixed")]


def build_pi_commutation_rule(color: str, a: Phase) -> RewriteRule:
    """A phase pushes through the other color's pi spider, negating."""
    other = _swap_color(color)
    lhs = compose(generator(color, 1, 1, a), generator(other, 1, 1, PI))
    rhs = compose(generator(other, 1, 1, PI), generator(color, 1, 1, -a))
    return RewriteRule.basic(f"pi-comm[{color},{a}]", lhs, rhs)


def _pi_commutation_host_params(host: OpenGraph) -> list[tuple]:
    params = set()
    for _, kind, phase, _, _ in _spider_stats(host):
        params.add((kind, phase))
        params.add((kind, -phase))
    return sorted(params, key=repr)


def _pi_commutation_sample_params(max_arity, phases):
    return [(color, a) for color in (GREEN, RED) for a in phases]


def _fixed_rules() -> list[RewriteRule]:
    g = generator
    rules = []

    # the wire 1-cell behaves as the identity
    rules.append(RewriteRule.basic("wire", g(WIRE, 1, 1), identity(1)))

    # trivial spider: a phaseless (1,1) spider is a wire
    for color in (GREEN, RED):
        rules.append(RewriteRule.basic(
            f"trivial[{color}]", g(color, 1, 1, ZERO), g(WIRE, 1, 1)))

    # cup: the bent wire of one color equals the other color's
    for color in (GREEN, RED):
        other = _swap_color(color)
        rules.append(RewriteRule.basic(
            f"cup[{color}]", g(color, 0, 2, ZERO), g(other, 0, 2, ZERO)))
        rules.append(RewriteRule.basic(
            f"cap[{color}]", g(color, 2, 0, ZERO), g(other, 2, 0, ZERO)))

    # copy: the other color's point is copied by a phaseless split
    for color in (GREEN, RED):
        other = _swap_color(color)
        point = g(other, 0, 1, ZERO)
        rules.append(RewriteRule.basic(
            f"copy[{color}]",
            compose(point, g(color, 1, 2, ZERO)),
            tensor(point, point)))

    # pi-copy: the other color's pi phase copies through a split
    for color in (GREEN, RED):
        other = _swap_color(color)
        flip = g(other, 1, 1, PI)
        rules.append(RewriteRule.basic(
            f"pi-copy[{color}]",
            compose(flip, g(color, 1, 2, ZERO)),
            compose(g(color, 1, 2, ZERO), tensor(flip, flip))))

    # bialgebra
    for color in (GREEN, RED):
        other = _swap_color(color)
        merge = g(other, 2, 1, ZERO)
        split = g(color, 1, 2, ZERO)
        lhs = compose(merge, split)
        rhs = compose(
            compose(tensor(split, split),
                    tensor(tensor(identity(1), twist(1, 1)), identity(1))),
            tensor(merge, merge))
        rules.append(RewriteRule.basic(f"bialgebra[{color}]", lhs, rhs))

    # diamond pair is the green-red circle
    circle = compose(g(GREEN, 0, 1, ZERO), g(RED, 1, 0, ZERO))
    rules.append(RewriteRule.basic(
        "diamond", tensor(g(DIAMOND, 0, 0), g(DIAMOND, 0, 0)), circle))
    return rules


def _dagger_rule(rule: RewriteRule) -> RewriteRule:
    return RewriteRule.basic(rule.name + ".dag",
                             dagger(rule.lhs), dagger(rule.rhs),
                             tag="derived-closure")


def _swap_rule(rule: RewriteRule) -> RewriteRule:
    return RewriteRule.basic(rule.name + ".swap",
                             color_swap_graph(rule.lhs),
                             color_swap_graph(rule.rhs),
                             tag="derived-closure")


def _rule_key(rule: RewriteRule) -> tuple[bytes, bytes]:
    return (rule.lhs.canonical_key(), rule.rhs.canonical_key())


@dataclass(frozen=True)
class RuleSet:
    """Named concrete rules plus lazily-instantiated families, closed under
    color swap, dagger, and span reversal (reversal is applied at search
    time via RewriteRule.reversed)."""

    concrete: dict[str, RewriteRule]
    families: dict[str, RuleFamily]

    def concrete_for(self, host: OpenGraph) -> list[RewriteRule]:
        rules = [self.concrete[name] for name in sorted(self.concrete)]
        for name in sorted(self.families):
            rules.extend(self.families[name].instances_for(host))
        return rules

    def lookup(self, name: str, host: OpenGraph) -> list[RewriteRule]:
        """All concrete rules with the given base name, instantiated
        against the host for families."""
        if name in self.concrete:
            return [self.concrete[name]]
        if name in self.families:
            return self.families[name].instances_for(host)
        # allow fully-instantiated names like spider[green,1,1,0,0]
        return [r for r in self.concrete_for(host) if r.name == name]

    def names(self) -> list[str]:
        return sorted(self.concrete) + sorted(self.families)


def basic_rules() -> RuleSet:
    concrete: dict[str, RewriteRule] = {}
    seen: set[tuple[bytes, bytes]] = set()
    base = _fixed_rules()
    for rule in base:
        variants = [rule, _swap_rule(rule), _dagger_rule(rule),
                    _swap_rule(_dagger_rule(rule))]
        for v in variants:
            key = _rule_key(v)
            if key in seen:
                continue
            seen.add(key)
            concrete[v.name] = v

    families = {
        "spider": RuleFamily("spider", build_spider_rule,
                             _spider_host_params, _spider_sample_params),
        "color": RuleFamily("color", build_color_change_rule,
                            _color_change_host_params,
                            _color_change_sample_params),
        "loop": RuleFamily("loop", build_loop_rule,
                           _loop_host_params, _loop_sample_params),
        "pi-comm": RuleFamily("pi-comm", build_pi_commutation_rule,
                              _pi_commutation_host_params,
                              _pi_commutation_sample_params),
    }
    return RuleSet(concrete, families)
