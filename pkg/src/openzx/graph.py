"""Finite directed multigraphs with sorted nodes, morphisms, and (co)limits.

Node and edge ids are dense integers, assigned in insertion order, so every
operation here is reproducible byte-for-byte.  All values are treated as
immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .labels import NodeLabel, edge_permitted


class LabelClash(Exception):
    """Pushout tried to identify nodes carrying different labels."""


class DanglingCondition(Exception):
    """An edge outside the match image is incident to a deleted node."""


@dataclass(frozen=True)
class TypedGraph:
    """Directed multigraph with node labels; parallel edges and loops allowed."""

    nodes: dict[int, NodeLabel]
    edges: dict[int, tuple[int, int]]

    def __post_init__(self):
        for e, (s, t) in self.edges.items():
            if s not in self.nodes or t not in self.nodes:
                raise ValueError(f"edge {e} references missing node")
            if not edge_permitted(self.nodes[s], self.nodes[t]):
                raise ValueError(
                    f"edge {e}: {self.nodes[s]} -> {self.nodes[t]} not permitted")

    @staticmethod
    def empty() -> TypedGraph:
        return TypedGraph({}, {})

    @staticmethod
    def build(labels: Iterable[NodeLabel],
              edges: Iterable[tuple[int, int]] = ()) -> TypedGraph:
        """Graph with nodes 0..n-1 labeled in order and the given edges."""
        node_map = dict(enumerate(labels))
        edge_map = dict(enumerate(tuple(e) for e in edges))
        return TypedGraph(node_map, edge_map)

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, n: int) -> int:
        return sum((s == n) + (t == n) for s, t in self.edges.values())

    def incident_edges(self, n: int) -> list[int]:
        return [e for e, (s, t) in sorted(self.edges.items())
                if s == n or t == n]

    def edges_between(self, s: int, t: int) -> list[int]:
        return [e for e, st in sorted(self.edges.items()) if st == (s, t)]

    def renumbered(self) -> tuple[TypedGraph, GraphMorphism]:
        """Copy with dense ids 0..n-1 in sorted order, plus the iso onto it."""
        nmap = {n: i for i, n in enumerate(sorted(self.nodes))}
        emap = {e: i for i, e in enumerate(sorted(self.edges))}
        g = TypedGraph({nmap[n]: l for n, l in self.nodes.items()},
                       {emap[e]: (nmap[s], nmap[t])
                        for e, (s, t) in self.edges.items()})
        return g, GraphMorphism(self, g, nmap, emap)


@dataclass(frozen=True)
class GraphMorphism:
    """Total, label-preserving morphism between typed graphs."""

    source: TypedGraph
    target: TypedGraph
    node_map: dict[int, int]
    edge_map: dict[int, int]

    def __post_init__(self):
        for n, label in self.source.nodes.items():
            if n not in self.node_map:
                raise ValueError(f"node {n} unmapped")
            tn = self.node_map[n]
            if tn not in self.target.nodes:
                raise ValueError(f"node {n} maps outside target")
            if self.target.nodes[tn] != label:
                raise ValueError(f"node {n}: label not preserved")
        for e, (s, t) in self.source.edges.items():
            if e not in self.edge_map:
                raise ValueError(f"edge {e} unmapped")
            te = self.edge_map[e]
            if te not in self.target.edges:
                raise ValueError(f"edge {e} maps outside target")
            if self.target.edges[te] != (self.node_map[s], self.node_map[t]):
                raise ValueError(f"edge {e}: endpoints not preserved")

    @staticmethod
    def identity(g: TypedGraph) -> GraphMorphism:
        return GraphMorphism(g, g, {n: n for n in g.nodes}, {e: e for e in g.edges})

    def is_mono(self) -> bool:
        return (len(set(self.node_map.values())) == len(self.node_map)
                and len(set(self.edge_map.values())) == len(self.edge_map))

    def is_iso(self) -> bool:
        return (self.is_mono()
                and len(self.node_map) == self.target.node_count()
                and len(self.edge_map) == self.target.edge_count())

    def then(self, other: GraphMorphism) -> GraphMorphism:
        if other.source is not self.target and other.source != self.target:
            raise ValueError("morphisms not composable")
        return GraphMorphism(
            self.source, other.target,
            {n: other.node_map[v] for n, v in self.node_map.items()},
            {e: other.edge_map[v] for e, v in self.edge_map.items()})

    def inverse(self) -> GraphMorphism:
        if not self.is_iso():
            raise ValueError("morphism is not an isomorphism")
        return GraphMorphism(
            self.target, self.source,
            {v: n for n, v in self.node_map.items()},
            {v: e for e, v in self.edge_map.items()})


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

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def pushout(left: GraphMorphism, right: GraphMorphism
            ) -> tuple[TypedGraph, GraphMorphism, GraphMorphism]:
    """Pushout of A <- K -> B; returns (P, A -> P, B -> P).

    P is the quotient of A + B by the equivalence generated by
    left(k) ~ right(k), with dense ids assigned A-first in sorted order.
    """
    if left.source != right.source:
        raise ValueError("pushout legs must share their source")
    a, b = left.target, right.target

    nodes = _UnionFind()
    edges = _UnionFind()
    for k in left.source.nodes:
        nodes.union(("A", left.node_map[k]), ("B", right.node_map[k]))
    for k in left.source.edges:
        edges.union(("A", left.edge_map[k]), ("B", right.edge_map[k]))

    def quotient(a_items, b_items, uf):
        new_id: dict = {}
        out: dict = {}
        for tag, items in (("A", a_items), ("B", b_items)):
            for i in sorted(items):
                root = uf.find((tag, i))
                if root not in new_id:
                    new_id[root] = len(new_id)
                out[(tag, i)] = new_id[root]
        return out

    node_id = quotient(a.nodes, b.nodes, nodes)

    # label check: every class must carry a single label
    labels: dict[int, NodeLabel] = {}
    for (tag, i), nid in node_id.items():
        label = (a if tag == "A" else b).nodes[i]
        if nid in labels and labels[nid] != label:
            raise LabelClash(f"node class {nid} carries {labels[nid]} and {label}")
        labels[nid] = label

    edge_id = quotient(a.edges, b.edges, edges)
    new_edges: dict[int, tuple[int, int]] = {}
    for (tag, i), eid in edge_id.items():
        s, t = (a if tag == "A" else b).edges[i]
        st = (node_id[(tag, s)], node_id[(tag, t)])
        if eid in new_edges and new_edges[eid] != st:
            raise LabelClash(f"edge class {eid} has inconsistent endpoints")
        new_edges[eid] = st

    p = TypedGraph(labels, new_edges)
    in_a = GraphMorphism(a, p,
                         {n: node_id[("A", n)] for n in a.nodes},
                         {e: edge_id[("A", e)] for e in a.edges})
    in_b = GraphMorphism(b, p,
                         {n: node_id[("B", n)] for n in b.nodes},
                         {e: edge_id[("B", e)] for e in b.edges})
    return p, in_a, in_b


def pullback(left: GraphMorphism, right: GraphMorphism
             ) -> tuple[TypedGraph, GraphMorphism, GraphMorphism]:
    """Pullback of A -> C <- B; returns (Q, Q -> A, Q -> B).

    Q has a node for each pair (a, b) with equal image and an edge for each
    such pair of edges, ordered lexicographically.
    """
    if left.target != right.target:
        raise ValueError("pullback legs must share their target")
    a, b = left.source, right.source

    node_pairs = [(na, nb) for na in sorted(a.nodes) for nb in sorted(b.nodes)
                  if left.node_map[na] == right.node_map[nb]]
    node_id = {pair: i for i, pair in enumerate(node_pairs)}
    edge_pairs = [(ea, eb) for ea in sorted(a.edges) for eb in sorted(b.edges)
                  if left.edge_map[ea] == right.edge_map[eb]]

    labels = {i: a.nodes[na] for (na, nb), i in node_id.items()}
    new_edges: dict[int, tuple[int, int]] = {}
    for i, (ea, eb) in enumerate(edge_pairs):
        sa, ta = a.edges[ea]
        sb, tb = b.edges[eb]
        new_edges[i] = (node_id[(sa, sb)], node_id[(ta, tb)])

    q = TypedGraph(labels, new_edges)
    pr_a = GraphMorphism(q, a,
                         {i: na for (na, nb), i in node_id.items()},
                         {i: ea for i, (ea, eb) in enumerate(edge_pairs)})
    pr_b = GraphMorphism(q, b,
                         {i: nb for (na, nb), i in node_id.items()},
                         {i: eb for i, (ea, eb) in enumerate(edge_pairs)})
    return q, pr_a, pr_b


def pushout_complement(l: GraphMorphism, m: GraphMorphism
                       ) -> tuple[GraphMorphism, GraphMorphism]:
    """Given mono K -l-> L -m-> G, return (K -> D, D -> G).

    D is G minus the image of L outside l(K).  Raises DanglingCondition if
    removing those nodes would leave a dangling edge.
    """
    if l.target != m.source:
        raise ValueError("pushout complement: l and m not composable")
    if not l.is_mono() or not m.is_mono():
        raise ValueError("pushout complement requires mono l and m")

    kept_nodes = {m.node_map[l.node_map[k]] for k in l.source.nodes}
    deleted_nodes = {m.node_map[n] for n in l.target.nodes} - kept_nodes
    deleted_edges = {m.edge_map[e] for e in l.target.edges
                     if e not in set(l.edge_map.values())}

    g = m.target
    for e, (s, t) in g.edges.items():
        if e not in deleted_edges and (s in deleted_nodes or t in deleted_nodes):
            raise DanglingCondition(
                f"edge {e} outside the match is incident to a deleted node")

    d = TypedGraph({n: lab for n, lab in g.nodes.items() if n not in deleted_nodes},
                   {e: st for e, st in g.edges.items() if e not in deleted_edges})
    k_to_d = GraphMorphism(
        l.source, d,
        {k: m.node_map[l.node_map[k]] for k in l.source.nodes},
        {k: m.edge_map[l.edge_map[k]] for k in l.source.edges})
    d_to_g = GraphMorphism(d, g, {n: n for n in d.nodes}, {e: e for e in d.edges})
    return k_to_d, d_to_g


def _edge_groups(g: TypedGraph) -> dict[tuple[int, int], list[int]]:
    groups: dict[tuple[int, int], list[int]] = {}
    for e in sorted(g.edges):
        groups.setdefault(g.edges[e], []).append(e)
    return groups


def _canonical_edge_map(l: TypedGraph, g: TypedGraph,
                        node_map: dict[int, int]) -> Optional[dict[int, int]]:
    """Injective edge map for a node map, edges assigned in id order per
    endpoint pair; None if some parallel class doesn't fit."""
    g_groups = _edge_groups(g)
    used: dict[tuple[int, int], int] = {}
    edge_map: dict[int, int] = {}
    for e in sorted(l.edges):
        s, t = l.edges[e]
        key = (node_map[s], node_map[t])
        avail = g_groups.get(key, [])
        i = used.get(key, 0)
        if i >= len(avail):
            return None
        edge_map[e] = avail[i]
        used[key] = i + 1
    return edge_map


def _mono_node_maps(l: TypedGraph, g: TypedGraph,
                    pins: dict[int, int]) -> Iterator[dict[int, int]]:
    """All injective, label-preserving node maps L -> G extending pins for
    which every parallel edge class fits, in lexicographic nodeMap order."""
    for n, v in pins.items():
        if n not in l.nodes or v not in g.nodes:
            return
        if l.nodes[n] != g.nodes[v]:
            return
    if len(set(pins.values())) != len(pins):
        return

    l_nodes = sorted(l.nodes)
    l_groups = _edge_groups(l)
    g_groups = _edge_groups(g)

    def fits(assign: dict[int, int]) -> bool:
        # every fully-mapped parallel class of L must fit into G
        for (s, t), es in l_groups.items():
            if s in assign and t in assign:
                if len(es) > len(g_groups.get((assign[s], assign[t]), [])):
                    return False
        return True

    reserved = set(pins.values())

    def extend(i: int, assign: dict[int, int], used: set[int]):
        if i == len(l_nodes):
            yield dict(assign)
            return
        n = l_nodes[i]
        if n in pins:
            if fits(assign):
                yield from extend(i + 1, assign, used)
            return
        for v in sorted(g.nodes):
            if v in used or v in reserved or g.nodes[v] != l.nodes[n]:
                continue
            assign[n] = v
            used.add(v)
            if fits(assign):
                yield from extend(i + 1, assign, used)
            del assign[n]
            used.discard(v)

    yield from extend(0, dict(pins), set())


def find_monomorphisms(l: TypedGraph, g: TypedGraph,
                       pins: dict[int, int] | None = None
                       ) -> list[GraphMorphism]:
    """All injective label-preserving morphisms L -> G extending pins.

    One morphism per valid node map; among parallel edges the edge map is
    the canonical (id-ordered) assignment.  Deterministic order.
    """
    pins = pins or {}
    out = []
    for node_map in _mono_node_maps(l, g, pins):
        edge_map = _canonical_edge_map(l, g, node_map)
        if edge_map is not None:
            out.append(GraphMorphism(l, g, node_map, edge_map))
    return out


def find_isomorphism(a: TypedGraph, b: TypedGraph,
                     pins: dict[int, int] | None = None
                     ) -> Optional[GraphMorphism]:
    """First label-preserving iso A -> B extending pins, or None."""
    pins = pins or {}
    if a.node_count() != b.node_count() or a.edge_count() != b.edge_count():
        return None
    a_groups = _edge_groups(a)
    for node_map in _mono_node_maps(a, b, pins):
        # bijective on edges: parallel classes must match exactly
        ok = all(len(es) == len(b.edges_between(node_map[s], node_map[t]))
                 for (s, t), es in a_groups.items())
        if ok:
            edge_map = _canonical_edge_map(a, b, node_map)
            if edge_map is not None:
                return GraphMorphism(a, b, node_map, edge_map)
    return None


def _refine(g: TypedGraph, colors: dict[int, int]) -> dict[int, int]:
    """Stable refinement of a node coloring by neighbor color multisets."""
    while True:
        keys = {}
        for n in g.nodes:
            signature = []
            for e, (s, t) in g.edges.items():
                if s == n:
                    signature.append((0, colors[t]))
                if t == n:
                    signature.append((1, colors[s]))
            keys[n] = (colors[n], tuple(sorted(signature)))
        ranks = {k: i for i, k in enumerate(sorted(set(keys.values())))}
        new = {n: ranks[keys[n]] for n in g.nodes}
        if new == colors:
            return colors
        colors = new


def _label_key(label: NodeLabel):
    phase = (label.phase.num, label.phase.den) if label.phase else ()
    return (label.kind, phase)


def canonical_form(g: TypedGraph, pinned: list[int] | None = None) -> bytes:
    """Canonical byte string; equal iff graphs are isomorphic by an iso
    fixing pinned nodes positionally.  Refinement plus backtracking."""
    pinned = pinned or []
    pin_pos: dict[int, list[int]] = {}
    for i, n in enumerate(pinned):
        pin_pos.setdefault(n, []).append(i)

    init_keys = {n: (tuple(pin_pos.get(n, [])), _label_key(lab))
                 for n, lab in g.nodes.items()}
    ranks = {k: i for i, k in enumerate(sorted(set(init_keys.values())))}
    colors = {n: ranks[init_keys[n]] for n in g.nodes}

    def emit(order: dict[int, int]) -> bytes:
        labels = [None] * len(order)
        for n, i in order.items():
            labels[i] = _label_key(g.nodes[n])
        edges = sorted((order[s], order[t]) for s, t in g.edges.values())
        pins = [order[n] for n in pinned]
        return repr((labels, edges, pins)).encode()

    def search(colors: dict[int, int]) -> bytes:
        colors = _refine(g, colors)
        cells: dict[int, list[int]] = {}
        for n, c in colors.items():
            cells.setdefault(c, []).append(n)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = {n: c for n, c in colors.items()}
            return emit(order)
        best = None
        fresh = max(colors.values()) + 1
        for n in sorted(target):
            branch = dict(colors)
            branch[n] = fresh
            candidate = search(branch)
            if best is None or candidate < best:
                best = candidate
        return best

    if not g.nodes:
        return repr(([], [], [])).encode()
    return search(colors)
