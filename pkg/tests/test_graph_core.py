from __future__ import annotations

import random

import pytest

from openzx.graph import (
    DanglingCondition,
    GraphMorphism,
    TypedGraph,
    canonical_form,
    find_isomorphism,
    find_monomorphisms,
    pullback,
    pushout,
    pushout_complement,
)
from openzx.labels import DIAMOND_LABEL, OPEN_LABEL, Phase, green

from oracles import (
    all_node_maps,
    check_pullback_universal,
    check_pushout_universal,
    morphisms_equal,
)


def open_graph(n, edges=()):
    return TypedGraph.build([OPEN_LABEL] * n, edges)


WIRE = open_graph(2, [(0, 1)])
PATH3 = open_graph(3, [(0, 1), (1, 2)])
SINGLE = open_graph(1)


def small_apexes(*extra):
    family = [TypedGraph.empty(), SINGLE, WIRE, PATH3, open_graph(2)]
    family.extend(extra)
    return family


class TestPushout:
    def test_identity_legs(self):
        l = GraphMorphism.identity(SINGLE)
        p, in_a, in_b = pushout(l, l)
        assert p.node_count() == 1 and p.edge_count() == 0
        assert morphisms_equal(in_a, in_b)

    def test_empty_apex_is_coproduct(self):
        empty = TypedGraph.empty()
        to_wire = GraphMorphism(empty, WIRE, {}, {})
        to_single = GraphMorphism(empty, SINGLE, {}, {})
        p, _, _ = pushout(to_wire, to_single)
        assert p.node_count() == 3 and p.edge_count() == 1

    def test_glue_wires_into_path(self):
        # K = one node, glued to the right end of one wire and the left
        # end of another: expect the 3-node path.
        left = GraphMorphism(SINGLE, WIRE, {0: 1}, {})
        right = GraphMorphism(SINGLE, WIRE, {0: 0}, {})
        p, in_a, in_b = pushout(left, right)
        assert p.node_count() == 3 and p.edge_count() == 2
        assert find_isomorphism(p, PATH3) is not None
        check_pushout_universal(left, right, p, in_a, in_b,
                                small_apexes(p))

    def test_universal_property_with_merging(self):
        # glue both endpoints of a wire to a single node: a self-loop
        two = open_graph(2)
        left = GraphMorphism(two, WIRE, {0: 0, 1: 1}, {})
        right = GraphMorphism(two, SINGLE, {0: 0, 1: 0}, {})
        p, in_a, in_b = pushout(left, right)
        assert p.node_count() == 1 and p.edge_count() == 1
        loop = p
        check_pushout_universal(left, right, p, in_a, in_b,
                                small_apexes(loop))


class TestPullback:
    def test_identity_legs(self):
        ident = GraphMorphism.identity(PATH3)
        q, pr_a, pr_b = pullback(ident, ident)
        assert find_isomorphism(q, PATH3) is not None

    def test_disjoint_images(self):
        left = GraphMorphism(SINGLE, PATH3, {0: 0}, {})
        right = GraphMorphism(SINGLE, PATH3, {0: 2}, {})
        q, _, _ = pullback(left, right)
        assert q.node_count() == 0

    def test_two_monos_into_wire(self):
        left = GraphMorphism(SINGLE, WIRE, {0: 0}, {})
        right = GraphMorphism(SINGLE, WIRE, {0: 1}, {})
        q, _, _ = pullback(left, right)
        assert q.node_count() == 0

    def test_universal_property(self):
        left = GraphMorphism(WIRE, PATH3, {0: 0, 1: 1}, {0: 0})
        right = GraphMorphism(WIRE, PATH3, {0: 1, 1: 2}, {0: 1})
        q, pr_a, pr_b = pullback(left, right)
        check_pullback_universal(left, right, q, pr_a, pr_b,
                                 small_apexes())


class TestPushoutComplement:
    def test_identity_l_gives_g(self):
        l = GraphMorphism.identity(WIRE)
        m = GraphMorphism(WIRE, PATH3, {0: 0, 1: 1}, {0: 0})
        k_to_d, d_to_g = pushout_complement(l, m)
        assert d_to_g.source.node_count() == 3

    def test_delete_isolated_diamond(self):
        diamond = TypedGraph.build([DIAMOND_LABEL])
        host = TypedGraph.build([DIAMOND_LABEL, OPEN_LABEL, OPEN_LABEL],
                                [(1, 2)])
        l = GraphMorphism(TypedGraph.empty(), diamond, {}, {})
        m = GraphMorphism(diamond, host, {0: 0}, {})
        k_to_d, d_to_g = pushout_complement(l, m)
        d = d_to_g.source
        assert find_isomorphism(d, WIRE) is not None
        # pushout along K reproduces the host
        p, _, _ = pushout(l, k_to_d)
        assert find_isomorphism(p, host) is not None

    def test_dangling_condition(self):
        spider = TypedGraph.build([green(Phase.of(0))])
        host = TypedGraph.build([green(Phase.of(0)), OPEN_LABEL, OPEN_LABEL],
                                [(1, 0), (0, 2)])
        l = GraphMorphism(TypedGraph.empty(), spider, {}, {})
        m = GraphMorphism(spider, host, {0: 0}, {})
        with pytest.raises(DanglingCondition):
            pushout_complement(l, m)

    def test_restore_round_trip(self):
        # delete the middle of a path (keeping its boundary), then push out
        k = open_graph(2)
        l = GraphMorphism(k, PATH3, {0: 0, 1: 2}, {})
        host = open_graph(4, [(0, 1), (1, 2), (2, 3)])
        m = GraphMorphism(PATH3, host, {0: 1, 1: 2, 2: 3}, {0: 1, 1: 2})
        k_to_d, d_to_g = pushout_complement(l, m)
        p, _, _ = pushout(l, k_to_d)
        assert find_isomorphism(p, host) is not None


class TestIsoAndMono:
    def test_identity_found(self):
        iso = find_isomorphism(PATH3, PATH3)
        assert iso is not None and iso.is_iso()

    def test_phase_mismatch(self):
        a = TypedGraph.build([green(Phase.of(1, 2))])
        b = TypedGraph.build([green(Phase.of(1, 3))])
        assert find_isomorphism(a, b) is None

    def test_pins_force_orientation(self):
        renamed = open_graph(3, [(2, 1), (1, 0)])
        assert find_isomorphism(PATH3, renamed, {0: 2, 2: 0}) is not None
        # crossing the endpoint pins is impossible for the directed path
        assert find_isomorphism(PATH3, renamed, {0: 0, 2: 2}) is None

    def test_count_single_node_matches(self):
        monos = find_monomorphisms(SINGLE, PATH3)
        assert len(monos) == 3

    def test_no_green_in_open_host(self):
        spider = TypedGraph.build([green(Phase.of(0))])
        assert find_monomorphisms(spider, PATH3) == []

    def test_wire_into_path(self):
        monos = find_monomorphisms(WIRE, PATH3)
        assert len(monos) == 2
        assert [m.node_map for m in monos] == [{0: 0, 1: 1}, {0: 1, 1: 2}]

    def test_monos_match_brute_force(self):
        hosts = [PATH3, open_graph(4, [(0, 1), (1, 2), (1, 3)]),
                 open_graph(3, [(0, 1), (0, 1), (1, 2)])]
        patterns = [SINGLE, WIRE, open_graph(2, [(0, 1), (0, 1)])]
        for l in patterns:
            for g in hosts:
                expected = set()
                for nm in all_node_maps(l, g):
                    if len(set(nm.values())) != len(nm):
                        continue
                    # injective edge fit per parallel class
                    ok = True
                    groups = {}
                    for e, (s, t) in l.edges.items():
                        groups.setdefault((nm[s], nm[t]), []).append(e)
                    for (s, t), es in groups.items():
                        if len(es) > len(g.edges_between(s, t)):
                            ok = False
                    if ok:
                        expected.add(tuple(sorted(nm.items())))
                got = {tuple(sorted(m.node_map.items()))
                       for m in find_monomorphisms(l, g)}
                assert got == expected


class TestCanonicalForm:
    def test_equal_for_identical(self):
        assert canonical_form(PATH3, [0, 2]) == canonical_form(PATH3, [0, 2])

    def test_invariant_under_renaming(self):
        renamed = open_graph(3, [(2, 1), (1, 0)])
        assert canonical_form(PATH3, [0, 2]) == canonical_form(renamed, [2, 0])

    def test_pins_distinguish_asymmetric(self):
        # path with a green endpoint decoration breaks the symmetry
        g = TypedGraph.build([OPEN_LABEL, OPEN_LABEL, green(Phase.of(0))],
                             [(0, 1), (1, 2)])
        assert canonical_form(g, [0, 1]) != canonical_form(g, [1, 0])

    def test_matches_isomorphism_search(self):
        rng = random.Random(7)
        labels = [OPEN_LABEL, green(Phase.of(0)), green(Phase.of(1, 2))]
        graphs = []
        for _ in range(30):
            n = rng.randint(0, 6)
            labs = [rng.choice(labels) for _ in range(n)]
            opens = [i for i, l in enumerate(labs) if l.is_open()]
            edges = []
            for _ in range(rng.randint(0, 6)):
                if not opens:
                    break
                a = rng.choice(opens)
                b = rng.randrange(n)
                if rng.random() < 0.5:
                    edges.append((a, b))
                else:
                    edges.append((b, a))
            graphs.append(TypedGraph.build(labs, edges))
        for a in graphs:
            for b in graphs:
                same = canonical_form(a) == canonical_form(b)
                iso = find_isomorphism(a, b) is not None
                assert same == iso
