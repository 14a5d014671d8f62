from __future__ import annotations

import random

from openzx.cospan import equal_up_to_iso, identity
from openzx.dpo import apply, find_rule_matches
from openzx.graph import TypedGraph
from openzx.labels import OPEN_LABEL, Phase, green
from openzx.laws import (
    check_companion_equations,
    check_companions,
    check_interchange,
    check_monoidal_unit_cells,
    check_monoidal_units,
    check_pushout_lemma,
    check_pushout_lemma_suite,
    check_snake,
    companion,
    conjoint,
    pushout_lemma_suite,
    run_laws,
    snake_composite,
)
from openzx.rules import basic_rules, generator
from openzx.spans import identity_cell, parallel_equal, vertical_compose, \
    reverse


class TestInterchange:
    def test_hundred_random_cases(self):
        report = check_interchange(seed=0, cases=100)
        assert report.ok, report.failures
        assert report.cases == 100

    def test_handmade_wire_case(self):
        # one concrete instance: contract each of two disjoint wire pairs
        from openzx.cospan import tensor
        from openzx.rules import WIRE
        w = generator(WIRE, 1, 1)
        wire_rule = basic_rules().concrete["wire"]
        left = w
        right = w
        _, alpha = apply(find_rule_matches(wire_rule, left)[0])
        beta = identity_cell(alpha.cod)
        alpha2 = identity_cell(right)
        _, beta2 = apply(find_rule_matches(wire_rule, right)[0])
        from openzx.spans import horizontal_compose
        lhs = vertical_compose(horizontal_compose(alpha, alpha2),
                               horizontal_compose(beta, beta2))
        rhs = horizontal_compose(vertical_compose(alpha, beta),
                                 vertical_compose(alpha2, beta2))
        assert parallel_equal(lhs, rhs)


class TestPushoutLemma:
    def test_suite_covers_enough_instances(self):
        suite = pushout_lemma_suite()
        assert len(suite) >= 20
        assert all(g.node_count() <= 4 for g in suite)

    def test_every_suite_graph(self):
        report = check_pushout_lemma_suite()
        assert report.ok, report.failures

    def test_single_node(self):
        assert check_pushout_lemma(TypedGraph.build([OPEN_LABEL]))

    def test_wire_graph(self):
        g = TypedGraph.build([OPEN_LABEL, OPEN_LABEL], [(0, 1)])
        assert check_pushout_lemma(g)

    def test_spider_with_leg(self):
        g = TypedGraph.build([green(Phase.of(1, 2)), OPEN_LABEL], [(1, 0)])
        assert check_pushout_lemma(g)


class TestCompanions:
    def test_identity_permutations(self):
        assert check_companion_equations(())
        assert check_companion_equations((0,))
        assert check_companion_equations((0, 1, 2))

    def test_swap(self):
        assert check_companion_equations((1, 0))

    def test_companion_of_identity_is_identity_cospan(self):
        assert equal_up_to_iso(companion((0, 1)), identity(2))
        assert equal_up_to_iso(conjoint((0, 1)), identity(2))

    def test_randomized(self):
        report = check_companions(seed=3, cases=25)
        assert report.ok, report.failures


class TestMonoidalUnits:
    def test_identity_pairs(self):
        assert check_monoidal_unit_cells((), ())
        assert check_monoidal_unit_cells((0,), (0, 1))

    def test_swaps(self):
        assert check_monoidal_unit_cells((1, 0), (2, 0, 1))

    def test_randomized(self):
        report = check_monoidal_units(seed=5, cases=25)
        assert report.ok, report.failures


class TestSnake:
    def test_composite_is_three_node_paths(self):
        s = snake_composite(1)
        assert s.body.node_count() == 3
        assert s.body.edge_count() == 2
        assert snake_composite(2).body.node_count() == 6

    def test_n1_and_n2(self):
        assert check_snake(1)
        assert check_snake(2)


class TestRunner:
    def test_run_all_green(self):
        reports = run_laws("all", seed=0, cases=20)
        assert all(r.ok for r in reports), \
            [(r.law, r.failures) for r in reports]
        names = {r.law for r in reports}
        assert names == {"interchange", "pushout-lemma", "companions",
                         "monoidal-units", "snake"}

    def test_single_law(self):
        (report,) = run_laws("pushout-lemma")
        assert report.law == "pushout-lemma"
        assert report.to_json()["ok"] is True
