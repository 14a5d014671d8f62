from __future__ import annotations

import pytest

from openzx.cospan import (
    ArityMismatch,
    coevaluation,
    compose,
    equal_up_to_iso,
    evaluation,
    identity,
    tensor,
)
from openzx.dpo import apply_wire_expansion
from openzx.labels import Phase, ZERO
from openzx.prover import Budget, Derivation, normalize, prove_equal
from openzx.rules import WIRE, generator
from openzx.semantics import evaluate, proportional


def wires(n):
    strands = identity(0)
    for _ in range(n):
        strands = tensor(strands, generator(WIRE, 1, 1))
    return strands


def snake(n):
    """Bent-wire composite built from wire strands; contracts to identity."""
    return compose(tensor(wires(n), coevaluation(n)),
                   tensor(evaluation(n), wires(n)))


SMALL = Budget(max_steps=6, max_states=2000, max_nodes=24)


class TestProveEqual:
    def test_syntactic_equality_zero_steps(self):
        f = generator("green", 1, 2, Phase.of(1, 2))
        d = prove_equal(f, f, SMALL)
        assert d.found and d.steps == []
        assert equal_up_to_iso(d.witness.dom, f)
        assert equal_up_to_iso(d.witness.cod, f)

    def test_snake_two_wire_steps(self):
        d = prove_equal(snake(1), identity(1), SMALL)
        assert d.found
        assert len(d.steps) == 2
        assert all(s.rule == "wire" for s in d.steps)
        d.witness.validate()
        assert equal_up_to_iso(d.witness.dom, snake(1))
        assert equal_up_to_iso(d.witness.cod, identity(1))

    def test_snake_n2(self):
        d = prove_equal(snake(2), identity(2),
                        Budget(max_steps=8, max_states=10_000, max_nodes=24))
        assert d.found
        assert len(d.steps) <= 8

    def test_spider_fusion_one_step(self):
        f = compose(generator("green", 1, 1, Phase.of(1, 3)),
                    generator("green", 1, 1, Phase.of(1, 4)))
        g = generator("green", 1, 1, Phase.of(7, 12))
        d = prove_equal(f, g, SMALL)
        assert d.found
        assert len(d.steps) == 1
        assert d.steps[0].rule.startswith("spider")

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            prove_equal(identity(1), identity(2), SMALL)

    def test_not_found_on_distinct_phases(self):
        f = generator("green", 1, 1, Phase.of(1, 3))
        g = generator("green", 1, 1, Phase.of(1, 4))
        d = prove_equal(f, g, Budget(max_steps=3, max_states=300,
                                     max_nodes=12))
        assert not d.found
        assert d.witness is None

    def test_found_pairs_preserve_semantics(self):
        pairs = [
            (snake(1), identity(1)),
            (compose(generator("green", 1, 1, Phase.of(1, 3)),
                     generator("green", 1, 1, Phase.of(1, 4))),
             generator("green", 1, 1, Phase.of(7, 12))),
            (generator("green", 1, 1, ZERO), identity(1)),
        ]
        for f, g in pairs:
            d = prove_equal(f, g, SMALL)
            assert d.found
            assert proportional(evaluate(f), evaluate(g))
            d.witness.validate()

    def test_transitivity_within_budget(self):
        a = compose(generator("green", 1, 1, Phase.of(1, 3)),
                    generator("green", 1, 1, Phase.of(1, 4)))
        b = generator("green", 1, 1, Phase.of(7, 12))
        c = compose(generator("green", 1, 1, Phase.of(7, 12)),
                    generator("green", 1, 1, ZERO))
        assert prove_equal(a, b, SMALL).found
        assert prove_equal(b, c, SMALL).found
        assert prove_equal(a, c, SMALL).found

    def test_derivation_json(self):
        d = prove_equal(snake(1), identity(1), SMALL)
        obj = d.to_json()
        assert obj["found"] is True
        assert len(obj["steps"]) == 2
        assert obj["witness"] is not None


class TestNormalize:
    def test_expanded_wire_contracts(self):
        expanded, _ = apply_wire_expansion(identity(1), 0)
        assert equal_up_to_iso(normalize(expanded), identity(1))

    def test_three_spider_chain(self):
        phases = [Phase.of(1, 6), Phase.of(1, 3), Phase.of(1, 2)]
        chain = generator("green", 1, 1, phases[0])
        for p in phases[1:]:
            chain = compose(chain, generator("green", 1, 1, p))
        got = normalize(chain)
        assert equal_up_to_iso(got, generator("green", 1, 1, Phase.of(-1, 1)))

    def test_idempotent(self):
        expanded, _ = apply_wire_expansion(
            generator("green", 1, 2, Phase.of(1, 2)), 2)
        once = normalize(expanded)
        assert equal_up_to_iso(normalize(once), once)

    def test_never_grows(self):
        f = generator("red", 2, 2, Phase.of(1, 4))
        got = normalize(f)
        assert got.body.node_count() <= f.body.node_count()

    def test_preserves_semantics(self):
        expanded, _ = apply_wire_expansion(
            generator("green", 1, 2, Phase.of(1, 3)), 1)
        assert proportional(evaluate(normalize(expanded)), evaluate(expanded))
