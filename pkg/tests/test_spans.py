from __future__ import annotations

import pytest

from openzx.cospan import compose, equal_up_to_iso, identity, tensor
from openzx.dpo import apply, find_rule_matches
from openzx.labels import Phase, ZERO
from openzx.graph import GraphMorphism
from openzx.rules import WIRE, basic_rules, build_spider_rule, generator
from openzx.spans import (
    MiddleMismatch,
    TwoCell,
    horizontal_compose,
    identity_cell,
    parallel_equal,
    reverse,
    tensor_cells,
    vertical_compose,
)


def fusion_cell(a: Phase, b: Phase):
    host = compose(generator("green", 1, 1, a), generator("green", 1, 1, b))
    rule = build_spider_rule("green", 1, 1, a, b)
    _, witness = apply(find_rule_matches(rule, host)[0])
    return witness


def wire_step(host):
    rule = basic_rules().concrete["wire"]
    _, witness = apply(find_rule_matches(rule, host)[0])
    return witness


class TestIdentityAndReverse:
    def test_identity_cell_is_self_parallel(self):
        f = generator("green", 2, 1, Phase.of(1, 2))
        cell = identity_cell(f)
        assert parallel_equal(cell, cell)
        assert equal_up_to_iso(cell.dom, cell.cod)

    def test_reverse_swaps_feet(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        r = reverse(a)
        assert equal_up_to_iso(r.dom, a.cod)
        assert equal_up_to_iso(r.cod, a.dom)
        assert parallel_equal(reverse(r), a)


class TestVertical:
    def test_two_wire_steps_paste(self):
        path3 = compose(generator(WIRE, 1, 1), generator(WIRE, 1, 1))
        first = wire_step(path3)
        second = wire_step(first.cod)
        pasted = vertical_compose(first, second)
        assert equal_up_to_iso(pasted.dom, path3)
        assert equal_up_to_iso(pasted.cod, identity(1))

    def test_groupoid_inverse(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        loop = vertical_compose(a, reverse(a))
        assert parallel_equal(loop, identity_cell(a.dom))
        loop2 = vertical_compose(reverse(a), a)
        assert parallel_equal(loop2, identity_cell(a.cod))

    def test_middle_mismatch(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        b = fusion_cell(Phase.of(1, 5), Phase.of(1, 6))
        with pytest.raises(MiddleMismatch):
            vertical_compose(a, b)

    def test_identity_unit(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        left = vertical_compose(identity_cell(a.dom), a)
        right = vertical_compose(a, identity_cell(a.cod))
        assert parallel_equal(left, a)
        assert parallel_equal(right, a)


class TestHorizontalAndTensor:
    def test_horizontal_feet_compose(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        b = identity_cell(generator("green", 1, 2, ZERO))
        h = horizontal_compose(a, b)
        assert equal_up_to_iso(h.dom, compose(a.dom, b.dom))
        assert equal_up_to_iso(h.cod, compose(a.cod, b.cod))

    def test_tensor_feet(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        b = identity_cell(identity(2))
        t = tensor_cells(a, b)
        assert equal_up_to_iso(t.dom, tensor(a.dom, b.dom))
        assert equal_up_to_iso(t.cod, tensor(a.cod, b.cod))

    def test_whiskered_cell_still_validates(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        t = tensor_cells(identity_cell(identity(1)), a)
        t.validate()
        h = horizontal_compose(identity_cell(identity(1)), a)
        h.validate()


class TestValidation:
    def test_leg_must_fix_interface_positions(self):
        f = identity(2)
        ident = identity_cell(f)
        swapped = GraphMorphism(f.body, f.body, {0: 1, 1: 0}, {})
        with pytest.raises(ValueError):
            TwoCell(f, f, f, ident.leg_down, swapped)

    def test_json_shape(self):
        a = fusion_cell(Phase.of(1, 3), Phase.of(1, 4))
        obj = a.to_json()
        assert set(obj) == {"dom", "cod", "apex", "legDown", "legUp"}
