from __future__ import annotations

import json

import pytest

from idealpowers import IntervalModule, betti_table, exhaustive_betti_oracle, from_text, integral_closure
from idealpowers.constructor import (
    Block,
    DepthSpec,
    construct,
    construct_and_verify,
    convolve,
    example_ideal,
    plan_blocks,
    whiskered_triangle,
)


def _piece_depths(I, upto):
    powers = [I ** 0, I]
    for _ in range(2, upto + 1):
        powers.append(powers[-1] * I)
    return [betti_table(IntervalModule(powers[n - 1], powers[n])).depth for n in range(1, upto + 1)]


def test_depth_spec_validation():
    with pytest.raises(ValueError):
        DepthSpec((1, 2), 0)
    with pytest.raises(ValueError):
        DepthSpec((2, 1), 2)
    with pytest.raises(ValueError):
        DepthSpec((-1,), 0)
    with pytest.raises(ValueError):
        DepthSpec((1,), 1, check_up_to=0)


@pytest.mark.parametrize("prefix, tail, t", [((), 0, 0), ((1,), 1, 0), ((1,), 0, 2), ((2, 1), 1, 2),
                                             ((3, 1), 0, 3), ((2, 2, 1), 1, 3)])
def test_stability_point(prefix, tail, t):
    assert DepthSpec(prefix, tail).t == t


def test_parse():
    s = DepthSpec.parse("2,1", tail=1, check_up_to=4)
    assert s.values(5) == [2, 1, 1, 1, 1]
    assert DepthSpec.parse("3, 1, 0").tail == 0
    with pytest.raises(ValueError):
        DepthSpec.parse("")


def test_convolution_of_unit_and_base():
    unit, base = Block("unit").depth, Block("base").depth
    assert [convolve([base, unit], n) for n in (1, 2, 3)] == [1, 1, 1]
    step = Block("step", 2, 2).depth
    assert [convolve([base, step], n) for n in (1, 2, 3)] == [2, 0, 0]


def test_plan_uses_jump_decomposition():
    blocks, notes = plan_blocks(DepthSpec((3, 1), 0))
    assert [b.label() for b in blocks] == ["base", "step(2,2)", "step(1,2)"]
    assert notes == []
    blocks, _ = plan_blocks(DepthSpec((2, 1), 1))
    assert [b.label() for b in blocks] == ["base", "step(1,2)", "unit"]


def test_unrealizable_spec_is_reported():
    with pytest.raises(NotImplementedError):
        plan_blocks(DepthSpec((5, 0), 0))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_whiskered_triangle_piece_depths(k):
    assert _piece_depths(whiskered_triangle(k), 3) == [k, 0, 0]


def test_whiskered_triangle_bounds():
    with pytest.raises(ValueError):
        whiskered_triangle(4)


def test_single_whisker_is_not_enough():
    I = from_text(whiskered_triangle(1).ring, "(g1*g2, g2*g3, g1*g3)")
    assert _piece_depths(I, 2) == [1, 0]


@pytest.mark.parametrize("t, expected", [(1, [0, 0]), (2, [1, 0])])
def test_example_ideal_pattern(t, expected):
    I = example_ideal(t)
    assert integral_closure(I) == I
    assert _piece_depths(I, 2) == expected


def test_example_ideal_first_piece_matches_oracle():
    I = example_ideal(1)
    M = IntervalModule(I ** 0, I)
    assert betti_table(M) == exhaustive_betti_oracle(M)


@pytest.mark.parametrize("prefix, tail, nvars", [((), 0, 1), ((1,), 1, 3), ((1,), 0, 4)])
def test_construct_and_verify_small(prefix, tail, nvars):
    report = construct_and_verify(DepthSpec(prefix, tail, check_up_to=3))
    assert report.passed, report.to_dict()
    assert report.ring.nvars == nvars
    assert report.witness is None


def test_constant_one_uses_two_generators():
    ring, Q, _, _ = construct(DepthSpec((1,), 1))
    assert ring.variables == ("x1", "y1", "y2")
    assert Q == from_text(ring, "(x1, y1)")


def test_construction_is_deterministic_with_fresh_names():
    a = construct(DepthSpec((2, 1), 1))
    b = construct(DepthSpec((2, 1), 1))
    assert a[1] == b[1]
    assert len(set(a[0].variables)) == a[0].nvars


def test_report_json():
    report = construct_and_verify(DepthSpec((), 0, check_up_to=2))
    d = json.loads(report.to_json())
    assert d["verdict"] == "pass" and d["depth_quotient"] == [0, 0] and d["ideal"] == "(x1)"
