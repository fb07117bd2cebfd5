from __future__ import annotations

import json

import pytest

from idealpowers import RingContext, from_text
from idealpowers.powers import (
    Detection,
    detect_linearity,
    detect_stabilization,
    power_profile,
    star_constants,
)


@pytest.mark.parametrize("values, w, expected", [
    ((0, 1, 1, 1), 2, Detection(2, True)),
    ((2, 1, 0), 2, Detection(3, False)),
    ((1, 1, 1, 1), 3, Detection(1, True)),
    ((3, 2, 2), 3, Detection(2, False)),
])
def test_detect_stabilization(values, w, expected):
    assert detect_stabilization(values, w) == expected


@pytest.mark.parametrize("regs, w, d, e, lin, confident", [
    ((4, 6, 9, 12, 15), 2, 3, 0, 2, True),
    ((2, 4), 2, 2, 0, 1, False),
    ((3, 6, 9, 12, 15), 3, 3, 0, 1, True),
    ((5, 5, 6, 7), 3, 1, 3, 2, False),
])
def test_detect_linearity(regs, w, d, e, lin, confident):
    L = detect_linearity(regs, w)
    assert (L.slope, L.intercept, L.index, L.confident) == (d, e, lin, confident)


def test_window_must_be_at_least_two():
    with pytest.raises(ValueError):
        detect_stabilization((1, 1), 1)
    with pytest.raises(ValueError):
        detect_linearity((1, 2), 1)


def test_principal_ideal_profile():
    R = RingContext(("x", "y"))
    P = power_profile(from_text(R, "(x)"), max_n=5)
    assert P.depths() == [1] * 5
    assert P.regs() == [1, 2, 3, 4, 5]
    assert (P.s, P.lin, P.d, P.e) == (1, 1, 1, 0)
    assert P.stability.confident and P.linearity.confident


def test_maximal_ideal_square_has_linear_powers():
    R = RingContext(("x", "y"))
    P = power_profile(from_text(R, "(x, y)") ** 2, max_n=5)
    assert P.regs() == [2, 4, 6, 8, 10]
    assert P.depths() == [0] * 5


def test_herzog_hibi_profile():
    R = RingContext(("x", "y", "z"))
    P = power_profile(from_text(R, "(x^4, x^3*y, x*y^3, y^4, x^2*y^2*z)"), max_n=2)
    assert P.depths() == [0, 1]
    assert P.row(2).depth_graded_piece == 1


def test_cubed_linear_ideal_is_the_maximal_ideal_cubed():
    R = RingContext(("x1", "x2"))
    I = from_text(R, "(x1^3, x1^2*x2, x1*x2^2, x2^3)")
    assert I == from_text(R, "(x1, x2)") ** 3
    P = power_profile(I, max_n=4)
    assert P.regs() == [3, 6, 9, 12]


def test_profile_invariants_hold_on_window():
    R = RingContext(("x", "y", "z"))
    P = power_profile(from_text(R, "(x^2, x*y, y*z^2)"), max_n=4)
    assert min(P.depths()) == min(P.piece_depths())
    for c in (1, 2, 3):
        for t in range(1, P.computed_n + 1):
            lhs = max(P.row(n).reg_graded_piece - c * n for n in range(1, t + 1))
            rhs = max(P.row(n).reg_power - c * n for n in range(1, t + 1)) - 1
            assert lhs == rhs


def test_threads_do_not_change_profile():
    R = RingContext(("x", "y", "z"))
    I = from_text(R, "(x*y, y*z, x*z)")
    assert power_profile(I, 4).to_json() == power_profile(I, 4, threads=4).to_json()


def test_star_constants():
    A, B = RingContext(("x", "y")), RingContext(("u", "v"))
    PI = power_profile(from_text(A, "(x, y)") ** 2, 5)
    PJ = power_profile(from_text(B, "(u, v)") ** 3, 5)
    assert star_constants(PI, PJ) == (-1, 1, False)
    assert star_constants(PJ, PI) == (-1, 1, True)
    X, Y = RingContext(("x",)), RingContext(("y",))
    assert star_constants(power_profile(from_text(X, "(x)"), 4),
                          power_profile(from_text(Y, "(y)"), 4)) == (0, 0, False)


def test_star_constants_refuses_unconfident_profiles():
    R = RingContext(("x", "y"))
    P = power_profile(from_text(R, "(x)"), 2)
    with pytest.raises(ValueError):
        star_constants(P, P)


def test_invalid_profile_requests():
    R = RingContext(("x", "y"))
    with pytest.raises(ValueError):
        power_profile(from_text(R, "(1)"))
    with pytest.raises(ValueError):
        power_profile(from_text(R, "(x)"), max_n=1)


def test_serialization():
    R = RingContext(("x", "y"))
    P = power_profile(from_text(R, "(x, y)") ** 2, 3)
    assert P.to_csv().split("\n")[0] == "n,depth_quotient,reg_power,depth_graded_piece,reg_graded_piece"
    assert P.to_csv().split("\n")[1] == "1,0,2,0,1"
    d = json.loads(P.to_json())
    assert d["linearity"] == {"d": 2, "e": 0, "lin": 1, "confident": False}
    assert d["max_n"] == 3 and not d["truncated"]
