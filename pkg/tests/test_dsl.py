from __future__ import annotations

import pytest

from idealpowers import RingContext, from_text, integral_closure, intersect, to_text
from idealpowers.dsl import Command, DSLError, Env, IdealDef, RingDecl, parse, tokenize, unify
from idealpowers.monomial import RingMismatchError


def _bind(src):
    env = Env()
    for st in parse(src).statements:
        if isinstance(st, RingDecl):
            env.declare_ring(st.name, st.variables)
        elif isinstance(st, IdealDef):
            env.ideals[st.name] = env.eval(st.expr)
    return env


def test_basic_script_parses():
    s = parse("ring A=[x,y]; ideal I=(x^2,x*y); depth A/I;")
    assert [type(st) for st in s.statements] == [RingDecl, IdealDef, Command]
    cmd = s.statements[2]
    assert cmd.kind == "depth" and cmd.target.source == "A/I"


def test_empty_script():
    assert parse("").statements == []
    assert parse("# only a comment\n").statements == []


@pytest.mark.parametrize("src, line, col", [
    ("ideal I=(x^2;", 1, 13),
    ("ring A=[x,y];\nideal I = (x, q);", 2, 15),
    ("ring A=[x,y]; ideal I=intersect((x));", 1, 23),
    ("ring A=[x,y]; depth", 1, 20),
    ("ring A=[x,x];", 1, 1),
])
def test_error_positions(src, line, col):
    with pytest.raises(DSLError) as exc:
        parse(src)
    assert (exc.value.line, exc.value.col) == (line, col)
    assert str(exc.value).startswith(f"line {line}, column {col}:")


def test_tokenizer_tracks_lines():
    toks = tokenize("ring A\n  = [x];")
    eq = next(t for t in toks if t.text == "=")
    assert (eq.line, eq.col) == (2, 3)


def test_canonical_round_trip():
    text = "(x1^4, x1^3*x2, x1*x2^3, x2^4, x1^2*x2^2*x3^5)"
    env = _bind(f"ring A=[x1,x2,x3]; ideal I={text};")
    I = env.ideals["I"]
    assert I == from_text(I.ring, text)
    again = _bind(f"ring A=[x1,x2,x3]; ideal I={to_text(I)};").ideals["I"]
    assert again == I


def test_operators_and_functions():
    env = _bind("ring A=[x,y,z]; ideal I=(x^2,x*y); ideal J=(y, z)^2 * x + intersect(I, (y));"
                "ideal K = closure((x^2, y^2)); ideal C = colon(I, (x));")
    R = RingContext(("x", "y", "z"))
    I = from_text(R, "(x^2, x*y)")
    assert env.ideals["J"] == from_text(R, "(x*y^2, x*y*z, x*z^2)") + intersect(I, from_text(R, "(y)"))
    assert env.ideals["K"] == integral_closure(from_text(R, "(x^2, y^2)"))
    assert env.ideals["C"] == from_text(R, "(x, y)")


def test_bare_variables_and_constants():
    env = _bind("ring A=[x,y]; ideal I = x + y; ideal U = 1; ideal Z = 0;")
    assert env.ideals["I"] == from_text(env.ideals["I"].ring, "(x, y)")
    assert env.ideals["U"].is_unit and env.ideals["Z"].is_zero


def test_disjoint_rings_join():
    env = _bind("ring A=[x,y]; ring B=[u]; ideal I=(x*y); ideal J=(u^2); ideal S = I + J;")
    assert env.ideals["S"].ring.variables == ("x", "y", "u")


def test_partial_overlap_is_rejected():
    A, B = RingContext(("x", "y")), RingContext(("y", "z"))
    with pytest.raises(RingMismatchError):
        unify(from_text(A, "(x)"), from_text(B, "(z)"))


def test_subset_ring_is_extended():
    A, B = RingContext(("x",)), RingContext(("x", "y"))
    I, J = unify(from_text(A, "(x)"), from_text(B, "(y)"))
    assert I.ring == J.ring == B


def test_commands_with_options():
    s = parse("ring A=[x,y]; ideal I=(x); profile I max=4; verify T-EQUALITY-D I=(x), J=(y) n=2;"
              "verify suite count=3 claims=T-FIRSTBOUND-D; construct [2,1] tail=1 check=4;")
    kinds = [st.kind for st in s.statements if isinstance(st, Command)]
    assert kinds == ["profile", "verify", "verify", "construct"]
    assert dict(s.statements[3].options)["claim"] == "T-EQUALITY-D"
    assert dict(s.statements[4].options)["claims"] == "T-FIRSTBOUND-D"
    assert dict(s.statements[5].options) == {"f": (2, 1), "tail": 1, "check": 4}
