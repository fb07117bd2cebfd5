"""A small language for monomial ideals.

    ring A = [x, y, z];
    ideal I = (x^2, x*y) + z * intersect((x), (y))^2;
    depth A/I;          # depth of the quotient
    depth ideal(I);     # depth of I as a module
    reg I/I^2;          # interval module I/I^2
    betti I;            # quotient by I (same as A/I)
    profile I max=4;
    verify L1 I=(x^2), J=(u);
    verify suite count=10 n=2;
    construct [2,1] tail=1 check=4;

A bare variable is the principal ideal it generates; a parenthesised list is
the sum of its entries; 0 and 1 are the zero and unit ideals. Ideals from
rings with disjoint variables are combined in the joined ring; an ideal whose
variables are a subset of the other operand's ring is extended into it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .monomial import (
    MonomialIdeal,
    RingContext,
    RingMismatchError,
    colon,
    extend,
    integral_closure,
    intersect,
    join_rings,
)


class DSLError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


# ---------------------------------------------------------------- tokens

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^/(),;=\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, op, eof
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise DSLError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# ---------------------------------------------------------------- syntax tree

@dataclass(frozen=True)
class Node:
    line: int
    col: int


@dataclass(frozen=True)
class Name(Node):
    ident: str


@dataclass(frozen=True)
class Const(Node):
    value: int


@dataclass(frozen=True)
class Seq(Node):
    items: tuple


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class PowOp(Node):
    base: Node
    exp: int


@dataclass(frozen=True)
class Call(Node):
    fn: str
    args: tuple


@dataclass(frozen=True)
class RingDecl(Node):
    name: str
    variables: tuple[str, ...]


@dataclass(frozen=True)
class IdealDef(Node):
    name: str
    expr: Node


@dataclass(frozen=True)
class Target(Node):
    """What a betti/depth/reg/dim command acts on."""
    form: str  # "quotient", "ideal", "interval"
    top: Node | None
    bot: Node | None
    source: str


@dataclass(frozen=True)
class Command(Node):
    kind: str
    target: Target | None = None
    options: tuple = ()
    source: str = ""


@dataclass
class Script:
    statements: list = field(default_factory=list)


_FUNCS = {"intersect": 2, "colon": 2, "closure": 1}
_SCALAR = ("betti", "depth", "reg", "dim")
_KEYWORDS = {"ring", "ideal", "profile", "verify", "construct", *_SCALAR}


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.lines = src.split("\n")
        self.toks = tokenize(src)
        self.i = 0

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise DSLError(msg, tok.line, tok.col)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> Token | None:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            shown = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        return t

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            shown = self.tok.text or "end of input"
            self.error(f"expected {what}, found {shown!r}")
        return self.next()

    def span(self, start: Token) -> str:
        """Source text from start up to (not including) the current token."""
        end = self.toks[self.i]
        lines = self.lines
        if start.line == end.line:
            return lines[start.line - 1][start.col - 1:end.col - 1].strip()
        parts = [lines[start.line - 1][start.col - 1:]]
        parts += lines[start.line:end.line - 1]
        parts.append(lines[end.line - 1][:end.col - 1])
        return " ".join(p.strip() for p in parts).strip()

    # grammar
    def script(self) -> Script:
        s = Script()
        while self.tok.kind != "eof":
            if self.accept(";"):
                continue
            s.statements.append(self.statement())
            self.expect(";")
        return s

    def statement(self):
        t = self.tok
        if t.kind != "name" or t.text not in _KEYWORDS:
            self.error(f"expected a statement, found {t.text or 'end of input'!r}")
        self.next()
        if t.text == "ring":
            name = self.expect_kind("name", "a ring name").text
            self.expect("=")
            self.expect("[")
            names = []
            if not self.accept("]"):
                while True:
                    names.append(self.expect_kind("name", "a variable name").text)
                    if self.accept("]"):
                        break
                    self.expect(",")
            return RingDecl(t.line, t.col, name, tuple(names))
        if t.text == "ideal" and self.toks[self.i + 1].text == "=":
            name = self.expect_kind("name", "an ideal name").text
            self.expect("=")
            return IdealDef(t.line, t.col, name, self.expr())
        if t.text in _SCALAR or t.text == "ideal":
            if t.text == "ideal":
                self.error("'ideal' must be followed by '<name> ='", t)
            start = self.tok
            target = self.target()
            return Command(t.line, t.col, t.text, target, (), self.span(start))
        if t.text == "profile":
            start = self.tok
            e = self.expr()
            src = self.span(start)
            opts = self.options()
            return Command(t.line, t.col, "profile", Target(start.line, start.col, "quotient", None, e, src),
                           opts, src)
        if t.text == "verify":
            start = self.tok
            cid = self.claim_id()
            opts = self.options()
            return Command(t.line, t.col, "verify", None, (("claim", cid),) + opts, self.span(start))
        # construct
        start = self.tok
        opts = []
        if self.tok.text == "[":
            opts.append(("f", self.int_list()))
        opts += list(self.options())
        return Command(t.line, t.col, "construct", None, tuple(opts), self.span(start))

    def claim_id(self) -> str:
        parts = [self.expect_kind("name", "a claim id").text]
        while self.tok.text == "-":
            self.next()
            parts.append(self.expect_kind("name", "a claim id").text)
        return "-".join(parts)

    def int_list(self) -> tuple[int, ...]:
        self.expect("[")
        vals = []
        if not self.accept("]"):
            while True:
                vals.append(int(self.expect_kind("int", "an integer").text))
                if self.accept("]"):
                    break
                self.expect(",")
        return tuple(vals)

    def options(self) -> tuple:
        opts = []
        while self.tok.kind == "name" and self.toks[self.i + 1].text == "=":
            key = self.next().text
            self.next()
            if key in ("I", "J", "M", "N", "top", "bot"):
                val = self.expr()
            elif self.tok.text == "[":
                val = self.int_list()
            elif self.tok.text == "-":
                self.next()
                val = -int(self.expect_kind("int", "an integer").text)
            elif self.tok.kind == "int":
                val = int(self.next().text)
            elif self.tok.kind == "name":
                # claim ids contain '-', claim lists join them with '+'
                val = self.claim_id()
                while self.accept("+"):
                    val += "+" + self.claim_id()
            else:
                self.error(f"bad value for option {key!r}")
            opts.append((key, val))
            self.accept(",")
        return tuple(opts)

    def target(self) -> Target:
        start = self.tok
        if self.tok.text == "ideal" and self.toks[self.i + 1].text == "(":
            self.next()
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Target(start.line, start.col, "ideal", e, None, self.span(start))
        left = self.expr()
        if self.accept("/"):
            right = self.expr()
            return Target(start.line, start.col, "interval", left, right, self.span(start))
        return Target(start.line, start.col, "quotient", None, left, self.span(start))

    def expr(self) -> Node:
        node = self.term()
        while self.tok.text == "+":
            t = self.next()
            node = BinOp(t.line, t.col, "+", node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.text == "*":
            t = self.next()
            node = BinOp(t.line, t.col, "*", node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        while self.tok.text == "^":
            t = self.next()
            exp = self.expect_kind("int", "an integer exponent")
            node = PowOp(t.line, t.col, node, int(exp.text))
        return node

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.next()
            if t.text not in ("0", "1"):
                self.error("only 0 and 1 are ideal constants", t)
            return Const(t.line, t.col, int(t.text))
        if t.kind == "name":
            self.next()
            if t.text in _FUNCS and self.tok.text == "(":
                self.next()
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                if len(args) != _FUNCS[t.text]:
                    raise DSLError(f"{t.text} takes {_FUNCS[t.text]} argument(s), got {len(args)}", t.line, t.col)
                return Call(t.line, t.col, t.text, tuple(args))
            return Name(t.line, t.col, t.text)
        if t.text == "(":
            self.next()
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            self.expect(")")
            return Seq(t.line, t.col, tuple(items))
        self.error(f"expected an ideal expression, found {t.text or 'end of input'!r}")


def _names_in(node):
    if isinstance(node, Name):
        yield node
    for attr in ("left", "right", "base", "top", "bot", "expr"):
        child = getattr(node, attr, None)
        if isinstance(child, Node):
            yield from _names_in(child)
    for attr in ("items", "args"):
        for child in getattr(node, attr, ()) or ():
            yield from _names_in(child)


def _check_bindings(script: Script):
    rings: set[str] = set()
    ideals: set[str] = set()
    variables: set[str] = set()
    for st in script.statements:
        nodes = []
        if isinstance(st, RingDecl):
            if len(set(st.variables)) != len(st.variables):
                raise DSLError(f"ring {st.name} repeats a variable", st.line, st.col)
            rings.add(st.name)
            variables.update(st.variables)
            continue
        if isinstance(st, IdealDef):
            nodes = [st.expr]
        elif isinstance(st, Command):
            if st.target is not None:
                nodes = [n for n in (st.target.top, st.target.bot) if n is not None]
            nodes += [v for _, v in st.options if isinstance(v, Node)]
        for node in nodes:
            for nm in _names_in(node):
                if nm.ident not in ideals and nm.ident not in variables and nm.ident not in rings:
                    raise DSLError(f"unbound identifier {nm.ident!r}", nm.line, nm.col)
        if isinstance(st, IdealDef):
            ideals.add(st.name)


def parse(src: str) -> Script:
    script = _Parser(src).script()
    _check_bindings(script)
    return script


# ---------------------------------------------------------------- evaluation

def unify(I: MonomialIdeal, J: MonomialIdeal) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Bring two ideals into a common ring (extension or disjoint join)."""
    a, b = I.ring, J.ring
    if a.variables == b.variables:
        return I, J
    sa, sb = set(a.variables), set(b.variables)
    if sa <= sb:
        return extend(I, b), J
    if sb <= sa:
        return I, extend(J, a)
    if sa & sb:
        raise RingMismatchError(
            f"rings [{', '.join(a.variables)}] and [{', '.join(b.variables)}] share only some variables")
    R = join_rings(a, b)
    return extend(I, R), extend(J, R)


class Env:
    def __init__(self, characteristic: int = 0):
        self.characteristic = characteristic
        self.rings: dict[str, RingContext] = {}
        self.ideals: dict[str, MonomialIdeal] = {}
        self.last_ring: RingContext | None = None

    def declare_ring(self, name: str, variables):
        R = RingContext(tuple(variables), self.characteristic)
        self.rings[name] = R
        self.last_ring = R

    def variable_ring(self, v: str) -> RingContext:
        # most recent declaration wins
        for R in reversed(list(self.rings.values())):
            if v in R.variables:
                return R
        raise KeyError(v)

    def default_ring(self, node) -> RingContext:
        if self.last_ring is None:
            raise DSLError("constant ideal used before any ring declaration", node.line, node.col)
        return self.last_ring

    def eval(self, node) -> MonomialIdeal:
        try:
            return self._eval(node)
        except DSLError:
            raise
        except (RingMismatchError, ValueError) as exc:
            raise DSLError(str(exc), node.line, node.col) from exc

    def _eval(self, node) -> MonomialIdeal:
        if isinstance(node, Name):
            if node.ident in self.ideals:
                return self.ideals[node.ident]
            if node.ident in self.rings:
                raise DSLError(f"{node.ident} is a ring, not an ideal", node.line, node.col)
            R = self.variable_ring(node.ident)
            return MonomialIdeal.variables_ideal(R, [node.ident])
        if isinstance(node, Const):
            R = self.default_ring(node)
            return MonomialIdeal.unit(R) if node.value else MonomialIdeal.zero(R)
        if isinstance(node, Seq):
            acc = self.eval(node.items[0])
            for item in node.items[1:]:
                a, b = unify(acc, self.eval(item))
                acc = a + b
            return acc
        if isinstance(node, BinOp):
            a, b = unify(self.eval(node.left), self.eval(node.right))
            return a + b if node.op == "+" else a * b
        if isinstance(node, PowOp):
            return self.eval(node.base) ** node.exp
        if isinstance(node, Call):
            if node.fn == "closure":
                return integral_closure(self.eval(node.args[0]))
            a, b = unify(self.eval(node.args[0]), self.eval(node.args[1]))
            if node.fn == "intersect":
                return intersect(a, b)
            return ideal_colon(a, b)
        raise DSLError("not an ideal expression", node.line, node.col)


def ideal_colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J as the intersection of I : m over the generators m of J."""
    if J.is_zero:
        return MonomialIdeal.unit(I.ring)
    acc = None
    for g in J.gens:
        part = colon(I, g)
        acc = part if acc is None else intersect(acc, part)
    return acc
