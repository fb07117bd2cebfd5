"""Monomial ideals with a prescribed non-increasing depth function.

Q is assembled as a sum of ideals in disjoint sets of variables. For such sums
the graded-piece depth of Q is the min-plus convolution

    depth Q^(n-1)/Q^n = min_{a+b=n+1} gI(a) + gJ(b),   gI(a) = depth I^(a-1)/I^a

so every block is described by its own piece-depth sequence and the whole
construction can be checked numerically before any Betti number is computed.

Block library (piece depths for n = 1, 2, ...):
  unit block   (y1) in k[y1,y2]                     1, 1, 1, ...
  base block   (x1) in k[x1]                        0, 0, 0, ...
  step(k, 2)   whiskered triangle, k <= 3           k, 0, 0, ...
  step(1, m)   closure of a cubed binomial family   1 (n < m), 0 (n >= m)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce

from .monomial import MonomialIdeal, RingContext, extend, from_text, integral_closure, join_rings, to_text
from .resolution import IntervalModule, betti_table

MAX_WHISKERED_DEPTH = 3
_SEARCH_NODES = 20_000


@dataclass(frozen=True)
class DepthSpec:
    prefix: tuple[int, ...]
    tail: int
    check_up_to: int = 4

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        vals = list(self.prefix) + [self.tail]
        if any(v < 0 for v in vals):
            raise ValueError("depth values must be non-negative")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"depth function must be non-increasing, got {list(self.prefix)} then {self.tail}")
        if self.check_up_to < 1:
            raise ValueError("check_up_to must be positive")

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("depth functions are indexed from n = 1")
        return self.prefix[n - 1] if n <= len(self.prefix) else self.tail

    @property
    def t(self) -> int:
        """Least t with f(n) = f(n+1) for all n >= t (0 when f is constant)."""
        vals = list(self.prefix) + [self.tail]
        t = len(vals)
        while t > 1 and vals[t - 2] == self.tail:
            t -= 1
        return 0 if t == 1 else t

    def values(self, upto: int) -> list[int]:
        return [self(n) for n in range(1, upto + 1)]

    @classmethod
    def parse(cls, f: str, tail: int | None = None, check_up_to: int = 4) -> DepthSpec:
        prefix = tuple(int(x) for x in f.replace(" ", "").split(",") if x)
        if not prefix and tail is None:
            raise ValueError("empty depth function")
        return cls(prefix, prefix[-1] if tail is None else tail, check_up_to)


@dataclass(frozen=True)
class Block:
    kind: str  # "unit", "base", "step"
    k: int = 0
    m: int = 0

    def depth(self, n: int) -> int:
        if self.kind == "unit":
            return 1
        if self.kind == "base":
            return 0
        return self.k if n < self.m else 0

    def label(self) -> str:
        if self.kind == "step":
            return f"step({self.k},{self.m})"
        return self.kind


def convolve(gs: list, n: int) -> int:
    """Min-plus convolution of piece-depth functions evaluated at n."""
    # h(n) = min_{a1+...+ar = n+r-1} sum g_i(a_i); fold pairwise
    def pair(g, h):
        return lambda q: min(g(a) + h(q + 1 - a) for a in range(1, q + 1))
    return reduce(pair, gs)(n)


def _matches(blocks: list[Block], f0, horizon: int) -> bool:
    gs = [b.depth for b in blocks] or [Block("base").depth]
    gs = gs + [Block("base").depth]
    return all(convolve(gs, n) == f0(n) for n in range(1, horizon + 1))


def _supported(b: Block) -> bool:
    return b.m == 2 and 1 <= b.k <= MAX_WHISKERED_DEPTH or b.k == 1 and b.m >= 2


def _jump_blocks(f0, t: int) -> list[Block]:
    blocks, prev = [], 0
    for p in range(1, t):
        drop = f0(p) - f0(p + 1)
        if drop:
            blocks.append(Block("step", drop, p - prev + 1))
            prev = p
    return blocks


def _search_blocks(f0, t: int, horizon: int) -> list[Block] | None:
    """Depth-first search over multisets of supported step blocks."""
    total = f0(1)
    options = [Block("step", k, 2) for k in range(MAX_WHISKERED_DEPTH, 1, -1)]
    options += [Block("step", 1, m) for m in range(t + 1, 1, -1)]
    budget = [_SEARCH_NODES]

    def dfs(start, remaining, chosen):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        if remaining == 0:
            return list(chosen) if _matches(chosen, f0, horizon) else None
        for idx in range(start, len(options)):
            b = options[idx]
            if b.k <= remaining:
                found = dfs(idx, remaining - b.k, chosen + [b])
                if found is not None:
                    return found
        return None

    return dfs(0, total, [])


def plan_blocks(spec: DepthSpec) -> tuple[list[Block], list[str]]:
    """Blocks whose convolution is f, plus notes on any fallback taken."""
    c = spec.tail
    t = spec.t

    def f0(n):
        return spec(n) - c

    horizon = max(t + 2, spec.check_up_to)
    notes: list[str] = []
    steps = _jump_blocks(f0, t)
    if not (all(_supported(b) for b in steps) and _matches(steps, f0, horizon)):
        found = _search_blocks(f0, t, horizon)
        if found is None:
            raise NotImplementedError(
                f"no combination of library blocks realizes {spec.values(horizon)}; "
                f"jump decomposition was {[b.label() for b in steps]}")
        notes.append(f"jump decomposition {[b.label() for b in steps]} replaced by "
                     f"{[b.label() for b in found]}")
        steps = found
    return [Block("base")] + steps + [Block("unit")] * c, notes


def example_ideal(t: int, names: tuple[str, str, str] = ("x1", "x2", "x3")) -> MonomialIdeal:
    """Closure of (x1^(3t), x1*x2^(3t-2)*x3, x2^(3t-1)*x3)^3 in three variables."""
    if t < 1:
        raise ValueError("t must be at least 1")
    R = RingContext(names)
    a, b, c = names
    base = from_text(R, f"({a}^{3 * t}, {a}*{b}^{3 * t - 2}*{c}, {b}^{3 * t - 1}*{c})")
    return integral_closure(base ** 3)


def whiskered_triangle(k: int, prefix: str = "g") -> MonomialIdeal:
    """Edge ideal of a triangle with whiskers on k distinct corners (none when k = 1).

    A single whisker leaves the depth at 1, so k = 2 already needs two.
    """
    if not 1 <= k <= MAX_WHISKERED_DEPTH:
        raise ValueError(f"whiskered triangle realizes depth 1..{MAX_WHISKERED_DEPTH}, got {k}")
    corners = [f"{prefix}{i}" for i in (1, 2, 3)]
    nw = 0 if k == 1 else k
    leaves = [f"{prefix}w{i}" for i in range(1, nw + 1)]
    edges = [(corners[0], corners[1]), (corners[1], corners[2]), (corners[0], corners[2])]
    edges += [(corners[i], leaves[i]) for i in range(nw)]
    R = RingContext(tuple(corners + leaves))
    return from_text(R, "(" + ", ".join(f"{u}*{v}" for u, v in edges) + ")")


def _realize(block: Block, level: int) -> MonomialIdeal:
    if block.kind == "base":
        return from_text(RingContext(("x1",)), "(x1)")
    if block.kind == "unit":
        names = ("y1", "y2") if level == 0 else (f"y{level}_1", f"y{level}_2")
        return from_text(RingContext(names), f"({names[0]})")
    if block.m == 2:
        return whiskered_triangle(block.k, prefix=f"t{level}_")
    return example_ideal(block.m, names=(f"z{level}_1", f"z{level}_2", f"z{level}_3"))


def construct(spec: DepthSpec) -> tuple[RingContext, MonomialIdeal, list[Block], list[str]]:
    blocks, notes = plan_blocks(spec)
    ideals: list[MonomialIdeal] = []
    unit_level = step_level = 0
    for b in blocks:
        if b.kind == "unit":
            ideals.append(_realize(b, unit_level))
            unit_level += 1
        elif b.kind == "step":
            step_level += 1
            ideals.append(_realize(b, step_level))
        else:
            ideals.append(_realize(b, 0))
    ring = reduce(join_rings, (I.ring for I in ideals))
    Q = reduce(lambda acc, I: acc + extend(I, ring), ideals, MonomialIdeal.zero(ring))
    return ring, Q, blocks, notes


@dataclass
class ConstructionReport:
    spec: DepthSpec
    ring: RingContext
    ideal: MonomialIdeal
    blocks: list[Block]
    expected: list[int]
    quotient_depths: list[int]
    piece_depths: list[int]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.quotient_depths == self.expected and self.piece_depths == self.expected

    @property
    def witness(self) -> int | None:
        for n, (e, q, p) in enumerate(zip(self.expected, self.quotient_depths, self.piece_depths), 1):
            if e != q or e != p:
                return n
        return None

    def to_dict(self) -> dict:
        return {
            "spec": {"prefix": list(self.spec.prefix), "tail": self.spec.tail,
                     "check_up_to": self.spec.check_up_to},
            "ring": list(self.ring.variables),
            "nvars": self.ring.nvars,
            "ideal": to_text(self.ideal),
            "blocks": [b.label() for b in self.blocks],
            "expected": self.expected,
            "depth_quotient": self.quotient_depths,
            "depth_graded_piece": self.piece_depths,
            "verdict": "pass" if self.passed else "fail",
            "witness_n": self.witness,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_construction(ring: RingContext, Q: MonomialIdeal, spec: DepthSpec,
                        blocks: list[Block] | None = None, notes: list[str] | None = None,
                        characteristic: int | None = None) -> ConstructionReport:
    N = spec.check_up_to
    powers = [MonomialIdeal.unit(ring), Q]
    for _ in range(2, N + 1):
        powers.append(powers[-1] * Q)
    quot, piece = [], []
    for n in range(1, N + 1):
        quot.append(betti_table(IntervalModule.quotient(powers[n]), characteristic).depth)
        piece.append(betti_table(IntervalModule(powers[n - 1], powers[n]), characteristic).depth)
    return ConstructionReport(spec, ring, Q, list(blocks or []), spec.values(N), quot, piece,
                              list(notes or []))


def construct_and_verify(spec: DepthSpec, characteristic: int | None = None) -> ConstructionReport:
    ring, Q, blocks, notes = construct(spec)
    return verify_construction(ring, Q, spec, blocks, notes, characteristic)
