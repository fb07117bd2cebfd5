"""Monomials and monomial ideals over named polynomial rings.

Exponent vectors are plain tuples of Python ints, so exponents never overflow.
Ideals are immutable and always stored as their minimal generating antichain,
sorted lexicographically.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Exponent = tuple[int, ...]

# numpy fast paths are only taken while exponents stay far from int64 limits
_NUMPY_EXP_LIMIT = 2**40


class RingMismatchError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class RingContext:
    variables: tuple[str, ...]
    characteristic: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def with_characteristic(self, p: int) -> RingContext:
        return RingContext(self.variables, p)

    def __str__(self):
        return "[" + ",".join(self.variables) + "]"


def join_rings(a: RingContext, b: RingContext) -> RingContext:
    """Polynomial ring on the variables of ``a`` followed by those of ``b``."""
    overlap = set(a.variables) & set(b.variables)
    if overlap:
        raise RingMismatchError(f"rings share variables {sorted(overlap)}")
    if a.characteristic != b.characteristic:
        raise RingMismatchError("characteristic mismatch")
    return RingContext(a.variables + b.variables, a.characteristic)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Sequence[int], b: Sequence[int]) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def mul(a: Sequence[int], b: Sequence[int]) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _fits_numpy(gens: Iterable[Exponent]) -> bool:
    return all(e < _NUMPY_EXP_LIMIT for g in gens for e in g)


def _minimal_antichain(gens: set[Exponent]) -> tuple[Exponent, ...]:
    if not gens:
        return ()
    n = len(next(iter(gens)))
    if n == 0:
        return ((),)
    if len(gens) > 64 and _fits_numpy(gens):
        return _minimal_antichain_numpy(gens)
    kept: list[Exponent] = []
    for g in sorted(gens, key=lambda v: (sum(v), v)):
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(sorted(kept))


def _minimal_antichain_numpy(gens: set[Exponent]) -> tuple[Exponent, ...]:
    arr = np.array(sorted(gens, key=lambda v: (sum(v), v)), dtype=np.int64)
    degs = arr.sum(axis=1)
    kept = np.empty((0, arr.shape[1]), dtype=np.int64)
    # distinct vectors of equal total degree never divide each other
    for d in np.unique(degs):
        block = arr[degs == d]
        if len(kept):
            hit = np.zeros(len(block), dtype=bool)
            for start in range(0, len(kept), 512):
                chunk = kept[start:start + 512]
                hit |= (chunk[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
            block = block[~hit]
        kept = np.vstack([kept, block])
    return tuple(sorted(tuple(int(x) for x in row) for row in kept))


@dataclass(frozen=True)
class MonomialIdeal:
    ring: RingContext
    gens: tuple[Exponent, ...] = field(default=())

    def __post_init__(self):
        n = self.ring.nvars
        vecs = set()
        for g in self.gens:
            g = tuple(int(e) for e in g)
            if len(g) != n:
                raise ValueError(f"exponent vector {g} does not match ring {self.ring}")
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
            vecs.add(g)
        object.__setattr__(self, "gens", _minimal_antichain(vecs))

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring: RingContext) -> MonomialIdeal:
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: RingContext) -> MonomialIdeal:
        return cls(ring, ((0,) * ring.nvars,))

    @classmethod
    def variables_ideal(cls, ring: RingContext, names: Iterable[str] | None = None) -> MonomialIdeal:
        names = ring.variables if names is None else list(names)
        gens = []
        for v in names:
            e = [0] * ring.nvars
            e[ring.index(v)] = 1
            gens.append(tuple(e))
        return cls(ring, tuple(gens))

    # -- predicates ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.ring.nvars,)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def __contains__(self, m: Sequence[int]) -> bool:
        return membership(self, m)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    # -- arithmetic sugar ---------------------------------------------------
    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return product(self, other)

    def __pow__(self, n: int) -> MonomialIdeal:
        return power(self, n)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return intersect(self, other)

    def __le__(self, other: MonomialIdeal) -> bool:
        return is_subideal(self, other)

    def max_exponents(self) -> Exponent:
        if not self.gens:
            return (0,) * self.ring.nvars
        return tuple(max(col) for col in zip(*self.gens)) if self.ring.nvars else ()

    def support(self) -> set[int]:
        return {i for g in self.gens for i, e in enumerate(g) if e}

    def __str__(self):
        return to_text(self)


def minimalize(gens: Iterable[Sequence[int]], ring: RingContext) -> MonomialIdeal:
    return MonomialIdeal(ring, tuple(tuple(g) for g in gens))


def _check_same(I: MonomialIdeal, J: MonomialIdeal):
    if I.ring.variables != J.ring.variables:
        raise RingMismatchError(f"ring mismatch: {I.ring} vs {J.ring}")


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return MonomialIdeal(I.ring, I.gens + J.gens)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    if len(I.gens) * len(J.gens) > 4096 and _fits_numpy(I.gens + J.gens):
        a = np.array(I.gens, dtype=np.int64)
        b = np.array(J.gens, dtype=np.int64)
        prods = (a[:, None, :] + b[None, :, :]).reshape(-1, I.ring.nvars)
        return MonomialIdeal(I.ring, tuple(map(tuple, np.unique(prods, axis=0).tolist())))
    return MonomialIdeal(I.ring, tuple(mul(g, h) for g in I.gens for h in J.gens))


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError("negative power")
    result = MonomialIdeal.unit(I.ring)
    base = I
    while n:
        if n & 1:
            result = product(result, base)
        n >>= 1
        if n:
            base = product(base, base)
    return result


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I, J)
    return MonomialIdeal(I.ring, tuple(lcm(g, h) for g in I.gens for h in J.gens))


def membership(I: MonomialIdeal, m: Sequence[int]) -> bool:
    if len(m) != I.ring.nvars:
        raise ValueError("arity mismatch")
    return any(divides(g, m) for g in I.gens)


def colon(I: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    """I : x^m."""
    if len(m) != I.ring.nvars:
        raise ValueError("arity mismatch")
    return MonomialIdeal(I.ring, tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in I.gens))


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _check_same(I, J)
    return all(membership(J, g) for g in I.gens)


def equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _check_same(I, J)
    return I.gens == J.gens


def extend(I: MonomialIdeal, R: RingContext) -> MonomialIdeal:
    """Re-embed ``I`` into a ring containing its variables (matched by name)."""
    missing = set(I.ring.variables) - set(R.variables)
    if missing:
        raise RingMismatchError(f"target ring lacks variables {sorted(missing)}")
    if I.ring.characteristic != R.characteristic:
        raise RingMismatchError("characteristic mismatch")
    pos = [R.index(v) for v in I.ring.variables]
    gens = []
    for g in I.gens:
        e = [0] * R.nvars
        for p, x in zip(pos, g):
            e[p] = x
        gens.append(tuple(e))
    return MonomialIdeal(R, tuple(gens))


def permute(I: MonomialIdeal, perm: Sequence[int]) -> MonomialIdeal:
    """Rename variable ``i`` to position ``perm[i]`` (same variable names order)."""
    gens = []
    for g in I.gens:
        e = [0] * len(g)
        for i, x in enumerate(g):
            e[perm[i]] = x
        gens.append(tuple(e))
    return MonomialIdeal(I.ring, tuple(gens))


def krull_dim_quotient(I: MonomialIdeal) -> int:
    """dim R/I via a minimum set of variables meeting every generator's support."""
    if I.is_unit:
        raise ValueError("R/I is the zero ring; dimension undefined")
    n = I.ring.nvars
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in I.gens]
    for size in range(n + 1):
        for cover in itertools.combinations(range(n), size):
            c = set(cover)
            if all(s & c for s in supports):
                return n - size
    raise AssertionError("unreachable")


def is_squarefree(I: MonomialIdeal) -> bool:
    return I.is_squarefree()


# -- integral closure --------------------------------------------------------

def _int_det(rows: list[list[int]]) -> int:
    from .linalg import bareiss_det

    return bareiss_det(rows)


def _normal_vector(vectors: list[Exponent], n: int) -> tuple[int, ...] | None:
    """Integer vector orthogonal to the n-1 given vectors, or None if dependent."""
    w = []
    for i in range(n):
        minor = [[v[j] for j in range(n) if j != i] for v in vectors]
        w.append((-1) ** i * _int_det(minor) if minor else 1)
    if not any(w):
        return None
    g = reduce(gcd, (abs(x) for x in w))
    return tuple(x // g for x in w)


def newton_inequalities(gens: Sequence[Exponent]) -> list[tuple[tuple[int, ...], int]]:
    """Valid inequalities w.a >= c describing conv(gens) + orthant exactly.

    Every facet of the Newton polyhedron passes through a generator and is
    spanned by differences of generators and coordinate directions, so the
    candidate normals below contain every facet normal.
    """
    n = len(gens[0])
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    normals: set[tuple[int, ...]] = set(units)
    if n > 1:
        for base in gens:
            dirs = {tuple(a - b for a, b in zip(g, base)) for g in gens if g != base}
            dirs |= set(units)
            for combo in itertools.combinations(sorted(dirs), n - 1):
                w = _normal_vector(list(combo), n)
                if w is None:
                    continue
                for cand in (w, tuple(-x for x in w)):
                    if all(x >= 0 for x in cand):
                        normals.add(cand)
    out = []
    for w in sorted(normals):
        c = min(sum(a * b for a, b in zip(w, g)) for g in gens)
        out.append((w, c))
    return out


def in_newton_polyhedron(a: Sequence[int], ineqs) -> bool:
    return all(sum(x * y for x, y in zip(w, a)) >= c for w, c in ineqs)


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    if I.is_zero:
        raise ValueError("integral closure of the zero ideal")
    if I.is_unit or I.ring.nvars == 0:
        return I
    ineqs = newton_inequalities(I.gens)
    box = I.max_exponents()
    if all(len(w) and _fits_numpy([w]) for w, _ in ineqs) and _fits_numpy([box]):
        grids = np.meshgrid(*[np.arange(b + 1) for b in box], indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
        ok = np.ones(len(pts), dtype=bool)
        for w, c in ineqs:
            ok &= pts @ np.array(w, dtype=np.int64) >= c
        members = [tuple(int(x) for x in p) for p in pts[ok]]
    else:
        members = [p for p in itertools.product(*[range(b + 1) for b in box])
                   if in_newton_polyhedron(p, ineqs)]
    return MonomialIdeal(I.ring, tuple(members))


# -- text form ---------------------------------------------------------------

def monomial_text(ring: RingContext, e: Sequence[int]) -> str:
    parts = []
    for v, x in zip(ring.variables, e):
        if x == 1:
            parts.append(v)
        elif x > 1:
            parts.append(f"{v}^{x}")
    return "*".join(parts) if parts else "1"


def to_text(I: MonomialIdeal) -> str:
    if I.is_zero:
        return "(0)"
    # highest monomials in lex order first, e.g. (x^2, x*y, y^2)
    return "(" + ", ".join(monomial_text(I.ring, g) for g in reversed(I.gens)) + ")"


_MONO_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*")


def parse_monomial(ring: RingContext, text: str) -> Exponent:
    text = text.strip()
    e = [0] * ring.nvars
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        m = _MONO_FACTOR.fullmatch(factor)
        if not m:
            raise ValueError(f"bad monomial factor {factor!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in ring.variables:
            raise ValueError(f"unknown variable {name!r} for ring {ring}")
        e[ring.index(name)] += exp
    return tuple(e)


def from_text(ring: RingContext, text: str) -> MonomialIdeal:
    """Parse the canonical form ``(m1, m2, ...)``; ``(0)`` is the zero ideal."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("ideal text must be parenthesized")
    body = text[1:-1].strip()
    if body in ("", "0"):
        return MonomialIdeal.zero(ring)
    return MonomialIdeal(ring, tuple(parse_monomial(ring, t) for t in body.split(",")))
