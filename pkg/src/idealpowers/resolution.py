"""Multigraded Betti numbers of interval modules ``top/bot`` via Koszul homology.

For a multidegree ``a`` the Koszul complex of ``M = top/bot`` has one basis
element per variable subset ``S`` with ``x^(a - e_S)`` in ``top`` but not in
``bot``.  Only lcm-lattice degrees of ``top`` or ``bot`` can carry homology,
and membership of ``x^b`` only depends on where each ``b_i`` falls among the
generator exponents, so everything is evaluated on a compressed grid of
those exponent values.  Distinct subset patterns are few; each pattern's
homology is computed once.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import rank
from .monomial import (
    MonomialIdeal,
    RingContext,
    extend,
    ideal_sum,
    is_subideal,
    join_rings,
    krull_dim_quotient,
    product,
)

DEFAULT_GRID_CAP = 60_000_000


class ResourceLimitError(RuntimeError):
    """Raised instead of silently truncating a computation."""


class ZeroModuleError(ValueError):
    pass


@dataclass(frozen=True)
class IntervalModule:
    top: MonomialIdeal
    bot: MonomialIdeal

    def __post_init__(self):
        if self.top.ring.variables != self.bot.ring.variables:
            raise ValueError("top and bot live in different rings")
        if not is_subideal(self.bot, self.top):
            raise ValueError("bot is not contained in top")
        if self.top.gens == self.bot.gens:
            raise ZeroModuleError("top/bot is the zero module")

    @property
    def ring(self) -> RingContext:
        return self.top.ring

    @classmethod
    def quotient(cls, I: MonomialIdeal) -> IntervalModule:
        """R/I."""
        return cls(MonomialIdeal.unit(I.ring), I)

    @classmethod
    def ideal(cls, I: MonomialIdeal) -> IntervalModule:
        """I as a module."""
        return cls(I, MonomialIdeal.zero(I.ring))

    def in_basis(self, b) -> bool:
        return all(x >= 0 for x in b) and b in self.top and b not in self.bot

    def __str__(self):
        return f"{self.top}/{self.bot}"


@dataclass(frozen=True)
class BettiTable:
    nvars: int
    characteristic: int
    entries: dict = field(default_factory=dict)  # (i, multidegree) -> rank

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def regularity(self) -> int:
        return max(sum(a) - i for i, a in self.entries)

    @property
    def depth(self) -> int:
        return self.nvars - self.pd

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), r in self.entries.items():
            out[i] = out.get(i, 0) + r
        return dict(sorted(out.items()))

    def graded(self) -> dict[tuple[int, int], int]:
        """Coarsened table: (i, total degree) -> beta_{i,j}."""
        out: dict[tuple[int, int], int] = {}
        for (i, a), r in self.entries.items():
            key = (i, sum(a))
            out[key] = out.get(key, 0) + r
        return dict(sorted(out.items()))

    def sorted_entries(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "multidegree", "total_degree", "rank"])
        for (i, a), r in self.sorted_entries():
            w.writerow([i, ":".join(map(str, a)), sum(a), r])
        return buf.getvalue()

    def to_dict(self) -> dict:
        out: dict[str, list] = {}
        for (i, a), r in self.sorted_entries():
            out.setdefault(str(i), []).append({"multidegree": list(a), "degree": sum(a), "rank": r})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return (self.nvars, self.characteristic, self.entries) == (
            other.nvars, other.characteristic, other.entries)

    def __hash__(self):
        return hash((self.nvars, self.characteristic, tuple(sorted(self.entries.items()))))


@dataclass(frozen=True)
class HomologicalSummary:
    pd: int
    depth: int
    reg: int
    dim: int | None = None


# -- relative Koszul homology of one subset pattern ---------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def pattern_homology(subsets: frozenset[int], characteristic: int = 0) -> dict[int, int]:
    """Homology ranks of the Koszul chain complex spanned by ``subsets``.

    Each subset is a bitmask of variables; the differential drops one variable
    with sign ``(-1)^position`` and discards faces outside ``subsets``.
    """
    by_size: dict[int, list[int]] = {}
    for s in subsets:
        by_size.setdefault(_popcount(s), []).append(s)
    for v in by_size.values():
        v.sort()
    index = {k: {s: j for j, s in enumerate(v)} for k, v in by_size.items()}

    ranks: dict[int, int] = {}
    for k, cells in by_size.items():
        if k == 0 or (k - 1) not in by_size:
            ranks[k] = 0
            continue
        target = index[k - 1]
        rows = []
        for s in cells:
            row = [0] * len(target)
            pos = 0
            bits = s
            var = 0
            while bits:
                if bits & 1:
                    face = s & ~(1 << var)
                    j = target.get(face)
                    if j is not None:
                        row[j] = -1 if pos & 1 else 1
                    pos += 1
                bits >>= 1
                var += 1
            rows.append(row)
        ranks[k] = rank(rows, characteristic)
    out = {}
    for k, cells in by_size.items():
        h = len(cells) - ranks[k] - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return out


_pattern_lock = threading.Lock()
_pattern_cache: dict[tuple[int, bytes, int], dict[int, int]] = {}


def _cached_pattern_homology(n: int, packed: bytes, flags: np.ndarray, characteristic: int):
    key = (n, packed, characteristic)
    with _pattern_lock:
        hit = _pattern_cache.get(key)
    if hit is not None:
        return hit
    subsets = frozenset(int(s) for s in np.flatnonzero(flags))
    result = pattern_homology(subsets, characteristic)
    with _pattern_lock:
        _pattern_cache[key] = result
    return result


# -- compressed grid ----------------------------------------------------------

class _Grid:
    def __init__(self, ideals: list[MonomialIdeal], cap: int):
        ring = ideals[0].ring
        n = ring.nvars
        self.n = n
        vals = [{0} for _ in range(n)]
        for I in ideals:
            for g in I.gens:
                for i, e in enumerate(g):
                    vals[i].add(e)
        self.values = [sorted(v) for v in vals]
        self.lookup = [{v: j for j, v in enumerate(vs)} for vs in self.values]
        self.shape = tuple(len(v) for v in self.values)
        size = int(np.prod(self.shape, dtype=object)) if n else 1
        if size > cap:
            raise ResourceLimitError(
                f"compressed grid of {size} cells exceeds cap {cap} (shape {self.shape})")

    def compress(self, I: MonomialIdeal) -> np.ndarray:
        if not I.gens:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array([[self.lookup[i][e] for i, e in enumerate(g)] for g in I.gens],
                        dtype=np.int64).reshape(len(I.gens), self.n)

    def indicator(self, idx: np.ndarray) -> np.ndarray:
        arr = np.zeros(self.shape, dtype=bool)
        if len(idx):
            arr[tuple(idx.T)] = True
        return arr

    def membership(self, I: MonomialIdeal) -> np.ndarray:
        arr = self.indicator(self.compress(I))
        for ax in range(self.n):
            np.logical_or.accumulate(arr, axis=ax, out=arr)
        return arr

    def lattice(self, I: MonomialIdeal, mem: np.ndarray) -> np.ndarray:
        """Mask of lcms of nonempty generator subsets."""
        idx = self.compress(I)
        if not len(idx):
            return np.zeros(self.shape, dtype=bool)
        mask = mem.copy()
        base = self.indicator(idx)
        for i in range(self.n):
            f = base.copy()
            for ax in range(self.n):
                if ax != i:
                    np.logical_or.accumulate(f, axis=ax, out=f)
            # coordinate i at index 0 needs no witness
            zero_slice = [slice(None)] * self.n
            zero_slice[i] = 0
            f[tuple(zero_slice)] = True
            mask &= f
        return mask


def candidate_degrees(M: IntervalModule, cap: int = DEFAULT_GRID_CAP) -> set[tuple[int, ...]]:
    """Union of the lcm lattices of the generators of top and of bot."""
    grid = _Grid([M.top, M.bot], cap)
    mask = _candidate_mask(grid, M)[0]
    return {tuple(grid.values[i][j] for i, j in enumerate(p)) for p in np.argwhere(mask)}


def _candidate_mask(grid: _Grid, M: IntervalModule):
    mem_top = grid.membership(M.top)
    mem_bot = grid.membership(M.bot)
    mask = grid.lattice(M.top, mem_top)
    mask |= grid.lattice(M.bot, mem_bot)
    return mask, mem_top, mem_bot


def _low_masks() -> list[int]:
    # bit s set iff bit i of s is 0, for the 64 subset slots of one word
    return [sum(1 << s for s in range(64) if not (s >> i) & 1) for i in range(6)]


_LOW_MASKS = np.array(_low_masks(), dtype=np.uint64)


def _cone_free(flags: np.ndarray, n: int) -> np.ndarray:
    """Rows whose subset pattern is not a cone over any single variable.

    A cone (flags unchanged by toggling one variable) has a contractible
    Koszul complex, so its homology vanishes.  Works on the patterns packed
    into 64-bit words, bit ``s`` of the pattern at word ``s // 64``.
    """
    width = max(1 << n, 64)
    if flags.shape[1] < width:
        flags = np.pad(flags, ((0, 0), (0, width - flags.shape[1])))
    words = np.packbits(flags, axis=1, bitorder="little").view("<u8")
    keep = np.zeros(len(flags), dtype=bool)
    for i in range(n):
        if i < 6:
            m = _LOW_MASKS[i]
            step = np.uint64(1 << i)
            differs = ((words & m) ^ ((words >> step) & m)).any(axis=1)
        else:
            j = np.arange(words.shape[1])
            lo = j[(j >> (i - 6)) & 1 == 0]
            differs = (words[:, lo] != words[:, lo + (1 << (i - 6))]).any(axis=1)
        if i == 0:
            keep = differs
        else:
            keep &= differs
    return keep


def _betti_entries(M: IntervalModule, characteristic: int, cap: int) -> dict:
    n = M.ring.nvars
    if n == 0:
        return {(0, ()): 1}
    grid = _Grid([M.top, M.bot], cap)
    mask, mem_top, mem_bot = _candidate_mask(grid, M)
    basis = (mem_top & ~mem_bot).ravel()
    cands = np.argwhere(mask)
    strides = np.array([int(np.prod(grid.shape[i + 1:])) for i in range(n)], dtype=np.int64)
    subsets = np.arange(1 << n, dtype=np.int64)
    bits = (subsets[:, None] >> np.arange(n)) & 1
    offsets = bits @ strides
    entries: dict = {}
    chunk = max(1, 4_000_000 // (1 << n))
    for start in range(0, len(cands), chunk):
        block = cands[start:start + chunk]
        flat = block @ strides
        support = ((block > 0).astype(np.int64) << np.arange(n)).sum(axis=1)
        valid = (subsets[None, :] & ~support[:, None]) == 0
        idx = np.where(valid, flat[:, None] - offsets[None, :], 0)
        flags = valid & basis[idx]
        live = np.flatnonzero(_cone_free(flags, n))
        if not len(live):
            continue
        block, flags = block[live], flags[live]
        packed = np.ascontiguousarray(np.packbits(flags, axis=1))
        keys = packed.view(np.dtype((np.void, packed.shape[1]))).ravel()
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        homologies = [_cached_pattern_homology(n, packed[f].tobytes(), flags[f], characteristic)
                      for f in first]
        for r in range(len(block)):
            h = homologies[inverse[r]]
            if h:
                a = tuple(grid.values[i][int(j)] for i, j in enumerate(block[r]))
                for k, v in h.items():
                    entries[(k, a)] = v
    return entries


@lru_cache(maxsize=4096)
def _betti_cached(M: IntervalModule, characteristic: int, cap: int) -> BettiTable:
    return BettiTable(M.ring.nvars, characteristic, _betti_entries(M, characteristic, cap))


def betti_table(M: IntervalModule, characteristic: int | None = None,
                cap: int = DEFAULT_GRID_CAP) -> BettiTable:
    p = M.ring.characteristic if characteristic is None else characteristic
    return _betti_cached(M, p, cap)


def koszul_betti(M: IntervalModule, a, characteristic: int | None = None) -> dict[int, int]:
    """Tor_i(M, k)_a for a single multidegree, computed directly."""
    p = M.ring.characteristic if characteristic is None else characteristic
    n = M.ring.nvars
    a = tuple(a)
    subsets = set()
    for s in range(1 << n):
        b = tuple(a[i] - ((s >> i) & 1) for i in range(n))
        if M.in_basis(b):
            subsets.add(s)
    return pattern_homology(frozenset(subsets), p)


def summary(M: IntervalModule, characteristic: int | None = None) -> HomologicalSummary:
    table = betti_table(M, characteristic)
    dim = krull_dim_quotient(M.bot) if M.top.is_unit else None
    return HomologicalSummary(pd=table.pd, depth=table.depth, reg=table.regularity, dim=dim)


def depth(M: IntervalModule, characteristic: int | None = None) -> int:
    return betti_table(M, characteristic).depth


def reg(M: IntervalModule, characteristic: int | None = None) -> int:
    return betti_table(M, characteristic).regularity


def exhaustive_betti_oracle(M: IntervalModule, characteristic: int | None = None,
                            max_points: int = 200_000) -> BettiTable:
    """Scan every multidegree in [0, B] with B the componentwise generator max.

    Independent of the candidate-degree machinery: membership is tested by
    divisibility and homology ranks use rational elimination.
    """
    from fractions import Fraction

    p = M.ring.characteristic if characteristic is None else characteristic
    n = M.ring.nvars
    bound = [0] * n
    for g in M.top.gens + M.bot.gens:
        bound = [max(x, y) for x, y in zip(bound, g)]
    npoints = 1
    for b in bound:
        npoints *= b + 1
    if npoints > max_points:
        raise ResourceLimitError(f"oracle box has {npoints} points, cap is {max_points}")

    def field_rank(rows):
        if p:
            from .linalg import rank_mod_p
            return rank_mod_p(rows, p)
        m = [[Fraction(x) for x in r] for r in rows]
        r = 0
        cols = len(m[0]) if m else 0
        for c in range(cols):
            piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            for i in range(len(m)):
                if i != r and m[i][c] != 0:
                    f = m[i][c] / m[r][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            r += 1
        return r

    entries = {}
    for a in itertools.product(*[range(b + 1) for b in bound]):
        chains: dict[int, list[tuple[int, ...]]] = {}
        for k in range(n + 1):
            for S in itertools.combinations(range(n), k):
                b = list(a)
                for i in S:
                    b[i] -= 1
                if M.in_basis(tuple(b)):
                    chains.setdefault(k, []).append(S)
        if not chains:
            continue
        ranks = {}
        for k, cells in chains.items():
            lower = chains.get(k - 1, [])
            if not lower:
                ranks[k] = 0
                continue
            pos = {S: j for j, S in enumerate(lower)}
            rows = []
            for S in cells:
                row = [0] * len(lower)
                for t, v in enumerate(S):
                    face = S[:t] + S[t + 1:]
                    if face in pos:
                        row[pos[face]] = (-1) ** t
                rows.append(row)
            ranks[k] = field_rank(rows)
        for k, cells in chains.items():
            h = len(cells) - ranks[k] - ranks.get(k + 1, 0)
            if h:
                entries[(k, a)] = h
    return BettiTable(n, p, entries)


def tensor(M: IntervalModule, N: IntervalModule) -> IntervalModule:
    """(I1/I2) (x)_k (J1/J2) = I1 J1 / (I2 J1 + I1 J2) over the joined ring."""
    R = join_rings(M.ring, N.ring)
    i1, i2 = extend(M.top, R), extend(M.bot, R)
    j1, j2 = extend(N.top, R), extend(N.bot, R)
    return IntervalModule(product(i1, j1), ideal_sum(product(i2, j1), product(i1, j2)))


def clear_caches():
    _betti_cached.cache_clear()
    with _pattern_lock:
        _pattern_cache.clear()
