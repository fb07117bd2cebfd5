"""Depth and regularity of I^n and I^(n-1)/I^n over a window of powers.

Stability and linearity indices are detected from the computed window only;
each detected index carries a ``confident`` flag and nothing is claimed past
``max_n``.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .monomial import MonomialIdeal, power, product, to_text
from .resolution import IntervalModule, ResourceLimitError, betti_table

DEFAULT_WINDOW = 3
DEFAULT_MAX_N = 5


@dataclass(frozen=True)
class PowerRow:
    n: int
    depth_quotient: int  # depth A/I^n
    reg_power: int  # reg I^n
    depth_graded_piece: int  # depth I^(n-1)/I^n
    reg_graded_piece: int  # reg I^(n-1)/I^n

    @property
    def reg_quotient(self) -> int:
        return self.reg_power - 1


@dataclass(frozen=True)
class Detection:
    index: int
    confident: bool


@dataclass(frozen=True)
class Linearity:
    slope: int | None
    intercept: int | None
    index: int
    confident: bool


@dataclass(frozen=True)
class PowerProfile:
    ideal: MonomialIdeal
    max_n: int
    rows: tuple[PowerRow, ...]
    stability: Detection
    linearity: Linearity
    window: int = DEFAULT_WINDOW
    truncated: bool = False

    def row(self, n: int) -> PowerRow:
        return self.rows[n - 1]

    @property
    def computed_n(self) -> int:
        return len(self.rows)

    def depths(self) -> list[int]:
        return [r.depth_quotient for r in self.rows]

    def regs(self) -> list[int]:
        return [r.reg_power for r in self.rows]

    def piece_depths(self) -> list[int]:
        return [r.depth_graded_piece for r in self.rows]

    def piece_regs(self) -> list[int]:
        return [r.reg_graded_piece for r in self.rows]

    @property
    def s(self) -> int:
        return self.stability.index

    @property
    def lin(self) -> int:
        return self.linearity.index

    @property
    def d(self) -> int | None:
        return self.linearity.slope

    @property
    def e(self) -> int | None:
        return self.linearity.intercept

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "depth_quotient", "reg_power", "depth_graded_piece", "reg_graded_piece"])
        for r in self.rows:
            w.writerow([r.n, r.depth_quotient, r.reg_power, r.depth_graded_piece, r.reg_graded_piece])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "ideal": to_text(self.ideal),
            "ring": list(self.ideal.ring.variables),
            "max_n": self.max_n,
            "window": self.window,
            "truncated": self.truncated,
            "rows": [asdict(r) for r in self.rows],
            "stability": {"s": self.stability.index, "confident": self.stability.confident},
            "linearity": {
                "d": self.linearity.slope,
                "e": self.linearity.intercept,
                "lin": self.linearity.index,
                "confident": self.linearity.confident,
            },
            "note": "indices detected on the computed window; values beyond max_n are unverified",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def detect_stabilization(values, window: int = DEFAULT_WINDOW) -> Detection:
    """Start index (1-based) of the constant tail of ``values``."""
    if window < 2:
        raise ValueError("window must be at least 2")
    values = list(values)
    if not values:
        return Detection(1, False)
    start = len(values)
    while start > 1 and values[start - 2] == values[-1]:
        start -= 1
    tail = len(values) - start + 1
    return Detection(start, tail >= window)


def detect_linearity(regs, window: int = DEFAULT_WINDOW) -> Linearity:
    """Least m with reg(n) = d*n + e for m <= n <= len(regs), from first differences."""
    if window < 2:
        raise ValueError("window must be at least 2")
    regs = list(regs)
    if len(regs) < 2:
        return Linearity(None, None, 1, False)
    diffs = [b - a for a, b in zip(regs, regs[1:])]
    d = diffs[-1]
    k = len(diffs)
    while k > 1 and diffs[k - 2] == d:
        k -= 1
    observed = len(diffs) - k + 1
    # diffs[k-1] = reg(k+1) - reg(k), so the linear stretch starts at n = k
    m = k
    e = regs[m - 1] - d * m
    return Linearity(d, e, m, observed >= window)


def _row(I: MonomialIdeal, prev: MonomialIdeal, cur: MonomialIdeal, n: int,
         characteristic: int | None) -> PowerRow:
    quot = betti_table(IntervalModule.quotient(cur), characteristic)
    piece = betti_table(IntervalModule(prev, cur), characteristic)
    return PowerRow(
        n=n,
        depth_quotient=quot.depth,
        reg_power=quot.regularity + 1,
        depth_graded_piece=piece.depth,
        reg_graded_piece=piece.regularity,
    )


def power_profile(I: MonomialIdeal, max_n: int = DEFAULT_MAX_N, window: int = DEFAULT_WINDOW,
                  characteristic: int | None = None, threads: int = 1) -> PowerProfile:
    if I.is_zero or I.is_unit:
        raise ValueError("power profiles need a nonzero proper ideal")
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    powers = [MonomialIdeal.unit(I.ring), I]
    for _ in range(2, max_n + 1):
        powers.append(product(powers[-1], I))

    def job(n):
        return _row(I, powers[n - 1], powers[n], n, characteristic)

    rows: list[PowerRow] = []
    truncated = False
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(job, n) for n in range(1, max_n + 1)]
            for f in futures:
                try:
                    rows.append(f.result())
                except ResourceLimitError:
                    truncated = True
                    break
    else:
        for n in range(1, max_n + 1):
            try:
                rows.append(job(n))
            except ResourceLimitError:
                truncated = True
                break
    stab = detect_stabilization([r.depth_graded_piece for r in rows], window)
    lin = detect_linearity([r.reg_power for r in rows], window)
    return PowerProfile(I, max_n, tuple(rows), stab, lin, window, truncated)


def star_constants(profile_i: PowerProfile, profile_j: PowerProfile):
    """(e*, f*, swapped) with slope(J) >= slope(I); swaps the roles if needed.

    e* = max_{i <= lin(I)} reg I^i - c*i and f* = max_{j <= lin(J)} reg J^j - d*j,
    where d, c are the slopes of reg I^n and reg J^n.
    """
    for p in (profile_i, profile_j):
        if not p.linearity.confident:
            raise ValueError(f"linearity of reg {to_text(p.ideal)}^n not confidently detected "
                             f"within n <= {p.computed_n}")
    swapped = False
    if profile_j.d < profile_i.d:
        profile_i, profile_j = profile_j, profile_i
        swapped = True
    d, c = profile_i.d, profile_j.d
    e_star = max(profile_i.row(i).reg_power - c * i for i in range(1, profile_i.lin + 1))
    f_star = max(profile_j.row(j).reg_power - d * j for j in range(1, profile_j.lin + 1))
    return e_star, f_star, swapped


__all__ = [
    "PowerRow", "PowerProfile", "Detection", "Linearity", "power_profile",
    "detect_stabilization", "detect_linearity", "star_constants", "power",
]
