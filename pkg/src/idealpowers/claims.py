"""Executable checks for identities and formulas about powers of sums I + J.

Every check takes I in A and J in B over disjoint variable sets (or interval
modules M, N) and compares engine values with a closed formula. A check
returns a ClaimInstance whose verdict is one of

  pass            every compared relation holds exactly
  fail            some relation fails; the witness lists both sides
  not-applicable  the claim's hypotheses do not hold for these inputs
  aborted         a resource cap was hit; counted as a failure by suites

Checks about n >> 0 only look at the computed window and are tagged
"window-verified". A Perturbation shifts or swaps the formula side so that
negative controls can confirm the checks are not vacuous.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .monomial import (
    MonomialIdeal,
    RingContext,
    extend,
    intersect,
    join_rings,
    krull_dim_quotient,
    power,
    product,
    to_text,
)
from .powers import PowerProfile, detect_stabilization, power_profile, star_constants
from .resolution import IntervalModule, ResourceLimitError, betti_table, tensor

PASS, FAIL, NA, ABORTED = "pass", "fail", "not-applicable", "aborted"


@dataclass(frozen=True)
class Perturbation:
    offset: int = 0
    swap: bool = False

    @property
    def active(self) -> bool:
        return self.offset != 0 or self.swap


NONE = Perturbation()


@dataclass
class ClaimInstance:
    claim_id: str
    inputs: dict[str, str]
    verdict: str
    witness: dict = field(default_factory=dict)
    anchor: str = ""
    scope: str = "exact"
    perturbation: Perturbation = NONE

    @property
    def input_hash(self) -> str:
        blob = json.dumps(self.inputs, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_dict(self) -> dict:
        out = {
            "claimId": self.claim_id,
            "inputs": self.inputs,
            "verdict": self.verdict,
            "witness": self.witness,
            "anchor": self.anchor,
            "scope": self.scope,
        }
        if self.perturbation.active:
            out["perturbation"] = {"offset": self.perturbation.offset, "swap": self.perturbation.swap}
        return out


# ---------------------------------------------------------------- engine values

@lru_cache(maxsize=None)
def _pow(I: MonomialIdeal, n: int) -> MonomialIdeal:
    return power(I, n)


def _char(inputs) -> int | None:
    return inputs.get("characteristic")


def qdepth(I: MonomialIdeal, n: int, ch=None) -> int:
    """depth A/I^n."""
    return betti_table(IntervalModule.quotient(_pow(I, n)), ch).depth


def qreg(I: MonomialIdeal, n: int, ch=None) -> int:
    """reg A/I^n."""
    return betti_table(IntervalModule.quotient(_pow(I, n)), ch).regularity


def piece(I: MonomialIdeal, i: int) -> IntervalModule:
    """I^i/I^(i+1); i = 0 gives A/I."""
    return IntervalModule(_pow(I, i), _pow(I, i + 1))


def pdepth(I: MonomialIdeal, i: int, ch=None) -> int:
    return betti_table(piece(I, i), ch).depth


def preg(I: MonomialIdeal, i: int, ch=None) -> int:
    return betti_table(piece(I, i), ch).regularity


def mdepth(M: IntervalModule, ch=None) -> int:
    return betti_table(M, ch).depth


def mreg(M: IntervalModule, ch=None) -> int:
    return betti_table(M, ch).regularity


# ---------------------------------------------------------------- plumbing

def ideal_text(I: MonomialIdeal) -> str:
    return f"k[{','.join(I.ring.variables)}] {to_text(I)}"


def module_text(M: IntervalModule) -> str:
    return f"k[{','.join(M.ring.variables)}] {to_text(M.top)} / {to_text(M.bot)}"


def canonical_inputs(inputs: dict) -> dict[str, str]:
    out = {}
    for k, v in sorted(inputs.items()):
        if isinstance(v, MonomialIdeal):
            out[k] = ideal_text(v)
        elif isinstance(v, IntervalModule):
            out[k] = module_text(v)
        else:
            out[k] = str(v)
    return out


class _Checks:
    """Collects individual relations for one claim instance."""

    def __init__(self, perturb: Perturbation):
        self.perturb = perturb
        self.rows: list[dict] = []

    def rel(self, label, engine: int, op: str, formula: int, **extra):
        formula = formula + self.perturb.offset
        lhs, rhs = (formula, engine) if self.perturb.swap else (engine, formula)
        ok = {"==": lhs == rhs, ">=": lhs >= rhs, "<=": lhs <= rhs}[op]
        self.rows.append({"check": label, "lhs": lhs, "op": op, "rhs": rhs, "holds": ok, **extra})
        return ok

    def ident(self, label, ok: bool, **extra):
        self.rows.append({"check": label, "holds": bool(ok), **extra})
        return ok

    def verdict(self) -> str:
        return PASS if all(r["holds"] for r in self.rows) else FAIL


def _disjoint(I: MonomialIdeal, J: MonomialIdeal):
    R = join_rings(I.ring, J.ring)
    return R, extend(I, R), extend(J, R)


def _sum_power(I, J, n):
    R, IR, JR = _disjoint(I, J)
    return _pow(IR + JR, n)


@lru_cache(maxsize=None)
def _profile(I: MonomialIdeal, max_n: int, window: int, ch) -> PowerProfile:
    return power_profile(I, max_n, window, ch)


def _min_max_n(inputs, default=5):
    return int(inputs.get("max_n", default)), int(inputs.get("window", 3))


# ---------------------------------------------------------------- identities

def check_l1(inputs, p):
    R, I, J = _disjoint(inputs["I"], inputs["J"])
    c = _Checks(p)
    c.ident("IJ = I cap J", product(I, J) == intersect(I, J))
    return c


def check_filtration(inputs, p):
    R, I, J = _disjoint(inputs["I"], inputs["J"])
    n = int(inputs["n"])
    c = _Checks(p)

    def q(i):
        acc = MonomialIdeal.zero(R)
        for j in range(i + 1):
            acc = acc + _pow(I, n - j) * _pow(J, j)
        return acc

    for i in range(1, n + 1):
        lhs = intersect(q(i - 1), _pow(I, n - i) * _pow(J, i))
        c.ident(f"Q_{i - 1} cap I^{n - i}J^{i} = I^{n - i + 1}J^{i}", lhs == _pow(I, n - i + 1) * _pow(J, i), i=i)
    return c


def check_summand(inputs, p):
    I, J = inputs["I"], inputs["J"]
    i, j = int(inputs["i"]), int(inputs["j"])
    R, IR, JR = _disjoint(I, J)
    T = tensor(piece(I, i), piece(J, j))
    c = _Checks(p)
    c.ident("top = I^iJ^j", T.top == _pow(IR, i) * _pow(JR, j))
    c.ident("bot = I^(i+1)J^j + I^iJ^(j+1)",
            T.bot == _pow(IR, i + 1) * _pow(JR, j) + _pow(IR, i) * _pow(JR, j + 1))
    return c


def check_decomp(inputs, p):
    R, I, J = _disjoint(inputs["I"], inputs["J"])
    n = int(inputs["n"])
    S = I + J
    nxt = _pow(S, n + 1)
    c = _Checks(p)
    total = MonomialIdeal.zero(R)
    for i in range(n + 1):
        j = n - i
        mixed = _pow(I, i) * _pow(J, j)
        total = total + mixed
        c.ident(f"(I+J)^{n + 1} cap I^{i}J^{j}", intersect(nxt, mixed) ==
                _pow(I, i + 1) * _pow(J, j) + _pow(I, i) * _pow(J, j + 1), i=i, j=j)
    c.ident(f"sum I^iJ^j = (I+J)^{n}", total == _pow(S, n))
    return c


# ---------------------------------------------------------------- exact formulas

def _hoatam(kind):
    def check(inputs, p):
        I, J = inputs["I"], inputs["J"]
        ch = _char(inputs)
        R, IR, JR = _disjoint(I, J)
        M = IntervalModule.quotient(IR * JR)
        c = _Checks(p)
        if kind == "D":
            c.rel("depth R/IJ", mdepth(M, ch), "==", qdepth(I, 1, ch) + qdepth(J, 1, ch) + 1)
        else:
            c.rel("reg R/IJ", mreg(M, ch), "==", qreg(I, 1, ch) + qreg(J, 1, ch) + 1)
        return c
    return check


def _firstbound(kind):
    def check(inputs, p):
        I, J, n = inputs["I"], inputs["J"], int(inputs["n"])
        ch = _char(inputs)
        M = IntervalModule.quotient(_sum_power(I, J, n))
        d, r = (qdepth, qreg)
        terms = []
        f = d if kind == "D" else r
        for i in range(1, n):
            terms.append(f(I, n - i, ch) + f(J, i, ch) + 1)
        for j in range(1, n + 1):
            terms.append(f(I, n - j + 1, ch) + f(J, j, ch))
        c = _Checks(p)
        if kind == "D":
            c.rel(f"depth R/(I+J)^{n}", mdepth(M, ch), ">=", min(terms), n=n)
        else:
            c.rel(f"reg R/(I+J)^{n}", mreg(M, ch), "<=", max(terms), n=n)
        return c
    return check


def _tensor(kind):
    def check(inputs, p):
        M, N = inputs["M"], inputs["N"]
        ch = _char(inputs)
        T = tensor(M, N)
        c = _Checks(p)
        if kind == "D":
            c.rel("depth M (x) N", mdepth(T, ch), "==", mdepth(M, ch) + mdepth(N, ch))
        else:
            c.rel("reg M (x) N", mreg(T, ch), "==", mreg(M, ch) + mreg(N, ch))
        return c
    return check


def check_attain1(inputs, p):
    I, J = inputs["I"], inputs["J"]
    ch = _char(inputs)
    dI1, dI2, dJ1, dJ2 = qdepth(I, 1, ch), qdepth(I, 2, ch), qdepth(J, 1, ch), qdepth(J, 2, ch)
    c = _Checks(p)
    c.hyp = {"depth A/I": dI1, "depth A/I^2": dI2, "depth B/J": dJ1, "depth B/J^2": dJ2}
    if dI2 < dI1 + 1:
        return None
    lhs = mdepth(IntervalModule.quotient(_sum_power(I, J, 2)), ch)
    if dJ2 >= dJ1 + 1:
        c.rel("case (i)", lhs, "==", dI1 + dJ1 + 1)
    elif dJ2 < dJ1:
        c.rel("case (ii)", lhs, "==", dI1 + dJ2)
    else:
        return None
    return c


def check_attain2(inputs, p):
    I, J = inputs["I"], inputs["J"]
    ch = _char(inputs)
    rI1, rI2, rJ1, rJ2 = qreg(I, 1, ch), qreg(I, 2, ch), qreg(J, 1, ch), qreg(J, 2, ch)
    c = _Checks(p)
    c.hyp = {"reg A/I": rI1, "reg A/I^2": rI2, "reg B/J": rJ1, "reg B/J^2": rJ2}
    if rI2 > rI1 + 1:
        return None
    lhs = mreg(IntervalModule.quotient(_sum_power(I, J, 2)), ch)
    applied = False
    if rJ2 <= rJ1 + 1:
        c.rel("case (i)", lhs, "==", rI1 + rJ1 + 1)
        applied = True
    if rJ2 > rJ1:
        c.rel("case (ii)", lhs, "==", rI1 + rJ2)
        applied = True
    return c if applied else None


def _generated_by_variables(J: MonomialIdeal) -> bool:
    return all(sum(g) == 1 for g in J.gens)


def check_linforms(inputs, p):
    I, J, n = inputs["I"], inputs["J"], int(inputs["n"])
    ch = _char(inputs)
    if not _generated_by_variables(J):
        return None
    M = IntervalModule.quotient(_sum_power(I, J, n))
    c = _Checks(p)
    c.rel("depth R/(I+J)^n", mdepth(M, ch), "==",
          min(qdepth(I, i, ch) for i in range(1, n + 1)) + krull_dim_quotient(J), n=n)
    c.rel("reg R/(I+J)^n", mreg(M, ch), "==",
          max(qreg(I, i, ch) - i for i in range(1, n + 1)) + n, n=n)
    return c


def _equality(kind):
    def check(inputs, p):
        I, J, n = inputs["I"], inputs["J"], int(inputs["n"])
        ch = _char(inputs)
        M = IntervalModule(_sum_power(I, J, n), _sum_power(I, J, n + 1))
        c = _Checks(p)
        if kind == "D":
            c.rel(f"depth (I+J)^{n}/(I+J)^{n + 1}", mdepth(M, ch), "==",
                  min(pdepth(I, i, ch) + pdepth(J, n - i, ch) for i in range(n + 1)), n=n)
        else:
            c.rel(f"reg (I+J)^{n}/(I+J)^{n + 1}", mreg(M, ch), "==",
                  max(preg(I, i, ch) + preg(J, n - i, ch) for i in range(n + 1)), n=n)
        return c
    return check


def check_secondbound(inputs, p):
    I, J, n = inputs["I"], inputs["J"], int(inputs["n"])
    ch = _char(inputs)
    M = IntervalModule.quotient(_sum_power(I, J, n))
    pairs = [(i, j) for i in range(n) for j in range(n - i)]
    c = _Checks(p)
    c.rel("depth R/(I+J)^n", mdepth(M, ch), ">=",
          min(pdepth(I, i, ch) + pdepth(J, j, ch) for i, j in pairs), n=n)
    c.rel("reg R/(I+J)^n", mreg(M, ch), "<=",
          max(preg(I, i, ch) + preg(J, j, ch) for i, j in pairs), n=n)
    return c


def check_monotone(inputs, p):
    I, J, n = inputs["I"], inputs["J"], int(inputs["n"])
    ch = _char(inputs)
    M = IntervalModule.quotient(_sum_power(I, J, n))
    c = _Checks(p)
    # piece index i here is I^i/I^(i+1), so the hypothesis runs over i = 1..n-1
    if all(pdepth(I, i - 1, ch) >= pdepth(I, i, ch) for i in range(1, n)):
        c.rel("depth (i)", mdepth(M, ch), "==",
              min(pdepth(I, i, ch) + pdepth(J, n - 1 - i, ch) for i in range(n)), n=n)
    if all(preg(I, i - 1, ch) + 2 <= preg(I, i, ch) for i in range(1, n)):
        c.rel("reg (ii)", mreg(M, ch), "==",
              max(preg(I, i, ch) + preg(J, n - 1 - i, ch) for i in range(n)), n=n)
    return c if c.rows else None


def check_cm_equiv(inputs, p):
    I, J, n = inputs["I"], inputs["J"], int(inputs["n"])
    ch = _char(inputs)
    R, IR, JR = _disjoint(I, J)
    dimQ, dimI, dimJ = krull_dim_quotient(IR + JR), krull_dim_quotient(I), krull_dim_quotient(J)
    sum_cm = all(mdepth(IntervalModule.quotient(_sum_power(I, J, i)), ch) == dimQ for i in range(1, n + 1))
    parts_cm = all(qdepth(I, i, ch) == dimI and qdepth(J, i, ch) == dimJ for i in range(1, n + 1))
    c = _Checks(p)
    c.ident("CM(R/(I+J)^i, i<=n) <=> CM(A/I^i) and CM(B/J^i), i<=n", sum_cm == parts_cm,
            sum_cm=sum_cm, parts_cm=parts_cm)
    return c


# ---------------------------------------------------------------- window forms

def check_min_depth(inputs, p):
    I = inputs["I"]
    max_n, w = _min_max_n(inputs)
    P = _profile(I, max_n, w, _char(inputs))
    c = _Checks(p)
    c.rel("min depth A/I^i", min(P.depths()), "==", min(P.piece_depths()), upto=P.computed_n)
    return c


def check_reg_lin(inputs, p):
    I = inputs["I"]
    max_n, w = _min_max_n(inputs)
    P = _profile(I, max_n, w, _char(inputs))
    if not P.linearity.confident:
        return None
    c = _Checks(p)
    for n in range(P.lin + 1, P.computed_n + 1):
        c.rel(f"reg I^{n - 1}/I^{n}", P.row(n).reg_graded_piece, "==", P.row(n).reg_power - 1, n=n)
    return c if c.rows else None


def check_reg_max(inputs, p):
    I = inputs["I"]
    max_n, w = _min_max_n(inputs)
    P = _profile(I, max_n, w, _char(inputs))
    cs = inputs.get("c_values", range(1, 6))
    c = _Checks(p)
    for cc in cs:
        for t in range(1, P.computed_n + 1):
            lhs = max(P.row(n).reg_graded_piece - cc * n for n in range(1, t + 1))
            rhs = max(P.row(n).reg_power - cc * n for n in range(1, t + 1)) - 1
            c.rel(f"c={cc}, t={t}", lhs, "==", rhs)
    return c


def check_ses(kind):
    def check(inputs, p):
        I = inputs["I"]
        ch = _char(inputs)
        max_n = int(inputs.get("max_n", 3))
        c = _Checks(p)
        for n in range(1, max_n):
            # 0 -> M -> N -> P -> 0 with M = I^n/I^(n+1), N = A/I^(n+1), P = A/I^n
            if kind == "D":
                m, nn, pp = pdepth(I, n, ch), qdepth(I, n + 1, ch), qdepth(I, n, ch)
                c.rel("(i)", nn, ">=", min(m, pp), n=n)
                c.rel("(ii)", m, ">=", min(nn, pp + 1), n=n)
                c.rel("(iii)", pp, ">=", min(m - 1, nn), n=n)
                if nn > pp:
                    c.rel("(iv)", m, "==", pp + 1, n=n)
                if nn > m:
                    c.rel("(v)", pp, "==", m - 1, n=n)
                if nn < m:
                    c.rel("(vi)", pp, "==", nn, n=n)
                if pp >= m:
                    c.rel("(vii)", nn, "==", m, n=n)
            else:
                m, nn, pp = preg(I, n, ch), qreg(I, n + 1, ch), qreg(I, n, ch)
                c.rel("(i)", nn, "<=", max(m, pp), n=n)
                c.rel("(ii)", m, "<=", max(nn, pp + 1), n=n)
                c.rel("(iii)", pp, "<=", max(m - 1, nn), n=n)
                if nn < pp:
                    c.rel("(iv)", m, "==", pp + 1, n=n)
                if nn < m:
                    c.rel("(v)", pp, "==", m - 1, n=n)
                if nn > m:
                    c.rel("(vi)", pp, "==", nn, n=n)
                if pp + 1 < m:
                    c.rel("(vii)", nn, "==", m, n=n)
        return c
    return check


def _profiles(inputs, with_sum=True):
    I, J = inputs["I"], inputs["J"]
    max_n, w = _min_max_n(inputs)
    ch = _char(inputs)
    PI, PJ = _profile(I, max_n, w, ch), _profile(J, max_n, w, ch)
    PQ = None
    if with_sum:
        R, IR, JR = _disjoint(I, J)
        PQ = _profile(IR + JR, max_n, w, ch)
    return PI, PJ, PQ


def check_d_asymp(inputs, p):
    PI, PJ, PQ = _profiles(inputs)
    if not (PI.stability.confident and PJ.stability.confident):
        return None
    sI, sJ = PI.s, PJ.s
    gI, gJ = PI.piece_depths(), PJ.piece_depths()
    target = min(gI[-1] + min(gJ[:sJ]), min(gI[:sI]) + gJ[-1])
    c = _Checks(p)
    for n in range(max(1, sI + sJ - 1), PQ.computed_n + 1):
        c.rel(f"depth (I+J)^{n - 1}/(I+J)^{n}", PQ.row(n).depth_graded_piece, "==", target, n=n)
    return c if c.rows else None


def check_s_bound(inputs, p):
    PI, PJ, PQ = _profiles(inputs)
    if not (PI.stability.confident and PJ.stability.confident and PQ.stability.confident):
        return None
    c = _Checks(p)
    c.rel("s(I+J)", PQ.s, "<=", PI.s + PJ.s - 1)
    return c


def check_t_lim(inputs, p):
    PI, PJ, PQ = _profiles(inputs)
    w = PI.window
    dets = [detect_stabilization(P.depths(), w) for P in (PI, PJ, PQ)]
    if not all(d.confident for d in dets):
        return None
    dI, dJ = PI.depths(), PJ.depths()
    c = _Checks(p)
    c.rel("lim depth R/(I+J)^n", PQ.depths()[-1], "==",
          min(dI[-1] + min(dJ), min(dI) + dJ[-1]), stable_from=dets[2].index)
    return c


def check_hv_const(inputs, p):
    I, J = inputs["I"], inputs["J"]
    if not (I.is_squarefree() and J.is_squarefree()):
        return None
    PI, PJ, PQ = _profiles(inputs)
    const = lambda xs: len(set(xs)) == 1  # noqa: E731
    c = _Checks(p)
    c.ident("constant(I+J) <=> constant(I) and constant(J)",
            const(PQ.depths()) == (const(PI.depths()) and const(PJ.depths())),
            sum_depths=PQ.depths(), I_depths=PI.depths(), J_depths=PJ.depths())
    return c


def _lin_setup(inputs):
    """Profiles ordered so that slope(first) <= slope(second), plus constants."""
    PI, PJ, _ = _profiles(inputs, with_sum=False)
    if not (PI.linearity.confident and PJ.linearity.confident):
        return None
    e_star, f_star, swapped = star_constants(PI, PJ)
    if swapped:
        PI, PJ = PJ, PI
    return PI, PJ, e_star, f_star


def _reg_target(PI, PJ, e_star, f_star, n, shift):
    d, e, c, f = PI.d, PI.e, PJ.d, PJ.e
    return max(d * (n + 1) + e + f_star, c * (n + 1) + f + e_star) - shift


def check_r_quot(inputs, p):
    setup = _lin_setup(inputs)
    if setup is None:
        return None
    PI, PJ, e_star, f_star = setup
    max_n = PI.max_n
    ch = _char(inputs)
    I, J = inputs["I"], inputs["J"]
    c = _Checks(p)
    for n in range(max(1, PI.lin + PJ.lin), max_n + 1):
        M = IntervalModule(_sum_power(I, J, n - 1), _sum_power(I, J, n))
        c.rel(f"reg (I+J)^{n - 1}/(I+J)^{n}", mreg(M, ch), "==",
              _reg_target(PI, PJ, e_star, f_star, n, 2), n=n)
    c.constants = {"d": PI.d, "e": PI.e, "c": PJ.d, "f": PJ.e, "e*": e_star, "f*": f_star,
                   "lin(I)": PI.lin, "lin(J)": PJ.lin}
    return c if c.rows else None


def check_r_formula(inputs, p):
    setup = _lin_setup(inputs)
    if setup is None:
        return None
    PI, PJ, e_star, f_star = setup
    ch = _char(inputs)
    I, J = inputs["I"], inputs["J"]
    c = _Checks(p)
    for n in range(PI.lin + PJ.lin + 1, PI.max_n + 1):
        M = IntervalModule.quotient(_sum_power(I, J, n))
        c.rel(f"reg (I+J)^{n}", mreg(M, ch) + 1, "==",
              _reg_target(PI, PJ, e_star, f_star, n, 1), n=n)
    c.constants = {"d": PI.d, "e": PI.e, "c": PJ.d, "f": PJ.e, "e*": e_star, "f*": f_star,
                   "lin(I)": PI.lin, "lin(J)": PJ.lin}
    return c if c.rows else None


def check_r_asymp(inputs, p):
    setup = _lin_setup(inputs)
    if setup is None:
        return None
    PI, PJ, e_star, f_star = setup
    _, _, PQ = _profiles(inputs)
    if not PQ.linearity.confident:
        return None
    d, e, cc, f = PI.d, PI.e, PJ.d, PJ.e
    c = _Checks(p)
    for n in range(max(PQ.lin, PI.lin + PJ.lin + 1), PQ.computed_n + 1):
        if cc > d:
            target = cc * (n + 1) + f + e_star - 1
        else:
            target = d * (n + 1) + max(f + e_star, e + f_star) - 1
        c.rel(f"reg (I+J)^{n}", PQ.row(n).reg_power, "==", target, n=n)
    return c if c.rows else None


def check_lin_bound(inputs, p):
    PI, PJ, PQ = _profiles(inputs)
    if not (PI.linearity.confident and PJ.linearity.confident and PQ.linearity.confident):
        return None
    if PI.d != PJ.d:
        return None
    c = _Checks(p)
    c.rel("lin(I+J)", PQ.lin, "<=", PI.lin + PJ.lin + 1)
    return c


# ---------------------------------------------------------------- registry

@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    check: Callable
    anchor: str
    needs: tuple[str, ...]
    window: bool = False


_ASYMP_DEPTH = ("min{lim g_I + min_{j<=s(J)} g_J(j), min_{i<=s(I)} g_I(i) + lim g_J}, "
                "g(i) = depth I^(i-1)/I^i")

REGISTRY: dict[str, ClaimSpec] = {c.claim_id: c for c in [
    ClaimSpec("L1", check_l1, "IJ = I cap J for I, J in disjoint variables", ("I", "J")),
    ClaimSpec("FILTRATION", check_filtration,
              "Q_(i-1) cap I^(n-i)J^i = I^(n-i+1)J^i, Q_i = sum_{j<=i} I^(n-j)J^j", ("I", "J", "n")),
    ClaimSpec("HOATAM-D", _hoatam("D"), "depth R/IJ = depth A/I + depth B/J + 1", ("I", "J")),
    ClaimSpec("HOATAM-R", _hoatam("R"), "reg R/IJ = reg A/I + reg B/J + 1", ("I", "J")),
    ClaimSpec("T-FIRSTBOUND-D", _firstbound("D"),
              "depth R/(I+J)^n >= min_{i in [1,n-1], j in [1,n]} {depth A/I^(n-i) + depth B/J^i + 1, "
              "depth A/I^(n-j+1) + depth B/J^j}", ("I", "J", "n")),
    ClaimSpec("T-FIRSTBOUND-R", _firstbound("R"),
              "reg R/(I+J)^n <= max_{i in [1,n-1], j in [1,n]} {reg A/I^(n-i) + reg B/J^i + 1, "
              "reg A/I^(n-j+1) + reg B/J^j}", ("I", "J", "n")),
    ClaimSpec("TENSOR-D", _tensor("D"), "depth M (x)_k N = depth M + depth N", ("M", "N")),
    ClaimSpec("TENSOR-R", _tensor("R"), "reg M (x)_k N = reg M + reg N", ("M", "N")),
    ClaimSpec("ATTAIN-1", check_attain1,
              "depth A/I^2 >= depth A/I + 1 implies depth R/(I+J)^2 = depth A/I + depth B/J + 1 "
              "(depth B/J^2 >= depth B/J + 1) or depth A/I + depth B/J^2 (depth B/J^2 < depth B/J)",
              ("I", "J")),
    ClaimSpec("ATTAIN-2", check_attain2,
              "reg A/I^2 <= reg A/I + 1 implies reg R/(I+J)^2 = reg A/I + reg B/J + 1 "
              "(reg B/J^2 <= reg B/J + 1) or reg A/I + reg B/J^2 (reg B/J^2 > reg B/J)", ("I", "J")),
    ClaimSpec("LINFORMS", check_linforms,
              "J = (y_1..y_t): depth R/(I+J)^n = min_{i<=n} depth A/I^i + dim B/J, "
              "reg R/(I+J)^n = max_{i<=n} {reg A/I^i - i} + n", ("I", "J", "n")),
    ClaimSpec("SUMMAND", check_summand,
              "I^i/I^(i+1) (x)_k J^j/J^(j+1) = I^iJ^j / (I^(i+1)J^j + I^iJ^(j+1))", ("I", "J", "i", "j")),
    ClaimSpec("DECOMP", check_decomp,
              "(I+J)^(n+1) cap I^iJ^j = I^(i+1)J^j + I^iJ^(j+1) for i+j = n; sum_{i+j=n} I^iJ^j = (I+J)^n",
              ("I", "J", "n")),
    ClaimSpec("T-EQUALITY-D", _equality("D"),
              "depth (I+J)^n/(I+J)^(n+1) = min_{i+j=n} {depth I^i/I^(i+1) + depth J^j/J^(j+1)}",
              ("I", "J", "n")),
    ClaimSpec("T-EQUALITY-R", _equality("R"),
              "reg (I+J)^n/(I+J)^(n+1) = max_{i+j=n} {reg I^i/I^(i+1) + reg J^j/J^(j+1)}", ("I", "J", "n")),
    ClaimSpec("SECONDBOUND", check_secondbound,
              "depth R/(I+J)^n >= min_{i+j<=n-1} {...}, reg R/(I+J)^n <= max_{i+j<=n-1} {...} "
              "over I^i/I^(i+1), J^j/J^(j+1)", ("I", "J", "n")),
    ClaimSpec("MONOTONE", check_monotone,
              "non-increasing depth I^(i-1)/I^i (resp. reg I^(i-1)/I^i + 2 <= reg I^i/I^(i+1)) for i <= n-1 "
              "gives depth (resp. reg) R/(I+J)^n = the i+j = n-1 min (resp. max)", ("I", "J", "n")),
    ClaimSpec("CM-EQUIV", check_cm_equiv,
              "R/(I+J)^i CM for i <= n iff A/I^i and B/J^i CM for i <= n", ("I", "J", "n")),
    ClaimSpec("D-ASYMP", check_d_asymp,
              "n >= s(I)+s(J)-1: depth (I+J)^(n-1)/(I+J)^n = " + _ASYMP_DEPTH, ("I", "J"), True),
    ClaimSpec("S-BOUND", check_s_bound, "s(I+J) <= s(I)+s(J)-1", ("I", "J"), True),
    ClaimSpec("MIN-LEMMA", check_min_depth, "min_i depth A/I^i = min_i depth I^(i-1)/I^i", ("I",), True),
    ClaimSpec("T-LIM", check_t_lim,
              "lim depth R/(I+J)^n = min{lim depth A/I^i + min depth B/J^j, min depth A/I^i + lim depth B/J^j}",
              ("I", "J"), True),
    ClaimSpec("HV-CONST", check_hv_const,
              "squarefree I, J: I+J has constant depth function iff I and J do", ("I", "J"), True),
    ClaimSpec("REG-LIN", check_reg_lin, "reg I^(n-1)/I^n = reg I^n - 1 for n >= lin(I)+1", ("I",), True),
    ClaimSpec("REG-MAX", check_reg_max,
              "max_{n<=t} {reg I^(n-1)/I^n - cn} = max_{n<=t} {reg I^n - cn} - 1", ("I",), True),
    ClaimSpec("R-QUOT", check_r_quot,
              "n >= lin(I)+lin(J): reg (I+J)^(n-1)/(I+J)^n = max{d(n+1)+e+f*, c(n+1)+f+e*} - 2",
              ("I", "J"), True),
    ClaimSpec("R-ASYMP", check_r_asymp,
              "n >> 0: reg (I+J)^n = c(n+1)+f+e*-1 (c > d), d(n+1)+max{f+e*, e+f*}-1 (c = d)",
              ("I", "J"), True),
    ClaimSpec("R-FORMULA", check_r_formula,
              "n >= lin(I)+lin(J)+1: reg (I+J)^n = max{d(n+1)+e+f*, c(n+1)+f+e*} - 1", ("I", "J"), True),
    ClaimSpec("LIN-BOUND", check_lin_bound, "c = d: lin(I+J) <= lin(I)+lin(J)+1", ("I", "J"), True),
    ClaimSpec("SES-D", check_ses("D"),
              "depth relations on 0 -> I^n/I^(n+1) -> A/I^(n+1) -> A/I^n -> 0", ("I",)),
    ClaimSpec("SES-R", check_ses("R"),
              "reg relations on 0 -> I^n/I^(n+1) -> A/I^(n+1) -> A/I^n -> 0", ("I",)),
]}

CLAIM_IDS = tuple(REGISTRY)


def verify_claim(claim_id: str, inputs: dict, perturb: Perturbation = NONE) -> ClaimInstance:
    if claim_id not in REGISTRY:
        raise KeyError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIM_IDS)}")
    spec = REGISTRY[claim_id]
    missing = [k for k in spec.needs if k not in inputs]
    if missing:
        raise ValueError(f"{claim_id} needs inputs {missing}")
    scope = "window-verified" if spec.window else "exact"
    canon = canonical_inputs(inputs)
    try:
        checks = spec.check(inputs, perturb)
    except ResourceLimitError as exc:
        return ClaimInstance(claim_id, canon, ABORTED, {"error": str(exc)}, spec.anchor, scope, perturb)
    if checks is None:
        return ClaimInstance(claim_id, canon, NA, {}, spec.anchor, scope, perturb)
    witness = {"checks": checks.rows}
    for extra in ("hyp", "constants"):
        if hasattr(checks, extra):
            witness[extra] = getattr(checks, extra)
    return ClaimInstance(claim_id, canon, checks.verdict(), witness, spec.anchor, scope, perturb)


@dataclass
class SuiteReport:
    instances: list[ClaimInstance]

    def count(self, verdict: str) -> int:
        return sum(1 for c in self.instances if c.verdict == verdict)

    @property
    def failures(self) -> int:
        return self.count(FAIL) + self.count(ABORTED)

    @property
    def exit_status(self) -> int:
        return 1 if self.failures else 0

    def to_dict(self) -> dict:
        return {
            "summary": {v: self.count(v) for v in (PASS, FAIL, NA, ABORTED)},
            "exit_status": self.exit_status,
            "instances": [c.to_dict() for c in self.instances],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_suite(items, threads: int = 1) -> SuiteReport:
    """items: (claim_id, inputs) or (claim_id, inputs, Perturbation) tuples."""
    items = [tuple(it) + (NONE,) * (3 - len(it)) for it in items]

    def run(it):
        return verify_claim(*it)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            out = list(pool.map(run, items))
    else:
        out = [run(it) for it in items]
    out.sort(key=lambda c: (c.claim_id, c.input_hash))
    return SuiteReport(out)


# ---------------------------------------------------------------- random inputs

@dataclass(frozen=True)
class Shape:
    max_vars: int = 3
    max_gens: int = 4
    max_exp: int = 4


def _random_ideal(rng: random.Random, ring: RingContext, shape: Shape) -> MonomialIdeal:
    n = ring.nvars
    gens = []
    for _ in range(rng.randint(1, shape.max_gens)):
        while True:
            e = tuple(rng.randint(0, shape.max_exp) for _ in range(n))
            if any(e):
                break
        gens.append(e)
    return MonomialIdeal(ring, tuple(gens))


def random_ideal(seed: int, shape: Shape = Shape(), names: str = "x") -> MonomialIdeal:
    rng = random.Random(seed)
    r = rng.randint(1, shape.max_vars)
    return _random_ideal(rng, RingContext(tuple(f"{names}{i}" for i in range(1, r + 1))), shape)


def random_instance(seed: int, shape: Shape = Shape()) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Deterministic pair of nonzero proper ideals in k[x...] and k[y...]."""
    rng = random.Random(f"pair:{seed}")
    r, s = rng.randint(1, shape.max_vars), rng.randint(1, shape.max_vars)
    A = RingContext(tuple(f"x{i}" for i in range(1, r + 1)))
    B = RingContext(tuple(f"y{i}" for i in range(1, s + 1)))
    return _random_ideal(rng, A, shape), _random_ideal(rng, B, shape)


def random_module(seed: int, shape: Shape = Shape(), names: str = "x") -> IntervalModule:
    """Deterministic interval module top/bot with bot a proper subideal of top."""
    rng = random.Random(f"module:{names}:{seed}")
    r = rng.randint(1, shape.max_vars)
    ring = RingContext(tuple(f"{names}{i}" for i in range(1, r + 1)))
    kind = rng.random()
    if kind < 0.25:
        top = MonomialIdeal.unit(ring)
    else:
        top = _random_ideal(rng, ring, shape)
    if kind > 0.9:
        return IntervalModule(top, MonomialIdeal.zero(ring))
    while True:
        bot = intersect(top, _random_ideal(rng, ring, shape))
        if bot != top:
            return IntervalModule(top, bot)


def random_linear_pair(seed: int, t: int, shape: Shape = Shape()) -> tuple[MonomialIdeal, MonomialIdeal]:
    """Random I and J = (y1..yt) in k[y1..ys] with t <= s <= t+1."""
    rng = random.Random(f"lin:{seed}:{t}")
    r = rng.randint(1, shape.max_vars)
    A = RingContext(tuple(f"x{i}" for i in range(1, r + 1)))
    s = t + rng.randint(0, 1)
    B = RingContext(tuple(f"y{i}" for i in range(1, s + 1)))
    J = MonomialIdeal.variables_ideal(B, B.variables[:t])
    return _random_ideal(rng, A, shape), J
