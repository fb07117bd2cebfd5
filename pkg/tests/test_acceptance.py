"""Acceptance criteria 1-11; each test prints one PASS/FAIL line.

Run alone with `python3 -m pytest tests/test_acceptance.py -v`; the lines are
repeated in the "acceptance criteria" section of the terminal summary.
"""

from __future__ import annotations

import time

from idealpowers import IntervalModule, RingContext, betti_table, exhaustive_betti_oracle, from_text, summary
from idealpowers.claims import (
    Perturbation,
    random_instance,
    random_linear_pair,
    random_module,
    verify_claim,
)
from idealpowers.constructor import DepthSpec, construct_and_verify
from idealpowers.powers import power_profile, star_constants


def _failures(instances):
    return [c.to_dict() for c in instances if c.verdict != "pass"]


def test_criterion_01_conca_regularity(criterion):
    t0 = time.perf_counter()
    R = RingContext(("x1", "x2", "x3"))
    I = from_text(R, "(x1^4, x1^3*x2, x1*x2^3, x2^4, x1^2*x2^2*x3^5)")
    r1 = summary(IntervalModule.quotient(I)).reg
    r2 = summary(IntervalModule.quotient(I ** 2)).reg
    dt = time.perf_counter() - t0
    ok = (r1, r2) == (8, 7) and dt < 120
    criterion(1, ok, f"reg A/I = {r1}, reg A/I^2 = {r2} (expected 8, 7) in {dt:.1f}s")
    assert ok


def test_criterion_02_herzog_hibi_depths(criterion):
    t0 = time.perf_counter()
    R = RingContext(("x", "y", "z"))
    I = from_text(R, "(x^4, x^3*y, x*y^3, y^4, x^2*y^2*z)")
    got = (summary(IntervalModule.quotient(I)).depth, summary(IntervalModule.quotient(I ** 2)).depth,
           summary(IntervalModule(I, I ** 2)).depth)
    dt = time.perf_counter() - t0
    ok = got == (0, 1, 1) and dt < 60
    criterion(2, ok, f"depth A/I, A/I^2, I/I^2 = {got} (expected (0, 1, 1)) in {dt:.1f}s")
    assert ok


def test_criterion_03_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    bad = []
    for seed in range(50):
        M = random_module(seed)
        if betti_table(M) != exhaustive_betti_oracle(M):
            bad.append(seed)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    criterion(3, ok, f"50 random interval modules, engine = exhaustive oracle; mismatching seeds {bad} in {dt:.1f}s")
    assert ok


def test_criterion_04_identities(criterion):
    t0 = time.perf_counter()
    out = []
    for seed in range(100):
        I, J = random_instance(seed)
        out.append(verify_claim("L1", {"I": I, "J": J}))
        for n in (1, 2, 3):
            out.append(verify_claim("FILTRATION", {"I": I, "J": J, "n": n}))
            out.append(verify_claim("DECOMP", {"I": I, "J": J, "n": n}))
    dt = time.perf_counter() - t0
    bad = _failures(out)
    ok = not bad and dt < 300
    criterion(4, ok, f"L1, FILTRATION, DECOMP on 100 pairs, n <= 3: {len(out) - len(bad)}/{len(out)} pass "
                     f"in {dt:.1f}s")
    assert ok, bad[:3]


def _first_bound_instances(perturb=Perturbation()):
    out = []
    for seed in range(50):
        I, J = random_instance(seed)
        for n in (1, 2, 3):
            for cid in ("T-FIRSTBOUND-D", "T-FIRSTBOUND-R"):
                if perturb.active and cid != "T-FIRSTBOUND-D":
                    continue
                out.append(verify_claim(cid, {"I": I, "J": J, "n": n}, perturb))
    return out


def _equality_instances(perturb=Perturbation()):
    out = []
    for seed in range(30):
        I, J = random_instance(seed)
        for n in (1, 2, 3):
            for cid in ("T-EQUALITY-D", "T-EQUALITY-R"):
                if perturb.active and cid != "T-EQUALITY-R":
                    continue
                out.append(verify_claim(cid, {"I": I, "J": J, "n": n}, perturb))
    return out


def test_criterion_05_first_bound(criterion):
    t0 = time.perf_counter()
    out = _first_bound_instances()
    dt = time.perf_counter() - t0
    bad = _failures(out)
    ok = not bad and dt < 600
    criterion(5, ok, f"first-bound depth/reg on 50 pairs, n <= 3: {len(out) - len(bad)}/{len(out)} pass in {dt:.1f}s")
    assert ok, bad[:3]


def test_criterion_06_equality(criterion):
    t0 = time.perf_counter()
    out = _equality_instances()
    dt = time.perf_counter() - t0
    bad = _failures(out)
    ok = not bad and dt < 600
    criterion(6, ok, f"graded-piece depth/reg equality on 30 pairs, n <= 3: {len(out) - len(bad)}/{len(out)} pass "
                     f"in {dt:.1f}s")
    assert ok, bad[:3]


def test_criterion_07_tensor_additivity(criterion):
    out = []
    for seed in range(30):
        M, N = random_module(seed, names="x"), random_module(seed, names="y")
        out += [verify_claim(cid, {"M": M, "N": N}) for cid in ("TENSOR-D", "TENSOR-R")]
    bad = _failures(out)
    ok = not bad
    criterion(7, ok, f"depth/reg additive under tensor on 30 module pairs: {len(out) - len(bad)}/{len(out)} pass")
    assert ok, bad[:3]


def test_criterion_08_linear_forms(criterion):
    out = []
    for t in (1, 2):
        for seed in range(10):
            I, J = random_linear_pair(seed, t)
            out += [verify_claim("LINFORMS", {"I": I, "J": J, "n": n}) for n in (1, 2, 3)]
    bad = _failures(out)
    ok = not bad
    criterion(8, ok, f"linear-forms depth/reg formulas, 10 seeds x t in {{1, 2}}, n <= 3: "
                     f"{len(out) - len(bad)}/{len(out)} pass")
    assert ok, bad[:3]


CONSTRUCTOR_SPECS = [((), 0), ((1,), 1), ((1,), 0), ((2,), 1), ((3, 1), 0)]


def test_criterion_09_constructor(criterion):
    t0 = time.perf_counter()
    rows = []
    for prefix, tail in CONSTRUCTOR_SPECS:
        spec = DepthSpec(prefix, tail, check_up_to=4)
        rep = construct_and_verify(spec)
        rows.append((spec.values(4), rep.quotient_depths, rep.piece_depths, rep.ring.nvars, rep.passed))
    dt = time.perf_counter() - t0
    ok = all(r[-1] for r in rows) and dt < 900
    detail = "; ".join(f"f={r[0]} got {r[1]} ({r[3]} vars)" for r in rows)
    criterion(9, ok, f"constructor, depth R/Q^n = f(n) for n <= 4: {detail} in {dt:.1f}s")
    assert ok, rows


def test_criterion_10_regularity_window(criterion):
    t0 = time.perf_counter()
    A, B = RingContext(("x", "y")), RingContext(("u", "v"))
    I, J = from_text(A, "(x, y)") ** 2, from_text(B, "(u, v)") ** 3
    e_star, f_star, _ = star_constants(power_profile(I, 5), power_profile(J, 5))
    inputs = {"I": I, "J": J, "max_n": 5}
    quot, formula = verify_claim("R-QUOT", inputs), verify_claim("R-FORMULA", inputs)
    regs = {row["n"]: row["lhs"] for row in formula.witness.get("checks", [])}
    dt = time.perf_counter() - t0
    ok = (quot.verdict == formula.verdict == "pass" and (e_star, f_star) == (-1, 1)
          and regs and all(v == 3 * n + 1 for n, v in regs.items()) and dt < 600)
    criterion(10, ok, f"e*={e_star}, f*={f_star}; R-QUOT {quot.verdict} on n in "
                      f"{[r['n'] for r in quot.witness.get('checks', [])]}, R-FORMULA {formula.verdict}, "
                      f"reg (I+J)^n = {regs} in {dt:.1f}s")
    assert ok, (quot.to_dict(), formula.to_dict())


def test_criterion_11_negative_controls(criterion):
    fb = _first_bound_instances(Perturbation(offset=1))
    eq = _equality_instances(Perturbation(offset=-1))
    n_fb = sum(c.verdict == "fail" for c in fb)
    n_eq = sum(c.verdict == "fail" for c in eq)
    ok = n_fb >= 1 and n_eq >= 1
    criterion(11, ok, f"first-bound depth +1 fails {n_fb}/{len(fb)}, equality reg -1 fails {n_eq}/{len(eq)}")
    assert ok
