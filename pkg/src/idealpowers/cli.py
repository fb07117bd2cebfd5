"""Command-line front end: run ideal scripts or build prescribed depth functions."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .claims import CLAIM_IDS, REGISTRY, Perturbation, random_instance, random_module, verify_suite
from .constructor import DepthSpec, construct_and_verify
from .dsl import DSLError, Command, Env, IdealDef, Name, RingDecl, parse, unify
from .monomial import RingMismatchError, extend, krull_dim_quotient, to_text
from .powers import DEFAULT_MAX_N, power_profile
from .resolution import IntervalModule, ResourceLimitError, betti_table

# exact claims exercised by `verify suite` when no claim list is given
SUITE_DEFAULT = ("L1", "FILTRATION", "DECOMP", "T-FIRSTBOUND-D", "T-FIRSTBOUND-R",
                 "T-EQUALITY-D", "T-EQUALITY-R")


@dataclass
class Flags:
    fmt: str = "text"
    characteristic: int = 0
    threads: int = 1
    max_power: int = DEFAULT_MAX_N
    seed: int = 0
    timing: bool = True


@dataclass
class Result:
    kind: str
    input: str
    output: object
    timing_ms: float
    ok: bool = True
    text: str = ""
    csv: str = ""
    error: str | None = None

    def to_dict(self, timing: bool = True) -> dict:
        d = {"kind": self.kind, "input": self.input, "output": self.output,
             "timing_ms": round(self.timing_ms, 3) if timing else 0}
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class RunState:
    flags: Flags
    env: Env
    results: list[Result] = field(default_factory=list)


def _module(env: Env, cmd: Command) -> IntervalModule:
    t = cmd.target
    if t.form == "ideal":
        return IntervalModule.ideal(env.eval(t.top))
    if t.form == "quotient":
        return IntervalModule.quotient(env.eval(t.bot))
    if isinstance(t.top, Name) and t.top.ident in env.rings and t.top.ident not in env.ideals:
        R = env.rings[t.top.ident]
        I = env.eval(t.bot)
        if not set(I.ring.variables) <= set(R.variables):
            raise DSLError(f"ideal uses variables outside ring {t.top.ident}", t.bot.line, t.bot.col)
        return IntervalModule.quotient(extend(I, R))
    top, bot = unify(env.eval(t.top), env.eval(t.bot))
    return IntervalModule(top, bot)


def _scalar(state: RunState, cmd: Command) -> Result:
    M = _module(state.env, cmd)
    ch = state.flags.characteristic
    if cmd.kind == "betti":
        table = betti_table(M, ch)
        lines = [f"{i}: {rank}" for i, rank in sorted(table.totals().items())]
        text = f"betti {cmd.source}\n" + "\n".join(lines) + f"\npd={table.pd} depth={table.depth} reg={table.regularity}"
        out = {"ring": list(M.ring.variables), "totals": {str(k): v for k, v in table.totals().items()},
               "entries": table.to_dict(), "pd": table.pd, "depth": table.depth, "reg": table.regularity}
        return Result("betti", cmd.source, out, 0, text=text, csv=table.to_csv())
    if cmd.kind == "dim":
        if not M.top.is_unit:
            raise DSLError("dim is only available for quotients A/I", cmd.line, cmd.col)
        value = krull_dim_quotient(M.bot)
    else:
        table = betti_table(M, ch)
        value = table.depth if cmd.kind == "depth" else table.regularity
    return Result(cmd.kind, cmd.source, value, 0, text=str(value),
                  csv=f"kind,input,value\n{cmd.kind},{_csv_field(cmd.source)},{value}\n")


def _csv_field(s: str) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow([s])
    return buf.getvalue()


def _profile(state: RunState, cmd: Command) -> Result:
    opts = dict(cmd.options)
    I = state.env.eval(cmd.target.bot)
    max_n = int(opts.get("max", state.flags.max_power))
    window = int(opts.get("window", 3))
    P = power_profile(I, max_n, window, state.flags.characteristic, state.flags.threads)
    lines = ["n depth_quotient reg_power depth_graded_piece reg_graded_piece"]
    lines += [f"{r.n} {r.depth_quotient} {r.reg_power} {r.depth_graded_piece} {r.reg_graded_piece}" for r in P.rows]
    lin = P.linearity
    lines.append(f"s={P.s} ({'confident' if P.stability.confident else 'unconfirmed'}) "
                 f"d={lin.slope} e={lin.intercept} lin={lin.index} "
                 f"({'confident' if lin.confident else 'unconfirmed'})")
    if P.truncated:
        lines.append(f"truncated after n={P.computed_n}: resource cap reached")
    return Result("profile", cmd.source, P.to_dict(), 0, text="\n".join(lines), csv=P.to_csv())


def _verify(state: RunState, cmd: Command) -> Result:
    opts = dict(cmd.options)
    claim = opts.pop("claim")
    perturb = Perturbation(int(opts.pop("offset", 0)), str(opts.pop("swap", "false")).lower() == "true")
    env, flags = state.env, state.flags
    ch = flags.characteristic
    if claim == "suite":
        count = int(opts.get("count", 10))
        n_max = int(opts.get("n", 2))
        claims = opts.get("claims")
        claims = claims.split("+") if isinstance(claims, str) else SUITE_DEFAULT
        items = []
        for k in range(count):
            I, J = random_instance(flags.seed + k)
            for cid in claims:
                if cid not in REGISTRY:
                    raise DSLError(f"unknown claim {cid!r}", cmd.line, cmd.col)
                if "M" in REGISTRY[cid].needs:
                    inputs = {"M": random_module(flags.seed + k, names="x"),
                              "N": random_module(flags.seed + k, names="y")}
                    items.append((cid, {**inputs, "characteristic": ch}, perturb))
                    continue
                spec = REGISTRY[cid]
                base = {"I": I, "J": J, "i": 0, "j": 0, "characteristic": ch}
                if spec.window:
                    base["max_n"] = flags.max_power
                keep = {k: v for k, v in base.items() if k in spec.needs or k in ("characteristic", "max_n")}
                if "n" not in spec.needs:
                    items.append((cid, keep, perturb))
                    continue
                for n in range(1, n_max + 1):
                    items.append((cid, {**keep, "n": n}, perturb))
    else:
        if claim not in REGISTRY:
            raise DSLError(f"unknown claim {claim!r}; known: {', '.join(CLAIM_IDS)}", cmd.line, cmd.col)
        inputs = {"characteristic": ch, "max_n": flags.max_power}
        for key, val in opts.items():
            if key in ("I", "J"):
                inputs[key] = env.eval(val)
            elif key in ("M", "N"):
                inputs[key] = IntervalModule.quotient(env.eval(val))
            else:
                inputs[key] = val
        items = [(claim, inputs, perturb)]
    report = verify_suite(items, flags.threads)
    s = report.to_dict()["summary"]
    text = "\n".join(f"{c.claim_id} {c.verdict} {json.dumps(c.inputs, sort_keys=True)}" for c in report.instances)
    text += f"\n{s['pass']} pass, {s['fail']} fail, {s['not-applicable']} not-applicable, {s['aborted']} aborted"
    rows = io.StringIO()
    w = csv.writer(rows, lineterminator="\n")
    w.writerow(["claim_id", "verdict", "scope", "inputs"])
    for c in report.instances:
        w.writerow([c.claim_id, c.verdict, c.scope, json.dumps(c.inputs, sort_keys=True)])
    return Result("verify", cmd.source, report.to_dict(), 0, ok=report.exit_status == 0, text=text,
                  csv=rows.getvalue())


def _construct(state: RunState, cmd: Command | None, spec: DepthSpec, source: str) -> Result:
    rep = construct_and_verify(spec, state.flags.characteristic)
    d = rep.to_dict()
    text = (f"ring k[{', '.join(rep.ring.variables)}]\nQ = {to_text(rep.ideal)}\n"
            f"blocks {' + '.join(b.label() for b in rep.blocks)}\n"
            f"expected        {rep.expected}\ndepth R/Q^n     {rep.quotient_depths}\n"
            f"depth Q^n-1/Q^n {rep.piece_depths}\n{d['verdict']}")
    rows = io.StringIO()
    w = csv.writer(rows, lineterminator="\n")
    w.writerow(["n", "expected", "depth_quotient", "depth_graded_piece"])
    for n, vals in enumerate(zip(rep.expected, rep.quotient_depths, rep.piece_depths), 1):
        w.writerow([n, *vals])
    return Result("construct", source, d, 0, ok=rep.passed, text=text, csv=rows.getvalue())


def _spec_from_options(opts: dict, check_default: int) -> DepthSpec:
    f = tuple(opts.get("f", ()))
    if not f and "tail" not in opts:
        raise ValueError("construct needs a prefix [..] or tail=")
    tail = int(opts.get("tail", f[-1] if f else 0))
    return DepthSpec(f, tail, int(opts.get("check", check_default)))


def execute(script, flags: Flags) -> list[Result]:
    state = RunState(flags, Env(flags.characteristic))
    for st in script.statements:
        if isinstance(st, RingDecl):
            state.env.declare_ring(st.name, st.variables)
            continue
        if isinstance(st, IdealDef):
            state.env.ideals[st.name] = state.env.eval(st.expr)
            continue
        t0 = time.perf_counter()
        try:
            if st.kind == "profile":
                res = _profile(state, st)
            elif st.kind == "verify":
                res = _verify(state, st)
            elif st.kind == "construct":
                spec = _spec_from_options(dict(st.options), 4)
                res = _construct(state, st, spec, st.source)
            else:
                res = _scalar(state, st)
        except DSLError:
            raise
        except (ValueError, RingMismatchError, ResourceLimitError, NotImplementedError, KeyError) as exc:
            where = f"line {st.line}, column {st.col}"
            res = Result(st.kind, st.source, None, 0, ok=False, text=f"error ({where}): {exc}",
                         error=f"{type(exc).__name__}: {exc}")
        res.timing_ms = (time.perf_counter() - t0) * 1000
        state.results.append(res)
    return state.results


def render(results: list[Result], flags: Flags) -> str:
    if flags.fmt == "json":
        doc = {"version": __version__, "characteristic": flags.characteristic,
               "commands": [r.to_dict(flags.timing) for r in results]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if flags.fmt == "csv":
        blocks = [r.csv if r.ok or r.csv else f"error\n{_csv_field(r.error or '')}\n" for r in results]
        return "\n".join(b.rstrip("\n") + "\n" for b in blocks)
    return "".join(r.text + "\n" for r in results)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--char", type=int, default=0, help="field characteristic (0 or a prime)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-power", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--seed", type=int, default=0, help="base seed for randomized suites")
    p.add_argument("--no-timing", action="store_true", help="report timing_ms as 0 for byte-stable JSON")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idealpowers", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd")
    run = sub.add_parser("run", help="run a script (file or stdin)")
    run.add_argument("script", nargs="?", default="-")
    _common(run)
    con = sub.add_parser("construct", help="build Q with depth R/Q^n = f(n)")
    con.add_argument("--f", required=True, help="comma-separated non-increasing prefix, e.g. 2,1")
    con.add_argument("--tail", type=int, default=None, help="value of f after the prefix")
    con.add_argument("--check-up-to", type=int, default=4)
    _common(con)
    return p


def _flags(args) -> Flags:
    return Flags(args.format, args.char, args.threads, args.max_power, args.seed, not args.no_timing)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("run", "construct", "-h", "--help", "--version"):
        argv = ["run"] + argv
    args = build_parser().parse_args(argv)
    flags = _flags(args)
    if flags.characteristic < 0:
        print("error: --char must be 0 or a prime", file=sys.stderr)
        return 2
    if args.cmd == "construct":
        try:
            spec = DepthSpec.parse(args.f, args.tail, args.check_up_to)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        state = RunState(flags, Env(flags.characteristic))
        t0 = time.perf_counter()
        try:
            res = _construct(state, None, spec, f"f={args.f} tail={spec.tail} check={spec.check_up_to}")
        except NotImplementedError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        res.timing_ms = (time.perf_counter() - t0) * 1000
        sys.stdout.write(render([res], flags))
        return 0 if res.ok else 1
    src = sys.stdin.read() if args.script == "-" else open(args.script, encoding="utf-8").read()
    try:
        script = parse(src)
        results = execute(script, flags)
    except DSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # e.g. invalid characteristic
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(results, flags))
    for r in results:
        if r.error:
            print(f"{r.kind} {r.input}: {r.error}", file=sys.stderr)
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
