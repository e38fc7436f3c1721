"""Command-line front end: ``pgfinfer {infer,check-invariant,equiv,oracle-check}``.

Exit codes: 0 ok, 1 refuted or mismatch, 2 parse error or invalid input,
3 unsupported construct, 4 conditioning on a zero-probability event.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from . import queries as Q
from .errors import (InvariantRefuted, ParseError, PgfError, SymbolicError,
                     UnsupportedConstruct, ZeroMassConditioning)
from .language import UNSUPPORTED, parse, parse_dist, parse_guard, validate
from .language import ast as A
from .oracle import StateMap, compare, enumerate_program
from .semantics import Pgf, dist_pgf, pvar, transform_program
from .symbolic import ONE, SymbolKind, approx_decimal, parse_expr, render
from .symbolic.expr import check_analytic
from .verifier import Refuted, check_all_invariants, check_equivalence

EXIT_OK, EXIT_REFUTED, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_ZERO_MASS = range(5)

__all__ = ["main", "RunConfig", "run_infer", "run_check", "build_parser"]


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    programs: List[str]
    priors: List[str] = field(default_factory=list)
    prior_pgf: Optional[str] = None
    queries: List[str] = field(default_factory=list)
    digits: int = 10
    truncate: int = 32
    unroll_cap: int = 64
    json: bool = False


# loading -----------------------------------------------------------------------

def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Exit(EXIT_INVALID, f"{path}: {exc.strerror}")
    try:
        prog = parse(text)
    except ParseError as exc:
        raise _Exit(EXIT_INVALID, f"{path}:{exc}")
    problems = validate(prog)
    if problems:
        code = EXIT_UNSUPPORTED if any(v.kind in UNSUPPORTED for v in problems) else EXIT_INVALID
        raise _Exit(code, "\n".join(f"{path}:{v}" for v in problems))
    return prog


def _prior(cfg: RunConfig, prog: A.Program) -> Pgf:
    variables = prog.variables()
    if cfg.prior_pgf is not None:
        kinds = {p: SymbolKind.PARAMETER for p in prog.parameters}
        try:
            e = parse_expr(cfg.prior_pgf, kinds)
            for s in e.free_symbols():
                if s.kind == SymbolKind.PROGRAM_VAR:
                    check_analytic(e, s)
        except (SymbolicError, ValueError) as exc:
            raise _Exit(EXIT_INVALID, f"--prior-pgf: {exc}")
        extra = sorted(s.name for s in e.free_symbols() if s.kind == SymbolKind.PROGRAM_VAR)
        return Pgf(e, tuple(pvar(v) for v in variables + [x for x in extra if x not in variables]))
    e = ONE
    names = list(variables)
    seen = set()
    for item in cfg.priors:
        name, sep, spec = item.partition("=")
        name, spec = name.strip(), spec.strip()
        if not sep or not name.isidentifier() or name in seen:
            raise _Exit(EXIT_INVALID, f"--prior {item!r}: expected a fresh v=<nat|dist>")
        seen.add(name)
        try:
            d = A.Dirac(int(spec)) if spec.isdigit() else parse_dist(spec, prog.parameters)
        except ParseError as exc:
            raise _Exit(EXIT_INVALID, f"--prior {item!r}: {exc}")
        e = e * dist_pgf(d, name)
        if name not in names:
            names.append(name)
    return Pgf(e, tuple(pvar(v) for v in names))


# queries -----------------------------------------------------------------------

def _answer(desc: str, F: Pgf, digits: int):
    """(exact string, decimal string or None) for one query descriptor."""
    head, _, rest = desc.strip().partition(" ")
    rest = rest.strip()
    order = F.vars
    try:
        if head == "mass" and not rest:
            r = Q.QueryResult.of(Q.total_mass(F), digits)
        elif head == "prob" and rest:
            r = Q.posterior_prob(F, parse_guard(rest), digits)
        elif head in ("mean", "var") and rest.isidentifier():
            r = Q.moment(F, rest, 1 if head == "mean" else 2, digits)
        elif head == "marginal" and rest:
            keep = [k for k in rest.replace(",", " ").split()]
            return str(Q.marginal(F, keep)), None
        elif head == "coeffs" and len(rest.split()) == 2 and rest.split()[1].isdigit():
            v, n = rest.split()
            cs = Q.coefficients(F, v, int(n))
            exact = "[" + ", ".join(render(c, order) for c in cs) + "]"
            if all(c.is_constant() for c in cs):
                return exact, "[" + ", ".join(approx_decimal(c, {}, digits) for c in cs) + "]"
            return exact, None
        else:
            raise _Exit(EXIT_INVALID, f"bad query {desc!r}; expected one of: mass, "
                        "prob <guard>, mean <var>, var <var>, marginal <vars>, coeffs <var> <n>")
    except ParseError as exc:
        raise _Exit(EXIT_INVALID, f"query {desc!r}: {exc}")
    return render(r.exact, order), r.decimal


# reports -----------------------------------------------------------------------

def _pos(stmt):
    return f"{stmt.pos[0]}:{stmt.pos[1]}" if stmt.pos else "?"


def _loop_entry(loop, verdict, order=()):
    refuted = isinstance(verdict, Refuted)
    return {
        "loop": _pos(loop),
        "verdict": "refuted" if refuted else "verified",
        "condition": verdict.condition if refuted else None,
        "difference": render(verdict.difference, order) if refuted else None,
        "witness": verdict.witness if refuted else None,
    }


def _loop_lines(entries):
    out = []
    for e in entries:
        line = f"loop {e['loop']}: {e['verdict']}"
        if e["condition"]:
            line += f" ({e['condition']})"
        if e["witness"] is not None:
            line += " witness " + ", ".join(f"{k}={v}" for k, v in e["witness"].items())
        out.append(line)
        if e["difference"] is not None:
            out.append(f"  difference: {e['difference']}")
    return out


def _emit(cfg, payload, lines, out):
    if cfg.json:
        print(json.dumps(payload, indent=2), file=out)
    else:
        for line in lines:
            print(line, file=out)


# commands ----------------------------------------------------------------------

def run_infer(cfg: RunConfig, out=sys.stdout) -> int:
    prog = _load(cfg.programs[0])
    prior = _prior(cfg, prog)
    log = []
    try:
        F = transform_program(prog, prior, log=log)
    except InvariantRefuted:
        entries = [_loop_entry(r.loop, r.verdict, prior.vars) for r in log]
        _emit(cfg, {"invariants": entries}, _loop_lines(entries), out)
        return EXIT_REFUTED
    entries = [_loop_entry(r.loop, r.verdict, F.vars) for r in log]
    mass = Q.total_mass(F)
    posterior = Q.normalize(F)
    answers = [(q, *_answer(q, F, cfg.digits)) for q in cfg.queries]
    payload = {
        "posterior": str(posterior),
        "mass": render(mass, F.vars),
        "queries": [{"query": q, "exact": ex, "decimal": dec} for q, ex, dec in answers],
        "invariants": entries,
    }
    lines = _loop_lines(entries) + [f"posterior: {payload['posterior']}",
                                    f"mass: {payload['mass']}"]
    for q, ex, dec in answers:
        lines.append(f"{q}: {ex}" + (f" ~ {dec}" if dec is not None else ""))
    _emit(cfg, payload, lines, out)
    return EXIT_OK


def _check_invariants(cfg, out):
    prog = _load(cfg.programs[0])
    entries = [_loop_entry(r.loop, r.verdict, [pvar(v) for v in prog.variables()])
               for r in check_all_invariants(prog)]
    lines = _loop_lines(entries) or ["no loops"]
    _emit(cfg, {"invariants": entries}, lines, out)
    return EXIT_OK if all(e["verdict"] == "verified" for e in entries) else EXIT_REFUTED


def _equiv(cfg, out):
    if len(cfg.programs) != 2:
        raise _Exit(EXIT_INVALID, "equiv takes exactly two program files")
    p1, p2 = (_load(p) for p in cfg.programs)
    verdict = check_equivalence(p1, p2)
    order = [pvar(v) for v in p1.variables() + p2.variables()]
    refuted = isinstance(verdict, Refuted)
    payload = {
        "verdict": "refuted" if refuted else "verified",
        "witness": verdict.witness if refuted else None,
        "difference": render(verdict.difference, order) if refuted else None,
    }
    lines = [str(verdict)]
    if refuted:
        lines.append(f"  difference: {payload['difference']}")
    _emit(cfg, payload, lines, out)
    return EXIT_REFUTED if refuted else EXIT_OK


def _oracle_check(cfg, out):
    prog = _load(cfg.programs[0])
    if prog.parameters:
        raise _Exit(EXIT_INVALID, "oracle-check needs a parameter-free program")
    prior = _prior(cfg, prog)
    log = []
    try:
        F = transform_program(prog, prior, log=log)
    except InvariantRefuted:
        entries = [_loop_entry(r.loop, r.verdict, prior.vars) for r in log]
        _emit(cfg, {"invariants": entries}, _loop_lines(entries), out)
        return EXIT_REFUTED
    try:
        start = StateMap.from_pgf(prior, cfg.truncate)
    except ValueError as exc:
        raise _Exit(EXIT_INVALID, str(exc))
    m = enumerate_program(prog, start, cfg.truncate, cfg.unroll_cap, check_conservation=True)
    report = compare(F, m, cfg.truncate)
    payload = {
        "checked": report.checked,
        "mismatches": [{"valuation": x.valuation, "exact": render(x.exact),
                        "oracle": render(x.oracle)} for x in report.mismatches],
        "residual": render(report.residual),
        "rejected": render(report.rejected),
    }
    lines = [f"checked {report.checked} coefficients up to {cfg.truncate}: "
             f"{len(report.mismatches)} mismatches",
             f"residual: {payload['residual']}", f"rejected: {payload['rejected']}"]
    for x in payload["mismatches"][:20]:
        where = ", ".join(f"{k}={v}" for k, v in x["valuation"].items())
        lines.append(f"  {where}: exact {x['exact']} vs oracle {x['oracle']}")
    _emit(cfg, payload, lines, out)
    return EXIT_OK if report.ok else EXIT_REFUTED


def run_check(cfg: RunConfig, out=sys.stdout) -> int:
    handler = {"check-invariant": _check_invariants, "equiv": _equiv,
               "oracle-check": _oracle_check}[cfg.command]
    return handler(cfg, out)


# entry point -------------------------------------------------------------------

def _positive(text):
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    prior = common.add_mutually_exclusive_group()
    prior.add_argument("--prior", action="append", default=[], metavar="V=DIST",
                       help="prior for one variable, e.g. c=0 or c=poisson(2) (repeatable)")
    prior.add_argument("--prior-pgf", metavar="EXPR", help="prior as a PGF expression")
    common.add_argument("--query", action="append", default=[], metavar="DESC",
                        help="mass | prob <guard> | mean <v> | var <v> | "
                             "marginal <vars> | coeffs <v> <n> (repeatable)")
    common.add_argument("--digits", type=_positive, default=10)
    common.add_argument("--truncate", type=_positive, default=32)
    common.add_argument("--unroll-cap", type=_positive, default=64)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(prog="pgfinfer",
                                 description="Exact inference for discrete probabilistic "
                                             "programs via generating functions.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("infer", parents=[common], help="compute the posterior and answer queries")\
        .add_argument("programs", nargs=1, metavar="PROGRAM")
    sub.add_parser("check-invariant", parents=[common], help="verify every loop invariant")\
        .add_argument("programs", nargs=1, metavar="PROGRAM")
    sub.add_parser("equiv", parents=[common], help="decide equivalence of two programs")\
        .add_argument("programs", nargs=2, metavar="PROGRAM")
    sub.add_parser("oracle-check", parents=[common],
                   help="cross-check against truncated enumeration")\
        .add_argument("programs", nargs=1, metavar="PROGRAM")
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    cfg = RunConfig(ns.command, ns.programs, ns.prior, ns.prior_pgf, ns.query,
                    ns.digits, ns.truncate, ns.unroll_cap, ns.json)
    try:
        if cfg.command == "infer":
            return run_infer(cfg, out)
        return run_check(cfg, out)
    except _Exit as exc:
        code, msg = exc.code, str(exc)
    except UnsupportedConstruct as exc:
        code, msg = EXIT_UNSUPPORTED, f"unsupported: {exc}"
    except ZeroMassConditioning as exc:
        code, msg = EXIT_ZERO_MASS, f"error: {exc}"
    except PgfError as exc:
        code, msg = EXIT_INVALID, f"error: {exc}"
    print(msg, file=err)
    if cfg.json:
        print(json.dumps({"error": msg, "exit": code}), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
