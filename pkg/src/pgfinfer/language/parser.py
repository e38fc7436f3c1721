"""Recursive-descent parser for program texts.

Grammar (``#`` starts a comment running to end of line)::

    file    := ("param" ident ("," ident)* ";")* program
    program := stmt (";" stmt)* [";"]
    stmt    := ident ":=" rhs
             | "{" program "}" "[" pexpr "]" "{" program "}"
             | "if" "(" guard ")" "{" program "}" ["else" "{" program "}"]
             | "while" "(" guard ")" ["invariant" "{" program "}"] "{" program "}"
             | "observe" "(" guard ")" | "skip"
    rhs     := nat | dist | ident "+" (nat | ident | dist)
    dist    := ("bernoulli" | "geometric" | "poisson") "(" pexpr ")"
             | "binomial" "(" nat "," pexpr ")"
             | "uniform" "(" nat "," nat ")" | "dirac" "(" nat ")"
    guard   := gatom ("and" gatom)*
    gatom   := "not" gatom | "true" | "(" guard ")"
             | ident "=" nat | ident "<" nat | ident "%" "2" "=" ("0" | "1")
    pexpr   := rational arithmetic (+ - * / ^) over integers and parameters

Without a ``param`` header, parameter names are declared implicitly by use.
The invariant clause is optional here so that :func:`validate` can report a
missing one instead of failing with a syntax error.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from ..symbolic import Expr, Symbol, SymbolKind
from . import ast as A

__all__ = ["parse", "parse_guard", "parse_dist", "KEYWORDS", "DIST_NAMES"]

DIST_NAMES = {"bernoulli", "geometric", "poisson", "binomial", "uniform", "dirac"}
KEYWORDS = {"if", "else", "while", "invariant", "observe", "skip", "not", "and",
            "true", "param"} | DIST_NAMES

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>\d+)
  | (?P<id>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>:=|\*\*|[;{}\[\]()+\-*/^=<%,])
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def describe(self):
        return "end of input" if self.kind == "eof" else repr(self.text)


def _tokenize(text):
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "id" and m.group() in KEYWORDS:
            toks.append(_Tok("kw", m.group(), line, col))
        elif kind == "op":
            toks.append(_Tok("op", "^" if m.group() == "**" else m.group(), line, col))
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.params = []
        self.header = False
        self.var_names = set()

    # token helpers -----------------------------------------------------------

    def peek(self, ahead=0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def at(self, kind, text=None):
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def fail(self, expected, tok=None):
        tok = tok or self.peek()
        return ParseError(f"unexpected {tok.describe()}", tok.line, tok.col, expected)

    def expect(self, kind, text=None):
        if not self.at(kind, text):
            raise self.fail({repr(text) if text else kind})
        t = self.peek()
        self.i += 1
        return t

    def nat(self):
        return int(self.expect("num").text)

    def ident(self):
        t = self.expect("id")
        if t.text in self.params:
            raise ParseError(f"{t.text!r} is declared as a parameter", t.line, t.col)
        self.var_names.add(t.text)
        return t.text

    # top level ---------------------------------------------------------------

    def file(self):
        while self.at("kw", "param"):
            self.i += 1
            self.header = True
            self.params.append(self.expect("id").text)
            while self.at("op", ","):
                self.i += 1
                self.params.append(self.expect("id").text)
            self.expect("op", ";")
        stmts = self.program({"eof"})
        if not self.at("eof"):
            raise self.fail({"';'", "end of input"})
        return A.Program(stmts, tuple(self.params))

    def program(self, closers):
        stmts = [self.stmt()]
        while self.at("op", ";"):
            self.i += 1
            t = self.peek()
            if t.kind == "eof" and "eof" in closers or t.kind == "op" and t.text in closers:
                break
            stmts.append(self.stmt())
        return tuple(stmts)

    def block(self):
        self.expect("op", "{")
        body = self.program({"}"})
        self.expect("op", "}")
        return body

    _STMT_START = {"identifier", "'{'", "'if'", "'while'", "'observe'", "'skip'"}

    def stmt(self):
        t = self.peek()
        pos = (t.line, t.col)
        if t.kind == "id":
            name = self.ident()
            self.expect("op", ":=")
            return self.rhs(name, pos)
        if t.kind == "op" and t.text == "{":
            left = self.block()
            self.expect("op", "[")
            p = self.pexpr()
            self.expect("op", "]")
            right = self.block()
            return A.Choice(p, left, right, pos=pos)
        if t.kind == "kw":
            if t.text == "skip":
                self.i += 1
                return A.Skip(pos=pos)
            if t.text == "observe":
                self.i += 1
                return A.Observe(self.paren_guard(), pos=pos)
            if t.text == "if":
                self.i += 1
                g = self.paren_guard()
                then = self.block()
                orelse = (A.Skip(),)
                if self.at("kw", "else"):
                    self.i += 1
                    orelse = self.block()
                return A.IfElse(g, then, orelse, pos=pos)
            if t.text == "while":
                self.i += 1
                g = self.paren_guard()
                inv = None
                if self.at("kw", "invariant"):
                    self.i += 1
                    inv = self.block()
                body = self.block()
                return A.While(g, inv, body, pos=pos)
        raise self.fail(self._STMT_START)

    def rhs(self, target, pos):
        t = self.peek()
        if t.kind == "num":
            return A.AssignConst(target, self.nat(), pos=pos)
        if t.kind == "kw" and t.text in DIST_NAMES:
            return A.Sample(target, self.dist(), pos=pos)
        if t.kind == "id":
            src = self.ident()
            if src != target:
                raise ParseError(f"right-hand side must start with {target!r}",
                                 t.line, t.col, {repr(target)})
            self.expect("op", "+")
            u = self.peek()
            if u.kind == "num":
                return A.Increment(target, self.nat(), pos=pos)
            if u.kind == "kw" and u.text in DIST_NAMES:
                return A.SampleAdd(target, self.dist(), pos=pos)
            if u.kind == "id":
                other = self.ident()
                if other == target:
                    raise ParseError(f"cannot add {target!r} to itself", u.line, u.col)
                return A.AddVar(target, other, pos=pos)
            raise self.fail({"natural number", "identifier", "distribution"})
        raise self.fail({"natural number", "identifier", "distribution"})

    def dist(self):
        t = self.expect("kw")
        name = t.text
        self.expect("op", "(")
        if name == "bernoulli":
            d = A.Bernoulli(self.pexpr())
        elif name == "geometric":
            d = A.Geometric(self.pexpr())
        elif name == "poisson":
            d = A.Poisson(self.pexpr())
        elif name == "binomial":
            n = self.nat()
            self.expect("op", ",")
            d = A.Binomial(n, self.pexpr())
        elif name == "uniform":
            a = self.nat()
            self.expect("op", ",")
            b_tok = self.peek()
            b = self.nat()
            if b < a:
                raise ParseError("uniform bounds must satisfy a <= b", b_tok.line, b_tok.col)
            d = A.UniformInt(a, b)
        else:
            d = A.Dirac(self.nat())
        self.expect("op", ")")
        return d

    # guards ------------------------------------------------------------------

    def paren_guard(self):
        self.expect("op", "(")
        g = self.guard()
        self.expect("op", ")")
        return g

    def guard(self):
        g = self.gatom()
        while self.at("kw", "and"):
            self.i += 1
            g = A.And(g, self.gatom())
        return g

    def gatom(self):
        t = self.peek()
        if t.kind == "kw" and t.text == "not":
            self.i += 1
            return A.Not(self.gatom())
        if t.kind == "kw" and t.text == "true":
            self.i += 1
            return A.TrueEvent()
        if t.kind == "op" and t.text == "(":
            return self.paren_guard()
        if t.kind == "id":
            v = self.ident()
            if self.at("op", "="):
                self.i += 1
                return A.Eq(v, self.nat())
            if self.at("op", "<"):
                self.i += 1
                return A.Lt(v, self.nat())
            if self.at("op", "%"):
                self.i += 1
                m = self.peek()
                if self.nat() != 2:
                    raise ParseError("only parity (mod 2) events are supported",
                                     m.line, m.col, {"'2'"})
                self.expect("op", "=")
                r = self.peek()
                k = self.nat()
                if k not in (0, 1):
                    raise ParseError("residue must be 0 or 1", r.line, r.col, {"'0'", "'1'"})
                return A.ParityOdd(v) if k else A.ParityEven(v)
            raise self.fail({"'='", "'<'", "'%'"})
        raise self.fail({"identifier", "'not'", "'true'", "'('"})

    # parameter expressions ---------------------------------------------------

    def pexpr(self):
        e = self.pterm()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.expect("op").text
            r = self.pterm()
            e = e + r if op == "+" else e - r
        return e

    def pterm(self):
        e = self.punary()
        while self.at("op", "*") or self.at("op", "/"):
            op = self.expect("op")
            r = self.punary()
            if op.text == "*":
                e = e * r
            elif r.is_zero():
                raise ParseError("division by zero", op.line, op.col)
            else:
                e = e / r
        return e

    def punary(self):
        if self.at("op", "-"):
            self.i += 1
            return -self.punary()
        return self.ppower()

    def ppower(self):
        base = self.patom()
        if self.at("op", "^"):
            self.i += 1
            sign = 1
            if self.at("op", "-"):
                self.i += 1
                sign = -1
            k = self.nat() * sign
            if k < 0 and base.is_zero():
                raise self.fail({"nonzero base"})
            return base ** k
        return base

    def patom(self):
        t = self.peek()
        if t.kind == "num":
            self.i += 1
            return Expr.const(Fraction(int(t.text)))
        if t.kind == "id":
            self.i += 1
            if t.text in self.var_names and t.text not in self.params:
                raise ParseError(f"{t.text!r} is a program variable, not a parameter",
                                 t.line, t.col)
            return Expr.symbol(Symbol(t.text, SymbolKind.PARAMETER))
        if t.kind == "op" and t.text == "(":
            self.i += 1
            e = self.pexpr()
            self.expect("op", ")")
            return e
        raise self.fail({"number", "parameter", "'('"})


def parse(text: str) -> A.Program:
    """Parse a program text; raises :class:`ParseError` with a position."""
    p = _Parser(text)
    prog = p.file()
    used = {sym.name for st in A.walk(prog.statements) for e in _stmt_exprs(st)
            for sym in e.free_symbols()}
    clash = used & p.var_names
    if clash:
        name = sorted(clash)[0]
        raise ParseError(f"{name!r} is used both as a variable and a parameter", 1, 1)
    if not p.header:
        # no ``param`` header: every parameter name in use is implicitly declared
        names = [sym.name for st in A.walk(prog.statements) for e in _stmt_exprs(st)
                 for sym in sorted(e.free_symbols())]
        prog = A.Program(prog.statements, tuple(dict.fromkeys(names)))
    return prog


def _fragment(text, rule, params=()):
    p = _Parser(text)
    p.params = list(params)
    out = rule(p)
    if not p.at("eof"):
        raise p.fail({"end of input"})
    return out


def parse_guard(text: str):
    """Parse a standalone guard such as ``c % 2 = 1 and not w = 0``."""
    return _fragment(text, _Parser.guard)


def parse_dist(text: str, params=()):
    """Parse a standalone distribution such as ``poisson(6)``."""
    return _fragment(text, _Parser.dist, params)


def _stmt_exprs(s):
    if isinstance(s, A.Choice):
        return [s.prob]
    if isinstance(s, (A.Sample, A.SampleAdd)):
        return A.dist_exprs(s.dist)
    return []
