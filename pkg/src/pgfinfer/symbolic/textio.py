"""Stable infix rendering of :class:`Expr` and the matching parser.

Rendering uses integers, ``/``, ``*``, ``^`` and ``exp(...)``; symbols are
ordered by an optional caller-supplied order (declaration order for program
variables), falling back to kind/name order.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ExprSyntaxError
from .expr import Expr, exp
from .poly import Symbol, SymbolKind, term_key

__all__ = ["render", "parse_expr"]


def _sym_key(order):
    pos = {s: i for i, s in enumerate(order or ())}

    def key(s):
        return (0, pos[s]) if s in pos else (1, s.kind, s.name)
    return key


def _render_powers(pw, key):
    parts = []
    for s, e in sorted(pw, key=lambda t: key(t[0])):
        parts.append(s.name if e == 1 else f"{s.name}^{e}")
    return parts


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _render_earg(ea, key):
    # exponent arguments read best highest degree first
    terms = sorted(ea, key=lambda t: (-sum(e for _, e in t[0]), _powkey(t[0], key)))
    return _render_terms([(_render_powers(pw, key), c) for pw, c in terms])


def _powkey(pw, key):
    return tuple((key(s), -e) for s, e in sorted(pw, key=lambda t: key(t[0])))


def _render_terms(terms):
    """``terms`` is a list of (factor strings, coefficient)."""
    out = []
    for i, (factors, c) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if not factors:
            body = _frac(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _frac(a) + "*" + "*".join(factors)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def _render_poly(p, key):
    monos = sorted(p, key=lambda m: (sum(e for _, e in m[0]), _powkey(m[0], key),
                                     term_key(m)))
    terms = []
    for m in monos:
        pw, ea = m
        factors = _render_powers(pw, key)
        if ea:
            factors.append(f"exp({_render_earg(ea, key)})")
        terms.append((factors, p[m]))
    return _render_terms(terms), len(terms)


def render(e, order=None) -> str:
    """Render ``e``; ``order`` lists symbols in preferred display order."""
    if not isinstance(e, Expr):
        e = Expr.const(e) if not isinstance(e, Symbol) else Expr.symbol(e)
    key = _sym_key(order)
    num, nterms = _render_poly(e.num, key)
    if e.is_polynomial():
        return num
    den, dterms = _render_poly(e.den, key)
    if nterms > 1:
        num = f"({num})"
    if dterms > 1 or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*(\^\d+)?|\d+", den):
        den = f"({den})"
    return f"{num}/{den}"


# parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r} "
                                  f"at offset {pos}")
        num, ident, op = m.groups()
        if num is not None:
            toks.append(("num", num, m.start(1)))
        elif ident is not None:
            toks.append(("id", ident, m.start(2)))
        else:
            toks.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    toks.append(("eof", None, len(text)))
    return toks


class _ExprParser:
    def __init__(self, text, resolve):
        self.toks = _tokenize(text)
        self.i = 0
        self.resolve = resolve

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value or kind
            got = "end of input" if t[0] == "eof" else repr(t[1])
            raise ExprSyntaxError(f"expected {want!r}, got {got} at offset {t[2]}")
        self.i += 1
        return t

    def parse(self):
        e = self.sum()
        self.take("eof")
        return e

    def sum(self):
        e = self.product()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.product()
            e = e + rhs if op == "+" else e - rhs
        return e

    def product(self):
        e = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.unary()
            e = e * rhs if op == "*" else e / rhs
        return e

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            if self.peek()[:2] == ("op", "("):
                self.take()
                neg = self.peek()[:2] == ("op", "-")
                if neg:
                    self.take()
                    sign = -sign
                k = self.take("num")[1]
                self.take("op", ")")
            else:
                k = self.take("num")[1]
            if not k.isdigit():
                raise ExprSyntaxError(f"exponent must be an integer, got {k}")
            return base ** (sign * int(k))
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return Expr.const(Fraction(t[1]))
        if t[0] == "id":
            self.take()
            if t[1] == "exp" and self.peek()[:2] == ("op", "("):
                self.take()
                arg = self.sum()
                self.take("op", ")")
                return exp(arg)
            return Expr.symbol(self.resolve(t[1]))
        if t[:2] == ("op", "("):
            self.take()
            e = self.sum()
            self.take("op", ")")
            return e
        got = "end of input" if t[0] == "eof" else repr(t[1])
        raise ExprSyntaxError(f"unexpected {got} at offset {t[2]}")


def parse_expr(text, symbols=None, default_kind=SymbolKind.PROGRAM_VAR) -> Expr:
    """Parse a rendered expression.

    ``symbols`` maps names to :class:`Symbol` (or :class:`SymbolKind`);
    unknown names become symbols of ``default_kind``.
    """
    symbols = dict(symbols or {})

    def resolve(name):
        s = symbols.get(name)
        if isinstance(s, Symbol):
            return s
        if isinstance(s, SymbolKind):
            return Symbol(name, s)
        return Symbol(name, default_kind)

    return _ExprParser(text, resolve).parse()
