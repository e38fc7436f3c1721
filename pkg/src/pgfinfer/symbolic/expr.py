"""Exact scalars: rational functions over Q with exponential atoms.

``Expr`` values are immutable. Construction always goes through
:func:`_canon`, which

1. pulls the smallest exponential factor out of numerator and denominator
   (smallest in the ordered-group sense of :func:`earg_sign`), so that every
   remaining atom has a "nonnegative" argument;
2. cancels the gcd of numerator and denominator over Z, treating every
   remaining atom as an opaque indeterminate;
3. moves the extracted exponential quotient back onto the numerator and fixes
   the sign so the lowest denominator term is positive.

Equality does not rely on this form being unique: two expressions are equal
iff ``n1*d2 - n2*d1`` is the zero polynomial, which is decided exactly
because distinct atoms are treated as algebraically independent.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import factorial, gcd

from sympy.polys.domains import ZZ
from sympy.polys.rings import ring

from ..errors import (DivisionByZero, EvaluationPole, NonPolynomialExpArgument,
                      PoleAtOrigin)
from .poly import (ONE_MONO, Symbol, SymbolKind, earg_add, earg_from_poly,
                   earg_neg, earg_scale, earg_sign, earg_substitute,
                   lcm_denominators, mono_mul, poly_add, poly_const,
                   poly_derivative, poly_iadd, poly_is_const, poly_mul, poly_neg,
                   poly_pow, poly_scale, poly_sub, poly_symbols, term_key)

__all__ = [
    "Expr", "exp", "var", "param", "const", "arith", "substitute",
    "substitute_all", "differentiate", "taylor_coeff", "equal",
]

_ONE = poly_const(1)


@functools.lru_cache(maxsize=64)
def _ring(n):
    return ring(",".join(f"x{i}" for i in range(n)), ZZ)[0]


def _min_earg(p):
    best = None
    for _, ea in p:
        if best is None or earg_sign(earg_add(ea, earg_neg(best))) < 0:
            best = ea
    return best


def _shift(p, ea):
    if not ea:
        return p
    m = ((), ea)
    return {mono_mul(k, m): c for k, c in p.items()}


def _cancel(num, den):
    # generators: symbols at top level, then one per distinct atom
    top = sorted({s for p in (num, den) for pw, _ in p for s, _ in pw})
    atoms = sorted({ea for p in (num, den) for _, ea in p if ea})
    n = len(top) + len(atoms)
    if n == 0:
        return poly_const(num.get(ONE_MONO, 0) / den[ONE_MONO]), dict(_ONE)
    sidx = {s: i for i, s in enumerate(top)}
    aidx = {a: len(top) + j for j, a in enumerate(atoms)}
    scale = lcm_denominators((num, den))

    def to_dict(p):
        out = {}
        for (pw, ea), c in p.items():
            key = [0] * n
            for s, e in pw:
                key[sidx[s]] = e
            if ea:
                key[aidx[ea]] = 1
            out[tuple(key)] = int(c * scale)
        return out

    R = _ring(n)
    pn, pd = R.from_dict(to_dict(num)).cancel(R.from_dict(to_dict(den)))

    def back(q):
        out = {}
        for key, c in q.items():
            pw = tuple((top[i], e) for i, e in enumerate(key[:len(top)]) if e)
            ea = ()
            for j, e in enumerate(key[len(top):]):
                if e:
                    ea = earg_add(ea, earg_scale(atoms[j], e))
            m = (pw, ea)
            v = out.get(m, 0) + Fraction(int(c))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    return back(pn), back(pd)


def _canon(num, den):
    if not den:
        raise DivisionByZero("division by zero expression")
    if not num:
        return {}, _ONE
    if poly_is_const(den):
        c = den[ONE_MONO]
        return (num if c == 1 else poly_scale(num, 1 / c)), _ONE
    qd = _min_earg(den)
    pn = _min_earg(num)
    num1 = _shift(num, earg_neg(pn))
    den1 = _shift(den, earg_neg(qd))
    num2, den2 = _cancel(num1, den1)
    shift = earg_add(pn, earg_neg(qd))
    num2 = _shift(num2, shift)
    if poly_is_const(den2):
        c = den2[ONE_MONO]
        return (num2 if c == 1 else poly_scale(num2, 1 / c)), _ONE
    low = min(den2, key=term_key)
    if den2[low] < 0:
        num2, den2 = poly_neg(num2), poly_neg(den2)
    return num2, den2


def _coerce(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Expr._raw(poly_const(x), _ONE)
    if isinstance(x, Symbol):
        return Expr._raw({(((x, 1),), ()): Fraction(1)}, _ONE)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


class Expr:
    """Canonical quotient ``num / den`` of exponential polynomials."""

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num=None, den=None):
        num = {} if num is None else num
        den = _ONE if den is None else den
        self.num, self.den = _canon(num, den)

    @classmethod
    def _raw(cls, num, den):
        e = object.__new__(cls)
        e.num = num
        e.den = den
        return e

    # constructors ----------------------------------------------------------

    @staticmethod
    def const(q) -> "Expr":
        return Expr._raw(poly_const(q), _ONE)

    @staticmethod
    def symbol(s: Symbol) -> "Expr":
        return _coerce(s)

    # predicates --------------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den is _ONE or self.den == _ONE

    def is_constant(self):
        """True iff no symbol occurs (exp atoms of constants allowed)."""
        return not self.free_symbols()

    def is_rational(self):
        return self.is_polynomial() and poly_is_const(self.num)

    def has_exp(self):
        return any(ea for p in (self.num, self.den) for _, ea in p)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.get(ONE_MONO, Fraction(0))

    def free_symbols(self):
        return poly_symbols(self.num) | poly_symbols(self.den)

    # arithmetic --------------------------------------------------------------

    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_polynomial() and other.is_polynomial():
            return Expr._raw(poly_add(self.num, other.num), _ONE)
        if self.den == other.den:
            return Expr(poly_add(self.num, other.num), self.den)
        return Expr(poly_add(poly_mul(self.num, other.den),
                             poly_mul(other.num, self.den)),
                    poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Expr._raw(poly_neg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_polynomial() and other.is_polynomial():
            return Expr._raw(poly_mul(self.num, other.num), _ONE)
        return Expr(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        if other.is_rational() and self.is_polynomial():
            return Expr._raw(poly_scale(self.num, 1 / other.as_fraction()), _ONE)
        return Expr(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("Expr exponents must be integers")
        if k < 0:
            if self.is_zero():
                raise DivisionByZero("zero raised to a negative power")
            return Expr(poly_pow(self.den, -k), poly_pow(self.num, -k))
        if self.is_polynomial():
            return Expr._raw(poly_pow(self.num, k), _ONE)
        return Expr(poly_pow(self.num, k), poly_pow(self.den, k))

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return equal(self, other)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return not self.is_zero()

    # calculus / substitution (thin wrappers) --------------------------------

    def diff(self, v):
        return differentiate(self, v)

    def subs(self, mapping):
        return substitute_all(self, mapping)

    def __repr__(self):
        from .textio import render
        return f"Expr({render(self)!r})"

    def __str__(self):
        from .textio import render
        return render(self)


ZERO = Expr._raw({}, _ONE)
ONE = Expr._raw(dict(_ONE), _ONE)


def var(name) -> Expr:
    return _coerce(Symbol(name, SymbolKind.PROGRAM_VAR))


def param(name) -> Expr:
    return _coerce(Symbol(name, SymbolKind.PARAMETER))


def const(q) -> Expr:
    return Expr.const(q)


def exp(arg) -> Expr:
    """``exp(arg)`` for a polynomial ``arg`` without exponential atoms."""
    arg = _coerce(arg)
    if not arg.is_polynomial() or arg.has_exp():
        raise NonPolynomialExpArgument(f"exp argument must be a polynomial: {arg}")
    ea = earg_from_poly(arg.num)
    return Expr._raw({((), ea): Fraction(1)}, _ONE)


def arith(op, e1, e2):
    """Dispatch ``op`` in {add, sub, mul, div, pow} on canonical values."""
    e1 = _coerce(e1)
    if op == "pow":
        return e1 ** int(e2)
    e2 = _coerce(e2)
    if op == "add":
        return e1 + e2
    if op == "sub":
        return e1 - e2
    if op == "mul":
        return e1 * e2
    if op == "div":
        return e1 / e2
    raise ValueError(f"unknown operation {op!r}")


def equal(e1, e2) -> bool:
    e1, e2 = _coerce(e1), _coerce(e2)
    if e1.is_polynomial() and e2.is_polynomial():
        return e1.num == e2.num
    return not poly_sub(poly_mul(e1.num, e2.den), poly_mul(e2.num, e1.den))


# substitution ----------------------------------------------------------------

def _subst_poly(p, mapping, cache):
    """Substitute into ``p`` with rational replacements' denominators cleared.

    Returns ``(q, maxdeg)`` where ``p(R) = q / prod(den(R_s)**maxdeg[s])``.
    """
    maxdeg = {}
    for pw, _ in p:
        for s, e in pw:
            if s in mapping and e > maxdeg.get(s, 0):
                maxdeg[s] = e
    pure = {s: r.num for s, r in mapping.items()
            if r.is_polynomial() and not r.has_exp()}
    out = {}
    for (pw, ea), c in p.items():
        rest = tuple((s, e) for s, e in pw if s not in mapping)
        got = {s: e for s, e in pw if s in mapping}
        if ea:
            hit = {s for epw, _ in ea for s, _ in epw if s in mapping}
            if hit - pure.keys():
                raise NonPolynomialExpArgument(
                    "substitution would place a non-polynomial inside exp")
            if hit:
                ea = earg_substitute(ea, {s: pure[s] for s in hit})
        term = {(rest, ea): c}
        for s, d in maxdeg.items():
            k = got.get(s, 0)
            if k:
                term = poly_mul(term, _cached_pow(cache, s, "n", mapping[s].num, k))
            if d - k:
                term = poly_mul(term, _cached_pow(cache, s, "d", mapping[s].den, d - k))
        poly_iadd(out, term)
    return out, maxdeg


def _cached_pow(cache, s, part, base, k):
    key = (s, part, k)
    if key not in cache:
        cache[key] = poly_pow(base, k)
    return cache[key]


def substitute_all(e, mapping) -> Expr:
    """Simultaneously replace each symbol in ``mapping`` (values coerced)."""
    e = _coerce(e)
    mapping = {s: _coerce(r) for s, r in mapping.items()}
    if not mapping:
        return e
    cache = {}
    n, dn = _subst_poly(e.num, mapping, cache)
    if e.is_polynomial() and all(r.is_polynomial() for r in mapping.values()):
        return Expr._raw(n, _ONE)
    d, dd = _subst_poly(e.den, mapping, cache)
    if not d:
        raise EvaluationPole(f"denominator of {e} vanishes under substitution")
    # num(R)/den(R) = n/prod(b^dn) * prod(b^dd)/d
    for s in set(dn) | set(dd):
        k = dd.get(s, 0) - dn.get(s, 0)
        if k > 0:
            n = poly_mul(n, poly_pow(mapping[s].den, k))
        elif k < 0:
            d = poly_mul(d, poly_pow(mapping[s].den, -k))
    if not d:
        raise EvaluationPole(f"denominator of {e} vanishes under substitution")
    return Expr(n, d)


def substitute(e, v: Symbol, replacement) -> Expr:
    return substitute_all(e, {v: replacement})


# calculus --------------------------------------------------------------------

def differentiate(e, v: Symbol) -> Expr:
    e = _coerce(e)
    dn = poly_derivative(e.num, v)
    if e.is_polynomial():
        return Expr._raw(dn, _ONE)
    dd = poly_derivative(e.den, v)
    if not dd:
        return Expr(dn, e.den)
    return Expr(poly_sub(poly_mul(dn, e.den), poly_mul(e.num, dd)),
                poly_mul(e.den, e.den))


def _mentions_in_atoms(p, v):
    return any(s == v for _, ea in p for epw, _ in ea for s, _ in epw)


def _direct_coeff(p, v, k):
    """Coefficient of v^k when v occurs only as a plain power."""
    out = {}
    for (pw, ea), c in p.items():
        e = 0
        rest = []
        for s, x in pw:
            if s == v:
                e = x
            else:
                rest.append((s, x))
        if e == k:
            out[(tuple(rest), ea)] = c
    return out


def check_analytic(e: Expr, v: Symbol):
    if e.is_polynomial():
        return
    d0 = substitute_all(Expr._raw(e.den, _ONE), {v: ZERO})
    if d0.is_zero():
        raise PoleAtOrigin(f"{e} has a pole at {v} = 0")


def taylor_coeff(e, v: Symbol, k: int) -> Expr:
    """Coefficient of ``v**k`` in the expansion of ``e`` around ``v = 0``."""
    e = _coerce(e)
    if k < 0:
        raise ValueError("k must be a natural number")
    check_analytic(e, v)
    if e.is_polynomial() and not _mentions_in_atoms(e.num, v):
        return Expr._raw(_direct_coeff(e.num, v, k), _ONE)
    g = e
    for _ in range(k):
        g = differentiate(g, v)
    return substitute_all(g, {v: ZERO}) / factorial(k)


def taylor_coeffs(e, v: Symbol, upto: int):
    """``[taylor_coeff(e, v, i) for i in 0..upto]`` sharing derivatives."""
    e = _coerce(e)
    check_analytic(e, v)
    if e.is_polynomial() and not _mentions_in_atoms(e.num, v):
        return [Expr._raw(_direct_coeff(e.num, v, i), _ONE) for i in range(upto + 1)]
    out = []
    g = e
    for i in range(upto + 1):
        if i:
            g = differentiate(g, v) / i
        out.append(substitute_all(g, {v: ZERO}))
    return out


def integer_content(p) -> int:
    g = 0
    for c in p.values():
        g = gcd(g, c.numerator)
    return g
