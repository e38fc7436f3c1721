"""Certified decimal rendering of exact expressions.

Constant exponentials are enclosed in rational intervals (Taylor series with
an explicit remainder bound, after halving the argument and squaring back).
Precision doubles until both interval endpoints round to the same digit
string, so every printed digit is certified.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor

from ..errors import EvaluationPole, MissingAssignment
from .expr import Expr, _coerce, substitute_all
from .poly import ONE_MONO

__all__ = ["approx_decimal", "format_significant", "exp_interval"]

_MAX_BITS = 1 << 16


def _down(x: Fraction, bits: int) -> Fraction:
    return Fraction(floor(x * (1 << bits)), 1 << bits)


def _up(x: Fraction, bits: int) -> Fraction:
    return -_down(-x, bits)


def exp_interval(a: Fraction, bits: int):
    """Rational ``(lo, hi)`` with ``lo <= exp(a) <= hi`` and width ~ 2**-bits."""
    a = Fraction(a)
    if a == 0:
        return Fraction(1), Fraction(1)
    s = 0
    while abs(a) > Fraction(1, 2) * (1 << s):
        s += 1
    r = a / (1 << s)
    work = bits + 2 * s + int(abs(a) * 2) + 16
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    eps = Fraction(1, 1 << work)
    while True:
        total += term
        k += 1
        term = term * r / k
        # |tail| <= |term| / (1 - |r|) <= 2 |term| for |r| <= 1/2
        if 2 * abs(term) < eps:
            break
    lo = _down(total - 2 * abs(term), work)
    hi = _up(total + 2 * abs(term), work)
    for _ in range(s):
        lo = _down(lo * lo, work)
        hi = _up(hi * hi, work)
    return lo, hi


def _imul(c: Fraction, iv):
    lo, hi = iv
    return (c * lo, c * hi) if c >= 0 else (c * hi, c * lo)


def _poly_interval(p, bits):
    lo = hi = Fraction(0)
    for (pw, ea), c in p.items():
        assert not pw
        if ea:
            (_, a), = ea
            t = _imul(c, exp_interval(a, bits))
        else:
            t = (c, c)
        lo += t[0]
        hi += t[1]
    return lo, hi


def _decimal_exponent(x: Fraction) -> int:
    """floor(log10(|x|)) for x != 0."""
    x = abs(x)
    e = len(str(x.numerator)) - len(str(x.denominator))
    if x >= Fraction(10) ** e:
        while x >= Fraction(10) ** (e + 1):
            e += 1
    else:
        while x < Fraction(10) ** e:
            e -= 1
    return e


def _round_half_even(x: Fraction) -> int:
    n = floor(x)
    rem = x - n
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and n % 2):
        n += 1
    return n


def format_significant(x: Fraction, digits: int) -> str:
    """Round-to-nearest (ties to even) to ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = Fraction(x)
    if x == 0:
        return "0" if digits == 1 else "0." + "0" * (digits - 1)
    e = _decimal_exponent(x)
    shift = digits - 1 - e
    n = _round_half_even(x * Fraction(10) ** shift)
    if abs(n) >= 10 ** digits:
        # rounding carried into a new leading digit
        shift -= 1
        n = _round_half_even(x * Fraction(10) ** shift)
    sign = "-" if n < 0 else ""
    s = str(abs(n))
    if shift <= 0:
        return sign + s + "0" * (-shift)
    s = s.rjust(shift + 1, "0")
    return sign + s[:-shift] + "." + s[-shift:]


def approx_decimal(e, assignment=None, digits=10) -> str:
    """Decimal string of ``e`` at ``assignment`` with certified digits."""
    e = _coerce(e)
    assignment = dict(assignment or {})
    missing = e.free_symbols() - set(assignment)
    if missing:
        names = ", ".join(sorted(s.name for s in missing))
        raise MissingAssignment(f"no value assigned to: {names}")
    try:
        c = substitute_all(e, {s: Expr.const(Fraction(q)) for s, q in assignment.items()
                               if s in e.free_symbols()})
    except ZeroDivisionError as exc:
        raise EvaluationPole(str(exc)) from exc
    if not c.has_exp():
        return format_significant(c.num.get(ONE_MONO, Fraction(0)), digits)
    bits = int(digits * 3.33) + 24
    while bits <= _MAX_BITS:
        nlo, nhi = _poly_interval(c.num, bits)
        dlo, dhi = _poly_interval(c.den, bits)
        if dlo > 0 or dhi < 0:
            cands = [nlo / dlo, nlo / dhi, nhi / dlo, nhi / dhi]
            lo, hi = min(cands), max(cands)
            a, b = format_significant(lo, digits), format_significant(hi, digits)
            if a == b:
                return a
        bits *= 2
    raise ArithmeticError(f"could not certify {digits} digits of {e}")
