"""Sparse polynomials over Q whose monomials may carry one exponential atom.

A monomial is a pair ``(powers, earg)``:

* ``powers`` is a tuple of ``(Symbol, exponent)`` pairs sorted by symbol,
  exponents positive;
* ``earg`` is the argument ``P`` of a factor ``exp(P)``, itself a pure
  polynomial stored as a sorted tuple of ``(powers, Fraction)`` pairs. The
  empty tuple means ``exp(0) = 1``.

Multiplying monomials adds exponential arguments, so the exponential law
holds by construction and every monomial carries at most one atom.

A polynomial is a plain ``dict`` from monomial to nonzero ``Fraction``.
Dicts returned by this module are never mutated afterwards.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

__all__ = [
    "SymbolKind", "Symbol", "ONE_MONO", "poly_const", "poly_add", "poly_sub",
    "poly_neg", "poly_scale", "poly_mul", "poly_pow", "mono_mul", "earg_add",
    "earg_neg", "earg_scale", "earg_sign", "earg_from_poly", "earg_to_poly",
    "poly_symbols", "poly_degree_in", "term_key", "poly_derivative",
    "poly_is_const", "earg_substitute", "poly_iadd",
]


class SymbolKind(enum.IntEnum):
    PROGRAM_VAR = 0
    PARAMETER = 1
    SOP_MARKER = 2


@functools.total_ordering
@dataclass(frozen=True)
class Symbol:
    name: str
    kind: SymbolKind = SymbolKind.PROGRAM_VAR

    def __lt__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return (self.kind, self.name) < (other.kind, other.name)

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.kind.name})"

    def __str__(self):
        return self.name


Powers = Tuple[Tuple[Symbol, int], ...]
EArg = Tuple[Tuple[Powers, Fraction], ...]
Mono = Tuple[Powers, EArg]
Poly = Dict[Mono, Fraction]

ONE_MONO: Mono = ((), ())


def poly_const(c) -> Poly:
    c = Fraction(c)
    return {ONE_MONO: c} if c else {}


def poly_is_const(p: Poly) -> bool:
    return not p or (len(p) == 1 and ONE_MONO in p)


def _powers_mul(a: Powers, b: Powers) -> Powers:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for s, e in b:
        acc[s] = acc.get(s, 0) + e
    return tuple(sorted(acc.items()))


# exponential arguments -----------------------------------------------------

def earg_add(a: EArg, b: EArg) -> EArg:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for pw, c in b:
        v = acc.get(pw, 0) + c
        if v:
            acc[pw] = v
        else:
            acc.pop(pw, None)
    return tuple(sorted(acc.items()))


def earg_scale(a: EArg, k) -> EArg:
    if not k:
        return ()
    return tuple((pw, c * k) for pw, c in a)


def earg_neg(a: EArg) -> EArg:
    return tuple((pw, -c) for pw, c in a)


def _graded(pw: Powers):
    return (sum(e for _, e in pw), pw)


def earg_sign(a: EArg) -> int:
    """Sign of the leading coefficient under graded order.

    Orders exponential arguments as an ordered group: ``x < y`` iff
    ``earg_sign(y - x) > 0``.
    """
    if not a:
        return 0
    lead = max(a, key=lambda t: _graded(t[0]))
    return 1 if lead[1] > 0 else -1


def earg_to_poly(a: EArg) -> Poly:
    return {(pw, ()): c for pw, c in a}


def earg_from_poly(p: Poly) -> EArg:
    """Freeze a pure polynomial (no exponential atoms) into an argument."""
    items = []
    for (pw, ea), c in p.items():
        assert not ea
        items.append((pw, c))
    return tuple(sorted(items))


def earg_substitute(a: EArg, mapping) -> EArg:
    """Substitute pure polynomials (given as Poly) for symbols inside ``a``."""
    out: Poly = {}
    for pw, c in a:
        term = {ONE_MONO: c}
        for s, e in pw:
            if s in mapping:
                term = poly_mul(term, poly_pow(mapping[s], e))
            else:
                term = poly_mul(term, {(((s, e),), ()): Fraction(1)})
        out = poly_add(out, term)
    return earg_from_poly(out)


# monomials and polynomials -------------------------------------------------

def mono_mul(a: Mono, b: Mono) -> Mono:
    return (_powers_mul(a[0], b[0]), earg_add(a[1], b[1]))


def term_key(m: Mono):
    """Deterministic display/normalization order: low degree first."""
    pw, ea = m
    return (sum(e for _, e in pw), pw, len(ea), ea)


def poly_add(a: Poly, b: Poly) -> Poly:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_iadd(out: Poly, b: Poly) -> None:
    """In-place ``out += b`` for accumulators owned by the caller."""
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)


def poly_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_scale(a: Poly, k) -> Poly:
    if not k:
        return {}
    if k == 1:
        return a
    return {m: c * k for m, c in a.items()}


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(a) == 1 and ONE_MONO in a:
        return poly_scale(b, a[ONE_MONO])
    if len(b) == 1 and ONE_MONO in b:
        return poly_scale(a, b[ONE_MONO])
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_pow(a: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative polynomial power")
    result = poly_const(1)
    base = a
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def poly_symbols(p: Poly) -> set:
    out = set()
    for pw, ea in p:
        out.update(s for s, _ in pw)
        for epw, _ in ea:
            out.update(s for s, _ in epw)
    return out


def poly_degree_in(p: Poly, v: Symbol) -> int:
    """Largest power of ``v`` outside exponential atoms."""
    deg = 0
    for pw, _ in p:
        for s, e in pw:
            if s == v and e > deg:
                deg = e
    return deg


def _earg_mentions(ea: EArg, v: Symbol) -> bool:
    return any(s == v for pw, _ in ea for s, _ in pw)


def poly_derivative(p: Poly, v: Symbol) -> Poly:
    out: Poly = {}
    for (pw, ea), c in p.items():
        for i, (s, e) in enumerate(pw):
            if s == v:
                rest = pw[:i] + (((s, e - 1),) if e > 1 else ()) + pw[i + 1:]
                poly_iadd(out, {(rest, ea): c * e})
                break
        if ea and _earg_mentions(ea, v):
            darg = poly_derivative(earg_to_poly(ea), v)
            poly_iadd(out, poly_mul(darg, {(pw, ea): c}))
    return out


def lcm_denominators(polys: Iterable[Poly]) -> int:
    from math import lcm
    d = 1
    for p in polys:
        for c in p.values():
            d = lcm(d, c.denominator)
    return d
