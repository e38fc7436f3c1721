"""Truncated multivariate Taylor expansion at the origin.

Used where many coefficients are needed at once (oracle comparison, witness
search). Single coefficients go through :func:`taylor_coeff`, which
differentiates; tests cross-check the two routes.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..errors import PoleAtOrigin
from .expr import ONE, ZERO, Expr, _coerce
from .poly import ONE_MONO, poly_iadd, poly_mul

__all__ = ["taylor_box"]


def _indices(n, upto, max_total):
    for idx in itertools.product(range(upto + 1), repeat=n):
        if max_total is None or sum(idx) <= max_total:
            yield idx


def _fits(idx, upto, max_total):
    return all(i <= upto for i in idx) and (max_total is None or sum(idx) <= max_total)


def _series_mul(a, b, upto, max_total):
    out = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            k = tuple(x + y for x, y in zip(ia, ib))
            if _fits(k, upto, max_total):
                acc = out.setdefault(k, {})
                poly_iadd(acc, poly_mul(ca, cb))
    return {k: v for k, v in out.items() if v}


def _exp_series(ea_var, vi, n, upto, max_total):
    """Series of exp(P) where every term of P mentions an expansion variable."""
    p = {}
    for pw, c in ea_var:
        idx = [0] * n
        rest = []
        for s, e in pw:
            if s in vi:
                idx[vi[s]] += e
            else:
                rest.append((s, e))
        idx = tuple(idx)
        if _fits(idx, upto, max_total):
            poly_iadd(p.setdefault(idx, {}), {(tuple(rest), ()): c})
    zero = (0,) * n
    total = {zero: {ONE_MONO: Fraction(1)}}
    power = dict(total)
    j = 0
    limit = max_total if max_total is not None else upto * n
    while True:
        j += 1
        power = _series_mul(power, p, upto, max_total)
        if not power or j > limit:
            break
        for k, v in power.items():
            poly_iadd(total.setdefault(k, {}), {m: c / _fact(j) for m, c in v.items()})
    return {k: v for k, v in total.items() if v}


def _fact(j):
    f = 1
    for i in range(2, j + 1):
        f *= i
    return f


def _poly_series(p, vi, n, upto, max_total):
    out = {}
    cache = {}
    for (pw, ea), c in p.items():
        idx = [0] * n
        rest = []
        for s, e in pw:
            if s in vi:
                idx[vi[s]] = e
            else:
                rest.append((s, e))
        idx = tuple(idx)
        if not _fits(idx, upto, max_total):
            continue
        ea_var = tuple(t for t in ea if any(s in vi for s, _ in t[0]))
        ea_rest = tuple(t for t in ea if not any(s in vi for s, _ in t[0]))
        base = {(tuple(rest), ea_rest): c}
        if not ea_var:
            poly_iadd(out.setdefault(idx, {}), base)
            continue
        if ea_var not in cache:
            cache[ea_var] = _exp_series(ea_var, vi, n, upto, max_total)
        for j, coeff in cache[ea_var].items():
            k = tuple(x + y for x, y in zip(idx, j))
            if _fits(k, upto, max_total):
                poly_iadd(out.setdefault(k, {}), poly_mul(base, coeff))
    return {k: Expr._raw(v, ONE.den) for k, v in out.items() if v}


def taylor_box(e, variables, upto, max_total=None):
    """Coefficients of ``e`` at every index in ``[0, upto]**n``.

    Returns a dict from exponent tuples (ordered like ``variables``) to
    nonzero :class:`Expr` coefficients. With ``max_total`` only indices of
    total degree at most ``max_total`` are produced.
    """
    e = _coerce(e)
    variables = list(variables)
    n = len(variables)
    vi = {v: i for i, v in enumerate(variables)}
    num = _poly_series(e.num, vi, n, upto, max_total)
    if e.is_polynomial():
        return num
    den = _poly_series(e.den, vi, n, upto, max_total)
    zero = (0,) * n
    d0 = den.get(zero, ZERO)
    if d0.is_zero():
        raise PoleAtOrigin(f"{e} is not analytic at the origin")
    inv0 = ONE / d0
    dterms = [(k, v) for k, v in den.items() if k != zero]
    inv = {}
    for idx in _indices(n, upto, max_total):
        if idx == zero:
            inv[idx] = inv0
            continue
        acc = ZERO
        for k, dk in dterms:
            rest = tuple(a - b for a, b in zip(idx, k))
            if min(rest) < 0:
                continue
            q = inv.get(rest)
            if q is not None:
                acc = acc + dk * q
        if not acc.is_zero():
            inv[idx] = -(acc * inv0)
    out = {}
    for ia, ca in num.items():
        for ib, cb in inv.items():
            k = tuple(x + y for x, y in zip(ia, ib))
            if _fits(k, upto, max_total):
                out[k] = out[k] + ca * cb if k in out else ca * cb
    return {k: v for k, v in out.items() if not v.is_zero()}
