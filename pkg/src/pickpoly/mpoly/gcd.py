"""Exact multivariate gcd and squarefree decomposition over Q(i).

Recursive primitive polynomial remainder sequences: pick a main variable,
split off contents (gcds of coefficient polynomials in the remaining
variables), then run pseudo-division on the primitive parts.
"""

from __future__ import annotations

from typing import List, Tuple

from .poly import CPoly


def normalize(p: CPoly) -> CPoly:
    """Scale to leading (graded-lex) coefficient 1; zero stays zero."""
    if p.is_zero():
        return p
    return p.monic()[1]


def content_in(p: CPoly, v: int) -> CPoly:
    """Gcd of the coefficients of ``p`` viewed as a polynomial in variable ``v``."""
    g = None
    for c in p.coefficients_in(v).values():
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return CPoly.one(p.n)
    return normalize(g)


def primitive_part(p: CPoly, v: int) -> CPoly:
    c = content_in(p, v)
    q = p.divide(c)
    assert q is not None
    return normalize(q)


def prem(a: CPoly, b: CPoly, v: int) -> CPoly:
    """Pseudo-remainder of ``a`` by ``b`` in variable ``v``."""
    db = b.degree_in(v)
    lcb = b.coefficients_in(v)[db]
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lcr = r.coefficients_in(v)[dr]
        shift = [0] * a.n
        shift[v] = dr - db
        r = lcb * r - lcr * b.shift(shift)
    return r


def gcd(f: CPoly, g: CPoly) -> CPoly:
    """Greatest common divisor, normalized to leading coefficient 1."""
    if f.n != g.n:
        raise ValueError("variable-count mismatch")
    if f.is_zero():
        return normalize(g)
    if g.is_zero():
        return normalize(f)
    if f.is_constant() or g.is_constant():
        return CPoly.one(f.n)
    af, ag = set(f.active_vars()), set(g.active_vars())
    only_f = af - ag
    if only_f:
        return gcd(content_in(f, min(only_f)), g)
    only_g = ag - af
    if only_g:
        return gcd(f, content_in(g, min(only_g)))
    v = min(af)
    cf, cg = content_in(f, v), content_in(g, v)
    c = gcd(cf, cg)
    a = normalize(f.divide(cf))
    b = normalize(g.divide(cg))
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while True:
        r = prem(a, b, v)
        if r.is_zero():
            break
        if r.degree_in(v) == 0:
            b = CPoly.one(f.n)
            break
        a, b = b, primitive_part(r, v)
    return normalize(c * primitive_part(b, v))


def squarefree_decomposition(f: CPoly, v: int) -> List[Tuple[CPoly, int]]:
    """Yun's algorithm with respect to ``d/dz_v``.

    Returns ``[(s_i, i), ...]`` with ``f = const * prod s_i**i`` for factors of
    ``f`` that involve ``z_v``; factors free of ``z_v`` are not separated and
    must be removed beforehand (see :func:`content_in`).
    """
    out: List[Tuple[CPoly, int]] = []
    df = f.diff(v)
    a = gcd(f, df)
    b = f.divide(a)
    c = df.divide(a)
    d = c - b.diff(v)
    i = 1
    while not b.is_constant():
        a = gcd(b, d)
        if not a.is_constant():
            out.append((normalize(a), i))
        b = b.divide(a)
        c = d.divide(a)
        d = c - b.diff(v)
        i += 1
    return out
