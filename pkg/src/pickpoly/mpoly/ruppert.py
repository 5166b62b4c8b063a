"""Ruppert–Gao linear system for absolute irreducibility of bivariate polynomials.

For ``f(x, y)`` of bidegree ``(m, n)`` the unknowns are ``g`` with
``deg g <= (m-1, n)`` and ``h`` with ``deg h <= (m, n-1)`` subject to::

    d/dy (g / f) = d/dx (h / f)   <=>   f g_y - g f_y - f h_x + h f_x = 0

Each absolutely irreducible factor ``f_i`` contributes the solution
``g = (f/f_i) d f_i/dx, h = (f/f_i) d f_i/dy``.  In characteristic zero the
kernel is one-dimensional exactly when ``f`` is absolutely irreducible (a
repeated factor or a factor free of ``x`` always adds extra solutions).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .gauss import GaussRat
from .poly import CPoly


def _to_qqi(c: GaussRat):
    return QQ_I(QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator))


def _from_qqi(e) -> GaussRat:
    return GaussRat(
        Fraction(int(e.x.numerator), int(e.x.denominator)),
        Fraction(int(e.y.numerator), int(e.y.denominator)),
    )


def _mono(a: int, b: int, c=1) -> CPoly:
    return CPoly(2, {(a, b): c})


def ruppert_kernel(f: CPoly) -> List[Tuple[CPoly, CPoly]]:
    """Basis of the solution space ``(g, h)`` for a bivariate ``f`` depending on both variables."""
    if f.n != 2:
        raise ValueError("Ruppert system is bivariate")
    m, n = f.degree_in(0), f.degree_in(1)
    if m < 1 or n < 1:
        raise ValueError("Ruppert system needs positive degree in both variables")
    fx, fy = f.diff(0), f.diff(1)
    cols: List[CPoly] = []
    unknowns: List[Tuple[str, int, int]] = []
    for a in range(m):
        for b in range(n + 1):
            col = -(_mono(a, b) * fy)
            if b:
                col = col + f * _mono(a, b - 1, b)
            cols.append(col)
            unknowns.append(("g", a, b))
    for a in range(m + 1):
        for b in range(n):
            col = _mono(a, b) * fx
            if a:
                col = col - f * _mono(a - 1, b, a)
            cols.append(col)
            unknowns.append(("h", a, b))
    row_index: Dict[tuple, int] = {}
    for col in cols:
        for alpha, _ in col.items():
            row_index.setdefault(alpha, len(row_index))
    entries: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(cols):
        for alpha, c in col.items():
            entries.setdefault(row_index[alpha], {})[j] = _to_qqi(c)
    M = DomainMatrix(entries, (max(len(row_index), 1), len(cols)), QQ_I)
    basis = M.nullspace()
    out = []
    rows, _ = basis.shape
    dense = basis.to_list() if rows else []
    for r in range(rows):
        g: Dict[tuple, GaussRat] = {}
        h: Dict[tuple, GaussRat] = {}
        for j, (kind, a, b) in enumerate(unknowns):
            e = dense[r][j]
            if e:
                (g if kind == "g" else h)[(a, b)] = _from_qqi(e)
        out.append((CPoly(2, g), CPoly(2, h)))
    return out


def ruppert_corank(f: CPoly) -> int:
    return len(ruppert_kernel(f))


def bivariate_is_irreducible(f: CPoly) -> bool:
    """Exact absolute irreducibility for ``f`` in two variables (both occurring)."""
    return ruppert_corank(f) == 1


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def random_plane_slice(Q: CPoly, rng: random.Random) -> CPoly:
    """Restrict ``Q`` to ``z_j = a_j s + b_j t + c_j`` with small random rationals."""
    forms = []
    for _ in range(Q.n):
        a, b, c = (_random_rational(rng) for _ in range(3))
        forms.append(CPoly(2, {(1, 0): a, (0, 1): b, (0, 0): c}))
    return Q.compose_linear(forms)


def sliced_irreducible(Q: CPoly, trials: int, rng: random.Random) -> Optional[int]:
    """Return the 1-based trial index of an irreducible full-degree plane slice, else ``None``.

    A slice keeping the total degree of ``Q`` cannot split a nontrivial
    factorization into constants, so an irreducible slice proves ``Q``
    irreducible.
    """
    d = Q.degree()
    for t in range(1, trials + 1):
        S = random_plane_slice(Q, rng)
        if S.degree() != d or S.degree_in(0) < 1 or S.degree_in(1) < 1:
            continue
        if bivariate_is_irreducible(S):
            return t
    return None
