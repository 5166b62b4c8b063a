"""Absolute factorization with exact verification.

Bivariate strategy (Gao's variant of the Ruppert system):

1. strip monomial factors and the content in ``z_x`` (a univariate
   polynomial, split into linear factors from rounded numeric roots);
2. squarefree decomposition (Yun) in ``z_x``;
3. for each squarefree part ``s`` take a random ``g`` in the Ruppert kernel.
   Every root ``x_k`` of ``s(., y0)`` lying on the factor ``f_i`` has
   ``g/s_x = lambda_i`` there (a constant per factor), so clustering these
   values over several slices ``y = y0`` groups the roots by factor.  Each
   group is interpolated by a numeric null vector, normalized, rounded to
   Gaussian rationals and kept only if it divides ``s`` exactly.

Every factor reported is checked by exact division; a piece that cannot be
split over Q(i) is returned as *unresolved* rather than guessed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from .gauss import GaussRat, round_gauss
from .gcd import content_in, normalize, squarefree_decomposition
from .poly import CPoly
from .ruppert import bivariate_is_irreducible, ruppert_kernel, sliced_irreducible

_DENOMINATORS = (1, 2, 3, 4, 6, 8, 12, 16, 24, 60, 120, 1000, 10**4, 10**5, 10**6)


@dataclass(frozen=True)
class Factorization:
    """``Q == constant * prod(f**k for f, k in factors)``.

    ``unresolved`` lists the entries of ``factors`` not certified irreducible.
    """

    constant: GaussRat
    factors: Tuple[Tuple[CPoly, int], ...]
    unresolved: Tuple[CPoly, ...] = field(default=())

    @property
    def status(self) -> str:
        return "complete" if not self.unresolved else "unknown"

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def expand(self) -> CPoly:
        n = self.factors[0][0].n if self.factors else None
        if n is None:
            raise ValueError("empty factorization has no ring")
        out = CPoly.one(n)
        for f, k in self.factors:
            out = out * f**k
        return out.scale(self.constant)

    def degree_count(self) -> int:
        return sum(k for _, k in self.factors)


class _Collector:
    def __init__(self, n: int):
        self.n = n
        self.mult: Dict[CPoly, int] = {}
        self.order: List[CPoly] = []
        self.unresolved: set = set()

    def add(self, f: CPoly, k: int, certified: bool) -> None:
        if f.is_constant() or k == 0:
            return
        f = normalize(f)
        if f not in self.mult:
            self.order.append(f)
            self.mult[f] = 0
        self.mult[f] += k
        if not certified:
            self.unresolved.add(f)


def _univariate_roots_factor(p: CPoly, v: int, out: _Collector, k: int) -> None:
    """Split a squarefree polynomial in the single variable ``v`` into linear factors."""
    coeffs = p.coefficients_in(v)
    deg = max(coeffs)
    vec = [complex(coeffs[e].constant_term()) if e in coeffs else 0j for e in range(deg, -1, -1)]
    rest = p
    for root in np.roots(vec):
        if rest.degree_in(v) <= 1:
            break
        for D in _DENOMINATORS:
            rho = round_gauss(root, D)
            lin = CPoly.variable(p.n, v + 1) - CPoly.constant(p.n, rho)
            q = rest.divide(lin)
            if q is not None:
                out.add(lin, k, True)
                rest = q
                break
    if rest.degree_in(v) == 1:
        out.add(rest, k, True)
    elif not rest.is_constant():
        out.add(rest, k, False)


def _factor_univariate(p: CPoly, v: int, out: _Collector, mult: int = 1) -> None:
    for s, k in squarefree_decomposition(p, v):
        if s.degree_in(v) == 1:
            out.add(s, k * mult, True)
        else:
            _univariate_roots_factor(s, v, out, k * mult)


def _cluster(values: np.ndarray, tol: float) -> List[List[int]]:
    groups: List[List[int]] = []
    centers: List[complex] = []
    for idx, val in enumerate(values):
        for gi, c in enumerate(centers):
            if abs(val - c) <= tol * max(1.0, abs(c)):
                groups[gi].append(idx)
                break
        else:
            groups.append([idx])
            centers.append(val)
    return groups


def _slice_roots(s: CPoly, y0: complex) -> np.ndarray:
    xcoeffs = s.coefficients_in(0)
    m = s.degree_in(0)
    vec = [complex(xcoeffs[e].evaluate((0, y0))) if e in xcoeffs else 0j for e in range(m, -1, -1)]
    if abs(vec[0]) < 1e-8 * max(abs(v) for v in vec):
        return np.array([])
    return np.roots(vec)


def _interpolate_factor(points: List[Tuple[complex, complex]], mx: int, ny: int) -> Iterator[CPoly]:
    """Rounded candidates for the polynomial of bidegree ``<= (mx, ny)`` vanishing on ``points``.

    Yields nothing unless the evaluation matrix has a numerical null vector.
    """
    exps = [(a, b) for a in range(mx + 1) for b in range(ny + 1)]
    if len(points) < len(exps) - 1:
        return
    A = np.array([[x**a * y**b for a, b in exps] for x, y in points])
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    _, sv, vh = np.linalg.svd(A / scale)
    smallest = sv[-1] if len(sv) == len(exps) else 0.0
    if smallest > 1e-8 * sv[0]:
        return
    vec = vh[-1].conj() / scale
    big = np.max(np.abs(vec))
    significant = [k for k in range(len(exps)) if abs(vec[k]) > 1e-8 * big]
    lead = max(significant, key=lambda k: (sum(exps[k]), exps[k]))
    vec = vec / vec[lead]
    seen = set()
    for D in _DENOMINATORS:
        cand = CPoly(2, {exps[k]: round_gauss(vec[k], D) for k in significant})
        if cand not in seen and not cand.is_constant():
            seen.add(cand)
            yield cand


def _gao_split(s: CPoly, rng: random.Random, attempts: int = 4) -> List[Tuple[CPoly, bool]]:
    """Split a squarefree bivariate ``s`` that is primitive in ``z1``."""
    kernel = ruppert_kernel(s)
    r = len(kernel)
    if r == 1:
        return [(s, True)]
    basis = [g for g, _ in kernel]
    sx = s.diff(0)
    m, ny = s.degree_in(0), s.degree_in(1)
    for _ in range(attempts):
        g = CPoly.zero(2)
        for b in basis:
            g = g + b.scale(rng.randint(1, 9))
        points: List[Tuple[complex, complex]] = []
        lam: List[complex] = []
        slice_of: List[int] = []
        for k in range(2 * ny + 4):
            y0 = rng.uniform(0.5, 1.5) * complex(np.exp(2j * np.pi * rng.random()))
            roots = _slice_roots(s, y0)
            if len(roots) != m:
                continue
            for x in roots:
                points.append((x, y0))
                lam.append(g.evaluate((x, y0)) / sx.evaluate((x, y0)))
                slice_of.append(k)
        groups = _cluster(np.array(lam), 1e-6)
        if len(groups) != r:
            continue
        found: List[CPoly] = []
        rest = s
        for grp in groups:
            per_slice = {}
            for idx in grp:
                per_slice[slice_of[idx]] = per_slice.get(slice_of[idx], 0) + 1
            counts = set(per_slice.values())
            if len(counts) != 1:
                continue
            mx = counts.pop()
            pts = [points[idx] for idx in grp]
            done = False
            for nyi in range(ny + 1):
                for cand in _interpolate_factor(pts, mx, nyi):
                    q = rest.divide(cand)
                    if q is not None:
                        found.append(cand)
                        rest = q
                        done = True
                        break
                if done:
                    break
        if not found:
            continue
        pieces = [(d, _certify_bivariate(d)) for d in found]
        if not rest.is_constant():
            pieces.append((rest, _certify_bivariate(rest)))
        return pieces
    return [(s, False)]


def _certify_bivariate(p: CPoly) -> bool:
    if p.degree_in(0) < 1 or p.degree_in(1) < 1:
        return p.degree() == 1
    return bivariate_is_irreducible(p)


def _factor_bivariate(R: CPoly, out: _Collector, rng: random.Random) -> None:
    cont = content_in(R, 0)
    if not cont.is_constant():
        _factor_univariate(cont, 1, out)
        R = R.divide(cont)
    for s, k in squarefree_decomposition(R, 0):
        if s.degree_in(1) == 0:
            # free of z2 after the content split: univariate in z1
            _factor_univariate(s, 0, out, k)
            continue
        for piece, certified in _gao_split(s, rng):
            if certified or piece.degree_in(0) < 1 or piece.degree_in(1) < 1:
                out.add(piece, k, certified)
            else:
                # retry with a fresh random combination before giving up
                sub = _gao_split(piece, rng)
                for p2, c2 in sub:
                    out.add(p2, k, c2)


def factor(
    Q: CPoly,
    hints: Sequence[CPoly] = (),
    seed: int = 0,
    slice_trials: int = 8,
) -> Factorization:
    """Factor ``Q`` into irreducible factors over C, keeping only verified pieces.

    Factors are normalized to leading (graded-lex) coefficient 1 and the
    leftover constant is returned separately.  Polynomials in more than two
    occurring variables are split only by monomials and by trial division with
    ``hints``; whatever remains is certified irreducible by random plane
    slices or else reported unresolved.
    """
    if Q.is_constant():
        raise ValueError("cannot factor a constant")
    n = Q.n
    rng = random.Random(seed)
    out = _Collector(n)
    beta = Q.monomial_content()
    for j, e in enumerate(beta):
        out.add(CPoly.variable(n, j + 1), e, True)
    rest = Q.divide(CPoly.monomial(beta)) if any(beta) else Q
    for h in hints:
        if h.n != n or h.is_constant():
            continue
        while True:
            q = rest.divide(h)
            if q is None:
                break
            out.add(h, 1, _certify(h, rng, slice_trials))
            rest = q
    _factor_any(rest, out, rng, slice_trials)
    factors = tuple((f, out.mult[f]) for f in out.order)
    expanded = CPoly.one(n)
    for f, k in factors:
        expanded = expanded * f**k
    const = Q.divide(expanded)
    if const is None or not const.is_constant():
        raise AssertionError("factorization failed exact verification")
    unresolved = tuple(f for f in out.order if f in out.unresolved)
    return Factorization(const.constant_term(), factors, unresolved)


def _certify(p: CPoly, rng: random.Random, trials: int) -> bool:
    active = p.active_vars()
    if len(active) <= 1:
        return p.degree() == 1
    if len(active) == 2:
        return _certify_bivariate(p.restrict(active))
    return sliced_irreducible(p, trials, rng) is not None


def _factor_any(P: CPoly, out: _Collector, rng: random.Random, slice_trials: int) -> None:
    if P.is_constant():
        return
    n = P.n
    active = P.active_vars()
    if len(active) == 1:
        _factor_univariate(P, active[0], out)
    elif len(active) == 2:
        sub = _Collector(2)
        _factor_bivariate(P.restrict(active), sub, rng)
        for f in sub.order:
            out.add(f.embed(n, active), sub.mult[f], f not in sub.unresolved)
    else:
        out.add(P, 1, sliced_irreducible(P, slice_trials, rng) is not None)


def is_proper_factor(f: CPoly, Q: CPoly) -> bool:
    return not f.is_constant() and f.degree() < Q.degree() and Q.divide(f) is not None
