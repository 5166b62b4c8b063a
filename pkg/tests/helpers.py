"""Random instance generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from pickpoly.mpoly import CPoly, GaussRat, parse_poly
from pickpoly.rif import RationalInner
from pickpoly.synth import FIXED_DENOMINATORS

# exact points on the unit circle, used as unimodular constants
UNIT_GAUSS = (
    GaussRat(1),
    GaussRat(-1),
    GaussRat(0, 1),
    GaussRat(Fraction(3, 5), Fraction(4, 5)),
    GaussRat(Fraction(-5, 13), Fraction(12, 13)),
    GaussRat(Fraction(8, 17), Fraction(-15, 17)),
)


def small_gauss(rng: random.Random, real_only: bool = False) -> GaussRat:
    re = Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3, 4, 7)))
    im = Fraction(0) if real_only or rng.random() < 0.5 else Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3)))
    return GaussRat(re, im)


def random_poly(
    rng: random.Random,
    n: int,
    degree: int,
    terms: int,
    nonzero_constant: bool = False,
    real_only: bool = False,
) -> CPoly:
    """Sparse polynomial with at most ``terms`` monomials of total degree ``<= degree``."""
    out = {}
    for _ in range(terms):
        alpha = [0] * n
        for _ in range(rng.randint(0, degree)):
            alpha[rng.randrange(n)] += 1
        c = small_gauss(rng, real_only)
        if not c.is_zero():
            out[tuple(alpha)] = c
    if nonzero_constant:
        c = small_gauss(rng, real_only)
        out[(0,) * n] = c if not c.is_zero() else GaussRat(1)
    return CPoly(n, out)


def random_nonconstant(rng: random.Random, n: int, degree: int, terms: int, **kw) -> CPoly:
    while True:
        Q = random_poly(rng, n, degree, terms, **kw)
        if not Q.is_constant():
            return Q


def random_factor_pair(rng: random.Random) -> Tuple[CPoly, CPoly]:
    """Two bivariate polynomials with nonzero constant term, each of degree 1 or 2."""
    a = random_nonconstant(rng, 2, rng.randint(1, 2), 3, nonzero_constant=True)
    b = random_nonconstant(rng, 2, rng.randint(1, 2), 3, nonzero_constant=True)
    return a, b


def fixed_inner_pool(n: int = 2) -> List[RationalInner]:
    """Irreducible inner functions vanishing at 0: coordinates and ``reflect(Q)/Q``."""
    pool = [RationalInner.coordinate(n, j) for j in range(1, n + 1)]
    for s in FIXED_DENOMINATORS:
        Q = parse_poly(s, n)
        pool.append(RationalInner(1, Q.nu(), Q, "verified"))
    return pool


def product_inner(factors: List[RationalInner], A=1) -> RationalInner:
    out = RationalInner.constant(factors[0].n, A)
    for g in factors:
        out = out * g
    return out


def polydisc_points(rng: np.random.Generator, count: int, n: int, radius: float = 0.95) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(size=(count, n)))
    return r * np.exp(2j * np.pi * rng.uniform(size=(count, n)))
