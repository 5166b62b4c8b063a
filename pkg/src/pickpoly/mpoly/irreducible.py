"""Absolute irreducibility verdicts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple

from .factor import factor
from .poly import CPoly
from .ruppert import bivariate_is_irreducible, sliced_irreducible

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str
    witness: Optional[Tuple[CPoly, CPoly]] = None
    confidence: str = "exact"

    @property
    def irreducible(self) -> Optional[bool]:
        """``True``/``False`` for a decided verdict, ``None`` for Unknown."""
        if self.status == UNKNOWN:
            return None
        return self.status == IRREDUCIBLE


def _witness(Q: CPoly, seed: int) -> Optional[Tuple[CPoly, CPoly]]:
    F = factor(Q, seed=seed)
    for f, _ in F.factors:
        if f.degree() < Q.degree():
            cof = Q.divide(f)
            if cof is not None and not cof.is_constant():
                return f, cof
    return None


def is_irreducible(Q: CPoly, trials: int = 8, seed: int = 0) -> IrreducibilityVerdict:
    """Decide absolute irreducibility of ``Q`` over C.

    Polynomials in at most two occurring variables get an exact answer from
    the Ruppert–Gao corank.  With more variables, ``trials`` random plane
    slices are tried; an irreducible slice of full degree settles the
    question (reported with probabilistic confidence, as the search itself
    is randomized), and Reducible is only claimed with an explicit witness.
    """
    if Q.is_constant():
        raise ValueError("irreducibility is defined for nonconstant polynomials")
    d = Q.degree()
    if d == 1:
        return IrreducibilityVerdict(IRREDUCIBLE)
    beta = Q.monomial_content()
    if any(beta):
        j = next(k for k, e in enumerate(beta) if e)
        zj = CPoly.variable(Q.n, j + 1)
        return IrreducibilityVerdict(REDUCIBLE, (zj, Q.divide(zj)))
    active = Q.active_vars()
    if len(active) == 1:
        # univariate of degree >= 2 always splits over C
        return IrreducibilityVerdict(REDUCIBLE, _witness(Q, seed))
    if len(active) == 2:
        if bivariate_is_irreducible(Q.restrict(active)):
            return IrreducibilityVerdict(IRREDUCIBLE)
        return IrreducibilityVerdict(REDUCIBLE, _witness(Q, seed))
    rng = random.Random(seed)
    conf = f"probabilistic({trials})"
    if sliced_irreducible(Q, trials, rng) is not None:
        return IrreducibilityVerdict(IRREDUCIBLE, confidence=conf)
    w = _witness(Q, seed)
    if w is not None:
        return IrreducibilityVerdict(REDUCIBLE, w, confidence="exact")
    return IrreducibilityVerdict(UNKNOWN, confidence=conf)
