"""Synthetic three-point instances with a known interpolant.

``F = psi_{w3}^-1 o ((B o pi_l) H) o Psi_{X3}`` is built from random nodes,
a candidate ``H`` and a random Blaschke product ``B`` of prescribed degree;
the data are ``w_j = F(X_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .engine import ProblemData, coordinate_candidate
from .moebius import Psi, psi_inv
from .mpoly import CPoly, parse_poly
from .pick import BlaschkeProduct
from .rif import RationalInner, eval_inner

# deficient, irreducible, zero-free on the bidisc (checked in the test suite)
FIXED_DENOMINATORS: Tuple[str, ...] = (
    "2 - z1 - z2",
    "3 - 2z1 - z2",
    "4 - 2z1 - z2 - z1^2",
    "3 - z1 - z2 - 1/2z1^2",
    "4 - z1 - z2 - z1^2 - z2^2",
    "2 - z1 - (0+1i)z2",
    "3 - z1 - z2^2 - z1z2",
    "3 - z1 - z2 - z2^3",
    "4 - 2z1 - z2^2 - 1/2z1^2",
    "3 - (1+1i)z1 - z2",
)


def fixed_denominators(n: int = 2) -> List[CPoly]:
    return [parse_poly(s, n) for s in FIXED_DENOMINATORS]


@dataclass(frozen=True)
class Synthesized:
    data: ProblemData
    H: RationalInner
    H_label: str
    l: int
    B: BlaschkeProduct

    @property
    def rank(self) -> int:
        return self.B.degree


def _disc(rng: np.random.Generator, radius: float, size=None):
    r = radius * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def random_blaschke(rng: np.random.Generator, degree: int, radius: float = 0.8) -> BlaschkeProduct:
    c = complex(np.exp(2j * np.pi * rng.uniform()))
    return BlaschkeProduct(c, tuple(complex(a) for a in _disc(rng, radius, degree)))


def synthesize(
    rng: np.random.Generator,
    degree: int,
    n: int = 2,
    H: Optional[RationalInner] = None,
    H_label: str = "",
    l: Optional[int] = None,
    radius: float = 0.8,
) -> Synthesized:
    """One instance with Blaschke degree ``degree``; ``H`` defaults to a random coordinate."""
    if H is None:
        j = int(rng.integers(1, n + 1))
        H = coordinate_candidate(n, j).inner
        H_label = f"z{j}"
    l = int(rng.integers(1, n + 1)) if l is None else l
    B = random_blaschke(rng, degree, radius)
    while True:
        X = [tuple(complex(v) for v in _disc(rng, radius, n)) for _ in range(3)]
        w3 = complex(_disc(rng, radius))
        Xp = [Psi(X[2], X[j]) for j in range(2)]
        if abs(Xp[0][l - 1] - Xp[1][l - 1]) < 1e-3:
            continue
        vals = [B(Xp[j][l - 1]) * eval_inner(H, Xp[j]) for j in range(2)]
        w = (psi_inv(w3, vals[0]), psi_inv(w3, vals[1]), w3)
        # keep the data away from the boundary and from vanishing H
        if max(abs(v) for v in w) < 0.999 and min(abs(eval_inner(H, p)) for p in Xp) > 1e-6:
            return Synthesized(ProblemData(n, tuple(X), w), H, H_label, l, B)


def synthesize_batch(count: int, seed: int = 0, n: int = 2, degrees: Sequence[int] = (0, 1, 2)) -> List[Synthesized]:
    """Instances cycling through the degrees and through ``z_j`` and the fixed denominators."""
    rng = np.random.default_rng(seed)
    pool: List[Tuple[RationalInner, str]] = [
        (coordinate_candidate(n, j).inner, f"z{j}") for j in range(1, n + 1)
    ]
    for Q in fixed_denominators(n):
        pool.append((RationalInner(1, Q.nu(), Q, "verified"), str(Q)))
    out = []
    for k in range(count):
        H, label = pool[k % len(pool)]
        out.append(synthesize(rng, degrees[k % len(degrees)], n, H, label))
    return out
