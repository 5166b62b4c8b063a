"""Semi-decision: is a polynomial zero-free on the polydisc?

The closed polydisc of radius ``1 - margin`` is covered by products of
squares.  A cell with center ``c`` and per-coordinate covering radii
``r_j`` is discharged when

    |Q(c)| - sum_j r_j * G_j > slack,

where ``G_j`` majorizes ``|dQ/dz_j|`` on the cell through the coefficient
moduli.  Cells that fail are split along the coordinate with the largest
contribution, and a minimum-norm Newton search from the cell center looks
for a genuine zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .poly import CPoly

VERIFIED = "Verified"
ZERO_FOUND = "ZeroFound"
UNKNOWN = "Unknown"

ZERO_TOL = 1e-12
_SQRT2 = 2.0**0.5


@dataclass(frozen=True)
class ZeroFreeVerdict:
    status: str
    point: Optional[Tuple[complex, ...]] = None
    cells_examined: int = 0


def _newton(Q: CPoly, grads, z: np.ndarray, iters: int = 40) -> Optional[np.ndarray]:
    for _ in range(iters):
        val = Q.evaluate(z)
        if abs(val) < ZERO_TOL:
            return z
        g = np.array([d.evaluate(z) for d in grads])
        nrm = float(np.vdot(g, g).real)
        if nrm == 0.0:
            return None
        z = z - val * g.conj() / nrm
        if not np.all(np.isfinite(z)) or np.max(np.abs(z)) > 4:
            return None
    return z if abs(Q.evaluate(z)) < ZERO_TOL else None


def _distinct_factors(Q: CPoly):
    from .factor import factor  # local import: factor is only needed on this path

    try:
        F = factor(Q)
    except (ArithmeticError, AssertionError, ValueError):
        return [Q]
    return [f for f, _ in F.factors]


def _all_factors(parts, budget: int, margin: float) -> ZeroFreeVerdict:
    # Q vanishes exactly where one of its factors does
    total = 0
    unknown = False
    share = max(budget // len(parts), 1)
    for f in parts:
        v = zero_free_on_polydisc(f, share, margin, split_factors=False)
        total += v.cells_examined
        if v.status == ZERO_FOUND:
            return ZeroFreeVerdict(ZERO_FOUND, v.point, total)
        unknown = unknown or v.status == UNKNOWN
    return ZeroFreeVerdict(UNKNOWN if unknown else VERIFIED, None, total)


def zero_free_on_polydisc(
    Q: CPoly, budget: int = 100_000, margin: float = 1e-3, split_factors: bool = True
) -> ZeroFreeVerdict:
    """Certify that ``Q`` has no zeros with all ``|z_j| <= 1 - margin``.

    Returns Verified, ZeroFound (with a point in the open polydisc where
    ``|Q| < 1e-12``) or Unknown once ``budget`` cells have been examined.
    Polynomials whose zeros approach the unit torus need cells of size about
    ``margin`` near those zeros; Unknown is common there for tiny margins.
    With ``split_factors`` a reducible ``Q`` in at most two variables is
    certified factor by factor, which keeps products of simple pieces cheap.
    """
    if Q.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    n = Q.n
    R = 1.0 - margin
    origin = (0j,) * n
    if Q.constant_term().is_zero():
        return ZeroFreeVerdict(ZERO_FOUND, origin, 0)
    if Q.is_constant():
        return ZeroFreeVerdict(VERIFIED, None, 0)
    alphas, coeffs = Q.numeric()
    absc = np.abs(coeffs)
    degs = alphas.sum(axis=1)
    # triangle inequality on the whole polydisc
    if abs(complex(Q.constant_term())) > float(np.sum(absc[degs > 0] * R ** degs[degs > 0])):
        return ZeroFreeVerdict(VERIFIED, None, 0)

    if split_factors and Q.degree() >= 2 and len(Q.active_vars()) <= 2:
        parts = _distinct_factors(Q)
        if len(parts) > 1:
            return _all_factors(parts, budget, margin)

    grads = [Q.diff(j) for j in range(n)]
    # d/dz_j majorant: sum |a| alpha_j rho^(alpha - e_j)
    dexp = [np.maximum(alphas - np.eye(n, dtype=np.int64)[j], 0) for j in range(n)]
    dweight = [absc * alphas[:, j] for j in range(n)]

    queue = deque([(np.zeros(n, dtype=complex), np.full(n, R))])
    examined = 0
    newton_left = 64
    while queue:
        if examined >= budget:
            return ZeroFreeVerdict(UNKNOWN, None, examined)
        center, half = queue.popleft()
        examined += 1
        radius = half * _SQRT2
        if np.any(np.abs(center) - radius > R):
            continue
        rho = np.abs(center) + radius
        val = abs(Q.evaluate(center))
        contrib = np.array(
            [radius[j] * float(np.sum(dweight[j] * np.prod(rho ** dexp[j], axis=1))) for j in range(n)]
        )
        slack = 1e-13 * float(np.sum(absc * np.prod(rho**alphas, axis=1)))
        if val - contrib.sum() > slack:
            continue
        if newton_left > 0:
            newton_left -= 1
            z = _newton(Q, grads, center.copy())
            if z is not None and np.max(np.abs(z)) <= R:
                return ZeroFreeVerdict(ZERO_FOUND, tuple(complex(x) for x in z), examined)
        j = int(np.argmax(contrib))
        h = half.copy()
        h[j] /= 2
        for dx in (-1, 1):
            for dy in (-1, 1):
                c = center.copy()
                c[j] += complex(dx * h[j], dy * h[j])
                queue.append((c, h))
    return ZeroFreeVerdict(VERIFIED, None, examined)
