"""Pick matrices, positivity and two-point Blaschke interpolation on the disc."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .cjson import complex_from_json, complex_to_json
from .moebius import BOUNDARY_TOL, polydisc_rho, psi, psi_inv, rho

RANK_TOL = 1e-10
NODE_TOL = 1e-12


@dataclass(frozen=True)
class HermitianMatrix:
    """Hermitian by construction: only the upper triangle is ever computed."""

    entries: Tuple[Tuple[complex, ...], ...]

    @classmethod
    def from_kernel(cls, m: int, kernel) -> "HermitianMatrix":
        rows = [[0j] * m for _ in range(m)]
        for j in range(m):
            rows[j][j] = complex(complex(kernel(j, j)).real, 0.0)
            for k in range(j + 1, m):
                v = complex(kernel(j, k))
                rows[j][k] = v
                rows[k][j] = v.conjugate()
        return cls(tuple(tuple(r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex).reshape(self.order, self.order)

    def to_json(self) -> list:
        return [[complex_to_json(v) for v in row] for row in self.entries]


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    rank: int
    min_eigenvalue: float
    tolerance: float


def psd_check(M: HermitianMatrix, tol: float = RANK_TOL) -> PsdVerdict:
    """Positive semidefiniteness and numerical rank.

    An eigenvalue counts toward the rank when it exceeds
    ``tol * max(1, lambda_max)``; the matrix is PSD when the smallest
    eigenvalue is at least minus that threshold.  Order 2 uses the closed
    form from trace and determinant.
    """
    m = M.order
    if m == 0:
        return PsdVerdict(True, 0, 0.0, tol)
    if m == 2:
        a = M.entries[0][0].real
        d = M.entries[1][1].real
        b = M.entries[0][1]
        half = 0.5 * (a + d)
        disc = float(np.hypot(0.5 * (a - d), abs(b)))
        det = a * d - abs(b) ** 2
        # the root of larger modulus is free of cancellation; det gives the other
        if half >= 0:
            lmax = half + disc
            lmin = det / lmax if lmax > 0 else 0.0
        else:
            lmin = half - disc
            lmax = det / lmin
        eig = np.array([lmin, lmax])
    else:
        eig = np.linalg.eigvalsh(M.to_array())
    lmax = float(eig.max())
    thresh = tol * max(1.0, lmax)
    lmin = float(eig.min())
    return PsdVerdict(lmin >= -thresh, int(np.sum(eig > thresh)), lmin, thresh)


@dataclass(frozen=True)
class DiscData:
    """Interpolation nodes in the open disc and targets in the closed disc."""

    nodes: Tuple[complex, ...]
    targets: Tuple[complex, ...]

    def __post_init__(self):
        nodes = tuple(complex(a) for a in self.nodes)
        targets = tuple(complex(b) for b in self.targets)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)
        if len(nodes) != len(targets):
            raise ValueError("nodes and targets differ in length")
        for a in nodes:
            if 1.0 - abs(a) < BOUNDARY_TOL:
                raise ValueError(f"node {a} is not in the open disc")
        for b in targets:
            if abs(b) > 1.0 + BOUNDARY_TOL:
                raise ValueError(f"target {b} is outside the closed disc")
        for j in range(len(nodes)):
            for k in range(j):
                if abs(nodes[j] - nodes[k]) <= NODE_TOL:
                    raise ValueError("coincident nodes")

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class InfeasibleSignal:
    """Deflation hit ``|b_j / a_j| > 1``: the data violate the Schwarz lemma."""

    index: int
    ratio: complex


def pick_matrix(data: DiscData) -> HermitianMatrix:
    a, b = data.nodes, data.targets
    return HermitianMatrix.from_kernel(
        data.size,
        lambda j, k: (1 - b[j] * b[k].conjugate()) / (1 - a[j] * a[k].conjugate()),
    )


def theorem_matrix(
    Xp1: Sequence[complex],
    Xp2: Sequence[complex],
    c1: complex,
    c2: complex,
    l: int,
) -> HermitianMatrix:
    """The 2x2 matrix ``(1 - c_j conj(c_k)) / (1 - x_j conj(x_k))`` on coordinate ``l`` (1-based)."""
    if not 1 <= l <= len(Xp1) or len(Xp1) != len(Xp2):
        raise ValueError("bad coordinate index or dimension mismatch")
    x = (complex(Xp1[l - 1]), complex(Xp2[l - 1]))
    if abs(x[0] - x[1]) <= NODE_TOL:
        raise ValueError(f"coordinate l={l} degenerate")
    c = (complex(c1), complex(c2))
    for v in c:
        if abs(v) > 1.0 + BOUNDARY_TOL:
            raise ValueError("ratio outside the closed disc")
    return HermitianMatrix.from_kernel(
        2, lambda j, k: (1 - c[j] * c[k].conjugate()) / (1 - x[j] * x[k].conjugate())
    )


def moebius_normalize_data(data: DiscData) -> DiscData:
    """Move the last node and the last target to the origin."""
    an, bn = data.nodes[-1], data.targets[-1]
    return DiscData(
        tuple(psi(an, a) for a in data.nodes),
        tuple(psi(bn, b) for b in data.targets),
    )


def deflate_data(data: DiscData, tol: float = BOUNDARY_TOL) -> Union[DiscData, InfeasibleSignal]:
    """Drop the last (origin) point and divide the remaining targets by their nodes.

    For ``a_n = b_n = 0`` the Schur complement of the last diagonal entry of
    the Pick matrix is ``D Q D*`` with ``D = diag(a_j)`` and ``Q`` the Pick
    matrix of the deflated data, so positivity is preserved both ways.
    """
    if data.size < 1 or abs(data.nodes[-1]) > tol or abs(data.targets[-1]) > tol:
        raise ValueError("deflation needs the last node and target at the origin")
    nodes = data.nodes[:-1]
    targets = []
    for j, (a, b) in enumerate(zip(nodes, data.targets[:-1])):
        if abs(a) <= tol:
            raise ValueError("deflation undefined: a node other than the last is 0")
        s = b / a
        if abs(s) > 1.0 + tol:
            return InfeasibleSignal(j, s)
        if abs(s) > 1.0:
            s /= abs(s)
        targets.append(s)
    return DiscData(nodes, tuple(targets))


def two_point_feasible(
    X1: Sequence[complex],
    X2: Sequence[complex],
    w1: complex,
    w2: complex,
    tol: float = 1e-10,
) -> bool:
    """Necessary two-point condition: ``max_j rho(X1_j, X2_j) >= rho(w1, w2)``.

    ``tol`` absorbs rounding in the equality case.
    """
    if len(X1) != len(X2):
        raise ValueError("dimension mismatch")
    if all(abs(complex(a) - complex(b)) <= NODE_TOL for a, b in zip(X1, X2)):
        raise ValueError("the two points coincide")
    top, _ = polydisc_rho(X1, X2)
    return top >= rho(w1, w2) - tol


def _clean(z: complex) -> complex:
    return complex(z.real + 0.0, z.imag + 0.0)


@dataclass(frozen=True)
class BlaschkeProduct:
    """``constant * prod_k (z - a_k) / (1 - conj(a_k) z)``."""

    constant: complex
    zeros: Tuple[complex, ...] = ()

    def __post_init__(self):
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError("Blaschke constant must be unimodular")
        zs = tuple(complex(a) for a in self.zeros)
        for a in zs:
            if abs(a) >= 1.0:
                raise ValueError("Blaschke zeros must lie in the open disc")
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "zeros", zs)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.constant, dtype=complex)
        for a in self.zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return complex(out) if out.ndim == 0 else out

    def to_json(self) -> dict:
        return {
            "constant": complex_to_json(self.constant),
            "zeros": [complex_to_json(a) for a in self.zeros],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BlaschkeProduct":
        return cls(complex_from_json(obj["constant"]), tuple(complex_from_json(a) for a in obj.get("zeros", [])))


def two_point_blaschke(a1: complex, a2: complex, b1: complex, b2: complex) -> BlaschkeProduct:
    """Blaschke product ``B`` with ``B(a_j) = b_j`` and degree equal to the Pick rank.

    One Schur step: with ``u = psi(a1, z)`` the problem becomes ``G(0) = 0``,
    ``G(zeta0) = psi(b1, b2)`` where ``zeta0 = psi(a1, a2)``.  Rank 1 gives
    ``G(u) = omega u`` with ``|omega| = 1``; rank 2 gives ``G(u) = u m(u)``
    with ``m = psi_inv(omega, psi(zeta0, .))``.  Then ``B = psi_inv(b1, G(u))``.
    """
    a1, a2, b1, b2 = (complex(v) for v in (a1, a2, b1, b2))
    data = DiscData((a1, a2), (b1, b2))
    verdict = psd_check(pick_matrix(data))
    if not verdict.is_psd:
        raise ValueError("two-point Pick infeasible")
    if verdict.rank == 0:
        # the zero matrix forces b1 = b2 on the circle
        return BlaschkeProduct(_clean(b1 / abs(b1)))
    if max(abs(b1), abs(b2)) > 1.0 - BOUNDARY_TOL:
        raise ValueError("two-point Pick infeasible: unimodular target with nonzero matrix")
    zeta0 = psi(a1, a2)
    omega = psi(b1, b2) / zeta0
    if abs(omega) > 1.0 + 1e-10:
        raise ValueError("two-point Pick infeasible")
    if verdict.rank == 1:
        omega = omega / abs(omega) if abs(omega) > 0 else 1 + 0j
        roots = [-b1 / omega]

        def G(u):
            return omega * u

    else:
        if abs(omega) >= 1.0:
            raise ValueError("two-point Pick data inconsistent with rank 2")
        # u m(u) = -b1 cleared of denominators
        quad = [
            1 - omega * zeta0.conjugate(),
            omega - zeta0 + b1 * (omega.conjugate() - zeta0.conjugate()),
            b1 * (1 - omega.conjugate() * zeta0),
        ]
        roots = list(np.roots(quad))
        if len(roots) < 2:
            roots += [0j] * (2 - len(roots))
        if abs(roots[0] - roots[1]) <= 1e-7:
            # a double root splits into a sqrt(eps) pair; the mean is accurate
            roots = [0.5 * (roots[0] + roots[1])] * 2

        def G(u):
            return u * psi_inv(omega, psi(zeta0, u))

    zeros = sorted((_clean(psi_inv(a1, u)) for u in roots), key=lambda z: (z.real, z.imag))
    probe = 1 + 0j
    value = psi_inv(b1, G(psi(a1, probe)))
    base = BlaschkeProduct(1 + 0j, tuple(zeros))(probe)
    c = value / base
    return BlaschkeProduct(_clean(c / abs(c)), tuple(zeros))
