"""Disc and polydisc automorphisms and the pseudohyperbolic metric.

All comparisons of distances are made on the pseudohyperbolic value
``rho``; the Carathéodory distance ``atanh(rho)`` is strictly increasing in
``rho`` and is only computed for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

BOUNDARY_TOL = 1e-12

Point = Tuple[complex, ...]


def _check_interior(a: complex, what: str = "point") -> complex:
    a = complex(a)
    if not 1.0 - abs(a) >= BOUNDARY_TOL:
        raise ValueError(f"{what} {a} is not in the open unit disc")
    return a


def _check_closed(z: complex) -> complex:
    z = complex(z)
    if abs(z) > 1.0 + BOUNDARY_TOL:
        raise ValueError(f"{z} lies outside the closed unit disc")
    return z


def psi(a: complex, z: complex) -> complex:
    """The automorphism ``(z - a) / (1 - conj(a) z)`` sending ``a`` to 0."""
    a = _check_interior(a, "center")
    z = _check_closed(z)
    return (z - a) / (1 - a.conjugate() * z)


def psi_inv(a: complex, w: complex) -> complex:
    """Inverse of :func:`psi`: ``(w + a) / (1 + conj(a) w)``."""
    a = _check_interior(a, "center")
    w = _check_closed(w)
    return (w + a) / (1 + a.conjugate() * w)


def _same_dim(X: Sequence, Z: Sequence) -> None:
    if len(X) != len(Z):
        raise ValueError(f"dimension mismatch: {len(X)} vs {len(Z)}")


def Psi(X: Sequence[complex], Z: Sequence[complex]) -> Point:
    """Coordinatewise :func:`psi` with centers ``X``."""
    _same_dim(X, Z)
    return tuple(psi(x, z) for x, z in zip(X, Z))


def Psi_inv(X: Sequence[complex], W: Sequence[complex]) -> Point:
    _same_dim(X, W)
    return tuple(psi_inv(x, w) for x, w in zip(X, W))


def rho(a: complex, b: complex) -> float:
    """Pseudohyperbolic distance ``|a - b| / |1 - conj(a) b|`` on the disc."""
    a = _check_interior(a)
    b = _check_interior(b)
    return abs(a - b) / abs(1 - a.conjugate() * b)


def caratheodory_disc(a: complex, b: complex) -> float:
    return math.atanh(rho(a, b))


def polydisc_rho(X1: Sequence[complex], X2: Sequence[complex]) -> Tuple[float, FrozenSet[int]]:
    """Largest coordinate ``rho`` and the 1-based coordinates attaining it."""
    _same_dim(X1, X2)
    if not X1:
        raise ValueError("empty point")
    vals = [rho(a, b) for a, b in zip(X1, X2)]
    top = max(vals)
    arg = frozenset(j + 1 for j, v in enumerate(vals) if v >= top - 1e-15 * max(1.0, top))
    return top, arg


def caratheodory_polydisc(X1: Sequence[complex], X2: Sequence[complex]) -> Tuple[float, FrozenSet[int]]:
    """Carathéodory distance on the polydisc, with the argmax coordinate set.

    The distance is the maximum of the coordinate distances; the argmax is
    computed on ``rho`` so that it agrees with every ``rho`` comparison.
    """
    top, arg = polydisc_rho(X1, X2)
    return math.atanh(top), arg


@dataclass(frozen=True)
class DiscAutomorphism:
    """``z -> rotation * psi(a, z)``."""

    a: complex = 0j
    rotation: complex = 1 + 0j

    def __post_init__(self):
        _check_interior(self.a, "center")
        if abs(abs(self.rotation) - 1.0) > BOUNDARY_TOL:
            raise ValueError("rotation must be unimodular")

    def __call__(self, z: complex) -> complex:
        return self.rotation * psi(self.a, z)

    def inverse(self) -> "DiscAutomorphism":
        # u psi(a, z) = w  <=>  z = conj(u) psi(-a u, w)
        u = complex(self.rotation)
        return DiscAutomorphism(-self.a * u, u.conjugate())

    def compose(self, other: "DiscAutomorphism") -> "DiscAutomorphism":
        """``self o other`` in the same normal form."""
        a = other.inverse()(self.inverse()(0j))
        # read the rotation off at a probe point kept away from a
        p = 0.5 + 0j if abs(a - 0.5) > 0.25 else -0.5 + 0j
        rot = self(other(p)) * (1 - a.conjugate() * p) / (p - a)
        return DiscAutomorphism(a, rot / abs(rot))


@dataclass(frozen=True)
class PolydiscAutomorphism:
    components: Tuple[DiscAutomorphism, ...]

    @classmethod
    def centered_at(cls, X: Sequence[complex]) -> "PolydiscAutomorphism":
        return cls(tuple(DiscAutomorphism(complex(x)) for x in X))

    @property
    def n(self) -> int:
        return len(self.components)

    def __call__(self, Z: Sequence[complex]) -> Point:
        _same_dim(self.components, Z)
        return tuple(c(z) for c, z in zip(self.components, Z))

    def inverse(self) -> "PolydiscAutomorphism":
        return PolydiscAutomorphism(tuple(c.inverse() for c in self.components))
