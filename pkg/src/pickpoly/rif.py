"""Rational inner functions on the polydisc.

A rational inner function is stored as ``A * z**beta * Qt(1/z) / Q(z)``
where ``Qt`` conjugates the coefficients of ``Q`` and ``Q`` has no zeros in
the open polydisc.  With ``reflect(Q) = z**nu(Q) * Qt(1/z)`` this is

    f(z) = A * z**(beta - nu(Q)) * reflect(Q)(z) / Q(z).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import qmc

from .cjson import complex_from_json, complex_to_json
from .mpoly import CPoly, GaussRat, factor, is_irreducible, zero_free_on_polydisc
from .mpoly.irreducible import UNKNOWN
from .mpoly.text import gauss_from_json, gauss_to_json, poly_from_json, poly_to_json
from .mpoly.zerofree import VERIFIED
from .pick import BlaschkeProduct

Unimodular = Union[GaussRat, complex]

POLE_TOL = 1e-14
UNIT_TOL = 1e-12
VERIFIED_TAG = "verified"
ASSERTED_TAG = "asserted"


def _as_unimodular(A) -> Unimodular:
    if isinstance(A, (int,)) or hasattr(A, "numerator"):
        A = GaussRat(A)
    if isinstance(A, GaussRat):
        if A.abs2() != 1:
            raise ValueError(f"constant {A} is not unimodular")
        return A
    A = complex(A)
    exact = GaussRat.from_complex(A)
    if exact.abs2() == 1:
        return exact
    if abs(abs(A) - 1.0) > UNIT_TOL:
        raise ValueError(f"constant {A} is not unimodular")
    return A


def _mul_unimodular(a: Unimodular, b: Unimodular) -> Unimodular:
    if isinstance(a, GaussRat) and isinstance(b, GaussRat):
        return a * b
    c = complex(a) * complex(b)
    return c / abs(c)


@dataclass(frozen=True)
class RationalInner:
    """``A * z**(beta - nu(Q)) * reflect(Q) / Q`` with ``Q`` zero-free on the polydisc.

    ``zero_free`` records how zero-freeness of ``Q`` is known: ``"verified"``
    by the certified subdivision, or ``"asserted"`` by the caller.
    """

    A: Unimodular
    beta: Tuple[int, ...]
    Q: CPoly
    zero_free: str = ASSERTED_TAG

    def __post_init__(self):
        object.__setattr__(self, "A", _as_unimodular(self.A))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if self.Q.is_zero():
            raise ValueError("denominator is the zero polynomial")
        if len(self.beta) != self.Q.n:
            raise ValueError("beta and Q disagree on the number of variables")
        if any(b < v for b, v in zip(self.beta, self.Q.nu())):
            raise ValueError("beta must dominate nu(Q) componentwise")
        if self.zero_free not in (VERIFIED_TAG, ASSERTED_TAG):
            raise ValueError("zero_free must be 'verified' or 'asserted'")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def certified(cls, A, beta: Sequence[int], Q: CPoly, budget: int = 100_000) -> "RationalInner":
        """Build after certifying ``Q`` zero-free; refuses anything short of Verified."""
        v = zero_free_on_polydisc(Q, budget=budget)
        if v.status != VERIFIED:
            raise ValueError(f"denominator not certified zero-free ({v.status})")
        return cls(A, tuple(beta), Q, VERIFIED_TAG)

    @classmethod
    def coordinate(cls, n: int, j: int) -> "RationalInner":
        """The coordinate function ``z_j`` (1-based)."""
        beta = [0] * n
        beta[j - 1] = 1
        return cls(GaussRat(1), tuple(beta), CPoly.one(n), VERIFIED_TAG)

    @classmethod
    def monomial(cls, beta: Sequence[int], A=1) -> "RationalInner":
        return cls(A, tuple(beta), CPoly.one(len(beta)), VERIFIED_TAG)

    @classmethod
    def constant(cls, n: int, A) -> "RationalInner":
        return cls(A, (0,) * n, CPoly.one(n), VERIFIED_TAG)

    @classmethod
    def from_denominator(cls, Q: CPoly, A=1, certify: bool = True) -> "RationalInner":
        """``A * reflect(Q) / Q``, the minimal choice ``beta = nu(Q)``."""
        if certify:
            return cls.certified(A, Q.nu(), Q)
        return cls(A, Q.nu(), Q)

    # -- structure ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.Q.n

    @property
    def gamma(self) -> Tuple[int, ...]:
        """Exponent of the monomial prefactor, ``beta - nu(Q)``."""
        return tuple(b - v for b, v in zip(self.beta, self.Q.nu()))

    @functools.cached_property
    def reflected(self) -> CPoly:
        return self.Q.reflect()

    @functools.cached_property
    def numerator(self) -> CPoly:
        """``z**gamma * reflect(Q)``, the numerator without the constant ``A``."""
        return self.reflected.shift(self.gamma)

    @property
    def A_complex(self) -> complex:
        return complex(self.A)

    def is_constant(self) -> bool:
        if any(self.gamma):
            return False
        R = self.reflected
        lam = _self_ratio(self.Q, R)
        return lam is not None

    def vanishes_at_origin(self) -> bool:
        return self.numerator.constant_term().is_zero()

    def __mul__(self, other: "RationalInner") -> "RationalInner":
        if not isinstance(other, RationalInner):
            return NotImplemented
        tag = VERIFIED_TAG if self.zero_free == other.zero_free == VERIFIED_TAG else ASSERTED_TAG
        beta = tuple(a + b for a, b in zip(self.beta, other.beta))
        return RationalInner(_mul_unimodular(self.A, other.A), beta, self.Q * other.Q, tag)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, z: Sequence[complex]) -> complex:
        return eval_inner(self, z)

    def evaluate_many(self, points) -> np.ndarray:
        """Vectorized values, without the polydisc and pole checks."""
        pts = np.asarray(points, dtype=complex)
        return self.A_complex * self.numerator.evaluate_many(pts) / self.Q.evaluate_many(pts)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        A = gauss_to_json(self.A) if isinstance(self.A, GaussRat) else complex_to_json(self.A)
        return {"A": A, "beta": list(self.beta), "Q": poly_to_json(self.Q), "zero_free": self.zero_free}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalInner":
        A_obj = obj.get("A", {"re": "1", "im": "0"})
        try:
            A: Unimodular = gauss_from_json(A_obj)
            if A.abs2() != 1:
                A = complex(A)
        except (TypeError, ValueError, ZeroDivisionError):
            A = complex_from_json(A_obj)
        Q = poly_from_json(obj["Q"])
        beta = obj.get("beta")
        return cls(A, tuple(beta) if beta is not None else Q.nu(), Q, obj.get("zero_free", ASSERTED_TAG))


def eval_inner(f: RationalInner, z: Sequence[complex]) -> complex:
    """``f(z)`` for ``z`` in the open polydisc."""
    z = [complex(c) for c in z]
    if len(z) != f.n:
        raise ValueError(f"point has dimension {len(z)}, expected {f.n}")
    if any(abs(c) >= 1.0 for c in z):
        raise ValueError("point is not in the open polydisc")
    den = f.Q.evaluate(z)
    if abs(den) < POLE_TOL:
        raise ValueError("pole proximity: |Q(z)| below 1e-14")
    return f.A_complex * f.numerator.evaluate(z) / den


# ---- canonical form ---------------------------------------------------------


def _probe_point(P: CPoly) -> Tuple[int, ...]:
    n = P.n
    if not P.constant_term().is_zero():
        return (0,) * n
    for k in range(1, 50):
        p = tuple((k + j) % 7 - 3 for j in range(n))
        if not P.evaluate(p).is_zero():
            return p
    raise ArithmeticError("no non-root probe point found")


def _self_ratio(P: CPoly, R: CPoly) -> Optional[GaussRat]:
    """``lam`` with ``R == lam * P`` exactly, or ``None``."""
    p = _probe_point(P)
    lam = R.evaluate(p) / P.evaluate(p)
    return lam if R == P.scale(lam) else None


@dataclass(frozen=True)
class Canonical:
    """``f = C * z**gamma * reflect(Qhat) / Qhat`` with coprime numerator and denominator.

    ``factors`` lists the irreducible factors of ``Qhat`` with multiplicity;
    ``absorbed`` the factors of the original ``Q`` whose reflection is a
    constant multiple of themselves, with that constant.
    """

    C: Unimodular
    gamma: Tuple[int, ...]
    Qhat: CPoly
    factors: Tuple[Tuple[CPoly, int], ...] = ()
    absorbed: Tuple[Tuple[CPoly, int, GaussRat], ...] = field(default=())

    def __iter__(self):
        # allows ``C, Qhat = canonicalize(f)``
        return iter((self.C, self.Qhat))

    def to_inner(self, zero_free: str = ASSERTED_TAG) -> RationalInner:
        beta = tuple(g + v for g, v in zip(self.gamma, self.Qhat.nu()))
        return RationalInner(self.C, beta, self.Qhat, zero_free)


def canonicalize(f: RationalInner, seed: int = 0) -> Canonical:
    """Cancel the common factors of numerator and denominator.

    Factor ``Q = kappa * prod Q_i**e_i``.  The factors with
    ``reflect(Q_i) == lam_i * Q_i`` cancel, contributing ``lam_i**e_i`` to the
    constant; the rest form ``Qhat``.
    """
    if f.Q.is_constant():
        kappa = f.Q.constant_term()
        C = _mul_unimodular(f.A, kappa.conjugate() / kappa)
        return Canonical(C, f.gamma, CPoly.one(f.n))
    F = factor(f.Q, seed=seed)
    if not F.complete:
        raise ValueError("canonicalization unavailable: factorization of Q is incomplete")
    kappa = F.constant
    C = _mul_unimodular(f.A, kappa.conjugate() / kappa)
    keep: List[Tuple[CPoly, int]] = []
    absorbed = []
    Qhat = CPoly.one(f.n)
    for Qi, e in F.factors:
        lam = _self_ratio(Qi, Qi.reflect())
        if lam is not None:
            C = _mul_unimodular(C, lam**e)
            absorbed.append((Qi, e, lam))
        else:
            keep.append((Qi, e))
            Qhat = Qhat * Qi**e
    R = Qhat.reflect()
    for Qi, _ in keep:
        if R.divide(Qi) is not None:
            raise AssertionError("internal consistency: common factor survived reduction")
    return Canonical(C, f.gamma, Qhat, tuple(keep), tuple(absorbed))


def is_irreducible_inner(f: RationalInner, seed: int = 0) -> Optional[bool]:
    """Irreducibility of an inner function vanishing at the origin.

    ``True`` for a coordinate function or for ``reflect(Qhat)/Qhat`` with
    ``Qhat`` irreducible, deficient in degree and no monomial prefactor;
    ``None`` when the irreducibility of ``Qhat`` cannot be decided.
    """
    if not f.vanishes_at_origin():
        raise ValueError("corollary requires f(0)=0")
    can = canonicalize(f, seed=seed)
    k = sum(can.gamma)
    if can.Qhat.is_constant():
        return k == 1
    if k:
        return False
    verdict = is_irreducible(can.Qhat, seed=seed)
    if verdict.status == UNKNOWN:
        return None
    return bool(verdict.irreducible) and can.Qhat.is_deficient()


@dataclass(frozen=True)
class InnerFactorization:
    constant: Unimodular
    factors: Tuple[RationalInner, ...]

    def __call__(self, z: Sequence[complex]) -> complex:
        out = complex(self.constant)
        for g in self.factors:
            out *= eval_inner(g, z)
        return out

    def evaluate_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        out = np.full(pts.shape[0], complex(self.constant))
        for g in self.factors:
            out = out * g.evaluate_many(pts)
        return out


def _sample_polydisc(n: int, count: int, seed: int, radius: float = 0.95) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=(count, n)))
    return r * np.exp(2j * np.pi * rng.uniform(size=(count, n)))


def factor_inner(f: RationalInner, seed: int = 0, samples: int = 100, tol: float = 1e-10) -> InnerFactorization:
    """Split ``f`` into irreducible inner factors and a unimodular constant.

    Each irreducible factor ``Q_i`` of the reduced denominator gives
    ``reflect(Q_i)/Q_i``; each unit of the monomial prefactor gives a
    coordinate function.  The product is compared with ``f`` at ``samples``
    random points.
    """
    can = canonicalize(f, seed=seed)
    pieces: List[RationalInner] = []
    for Qi, e in can.factors:
        g = RationalInner(GaussRat(1), Qi.nu(), Qi, f.zero_free)
        pieces.extend([g] * e)
    for j, e in enumerate(can.gamma):
        pieces.extend([RationalInner.coordinate(f.n, j + 1)] * e)
    out = InnerFactorization(can.C, tuple(pieces))
    pts = _sample_polydisc(f.n, samples, seed)
    err = np.max(np.abs(out.evaluate_many(pts) - f.evaluate_many(pts))) if samples else 0.0
    if not err <= tol:
        raise AssertionError(f"factor product deviates from f by {err:.3g}")
    return out


# ---- slices and zeros -------------------------------------------------------


def _slice_coeffs(Q: CPoly, w: Sequence[complex]) -> np.ndarray:
    """Coefficients ``c_k`` of ``zeta -> Q(zeta * w)``."""
    c = np.zeros(Q.degree() + 1, dtype=complex)
    wa = np.asarray(w, dtype=complex)
    for alpha, a in Q.items():
        c[sum(alpha)] += complex(a) * np.prod(wa ** np.array(alpha))
    return c


def slice(f: RationalInner, w: Sequence[complex], unit_tol: float = 1e-8) -> BlaschkeProduct:  # noqa: A001
    """The one-variable function ``zeta -> f(zeta * w)`` for ``w`` on the torus.

    With ``Q(zeta w) = c0 * prod_j (1 - a_j zeta)``,

        f(zeta w) = A w**beta (conj(c0)/c0) zeta**(|beta| - d) prod_j (zeta - conj(a_j)) / (1 - a_j zeta),

    and a factor with ``|a_j| = 1`` is the constant ``-conj(a_j)``.
    """
    w = [complex(c) for c in w]
    if len(w) != f.n or any(abs(abs(c) - 1.0) > 1e-12 for c in w):
        raise ValueError("slice direction must lie on the unit torus")
    c = _slice_coeffs(f.Q, w)
    d = len(c) - 1
    if abs(c[d]) <= 1e-10 * max(1.0, np.max(np.abs(c))):
        raise ValueError("degenerate slice direction")
    if abs(c[0]) == 0:
        raise ValueError("Q vanishes at the origin")
    wa = np.asarray(w)
    const = f.A_complex * np.prod(wa ** np.array(f.beta)) * np.conj(c[0]) / c[0]
    zeros: List[complex] = [0j] * (sum(f.beta) - d)
    # the a_j are the roots of zeta**d * Q(w / zeta)
    for a in (np.roots(c) if d else []):
        if abs(a) > 1.0 + unit_tol:
            raise ValueError("Q has a zero in the polydisc along this direction")
        if abs(a) >= 1.0 - unit_tol:
            const *= -np.conj(a) / abs(a)
        else:
            zeros.append(complex(np.conj(a)))
    const = complex(const) / abs(const)
    return BlaschkeProduct(const, tuple(zeros))


def torus_directions(n: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` torus points from a scrambled Halton sequence."""
    angles = qmc.Halton(d=n, scramble=True, seed=seed).random(count)
    return np.exp(2j * np.pi * angles)


def find_zero(f: RationalInner, seed: int = 0, max_directions: int = 64, tol: float = 1e-10) -> Tuple[complex, ...]:
    """A point of the open polydisc where ``f`` vanishes.

    Slices along low-discrepancy torus directions are Blaschke products; a
    slice of positive degree has a zero ``zeta`` in the disc and ``zeta * w``
    is a zero of ``f``.
    """
    for w in torus_directions(f.n, max_directions, seed):
        try:
            B = slice(f, w)
        except ValueError:
            continue
        for zeta in sorted(B.zeros, key=abs):
            pt = tuple(complex(zeta * wj) for wj in w)
            if max(abs(c) for c in pt) >= 1.0:
                continue
            try:
                val = eval_inner(f, pt)
            except ValueError:
                continue
            if abs(val) < tol:
                return pt
    raise ValueError("no zero found within budget")


@dataclass(frozen=True)
class InnerCheckReport:
    radii: Tuple[float, ...]
    deviations: Tuple[float, ...]
    median_deviations: Tuple[float, ...]
    max_modulus: float
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "radii": list(self.radii),
            "deviations": list(self.deviations),
            "median_deviations": list(self.median_deviations),
            "max_modulus": self.max_modulus,
            "passed": self.passed,
            "note": self.note,
        }


def verify_inner_numeric(
    f: Union[RationalInner, Callable],
    samples: int = 1000,
    radii: Sequence[float] = (0.9, 0.99, 0.999),
    seed: int = 0,
    n: Optional[int] = None,
) -> InnerCheckReport:
    """Radial boundary check ``|f(r w)| -> 1`` on random torus points ``w``.

    ``f`` may be any callable on points of the polydisc; ``n`` is then
    required unless ``f`` has an ``n`` attribute.  Both the maximal and the
    median deviation ``| |f(r w)| - 1 |`` are recorded.  The check fails when
    the median deviation does not decrease with ``r`` (unless it is already
    negligible) or when ``|f|`` exceeds 1.  The maximum is not used for the
    verdict: near singular boundary points of an inner function it decays
    slowly and erratically, so a few unlucky samples would flag it.
    """
    dim = n if n is not None else getattr(f, "n", None)
    if dim is None:
        raise ValueError("dimension unknown; pass n")
    rng = np.random.default_rng(seed)
    w = np.exp(2j * np.pi * rng.uniform(size=(samples, dim)))
    radii = tuple(sorted(float(r) for r in radii))
    devs: List[float] = []
    meds: List[float] = []
    top = 0.0
    for r in radii:
        pts = r * w
        if hasattr(f, "evaluate_many"):
            vals = np.asarray(f.evaluate_many(pts))
        else:
            vals = np.array([complex(f(tuple(p))) for p in pts])
        mods = np.abs(vals)
        mods = mods[np.isfinite(mods)]
        dev = np.abs(mods - 1.0)
        devs.append(float(np.max(dev)) if len(mods) else float("inf"))
        meds.append(float(np.median(dev)) if len(mods) else float("inf"))
        top = max(top, float(np.max(mods)) if len(mods) else float("inf"))
    negligible = 1e-9
    decreasing = all(b < a or b <= negligible for a, b in zip(meds, meds[1:]))
    bounded = top <= 1.0 + 1e-9
    note = "" if decreasing and bounded else ("modulus exceeds 1" if not bounded else "deviation does not decrease")
    return InnerCheckReport(radii, tuple(devs), tuple(meds), top, decreasing and bounded, note)
