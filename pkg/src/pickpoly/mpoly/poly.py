"""Sparse multivariate polynomials over Q(i).

A polynomial in ``n`` variables ``z1, ..., zn`` is a mapping from exponent
tuples (multi-indices) to nonzero :class:`GaussRat` coefficients::

    2 - z1 - z2   ->   {(0, 0): 2, (1, 0): -1, (0, 1): -1}

The zero polynomial has no terms.  Monomials are compared in graded
lexicographic order with key ``(|alpha|, alpha)``, so ``z1`` outranks ``z2``
in the same total degree.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from .gauss import ONE, ZERO, GaussRat

MultiIndex = Tuple[int, ...]


def grlex_key(alpha: MultiIndex) -> tuple:
    return (sum(alpha), alpha)


def _exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussRat)) and not isinstance(x, bool)


class CPoly:
    """Immutable sparse polynomial with exact Gaussian-rational coefficients."""

    __slots__ = ("_n", "_terms", "_hash", "_horner", "_numeric")

    def __init__(self, n: int, terms: Optional[Mapping[MultiIndex, object]] = None):
        if n < 1:
            raise ValueError("polynomials need at least one variable")
        clean: Dict[MultiIndex, GaussRat] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent {alpha} for n={n}")
            c = GaussRat.coerce(c)
            if not c.is_zero():
                clean[alpha] = c
        self._n = n
        self._terms = clean
        self._hash = None
        self._horner = None
        self._numeric = None

    @classmethod
    def _raw(cls, n: int, terms: Dict[MultiIndex, GaussRat]) -> "CPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._n = n
        obj._terms = terms
        obj._hash = None
        obj._horner = None
        obj._numeric = None
        return obj

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "CPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "CPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def one(cls, n: int) -> "CPoly":
        return cls._raw(n, {(0,) * n: ONE})

    @classmethod
    def variable(cls, n: int, j: int) -> "CPoly":
        """The coordinate ``z_j`` (1-based)."""
        if not 1 <= j <= n:
            raise ValueError(f"variable index {j} out of range 1..{n}")
        alpha = [0] * n
        alpha[j - 1] = 1
        return cls._raw(n, {tuple(alpha): ONE})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c=1) -> "CPoly":
        return cls(len(alpha), {tuple(alpha): c})

    # ---- basic accessors ----------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[MultiIndex, GaussRat]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[MultiIndex, GaussRat]]:
        return iter(self._terms.items())

    def coeff(self, alpha: Sequence[int]) -> GaussRat:
        return self._terms.get(tuple(alpha), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(a) == 0 for a in self._terms)

    def constant_term(self) -> GaussRat:
        return self._terms.get((0,) * self._n, ZERO)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(a) for a in self._terms), default=-1)

    def degree_in(self, j: int) -> int:
        """Degree in the 0-based variable ``j``; ``-1`` for zero."""
        return max((a[j] for a in self._terms), default=-1)

    def nu(self) -> MultiIndex:
        if not self._terms:
            raise ValueError("nu undefined for the zero polynomial")
        return tuple(max(a[j] for a in self._terms) for j in range(self._n))

    def active_vars(self) -> Tuple[int, ...]:
        """0-based indices of variables that occur with positive exponent."""
        return tuple(j for j in range(self._n) if any(a[j] for a in self._terms))

    def sorted_terms(self, reverse: bool = True):
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=reverse)

    def leading_term(self) -> Tuple[MultiIndex, GaussRat]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        alpha = max(self._terms, key=grlex_key)
        return alpha, self._terms[alpha]

    def leading_coeff(self) -> GaussRat:
        return self.leading_term()[1]

    def top_form(self) -> "CPoly":
        """Homogeneous component of top total degree."""
        d = self.degree()
        return CPoly._raw(self._n, {a: c for a, c in self._terms.items() if sum(a) == d})

    # ---- equality / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CPoly):
            return self._n == other._n and self._terms == other._terms
        if _exact_scalar(other):
            return self == CPoly.constant(self._n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .text import format_poly

        return f"CPoly({format_poly(self)!r}, n={self._n})"

    def __str__(self) -> str:
        from .text import format_poly

        return format_poly(self)

    # ---- ring operations ----------------------------------------------

    def _check(self, other: "CPoly") -> None:
        if other._n != self._n:
            raise ValueError(f"variable-count mismatch: {self._n} vs {other._n}")

    def _lift(self, other) -> "CPoly":
        if isinstance(other, CPoly):
            self._check(other)
            return other
        if _exact_scalar(other):
            return CPoly.constant(self._n, other)
        raise TypeError(f"cannot combine CPoly with {type(other).__name__}")

    def __add__(self, other) -> "CPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for a, c in other._terms.items():
            s = out.get(a)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(a, None)
            else:
                out[a] = s
        return CPoly._raw(self._n, out)

    __radd__ = __add__

    def __neg__(self) -> "CPoly":
        return CPoly._raw(self._n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other) -> "CPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CPoly":
        return (-self) + other

    def __mul__(self, other) -> "CPoly":
        if _exact_scalar(other):
            return self.scale(other)
        if not isinstance(other, CPoly):
            return NotImplemented
        self._check(other)
        out: Dict[MultiIndex, GaussRat] = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                p = c * d
                s = out.get(k)
                out[k] = p if s is None else s + p
        return CPoly._raw(self._n, {k: v for k, v in out.items() if not v.is_zero()})

    __rmul__ = __mul__

    def scale(self, c) -> "CPoly":
        c = GaussRat.coerce(c)
        if c.is_zero():
            return CPoly.zero(self._n)
        return CPoly._raw(self._n, {a: v * c for a, v in self._terms.items()})

    def __pow__(self, k: int) -> "CPoly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = CPoly.one(self._n), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, beta: Sequence[int]) -> "CPoly":
        """Multiply by the monomial ``z**beta``."""
        beta = tuple(beta)
        if len(beta) != self._n:
            raise ValueError("shift exponent has wrong length")
        return CPoly._raw(
            self._n, {tuple(x + y for x, y in zip(a, beta)): c for a, c in self._terms.items()}
        )

    # ---- reflection calculus ------------------------------------------

    def conj_coeffs(self) -> "CPoly":
        return CPoly._raw(self._n, {a: c.conjugate() for a, c in self._terms.items()})

    def reflect(self) -> "CPoly":
        """``z**nu(Q) * conj(Q)(1/z)``: term ``a z**alpha`` maps to ``conj(a) z**(nu - alpha)``."""
        nu = self.nu()
        return CPoly._raw(
            self._n,
            {tuple(v - x for v, x in zip(nu, a)): c.conjugate() for a, c in self._terms.items()},
        )

    def is_deficient(self) -> bool:
        if self.is_constant():
            raise ValueError("deficiency is defined for nonconstant polynomials")
        return self.nu() not in self._terms

    # ---- calculus / substitution ---------------------------------------

    def diff(self, j: int) -> "CPoly":
        """Partial derivative in the 0-based variable ``j``."""
        out = {}
        for a, c in self._terms.items():
            if a[j]:
                b = list(a)
                b[j] -= 1
                out[tuple(b)] = c * a[j]
        return CPoly._raw(self._n, out)

    def coefficients_in(self, j: int) -> Dict[int, "CPoly"]:
        """Split as ``sum_k c_k * z_j**k``; each ``c_k`` is free of ``z_j`` (same ``n``)."""
        out: Dict[int, Dict[MultiIndex, GaussRat]] = {}
        for a, c in self._terms.items():
            b = list(a)
            k = b[j]
            b[j] = 0
            out.setdefault(k, {})[tuple(b)] = c
        return {k: CPoly._raw(self._n, t) for k, t in out.items()}

    def compose_linear(self, forms: Sequence["CPoly"]) -> "CPoly":
        """Substitute ``z_j -> forms[j]`` (polynomials in a common ring)."""
        if len(forms) != self._n:
            raise ValueError("need one substitution per variable")
        m = forms[0].n
        powers = [dict() for _ in forms]
        result = CPoly.zero(m)
        for a, c in self._terms.items():
            t = CPoly.constant(m, c)
            for j, e in enumerate(a):
                if e:
                    p = powers[j].get(e)
                    if p is None:
                        p = forms[j] ** e
                        powers[j][e] = p
                    t = t * p
            result = result + t
        return result

    def restrict(self, variables: Sequence[int]) -> "CPoly":
        """Drop all variables except ``variables`` (0-based); those absent must not occur."""
        variables = tuple(variables)
        keep = set(variables)
        out = {}
        for a, c in self._terms.items():
            if any(a[j] for j in range(self._n) if j not in keep):
                raise ValueError("restrict would drop an occurring variable")
            out[tuple(a[j] for j in variables)] = c
        return CPoly._raw(len(variables), out)

    def embed(self, n: int, variables: Sequence[int]) -> "CPoly":
        """Inverse of :meth:`restrict`: place variable ``k`` at 0-based slot ``variables[k]``."""
        out = {}
        for a, c in self._terms.items():
            b = [0] * n
            for k, j in enumerate(variables):
                b[j] = a[k]
            out[tuple(b)] = c
        return CPoly._raw(n, out)

    # ---- division ------------------------------------------------------

    def divide(self, d: "CPoly") -> Optional["CPoly"]:
        """Exact quotient ``self / d``, or ``None`` when ``d`` does not divide ``self``."""
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_a, lt_c = d.leading_term()
        inv = lt_c.inverse()
        rem = dict(self._terms)
        quot: Dict[MultiIndex, GaussRat] = {}
        dterms = list(d._terms.items())
        while rem:
            a = max(rem, key=grlex_key)
            shift = tuple(x - y for x, y in zip(a, lt_a))
            if any(s < 0 for s in shift):
                return None
            q = rem[a] * inv
            quot[shift] = q
            for b, c in dterms:
                k = tuple(x + y for x, y in zip(b, shift))
                v = rem.get(k, ZERO) - q * c
                if v.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return CPoly._raw(self._n, quot)

    def monic(self) -> Tuple[GaussRat, "CPoly"]:
        """Return ``(lc, P)`` with ``self == lc * P`` and ``P`` having leading coefficient 1."""
        lc = self.leading_coeff()
        return lc, self.scale(lc.inverse())

    def monomial_content(self) -> MultiIndex:
        """Largest ``beta`` with ``z**beta`` dividing ``self``."""
        if not self._terms:
            raise ValueError("zero polynomial")
        return tuple(min(a[j] for a in self._terms) for j in range(self._n))

    # ---- evaluation ----------------------------------------------------

    def _build_horner(self):
        # nested dict keyed by exponent of z1, then z2, ...; leaves are complex
        root: dict = {}
        for a, c in self._terms.items():
            node = root
            for e in a[:-1]:
                node = node.setdefault(e, {})
            node[a[-1]] = node.get(a[-1], 0) + complex(c)
        return root

    def _horner_eval(self, node, z, var):
        last = var == self._n - 1
        acc = 0j
        top = max(node)
        x = z[var]
        for e in range(top, -1, -1):
            acc = acc * x
            child = node.get(e)
            if child is not None:
                acc += child if last else self._horner_eval(child, z, var + 1)
        return acc

    def evaluate(self, z: Sequence):
        """Value at the point ``z``.

        Exact (a :class:`GaussRat`) when every coordinate is exact; otherwise a
        Python complex computed by Horner's rule in ``z1``, whose coefficients
        are evaluated by Horner's rule in ``z2``, and so on.
        """
        z = list(z)
        if len(z) != self._n:
            raise ValueError(f"point has dimension {len(z)}, expected {self._n}")
        if not self._terms:
            return ZERO if all(_exact_scalar(x) for x in z) else 0j
        if all(_exact_scalar(x) for x in z):
            zz = [GaussRat.coerce(x) for x in z]
            total = ZERO
            for a, c in self._terms.items():
                t = c
                for x, e in zip(zz, a):
                    if e:
                        t = t * x**e
                total = total + t
            return total
        if self._horner is None:
            self._horner = self._build_horner()
        return self._horner_eval(self._horner, [complex(x) for x in z], 0)

    __call__ = evaluate

    def numeric(self) -> Tuple[np.ndarray, np.ndarray]:
        """``(exponents, coefficients)`` arrays for vectorized evaluation."""
        if self._numeric is None:
            if self._terms:
                alphas = np.array(list(self._terms.keys()), dtype=np.int64)
                coeffs = np.array([complex(c) for c in self._terms.values()])
            else:
                alphas = np.zeros((0, self._n), dtype=np.int64)
                coeffs = np.zeros(0, dtype=complex)
            self._numeric = (alphas, coeffs)
        return self._numeric

    def evaluate_many(self, points) -> np.ndarray:
        """Vectorized float evaluation at an ``(N, n)`` array of points."""
        pts = np.asarray(points, dtype=complex)
        if pts.ndim != 2 or pts.shape[1] != self._n:
            raise ValueError(f"expected points of shape (N, {self._n})")
        alphas, coeffs = self.numeric()
        if len(coeffs) == 0:
            return np.zeros(pts.shape[0], dtype=complex)
        mons = np.prod(pts[:, None, :] ** alphas[None, :, :], axis=2)
        return mons @ coeffs

    def coeff_abs_sum(self, exclude_constant: bool = False) -> float:
        return sum(
            abs(complex(c)) for a, c in self._terms.items() if not (exclude_constant and sum(a) == 0)
        )


# ---- functional surface ------------------------------------------------


def support(Q: CPoly) -> frozenset:
    return Q.support()


def nu(Q: CPoly) -> MultiIndex:
    return Q.nu()


def is_deficient(Q: CPoly) -> bool:
    return Q.is_deficient()


def conj_coeffs(Q: CPoly) -> CPoly:
    return Q.conj_coeffs()


def reflect(Q: CPoly) -> CPoly:
    return Q.reflect()


def add(Q1: CPoly, Q2: CPoly) -> CPoly:
    return Q1 + Q2


def mul(Q1: CPoly, Q2: CPoly) -> CPoly:
    return Q1 * Q2


def scale(Q: CPoly, c) -> CPoly:
    return Q.scale(c)


def evaluate(Q: CPoly, z: Sequence):
    return Q.evaluate(z)


def product(polys: Iterable[CPoly], n: int) -> CPoly:
    out = CPoly.one(n)
    for p in polys:
        out = out * p
    return out


def as_point(z: Iterable) -> list:
    """Normalize a point: exact scalars stay exact, everything else becomes complex."""
    out = []
    for x in z:
        if _exact_scalar(x):
            out.append(x)
        elif isinstance(x, numbers.Complex):
            out.append(complex(x))
        else:
            raise TypeError(f"bad coordinate {x!r}")
    return out
