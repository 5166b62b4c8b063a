"""Three-point interpolation on the polydisc: search, assembly and verification.

Data ``(X_j, w_j)``, ``j = 1, 2, 3``, are moved by ``Psi_{X3}`` and
``psi_{w3}`` so that the third point is ``(0, 0)``.  A candidate inner
function ``H`` (a coordinate ``z_j`` or ``reflect(Q)/Q`` with ``Q``
irreducible and deficient in degree) is feasible on coordinate ``l`` when
the ratios ``c_j = w'_j / H(X'_j)`` lie in the closed disc and the 2x2
matrix ``(1 - c_j conj(c_k)) / (1 - X'_{j,l} conj(X'_{k,l}))`` is positive
semidefinite.  Its rank fixes the shape of the interpolant

    rank 0:  F = psi_{w3}^-1 o (c H) o Psi_{X3}
    rank >0: F = psi_{w3}^-1 o ((B o pi_l) H) o Psi_{X3}

with ``B`` a Blaschke product of degree equal to the rank.  The search is a
semi-decision: it returns Feasible with a verified interpolant or Unknown.
"""

from __future__ import annotations

import functools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cjson import complex_from_json, complex_to_json, point_from_json, point_to_json
from .moebius import BOUNDARY_TOL, Psi, psi
from .mpoly import CPoly, GaussRat, is_irreducible, parse_poly, zero_free_on_polydisc
from .mpoly.irreducible import REDUCIBLE
from .mpoly.text import PolySyntaxError, format_poly, poly_from_json, poly_to_json
from .mpoly.zerofree import VERIFIED, ZERO_FOUND
from .pick import NODE_TOL, BlaschkeProduct, psd_check, theorem_matrix, two_point_blaschke, two_point_feasible
from .rif import ASSERTED_TAG, VERIFIED_TAG, InnerCheckReport, RationalInner, eval_inner, verify_inner_numeric

FEASIBLE = "Feasible"
UNKNOWN = "Unknown"
VANISH_TOL = 1e-12

Point = Tuple[complex, ...]


# ---- data -------------------------------------------------------------------


@dataclass(frozen=True)
class ProblemData:
    n: int
    X: Tuple[Point, Point, Point]
    w: Tuple[complex, complex, complex]

    def __post_init__(self):
        X = tuple(tuple(complex(c) for c in p) for p in self.X)
        w = tuple(complex(v) for v in self.w)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "w", w)
        if len(X) != 3 or len(w) != 3:
            raise ValueError("three nodes and three values are required")
        if any(len(p) != self.n for p in X):
            raise ValueError("node dimension differs from n")
        for v in [c for p in X for c in p] + list(w):
            if 1.0 - abs(v) < BOUNDARY_TOL:
                raise ValueError(f"{v} is not in the open unit disc")
        for j in range(3):
            for k in range(j):
                if max(abs(a - b) for a, b in zip(X[j], X[k])) <= NODE_TOL:
                    raise ValueError(f"nodes X{k + 1} and X{j + 1} coincide")

    def to_json(self) -> dict:
        return {"n": self.n, "X": [point_to_json(p) for p in self.X], "w": point_to_json(self.w)}

    @classmethod
    def from_json(cls, obj: dict) -> "ProblemData":
        X = tuple(point_from_json(p) for p in obj["X"])
        n = int(obj.get("n", len(X[0])))
        return cls(n, X, point_from_json(obj["w"]))


@dataclass(frozen=True)
class NormalizedData:
    X1p: Point
    X2p: Point
    w1p: complex
    w2p: complex


def normalize(data: ProblemData) -> NormalizedData:
    """Send ``X3`` and ``w3`` to the origin."""
    X1, X2, X3 = data.X
    w1, w2, w3 = data.w
    origin = Psi(X3, X3)
    if max(abs(c) for c in origin) > 1e-14 or abs(psi(w3, w3)) > 1e-14:
        raise AssertionError("normalization does not fix the third point at the origin")
    return NormalizedData(Psi(X3, X1), Psi(X3, X2), psi(w3, w1), psi(w3, w2))


# ---- candidates -------------------------------------------------------------


@dataclass(frozen=True)
class CandidateH:
    """A candidate inner function with the checks that admitted it."""

    kind: str  # "coordinate" | "reflected"
    inner: RationalInner
    provenance: str
    j: Optional[int] = None
    Q: Optional[CPoly] = None
    irreducibility: str = "Irreducible"
    deficient: bool = True
    zero_free: str = VERIFIED

    @property
    def label(self) -> str:
        if self.kind == "coordinate":
            return f"z{self.j}"
        return f"reflect(Q)/Q, Q = {format_poly(self.Q)}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "label": self.label, "provenance": self.provenance}
        if self.kind == "coordinate":
            out["j"] = self.j
        else:
            out["inner"] = self.inner.to_json()
            out["checks"] = {
                "irreducibility": self.irreducibility,
                "deficient": self.deficient,
                "zero_free": self.zero_free,
            }
        return out

    @classmethod
    def from_json(cls, obj: dict, n: int) -> "CandidateH":
        if obj["kind"] == "coordinate":
            return coordinate_candidate(n, int(obj["j"]))
        inner = RationalInner.from_json(obj["inner"])
        checks = obj.get("checks", {})
        return cls(
            "reflected",
            inner,
            obj.get("provenance", "user-file"),
            Q=inner.Q,
            irreducibility=checks.get("irreducibility", "Unknown"),
            deficient=bool(checks.get("deficient", inner.Q.is_deficient())),
            zero_free=checks.get("zero_free", "Unknown"),
        )


@dataclass(frozen=True)
class Rejected:
    """A candidate polynomial that failed a filter, with the reason."""

    source: str
    text: str
    reason: str


def coordinate_candidate(n: int, j: int) -> CandidateH:
    return CandidateH("coordinate", RationalInner.coordinate(n, j), "builtin", j=j)


@functools.lru_cache(maxsize=4096)
def _screen(Q: CPoly, budget: int, trials: int, seed: int) -> Tuple[Optional[str], str, bool, str]:
    """``(reason or None, irreducibility, deficient, zero-free status)`` for a denominator."""
    if Q.is_constant():
        return "constant polynomial", "n/a", False, "n/a"
    deficient = Q.is_deficient()
    if not deficient:
        return "not deficient", "n/a", False, "n/a"
    zf = zero_free_on_polydisc(Q, budget=budget)
    if zf.status == ZERO_FOUND:
        return "has a zero in the polydisc", "n/a", True, zf.status
    irr = is_irreducible(Q, trials=trials, seed=seed)
    if irr.status == REDUCIBLE:
        return "reducible", irr.status, True, zf.status
    return None, irr.status, True, zf.status


def screen_polynomial(Q: CPoly, provenance: str, config: "DecideConfig") -> Union[CandidateH, Rejected]:
    reason, irr, deficient, zf = _screen(Q, config.zero_free_budget, config.irreducibility_trials, config.seed)
    if reason is not None:
        return Rejected(provenance, format_poly(Q), reason)
    tag = VERIFIED_TAG if zf == VERIFIED else ASSERTED_TAG
    inner = RationalInner(GaussRat(1), Q.nu(), Q, tag)
    return CandidateH("reflected", inner, provenance, Q=Q, irreducibility=irr, deficient=deficient, zero_free=zf)


def _random_coeff(rng: random.Random) -> GaussRat:
    re = Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3, 4)))
    im = Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3, 4))) if rng.random() < 0.3 else Fraction(0)
    return GaussRat(re, im)


def generate_polynomial(n: int, degree: int, rng: random.Random) -> CPoly:
    """``c - p(z)`` with ``p(0) = 0`` and ``c`` beyond the coefficient mass of ``p``.

    The triangle inequality gives ``|Q| >= c - sum |a| > 0`` on the closed
    polydisc, so zero-freeness is certified by construction.
    """
    monos = [
        a
        for a in _exponents(n, degree)
        if 0 < sum(a)
    ]
    k = rng.randint(2, min(len(monos), 2 + degree))
    terms = {}
    for a in rng.sample(monos, k):
        c = _random_coeff(rng)
        if not c.is_zero():
            terms[a] = -c
    mass = sum(abs(c.re) + abs(c.im) for c in terms.values())
    terms[(0,) * n] = GaussRat(mass + Fraction(1, rng.choice((1, 2, 4))))
    return CPoly(n, terms)


def _exponents(n: int, degree: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for e in range(degree + 1):
        for rest in _exponents(n - 1, degree - e):
            out.append((e,) + rest)
    return out


def read_candidate_file(path: str) -> List[str]:
    """Polynomial texts, one per line; blank lines and ``#`` comments are skipped."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    return [ln.split("#", 1)[0].strip() for ln in lines if ln.split("#", 1)[0].strip()]


@dataclass(frozen=True)
class DecideConfig:
    n: int = 2
    candidates_file: Optional[str] = None
    candidates: Tuple[str, ...] = ()
    gen_count: int = 8
    gen_degree: int = 2
    seed: int = 0
    tol: float = 1e-9
    expand: bool = False
    selection: str = "min-rank"  # or "first"
    zero_free_budget: int = 20_000
    irreducibility_trials: int = 8
    verify_samples: int = 256


def candidate_stream(config: DecideConfig) -> Iterator[Union[CandidateH, Rejected]]:
    """Coordinates, then user polynomials, then generated ones, in that order.

    Polynomials failing a filter are yielded as :class:`Rejected` so callers
    can report them; they never stop the stream.
    """
    n = config.n
    for j in range(1, n + 1):
        yield coordinate_candidate(n, j)
    texts = list(config.candidates)
    if config.candidates_file:
        texts += read_candidate_file(config.candidates_file)
    for text in texts:
        try:
            Q = parse_poly(text, n)
        except (PolySyntaxError, ValueError) as exc:
            yield Rejected("user-file", text, f"syntax error: {exc}")
            continue
        yield screen_polynomial(Q, "user-file", config)
    rng = random.Random(config.seed)
    seen = set()
    made = 0
    attempts = 0
    while made < config.gen_count and attempts < 50 * max(config.gen_count, 1):
        attempts += 1
        Q = generate_polynomial(n, config.gen_degree, rng)
        if Q in seen:
            continue
        seen.add(Q)
        item = screen_polynomial(Q, f"generated({config.seed})", config)
        if isinstance(item, CandidateH):
            made += 1
            yield item


# ---- per-candidate check ----------------------------------------------------


@dataclass(frozen=True)
class LOutcome:
    l: int
    is_psd: bool
    rank: int
    min_eigenvalue: float
    reason: str = ""


@dataclass(frozen=True)
class CandidateOutcome:
    status: str  # "psd" | "fail" | "skipped"
    reason: str
    c: Optional[Tuple[complex, complex]] = None
    per_l: Tuple[LOutcome, ...] = ()

    def feasible(self) -> List[LOutcome]:
        return [o for o in self.per_l if o.is_psd]


def check_candidate(H: CandidateH, nd: NormalizedData, tol: float = 1e-9) -> CandidateOutcome:
    """Ratios ``c_j`` and the positivity test on every usable coordinate."""
    vals = []
    for Xp in (nd.X1p, nd.X2p):
        try:
            vals.append(eval_inner(H.inner, Xp))
        except ValueError as exc:
            return CandidateOutcome("fail", f"cannot evaluate H: {exc}")
    ws = (nd.w1p, nd.w2p)
    small_h = [abs(h) < VANISH_TOL for h in vals]
    small_w = [abs(w) < VANISH_TOL for w in ws]
    if any(sh and not sw for sh, sw in zip(small_h, small_w)):
        return CandidateOutcome("fail", "division by vanishing H")
    if any(sh and sw for sh, sw in zip(small_h, small_w)):
        return CandidateOutcome("skipped", "indeterminate ratio")
    c = [w / h for w, h in zip(ws, vals)]
    for j, cj in enumerate(c):
        if abs(cj) > 1.0 + tol:
            return CandidateOutcome("fail", f"ratio c{j + 1} outside the closed disc (|c{j + 1}| = {abs(cj):.6g})", tuple(c))
        if abs(cj) > 1.0:
            c[j] = cj / abs(cj)
    per_l = []
    for l in range(1, len(nd.X1p) + 1):
        if abs(nd.X1p[l - 1] - nd.X2p[l - 1]) <= NODE_TOL:
            per_l.append(LOutcome(l, False, 0, float("nan"), "coordinate degenerate"))
            continue
        v = psd_check(theorem_matrix(nd.X1p, nd.X2p, c[0], c[1], l))
        per_l.append(LOutcome(l, v.is_psd, v.rank, v.min_eigenvalue, "" if v.is_psd else "matrix not PSD"))
    c = (complex(c[0]), complex(c[1]))
    if any(o.is_psd for o in per_l):
        return CandidateOutcome("psd", "", c, tuple(per_l))
    worst = min((o.min_eigenvalue for o in per_l if o.reason != "coordinate degenerate"), default=float("nan"))
    return CandidateOutcome("fail", f"matrix not PSD for any l (min eigenvalue {worst:.3g})", c, tuple(per_l))


# ---- interpolant ------------------------------------------------------------


def _mobius_inv(a: complex, u):
    return (u + a) / (1 + np.conj(a) * u)


@dataclass(frozen=True)
class Interpolant:
    """``psi_{w3}^-1 o (G * H) o Psi_{X3}`` with ``G = c`` or ``G = B o pi_l``."""

    X3: Point
    w3: complex
    H: CandidateH
    rank: int
    l: Optional[int] = None
    c: Optional[complex] = None
    B: Optional[BlaschkeProduct] = None
    expanded: Optional[Tuple[CPoly, CPoly]] = None

    @property
    def n(self) -> int:
        return len(self.X3)

    def _inner_values(self, Z: np.ndarray) -> np.ndarray:
        h = self.H.inner.evaluate_many(Z)
        if self.rank == 0:
            return self.c * h
        return self.B(Z[:, self.l - 1]) * h

    def evaluate_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        x = np.asarray(self.X3, dtype=complex)
        Z = (pts - x) / (1 - np.conj(x) * pts)
        return _mobius_inv(self.w3, self._inner_values(Z))

    def __call__(self, z: Sequence[complex]) -> complex:
        return complex(self.evaluate_many(np.array([list(z)], dtype=complex))[0])

    def evaluate_expanded(self, z: Sequence[complex]) -> complex:
        if self.expanded is None:
            raise ValueError("no expanded form")
        num, den = self.expanded
        return complex(num.evaluate(list(z))) / complex(den.evaluate(list(z)))

    def to_json(self) -> dict:
        out = {
            "X3": point_to_json(self.X3),
            "w3": complex_to_json(self.w3),
            "H": self.H.to_json(),
            "rank": self.rank,
            "l": self.l,
            "c": complex_to_json(self.c) if self.c is not None else None,
            "B": self.B.to_json() if self.B is not None else None,
        }
        if self.expanded is not None:
            out["expanded"] = {"numerator": poly_to_json(self.expanded[0]), "denominator": poly_to_json(self.expanded[1])}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Interpolant":
        X3 = point_from_json(obj["X3"])
        H = CandidateH.from_json(obj["H"], len(X3))
        expanded = None
        if obj.get("expanded"):
            expanded = (poly_from_json(obj["expanded"]["numerator"]), poly_from_json(obj["expanded"]["denominator"]))
        return cls(
            X3,
            complex_from_json(obj["w3"]),
            H,
            int(obj["rank"]),
            obj.get("l"),
            complex_from_json(obj["c"]) if obj.get("c") is not None else None,
            BlaschkeProduct.from_json(obj["B"]) if obj.get("B") is not None else None,
            expanded,
        )


def _exact(z: complex) -> GaussRat:
    return GaussRat.from_complex(complex(z))


def expand_interpolant(F: Interpolant) -> Tuple[CPoly, CPoly]:
    """Numerator and denominator of ``F`` as polynomials with exact dyadic coefficients.

    Floating parameters (``c``, Blaschke zeros, ``X3``, ``w3``) are converted
    exactly, so the expansion reproduces the floating composition up to the
    rounding of the final evaluation.
    """
    n = F.n
    H = F.H.inner
    num = H.numerator.scale(_exact(H.A_complex))
    den = H.Q
    if F.rank == 0:
        num = num.scale(_exact(F.c))
    else:
        zl = CPoly.variable(n, F.l)
        bn = CPoly.constant(n, _exact(F.B.constant))
        bd = CPoly.one(n)
        for a in F.B.zeros:
            bn = bn * (zl - CPoly.constant(n, _exact(a)))
            bd = bd * (CPoly.one(n) - zl.scale(_exact(a).conjugate()))
        num, den = num * bn, den * bd
    # substitute Z_j = (z_j - x_j) / (1 - conj(x_j) z_j), clearing denominators
    m = [max(num.degree_in(j), den.degree_in(j)) for j in range(n)]
    zs = [CPoly.variable(n, j + 1) for j in range(n)]
    xs = [_exact(x) for x in F.X3]
    tops = [zs[j] - CPoly.constant(n, xs[j]) for j in range(n)]
    bots = [CPoly.one(n) - zs[j].scale(xs[j].conjugate()) for j in range(n)]

    def subst(P: CPoly) -> CPoly:
        out = CPoly.zero(n)
        for alpha, coef in P.items():
            t = CPoly.constant(n, coef)
            for j, e in enumerate(alpha):
                t = t * tops[j] ** e * bots[j] ** (m[j] - e)
            out = out + t
        return out

    N, D = subst(num), subst(den)
    w3 = _exact(F.w3)
    return N + D.scale(w3), D + N.scale(w3.conjugate())


def assemble(
    H: CandidateH,
    l: Optional[int],
    rank: int,
    c: Tuple[complex, complex],
    nd: NormalizedData,
    data: ProblemData,
    expand: bool = False,
) -> Interpolant:
    """Build the interpolant for a positive outcome of :func:`check_candidate`."""
    X3, w3 = data.X[2], data.w[2]
    if rank == 0:
        c1, c2 = c
        if abs(abs(c1) - 1.0) > 1e-9 or abs(c1 - c2) > 1e-9:
            raise ValueError("rank 0 requires equal unimodular ratios")
        F = Interpolant(X3, w3, H, 0, None, c1 / abs(c1))
    else:
        B = two_point_blaschke(nd.X1p[l - 1], nd.X2p[l - 1], c[0], c[1])
        if B.degree != rank:
            raise ValueError(f"Blaschke degree {B.degree} differs from rank {rank}")
        F = Interpolant(X3, w3, H, rank, l, None, B)
    if expand:
        F = Interpolant(F.X3, F.w3, F.H, F.rank, F.l, F.c, F.B, expand_interpolant(F))
    return F


@dataclass(frozen=True)
class VerifyReport:
    residuals: Tuple[float, float, float]
    inner: InnerCheckReport
    expanded_gap: Optional[float]
    passed: bool

    def to_json(self) -> dict:
        return {
            "residuals": list(self.residuals),
            "inner_check": self.inner.to_json(),
            "expanded_gap": self.expanded_gap,
            "passed": self.passed,
        }


def verify(F: Interpolant, data: ProblemData, samples: int = 256, tol: float = 1e-9, seed: int = 0) -> VerifyReport:
    """Node residuals, a radial inner-ness sweep, and the expanded-form agreement."""
    res = tuple(float(abs(F(X) - w)) for X, w in zip(data.X, data.w))
    inner = verify_inner_numeric(F, samples=samples, seed=seed, n=data.n)
    gap = None
    if F.expanded is not None:
        rng = np.random.default_rng(seed)
        pts = 0.9 * np.sqrt(rng.uniform(size=(16, data.n))) * np.exp(2j * np.pi * rng.uniform(size=(16, data.n)))
        gap = float(max(abs(F(p) - F.evaluate_expanded(p)) for p in pts))
    ok = all(r < tol for r in res) and inner.passed and (gap is None or gap < tol)
    return VerifyReport(res, inner, gap, ok)


# ---- decision ---------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    H: CandidateH
    l: Optional[int]
    rank: int
    c: Optional[complex] = None
    B: Optional[BlaschkeProduct] = None

    def to_json(self) -> dict:
        return {
            "H": self.H.to_json(),
            "l": self.l,
            "rank": self.rank,
            "c": complex_to_json(self.c) if self.c is not None else None,
            "B": self.B.to_json() if self.B is not None else None,
        }


@dataclass
class FeasibilityReport:
    status: str
    witness: Optional[Witness] = None
    interpolant: Optional[Interpolant] = None
    residuals: Optional[Tuple[float, float, float]] = None
    candidates_tried: int = 0
    failures: List[dict] = field(default_factory=list)
    verification: Optional[VerifyReport] = None
    wall_time: float = 0.0

    def to_dict(self, include_time: bool = False) -> dict:
        out = {
            "status": self.status,
            "witness": self.witness.to_json() if self.witness else None,
            "interpolant": self.interpolant.to_json() if self.interpolant else None,
            "residuals": list(self.residuals) if self.residuals is not None else None,
            "candidates_tried": self.candidates_tried,
            "failures": self.failures,
            "verification": self.verification.to_json() if self.verification else None,
        }
        if include_time:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, include_time: bool = False) -> str:
        return json.dumps(self.to_dict(include_time), indent=2, sort_keys=True)


def _pairwise_necessary(data: ProblemData) -> bool:
    pairs = ((0, 1), (0, 2), (1, 2))
    return all(two_point_feasible(data.X[j], data.X[k], data.w[j], data.w[k], tol=1e-9) for j, k in pairs)


def decide(data: ProblemData, config: Optional[DecideConfig] = None) -> FeasibilityReport:
    """Search the candidate stream for a verified interpolant.

    With ``selection="first"`` the first positive (candidate, l) in stream
    order is used.  The default ``"min-rank"`` checks every candidate and
    tries positive outcomes in order of increasing rank, then stream order,
    then ``l``; a rank-0 outcome ends the scan at once.  Never reports
    infeasibility: exhaustion gives Unknown.
    """
    config = config or DecideConfig(n=data.n)
    if config.n != data.n:
        config = DecideConfig(**{**config.__dict__, "n": data.n})
    t0 = time.perf_counter()
    nd = normalize(data)
    report = FeasibilityReport(UNKNOWN)
    options = []

    def attempt(H: CandidateH, l: Optional[int], rank: int, c) -> bool:
        try:
            F = assemble(H, l, rank, c, nd, data, expand=config.expand)
        except ValueError as exc:
            report.failures.append({"candidate": H.label, "l": l, "reason": f"assembly failed: {exc}"})
            return False
        v = verify(F, data, samples=config.verify_samples, tol=config.tol, seed=config.seed)
        if not v.passed:
            report.failures.append({"candidate": H.label, "l": l, "reason": "verification failed", "residuals": list(v.residuals)})
            return False
        if not _pairwise_necessary(data):
            raise AssertionError("verified interpolant for data violating the two-point condition")
        report.status = FEASIBLE
        report.witness = Witness(H, l, rank, F.c, F.B)
        report.interpolant = F
        report.residuals = v.residuals
        report.verification = v
        return True

    for index, item in enumerate(candidate_stream(config)):
        if isinstance(item, Rejected):
            report.failures.append({"candidate": item.text, "source": item.source, "reason": item.reason})
            continue
        report.candidates_tried += 1
        out = check_candidate(item, nd, config.tol)
        if out.status != "psd":
            report.failures.append({"candidate": item.label, "reason": out.reason})
            continue
        for o in out.feasible():
            l = None if o.rank == 0 else o.l
            if config.selection == "first" or o.rank == 0:
                if attempt(item, l, o.rank, out.c):
                    break
            else:
                options.append((o.rank, index, o.l, item, l, out.c))
        if report.status == FEASIBLE:
            break
    if report.status != FEASIBLE:
        for rank, _, _, item, l, c in sorted(options, key=lambda t: t[:3]):
            if attempt(item, l, rank, c):
                break
    report.wall_time = time.perf_counter() - t0
    return report
