"""Three-point search: normalization, candidates, positivity test, assembly, verification."""

import json
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickpoly.engine import (
    FEASIBLE,
    UNKNOWN,
    CandidateH,
    DecideConfig,
    Interpolant,
    ProblemData,
    Rejected,
    assemble,
    candidate_stream,
    check_candidate,
    coordinate_candidate,
    decide,
    generate_polynomial,
    normalize,
    screen_polynomial,
    verify,
)
from pickpoly.mpoly import parse_poly, zero_free_on_polydisc
from pickpoly.mpoly.zerofree import VERIFIED
from pickpoly.pick import two_point_feasible
from pickpoly.rif import RationalInner
from pickpoly.synth import synthesize, synthesize_batch

P = parse_poly
Q0 = P("2 - z1 - z2")
F0_CAND = screen_polynomial(Q0, "user-file", DecideConfig())

SQUARE = ProblemData(2, ((0.5, 0), (1 / 3, 0), (0, 0)), (0.25, 1 / 9, 0))
F0_DATA = ProblemData(2, ((0.5, 0.5), (1 / 3, 0), (0, 0)), (-0.5, -0.2, 0))
CUBE = ProblemData(2, ((0.5, 0), (1 / 3, 0), (0, 0)), (1 / 8, 1 / 27, 0))


# ---- data and normalization -----------------------------------------------------------


def test_problem_data_validation():
    with pytest.raises(ValueError, match="coincide"):
        ProblemData(2, ((0.5, 0), (0.5, 0), (0, 0)), (0.1, 0.2, 0))
    with pytest.raises(ValueError, match="open unit disc"):
        ProblemData(2, ((1.0, 0), (0.5, 0), (0, 0)), (0.1, 0.2, 0))
    with pytest.raises(ValueError):
        ProblemData(2, ((0.5,), (0.4, 0), (0, 0)), (0.1, 0.2, 0))
    assert ProblemData.from_json(json.loads(json.dumps(SQUARE.to_json()))) == SQUARE


def test_normalize_examples():
    nd = normalize(SQUARE)
    assert nd.X1p == (0.5, 0) and nd.X2p == (1 / 3, 0)
    assert nd.w1p == 0.25 and nd.w2p == 1 / 9
    data = ProblemData(2, ((0.5, 1 / 3), (0.1, 0.2), (0.5, 0)), (0.1, 0.2, 0))
    assert normalize(data).X1p == pytest.approx((0, 1 / 3), abs=1e-15)


# ---- candidates ---------------------------------------------------------------------------


def test_stream_order_and_filters(tmp_path):
    path = tmp_path / "cands.txt"
    path.write_text("# user polynomials\n2 - z1 - z2\n1 - z1*z2\n1/2 - z1 + z2^2\nz1 +* 3\n(2 - z1 - z2)\n")
    items = list(candidate_stream(DecideConfig(candidates_file=str(path), gen_count=3)))
    assert [c.label for c in items[:2]] == ["z1", "z2"]
    assert isinstance(items[2], CandidateH) and items[2].Q == Q0
    assert items[2].zero_free == VERIFIED and items[2].provenance == "user-file"
    assert isinstance(items[3], Rejected) and items[3].reason == "not deficient"
    assert isinstance(items[4], Rejected) and items[4].reason == "has a zero in the polydisc"
    assert isinstance(items[5], Rejected) and items[5].reason.startswith("syntax error")
    generated = [c for c in items if isinstance(c, CandidateH) and c.provenance.startswith("generated")]
    assert len(generated) == 3


def test_rejection_reasons():
    cfg = DecideConfig()
    assert screen_polynomial(P("3", 2), "user-file", cfg).reason == "constant polynomial"
    assert screen_polynomial(P("1/2 - z1 - z2"), "user-file", cfg).reason == "has a zero in the polydisc"
    assert screen_polynomial(Q0 * P("3 - z1 - 2z2"), "user-file", cfg).reason == "reducible"


def test_missing_candidate_file():
    with pytest.raises(OSError):
        list(candidate_stream(DecideConfig(candidates_file="/nonexistent/cands.txt")))


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(2, 3))
@settings(max_examples=30)
def test_generated_family_is_zero_free(seed, degree, n):
    Q = generate_polynomial(n, degree, random.Random(seed))
    const = Q.constant_term()
    mass = sum(abs(c) for a, c in Q.items() if any(a))
    assert const.is_real() and const.re > mass
    if n == 2:
        assert zero_free_on_polydisc(Q, budget=5000).status == VERIFIED


def test_generated_candidates_pass_invariants():
    for item in candidate_stream(DecideConfig(gen_count=6, seed=11)):
        if isinstance(item, CandidateH) and item.kind == "reflected":
            assert item.Q.is_deficient() and not item.Q.is_constant()
            assert item.irreducibility != "Reducible" and item.zero_free != "ZeroFound"


# ---- per-candidate check ----------------------------------------------------------------


def test_check_candidate_examples():
    nd = normalize(SQUARE)
    out = check_candidate(coordinate_candidate(2, 1), nd)
    assert out.status == "psd"
    assert out.c == pytest.approx((0.5, 1 / 3))
    assert [(o.l, o.is_psd, o.rank) for o in out.per_l] == [(1, True, 1), (2, False, 0)]
    out = check_candidate(coordinate_candidate(2, 2), nd)
    assert out.status == "fail" and out.reason == "division by vanishing H"
    out = check_candidate(F0_CAND, normalize(F0_DATA))
    assert out.status == "psd" and out.c == pytest.approx((1, 1))
    assert [o.rank for o in out.per_l] == [0, 0]


def test_check_candidate_indeterminate():
    data = ProblemData(2, ((0.5, 0), (0.2, 0.3), (0, 0)), (0, 0.1, 0))
    out = check_candidate(coordinate_candidate(2, 2), normalize(data))
    assert out.status == "skipped" and out.reason == "indeterminate ratio"


def test_check_candidate_ratio_outside_disc():
    data = ProblemData(2, ((0.1, 0.1), (0.2, 0.3), (0, 0)), (0.5, 0.1, 0))
    out = check_candidate(coordinate_candidate(2, 1), normalize(data))
    assert out.status == "fail" and out.reason.startswith("ratio c1 outside the closed disc")


# ---- assembly and verification --------------------------------------------------------------


def test_assemble_rank_zero_is_f0():
    nd = normalize(F0_DATA)
    F = assemble(F0_CAND, None, 0, (1, 1), nd, F0_DATA)
    assert F.c == 1
    pts = np.random.default_rng(0).uniform(-0.6, 0.6, size=(20, 2)).astype(complex)
    assert np.allclose(F.evaluate_many(pts), F0_CAND.inner.evaluate_many(pts), atol=1e-15)
    with pytest.raises(ValueError):
        assemble(F0_CAND, None, 0, (1, 0.5), nd, F0_DATA)


def test_assemble_rank_one_reproduces_square():
    nd = normalize(SQUARE)
    F = assemble(coordinate_candidate(2, 1), 1, 1, (0.5, 1 / 3), nd, SQUARE)
    assert F.B.degree == 1
    pts = np.random.default_rng(1).uniform(-0.6, 0.6, size=(20, 2)) + 0j
    assert np.allclose(F.evaluate_many(pts), pts[:, 0] ** 2, atol=1e-14)


def test_assemble_rank_two():
    nd = normalize(CUBE)
    out = check_candidate(coordinate_candidate(2, 1), nd)
    assert out.c == pytest.approx((0.25, 1 / 9))
    assert out.per_l[0].rank == 2
    F = assemble(coordinate_candidate(2, 1), 1, 2, out.c, nd, CUBE, expand=True)
    assert F.B.degree == 2
    assert abs(F.B(0.5) - 0.25) < 1e-12 and abs(F.B(1 / 3) - 1 / 9) < 1e-12
    rep = verify(F, CUBE)
    assert rep.passed and max(rep.residuals) < 1e-9
    assert rep.expanded_gap < 1e-9


def test_verify_negative_control():
    nd = normalize(SQUARE)
    F = assemble(coordinate_candidate(2, 1), 1, 1, (0.5, 1 / 3), nd, SQUARE)
    assert verify(F, SQUARE).passed
    moved = ProblemData(2, SQUARE.X, (0.25 + 1e-3, 1 / 9, 0))
    rep = verify(F, moved)
    assert not rep.passed
    assert rep.residuals[0] == pytest.approx(1e-3, rel=1e-6)


def test_interpolant_json_round_trip():
    rep = decide(CUBE, DecideConfig(expand=True))
    F = Interpolant.from_json(json.loads(json.dumps(rep.interpolant.to_json())))
    pts = np.random.default_rng(2).uniform(-0.6, 0.6, size=(10, 2)) + 0j
    assert np.allclose(F.evaluate_many(pts), rep.interpolant.evaluate_many(pts), atol=1e-15)
    assert F.evaluate_expanded(pts[0]) == pytest.approx(F(pts[0]), abs=1e-9)


# ---- decide -----------------------------------------------------------------------------------


def test_decide_examples():
    rep = decide(SQUARE)
    assert rep.status == FEASIBLE
    assert rep.witness.H.label == "z1" and rep.witness.l == 1 and rep.witness.rank == 1
    assert max(rep.residuals) < 1e-12
    rep = decide(F0_DATA, DecideConfig(candidates=("2 - z1 - z2",)))
    assert rep.status == FEASIBLE and rep.witness.rank == 0
    assert rep.witness.c == pytest.approx(1)
    assert max(rep.residuals) < 1e-12


def test_decide_adversarial_is_unknown():
    data = ProblemData(2, ((0.1, 0.05), (0.0, 0.1), (0, 0)), (0.95, -0.95, 0))
    assert not two_point_feasible(data.X[0], data.X[1], data.w[0], data.w[1])
    rep = decide(data, DecideConfig(gen_count=2))
    assert rep.status == UNKNOWN
    assert rep.witness is None and rep.interpolant is None
    assert rep.candidates_tried == 4
    assert len([f for f in rep.failures if "reason" in f]) >= rep.candidates_tried


def test_decide_is_deterministic():
    data = synthesize_batch(3, seed=9)[2].data
    a = decide(data, DecideConfig(seed=4)).to_json()
    b = decide(data, DecideConfig(seed=4)).to_json()
    assert a == b


def test_first_selection_is_available():
    rep = decide(SQUARE, DecideConfig(selection="first"))
    assert rep.status == FEASIBLE and rep.witness.l == 1


@given(st.integers(0, 2**32 - 1), st.integers(0, 2))
@settings(max_examples=25)
def test_soundness_and_rank_recovery(seed, degree):
    rng = np.random.default_rng(seed)
    s = synthesize(rng, degree)
    rep = decide(s.data)
    assert rep.status == FEASIBLE
    assert max(rep.residuals) < 1e-9 and rep.verification.passed
    assert rep.witness.rank == degree
    for j, k in ((0, 1), (0, 2), (1, 2)):
        assert two_point_feasible(s.data.X[j], s.data.X[k], s.data.w[j], s.data.w[k], tol=1e-9)
    # case (a) exactly when the ratios agree on the circle
    if rep.witness.rank == 0:
        out = check_candidate(rep.witness.H, normalize(s.data))
        assert abs(out.c[0] - out.c[1]) < 1e-9 and abs(abs(out.c[0]) - 1) < 1e-9


def test_reflected_candidate_in_three_variables():
    Q = P("3 - z1 - z2 - z3")
    H = RationalInner(1, Q.nu(), Q, "verified")
    s = synthesize(np.random.default_rng(5), 1, n=3, H=H, H_label="Q", l=2)
    rep = decide(s.data, DecideConfig(n=3, candidates=("3 - z1 - z2 - z3",)))
    assert rep.status == FEASIBLE and rep.witness.rank == 1
    assert max(rep.residuals) < 1e-9
