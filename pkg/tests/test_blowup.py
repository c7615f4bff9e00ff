"""Blow-up rank behavior: the closed-form rule against the substitution
oracle, worked examples with hand-computed statuses, and the full sweep on
the committed rank-3 fixture."""

import random
from pathlib import Path

import pytest

from rigidcheck.blowup import (BlowupStatus, LocalModel, blow_up_rank3_point,
                               exceptional_sing_locus,
                               rank_after_blowup_direct,
                               rank_after_blowup_formula)
from rigidcheck.errors import ClassificationError, FieldError, PointError
from rigidcheck.expansion import ProjectivePoint
from rigidcheck.fields import QQ, PrimeField
from rigidcheck.fppoints import projective_points_list
from rigidcheck.linalg import invert
from rigidcheck.poly import PolyRing, monomials_of_degree
from rigidcheck.textform import load_hypersurface, parse_polynomial

FIXTURES = Path(__file__).parent / "fixtures"


def random_invertible(field, n, rng):
    while True:
        A = [[field.of(rng.randrange(field.p)) for _ in range(n)]
             for _ in range(n)]
        try:
            invert(field, A)
            return A
        except (FieldError, ValueError, ZeroDivisionError):
            continue


def random_model(field, N, a, rng):
    """Exact rank a by construction: diagonal form in a variables pushed
    through a random invertible change of all N variables."""
    ring = PolyRing(field, N)
    g2 = ring.zero()
    for i in range(a):
        e = [0] * N
        e[i] = 2
        g2 = g2 + ring.monomial(e, field.of(rng.randrange(1, field.p)))
    L = random_invertible(field, N, rng)
    g2 = g2.linear_substitute(L)

    def random_form(d, k):
        pairs = []
        for m in rng.sample(monomials_of_degree(N, d),
                            k=min(k, len(monomials_of_degree(N, d)))):
            pairs.append((m, field.of(rng.randrange(field.p))))
        return ring.from_terms(pairs)

    return LocalModel.from_pieces(g2, random_form(3, 8), random_form(4, 8))


def build_model(field, N, g2_text, g3_text, g4_text=None):
    ring = PolyRing(field, N)
    g2 = parse_polynomial(g2_text, ring)
    g3 = parse_polynomial(g3_text, ring)
    g4 = parse_polynomial(g4_text, ring) if g4_text else None
    return LocalModel.from_pieces(g2, g3, g4)


def test_worked_example_all_points_gain_two_ranks():
    # Q = {x3^3 + x4^3 = 0} in P^1 is smooth, so every point of Q gets a+2
    F7 = PrimeField(7)
    m = build_model(F7, 5, "x0^2 + x1^2 + x2^2", "x3^3 + x4^3")
    assert m.rank == 3 and m.kernel_dim == 2
    qpoints = [kp for kp in projective_points_list(7, 1)
               if exceptional_sing_locus(m).evaluate(kp) == 0]
    assert sorted(qpoints) == [(1, 3), (1, 5), (1, 6)]  # t^3 = -1 mod 7
    for kp in qpoints:
        vf = rank_after_blowup_formula(m, kp)
        vd = rank_after_blowup_direct(m, kp)
        assert vf.status is BlowupStatus.RANK_A_PLUS_2
        assert vd.status is BlowupStatus.RANK_A_PLUS_2
        assert vd.quadratic_rank == 5


def test_worked_example_singular_q_with_nonzero_h():
    # Q = {x3^3 = 0}: the point (0:1) is a singular point of Q;
    # g4 = x4^4 makes h = 4*x4^4 nonzero there, so the rank goes to a+1
    F7 = PrimeField(7)
    m = build_model(F7, 5, "x0^2 + x1^2 + x2^2", "x3^3", "x4^4")
    vf = rank_after_blowup_formula(m, (0, 1))
    vd = rank_after_blowup_direct(m, (0, 1))
    assert vf.status is BlowupStatus.RANK_A_PLUS_1
    assert vf.h_value == 4
    assert vd.status is BlowupStatus.RANK_A_PLUS_1
    assert vd.quadratic_rank == 4


def test_worked_example_singular_q_with_zero_h():
    # same cubic but no quartic: h = 0 identically and the rank stays at a
    F7 = PrimeField(7)
    m = build_model(F7, 5, "x0^2 + x1^2 + x2^2", "x3^3")
    vf = rank_after_blowup_formula(m, (0, 1))
    vd = rank_after_blowup_direct(m, (0, 1))
    assert vf.status is BlowupStatus.RANK_A
    assert vf.h_value == 0
    assert vd.status is BlowupStatus.RANK_A
    assert vd.quadratic_rank == 3


def test_worked_example_off_q():
    F7 = PrimeField(7)
    m = build_model(F7, 5, "x0^2 + x1^2 + x2^2", "x3^3")
    for kp in [(1, 0), (1, 1), (2, 5)]:
        assert exceptional_sing_locus(m).evaluate(kp) != 0
        assert rank_after_blowup_formula(m, kp).status is BlowupStatus.NOT_ON_Q
        assert rank_after_blowup_direct(m, kp).status is BlowupStatus.NOT_ON_Q


def test_h_sees_rank_variable_cross_terms():
    # g3 = x0*x3^2 contributes -(1/c0) * (x3^2)^2 to h even though the
    # kernel cubic is unchanged
    F7 = PrimeField(7)
    m = build_model(F7, 5, "x0^2 + x1^2 + x2^2", "x0*x3^2 + x4^3")
    # kernel cubic = x4^3; its singular point is (1:0)
    vf = rank_after_blowup_formula(m, (1, 0))
    vd = rank_after_blowup_direct(m, (1, 0))
    assert vf.h_value == (-1) % 7  # h = -x3^4 at (1, 0)
    assert vf.status is BlowupStatus.RANK_A_PLUS_1
    assert vd.status is BlowupStatus.RANK_A_PLUS_1


def test_formula_agrees_with_direct_on_random_models():
    rng = random.Random("agree")
    checked = 0
    for p in (5, 7):
        field = PrimeField(p)
        for _ in range(20):
            N = rng.choice([5, 6])
            a = rng.choice([3, 4])
            m = random_model(field, N, a, rng)
            for kp in projective_points_list(p, m.kernel_dim - 1):
                vf = rank_after_blowup_formula(m, kp)
                vd = rank_after_blowup_direct(m, kp)
                assert vf.status == vd.status, (p, N, a, kp, m.g3, m.g4)
                checked += 1
    assert checked > 500


def test_model_rejects_bad_pieces():
    F7 = PrimeField(7)
    ring = PolyRing(F7, 5)
    g2 = parse_polynomial("x0^2 + x1^2 + x2^2", ring)
    with pytest.raises(ValueError):
        LocalModel.from_pieces(g2, parse_polynomial("x3^2", ring))  # not cubic
    with pytest.raises(ClassificationError):
        LocalModel.from_pieces(parse_polynomial("x0^2 + x1^2", ring),
                               parse_polynomial("x3^3", ring))  # rank 2


def test_kernel_point_validation():
    F7 = PrimeField(7)
    m = build_model(F7, 5, "x0^2 + x1^2 + x2^2", "x3^3 + x4^3")
    with pytest.raises(PointError):
        rank_after_blowup_formula(m, (1, 0, 0, 1, 0))  # touches rank vars
    with pytest.raises(PointError):
        rank_after_blowup_formula(m, (0, 0))  # zero point
    with pytest.raises(PointError):
        rank_after_blowup_formula(m, (1, 2, 3))  # wrong length
    # full-length form with zero rank coordinates is accepted
    v = rank_after_blowup_formula(m, (0, 0, 0, 1, 3))
    assert v.point == (1, 3)


def test_fixture_sweep_reports_full_promotion():
    hs = load_hypersurface(FIXTURES / "rank3_all_conditions.txt")
    o = ProjectivePoint.of(hs.field, [1, 0, 0, 0, 0, 0])
    rep = blow_up_rank3_point(hs.f, o)
    assert rep.condition_g.verdict
    assert len(rep.verdicts) == 3  # the three points of Q over F7
    assert all(v.status is BlowupStatus.RANK_A_PLUS_2 for v in rep.verdicts)
    assert rep.rank_a_points == ()
    # the independent substitution path agrees on every point
    for v in rep.verdicts:
        assert rank_after_blowup_direct(rep.model, v.point).status is v.status


def test_sweep_rejects_wrong_point_type():
    hs = load_hypersurface(FIXTURES / "rank4_r3_fails.txt")
    o = ProjectivePoint.of(hs.field, [1, 0, 0, 0, 0, 0])
    with pytest.raises(ClassificationError):
        blow_up_rank3_point(hs.f, o)


def test_sweep_over_q_needs_explicit_points():
    ring = PolyRing(QQ, 6)
    f = parse_polynomial(
        "x0^3*x1^2 + x0^3*x2^2 + x0^3*x3^2 + x0^2*x4^3 + x0^2*x5^3"
        " + x1^5 + x2^5 + x3^5 + x4^5 + x5^5", ring)
    o = ProjectivePoint.of(QQ, [1, 0, 0, 0, 0, 0])
    with pytest.raises(PointError):
        blow_up_rank3_point(f, o)
    # with explicit kernel points it works: (1, -1) lies on x4^3 + x5^3 = 0
    rep = blow_up_rank3_point(f, o, points=[(1, -1)])
    assert len(rep.verdicts) == 1
    assert rep.verdicts[0].status is BlowupStatus.RANK_A_PLUS_2


def test_status_values_are_stable():
    assert BlowupStatus.NOT_ON_Q.value == "not_on_q"
    assert BlowupStatus.RANK_A_PLUS_2.value == "rank_a_plus_2"
    assert BlowupStatus.RANK_A_PLUS_1.value == "rank_a_plus_1"
    assert BlowupStatus.RANK_A.value == "rank_a"