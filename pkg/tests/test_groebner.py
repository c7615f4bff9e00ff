"""Groebner engine: canonical bases, S-polynomial certificates, dimension
against a brute-force point-growth oracle, budgets, determinism."""

import random

import pytest

from oracle_helpers import point_growth_dimension
from rigidcheck.errors import BudgetExceededError
from rigidcheck.fields import QQ, PrimeField
from rigidcheck.groebner import (groebner_basis, ideal_dimension,
                                 is_regular_sequence, normal_form,
                                 s_polynomial)
from rigidcheck.poly import PolyRing
from rigidcheck.textform import parse_polynomial

F5 = PrimeField(5)
F7 = PrimeField(7)


def polys(ring, *texts):
    return [parse_polynomial(t, ring) for t in texts]


def test_unit_ideal():
    R = PolyRing(QQ, 2)
    gb = groebner_basis(polys(R, "x0*x1 - 1", "x0^2"))
    assert [str(g) for g in gb] == ["1"]


def test_known_basis_two_generators():
    # x1 = -x0^2 and x2 = x0*x1 = -x0^3: eliminating gives a 3-element basis
    R = PolyRing(QQ, 3)
    gb = groebner_basis(polys(R, "x0^2 + x1", "x0*x1 - x2"))
    assert len(gb) == 3
    # every original generator reduces to zero against the basis
    for g in polys(R, "x0^2 + x1", "x0*x1 - x2"):
        assert normal_form(g, gb).is_zero


def test_buchberger_certificate_random():
    # defining property: every S-polynomial of basis pairs reduces to zero
    rng = random.Random("spoly")
    R = PolyRing(F7, 3)
    for trial in range(15):
        gens = []
        for _ in range(rng.randrange(1, 4)):
            pairs = []
            for _ in range(rng.randrange(1, 5)):
                e = [0] * 3
                for _ in range(rng.randrange(3)):
                    e[rng.randrange(3)] += 1
                pairs.append((tuple(e), rng.randrange(1, 7)))
            g = R.from_terms(pairs)
            if not g.is_zero:
                gens.append(g)
        if not gens:
            continue
        gb = groebner_basis(gens)
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                assert normal_form(s_polynomial(gb[i], gb[j]), gb).is_zero
        for g in gens:
            assert normal_form(g, gb).is_zero


def test_basis_is_canonical_under_generator_order():
    R = PolyRing(QQ, 3)
    gens = polys(R, "x0^2 - x1*x2", "x1^2 - x0*x2", "x2^2 - x0*x1")
    base = groebner_basis(gens)
    rng = random.Random("perm")
    for _ in range(5):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert groebner_basis(shuffled) == base


def test_basis_deterministic_repeat():
    R = PolyRing(F7, 4)
    gens = polys(R, "x0*x1 + x2^2", "x1*x3 - x0^2", "x2*x3 + x1^2")
    assert groebner_basis(gens) == groebner_basis(gens)


def test_budget_exceeded():
    R = PolyRing(QQ, 3)
    gens = polys(R, "x0^3 - 2*x1*x2", "x1^2 - x0*x2 + 1", "x2^3 + x0*x1")
    with pytest.raises(BudgetExceededError):
        groebner_basis(gens, budget=3)


def test_dimension_against_point_growth_oracle():
    # exact small shapes plus seeded random arrangements of linear factors;
    # every top-dimensional component is rational, which is the oracle's
    # contract
    R3 = PolyRing(F5, 3)
    R4 = PolyRing(F5, 4)
    fixed = [
        (R3, ["x0"]),
        (R3, ["x0", "x1"]),
        (R3, ["x0", "x1", "x2"]),
        (R3, ["x0*x1"]),
        (R3, ["x0*x1", "x0*x2"]),
        (R3, ["x0^2 + x1^2"]),  # -1 = 2^2 mod 5: splits into rational planes
        (R3, ["x0*x1 - 1", "x0^2"]),
        (R4, ["x0*x1", "x2"]),
        (R4, ["x0 + x1"]),
        (R4, ["x0*x1*x2"]),
    ]
    for ring, texts in fixed:
        gens = polys(ring, *texts)
        assert ideal_dimension(gens, ring=ring).affine_dim == \
            point_growth_dimension(gens, p=5), texts

    rng = random.Random("growth")
    for _ in range(8):
        nv = rng.choice([2, 3])
        ring = PolyRing(F5, nv)
        gens = []
        for _ in range(rng.randrange(1, 3)):
            factors = []
            for _ in range(rng.randrange(1, 3)):
                coef = [rng.randrange(5) for _ in range(nv)]
                if not any(coef):
                    coef[rng.randrange(nv)] = 1
                terms = {}
                for i, c in enumerate(coef):
                    if c:
                        e = [0] * nv
                        e[i] = 1
                        terms[tuple(e)] = c
                factors.append(ring.from_terms(list(terms.items())))
            g = ring.one()
            for fac in factors:
                g = g * fac
            gens.append(g)
        assert ideal_dimension(gens, ring=ring).affine_dim == \
            point_growth_dimension(gens, p=5)


def test_dimension_invariant_under_coordinate_change():
    R = PolyRing(F7, 3)
    gens = polys(R, "x0^2 + x1*x2", "x1^3 - x2^2")
    base = ideal_dimension(gens, ring=R).affine_dim
    # invertible matrices over F7
    mats = [
        [[1, 2, 0], [0, 1, 3], [0, 0, 1]],
        [[2, 0, 1], [1, 1, 0], [3, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    ]
    for A in mats:
        moved = [g.linear_substitute(A) for g in gens]
        assert ideal_dimension(moved, ring=R).affine_dim == base


def test_projective_dimension_of_homogeneous_ideals():
    R = PolyRing(QQ, 3)
    # a projective point (affine cone of dim 1)
    d = ideal_dimension(polys(R, "x0", "x1"), ring=R, homogeneous=True)
    assert d.affine_dim == 1 and d.projective_dim == 0
    # empty projective set: irrelevant-ideal power
    d = ideal_dimension(polys(R, "x0", "x1", "x2"), ring=R, homogeneous=True)
    assert d.affine_dim == 0 and d.projective_dim == -1


def test_fermat_jacobian_is_projectively_empty():
    R = PolyRing(QQ, 6)
    f = parse_polynomial("x0^5 + x1^5 + x2^5 + x3^5 + x4^5 + x5^5", R)
    gens = [f] + [f.partial_derivative(i) for i in range(6)]
    d = ideal_dimension(gens, ring=R, homogeneous=True)
    assert d.projective_dim == -1


def test_regular_sequence_detector():
    R = PolyRing(QQ, 3)
    good = polys(R, "x0", "x1", "x2")
    bad = polys(R, "x0*x1", "x0*x2")  # share the component {x0 = 0}
    assert is_regular_sequence(good, ring=R).ok
    assert not is_regular_sequence(bad, ring=R).ok


def test_normal_form_is_idempotent_and_linear():
    R = PolyRing(F7, 3)
    gb = groebner_basis(polys(R, "x0^2 - x1", "x1*x2 - 1"))
    rng = random.Random("nf")
    for _ in range(10):
        pairs = []
        for _ in range(rng.randrange(1, 6)):
            e = tuple(rng.randrange(3) for _ in range(3))
            pairs.append((e, rng.randrange(1, 7)))
        f = R.from_terms(pairs)
        g = R.from_terms([(tuple(rng.randrange(2) for _ in range(3)), 3)])
        nf = normal_form(f, gb)
        assert normal_form(nf, gb) == nf
        assert normal_form(f + g, gb) == normal_form(nf + normal_form(g, gb), gb)