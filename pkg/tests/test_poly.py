"""Polynomial arithmetic: ring axioms, text round-trips, Euler's relation."""

import random
from fractions import Fraction
from math import comb

import pytest

from rigidcheck.fields import QQ, PrimeField
from rigidcheck.poly import (Polynomial, PolyRing, grevlex_key, monomial_div,
                             monomial_divides, monomial_lcm, monomial_mul,
                             monomials_of_degree)
from rigidcheck.textform import parse_polynomial

F7 = PrimeField(7)


def random_poly(ring, rng, max_deg=4, n_terms=6):
    F = ring.field
    pairs = []
    for _ in range(rng.randrange(n_terms + 1)):
        exps = [0] * ring.nvars
        for _ in range(rng.randrange(max_deg + 1)):
            exps[rng.randrange(ring.nvars)] += 1
        if F.kind == "Q":
            c = Fraction(rng.randrange(-9, 10), rng.randrange(1, 9))
        else:
            c = rng.randrange(F.p)
        pairs.append((tuple(exps), c))
    return ring.from_terms(pairs)


@pytest.mark.parametrize("field", [QQ, F7], ids=["Q", "F7"])
def test_ring_axioms(field):
    ring = PolyRing(field, 3)
    rng = random.Random(f"axioms:{field.kind}")
    for _ in range(60):
        a, b, c = (random_poly(ring, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + ring.zero() == a
        assert a * ring.one() == a
        assert a - a == ring.zero()
        assert -(-a) == a


@pytest.mark.parametrize("field", [QQ, F7], ids=["Q", "F7"])
def test_parse_print_round_trip(field):
    ring = PolyRing(field, 4)
    rng = random.Random(f"roundtrip:{field.kind}")
    for _ in range(40):
        f = random_poly(ring, rng)
        assert parse_polynomial(str(f), ring) == f


def test_parse_fractions_and_signs():
    ring = PolyRing(QQ, 2)
    f = parse_polynomial("-3/4*x0^2 + x1 - 1/2", ring)
    assert f.coefficient((2, 0)) == Fraction(-3, 4)
    assert f.coefficient((0, 1)) == 1
    assert f.constant_term() == Fraction(-1, 2)


@pytest.mark.parametrize("field", [QQ, F7], ids=["Q", "F7"])
def test_euler_relation(field):
    # sum_i x_i * df/dx_i = deg(f) * f for homogeneous f
    ring = PolyRing(field, 4)
    rng = random.Random(f"euler:{field.kind}")
    for _ in range(25):
        d = rng.randrange(1, 6)
        pairs = []
        for m in rng.sample(monomials_of_degree(4, d),
                            k=min(5, comb(d + 3, 3))):
            pairs.append((m, field.of(rng.randrange(1, 7))))
        f = ring.from_terms(pairs)
        lhs = ring.zero()
        for i in range(4):
            lhs = lhs + ring.variable(i) * f.partial_derivative(i)
        assert lhs == f.scale(field.of(d))


def test_euler_collapses_in_dividing_characteristic():
    F5 = PrimeField(5)
    ring = PolyRing(F5, 3)
    f = parse_polynomial("x0^5 + x1^5 + x2^5", ring)
    lhs = ring.zero()
    for i in range(3):
        lhs = lhs + ring.variable(i) * f.partial_derivative(i)
    assert lhs.is_zero  # 5 * f = 0 mod 5


def test_monomials_of_degree_census():
    for nvars, d in [(1, 4), (2, 3), (3, 5), (4, 2), (6, 5)]:
        ms = monomials_of_degree(nvars, d)
        assert len(ms) == comb(d + nvars - 1, nvars - 1)
        assert len(set(ms)) == len(ms)
        assert all(sum(m) == d and len(m) == nvars for m in ms)
        keys = [grevlex_key(m) for m in ms]
        assert keys == sorted(keys, reverse=True)


def test_monomial_helpers():
    a, b = (2, 0, 1), (1, 3, 0)
    assert monomial_mul(a, b) == (3, 3, 1)
    assert monomial_lcm(a, b) == (2, 3, 1)
    assert monomial_divides(b, monomial_mul(a, b))
    assert not monomial_divides((0, 4, 0), a)
    assert monomial_div(monomial_mul(a, b), b) == a


def test_zero_polynomial_conventions():
    ring = PolyRing(QQ, 2)
    z = ring.zero()
    assert z.is_zero and z.degree() == -1
    assert z.homogeneous_degree() == -1
    with pytest.raises(ValueError):
        z.leading_monomial()


def test_grevlex_order_on_degree_ties():
    # same total degree: compare reversed exponents, smaller last exponent wins
    ring = PolyRing(QQ, 3)
    f = parse_polynomial("x0*x2 + x1^2", ring)
    assert f.leading_monomial() == (0, 2, 0)  # x1^2 beats x0*x2 in grevlex


def test_evaluate_matches_compose():
    ring = PolyRing(F7, 3)
    rng = random.Random("eval")
    for _ in range(20):
        f = random_poly(ring, rng)
        pt = [rng.randrange(7) for _ in range(3)]
        images = [ring.constant(c) for c in pt]
        composed = f.compose(images)
        assert composed.constant_term() == f.evaluate(pt)


def test_linear_substitute_identity_and_composition():
    ring = PolyRing(F7, 3)
    rng = random.Random("subst")
    ident = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    A = [[2, 1, 0], [0, 1, 3], [5, 0, 1]]
    B = [[1, 0, 4], [2, 1, 0], [0, 0, 3]]
    AB = [[sum(A[i][k] * B[k][j] for k in range(3)) % 7 for j in range(3)]
          for i in range(3)]
    for _ in range(15):
        f = random_poly(ring, rng)
        assert f.linear_substitute(ident) == f
        # substituting x -> A x then x -> B x applies A after B composes to AB
        assert f.linear_substitute(A).linear_substitute(B) == \
            f.linear_substitute(AB)


def test_homogeneous_parts_sum_back():
    ring = PolyRing(QQ, 3)
    rng = random.Random("parts")
    for _ in range(15):
        f = random_poly(ring, rng)
        total = ring.zero()
        for d, part in f.homogeneous_parts().items():
            assert part.homogeneous_degree() == d
            total = total + part
        assert total == f