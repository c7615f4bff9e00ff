"""Buchberger Groebner bases, ideal dimension, regular-sequence tests.

Order is degrevlex throughout. S-pairs are selected by the normal strategy:
minimal lcm total degree first, then lexicographic on the pair indices.
Every reduction is followed by content removal (primitive part over Q, monic
over F_p) to keep coefficients small. All work is charged against an explicit
step budget; exhausting it raises BudgetExceededError rather than returning
a partial answer.

Dimension is read off the leading-term ideal: the affine dimension equals the
size of the largest variable subset S such that no leading monomial is
supported entirely inside S; for homogeneous ideals the projective dimension
is one less (with -1 meaning empty).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceededError, RingMismatchError
from .poly import (Polynomial, PolyRing, grevlex_key, monomial_div,
                   monomial_divides, monomial_lcm, monomial_mul)

DEFAULT_BUDGET = 2_000_000


class _Budget:
    __slots__ = ("limit", "steps")

    def __init__(self, limit: int):
        self.limit = limit
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.limit:
            raise BudgetExceededError("groebner step", self.limit)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lmf, lmg = f.leading_monomial(), g.leading_monomial()
    big = monomial_lcm(lmf, lmg)
    F = f.ring.field
    a = f.mul_monomial(monomial_div(big, lmf), F.inv(f.leading_coefficient()))
    b = g.mul_monomial(monomial_div(big, lmg), F.inv(g.leading_coefficient()))
    return a - b


def _support_mask(m) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


def _neg_key(m):
    # Negation of grevlex_key(m); min-heap then pops the largest monomial.
    return (-sum(m), tuple(reversed(m)))


def normal_form(p: Polynomial, basis, budget: _Budget | None = None) -> Polynomial:
    """Full remainder of p on division by basis (leading terms and tails).

    Divisors are tried in list order, so the result is deterministic for a
    fixed basis order; against a reduced basis it is canonical.
    """
    if budget is None:
        budget = _Budget(DEFAULT_BUDGET)
    F = p.ring.field
    # (support mask, degree, lm, lc, tail terms); the mask and degree reject
    # most non-divisors before the exponent comparison.
    info = [(_support_mask(g.leading_monomial()), sum(g.leading_monomial()),
             g.leading_monomial(), g.leading_coefficient(), g.terms)
            for g in basis if not g.is_zero]
    work = dict(p.terms)
    heap = [(_neg_key(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    push = heapq.heappush
    zero = F.zero

    while heap:
        key, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None:
            continue
        budget.tick()
        mdeg = -key[0]
        mmask = _support_mask(m)
        for gmask, gdeg, lm, lc, gterms in info:
            if gdeg > mdeg or gmask & ~mmask:
                continue
            if monomial_divides(lm, m):
                factor = F.div(c, lc)
                shift = monomial_div(m, lm)
                for gm, gc in gterms.items():
                    mm = monomial_mul(gm, shift)
                    acc = F.sub(work.get(mm, zero), F.mul(factor, gc))
                    if acc == zero:
                        work.pop(mm, None)
                    else:
                        if mm not in work:
                            push(heap, (_neg_key(mm), mm))
                        work[mm] = acc
                break
        else:
            rem[m] = c
            del work[m]
    return Polynomial(p.ring, rem)


def groebner_basis(gens, budget: int | None = None) -> list:
    """The reduced (monic, fully inter-reduced) degrevlex Groebner basis."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
    bud = _Budget(budget if budget is not None else DEFAULT_BUDGET)

    basis: list[Polynomial] = []
    for g in gens:
        g = g.primitive_part()
        if g not in basis:
            basis.append(g)
    if any(g.degree() == 0 for g in basis):
        return [ring.one()]

    lms = [g.leading_monomial() for g in basis]
    masks = [_support_mask(m) for m in lms]
    processed: set[tuple[int, int]] = set()
    pending: list[tuple[int, int, int]] = []
    for j in range(len(basis)):
        for i in range(j):
            heapq.heappush(pending, (sum(monomial_lcm(lms[i], lms[j])), i, j))

    while pending:
        _, i, j = heapq.heappop(pending)
        processed.add((i, j))
        big = monomial_lcm(lms[i], lms[j])
        if big == monomial_mul(lms[i], lms[j]):
            continue  # coprime leading monomials: S-pair reduces to zero
        bigmask = _support_mask(big)
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if (not masks[k] & ~bigmask and monomial_divides(lms[k], big)
                    and (min(i, k), max(i, k)) in processed
                    and (min(j, k), max(j, k)) in processed):
                skip = True
                break
        if skip:
            continue
        r = normal_form(s_polynomial(basis[i], basis[j]), basis, bud)
        if r.is_zero:
            continue
        r = r.primitive_part()
        if r.degree() == 0:
            return [ring.one()]
        basis.append(r)
        lms.append(r.leading_monomial())
        masks.append(_support_mask(lms[-1]))
        new = len(basis) - 1
        for t in range(new):
            heapq.heappush(pending, (sum(monomial_lcm(lms[t], lms[new])), t, new))

    # Minimalize, then tail-reduce for the canonical reduced basis.
    order = sorted(range(len(basis)), key=lambda idx: grevlex_key(lms[idx]))
    minimal: list[Polynomial] = []
    kept_lms: list[tuple] = []
    for idx in order:
        if not any(monomial_divides(m, lms[idx]) for m in kept_lms):
            minimal.append(basis[idx])
            kept_lms.append(lms[idx])
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(g, others, bud).monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    return reduced


def _leading_term_dimension(lms, nvars: int) -> int:
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    if any(not s for s in supports):
        return -1  # a unit is in the ideal
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            inside = set(subset)
            if all(not sup <= inside for sup in supports):
                return size
    return -1


@dataclass(frozen=True)
class IdealDimension:
    """Generators, their reduced Groebner basis, and dimensions.

    affine_dim is the Krull dimension of the affine zero set (-1 when empty);
    projective_dim is affine_dim - 1 for homogeneous input (so -1 means the
    projective zero set is empty) and None when the input was not flagged
    homogeneous.
    """

    generators: tuple
    basis: tuple
    affine_dim: int
    projective_dim: int | None

    @property
    def is_empty_projective(self) -> bool:
        return self.projective_dim is not None and self.projective_dim < 0


def ideal_dimension(gens, *, ring: PolyRing | None = None,
                    homogeneous: bool = False,
                    budget: int | None = None) -> IdealDimension:
    gens = list(gens)
    nonzero = [g for g in gens if not g.is_zero]
    if ring is None:
        if not nonzero:
            raise ValueError("pass ring= when all generators are zero")
        ring = nonzero[0].ring
    if homogeneous and any(not g.is_homogeneous() for g in nonzero):
        raise ValueError("generators are not all homogeneous")
    basis = groebner_basis(nonzero, budget=budget) if nonzero else []
    if basis and basis[0].degree() == 0:
        affine = -1
    elif not basis:
        affine = ring.nvars
    else:
        affine = _leading_term_dimension([g.leading_monomial() for g in basis],
                                         ring.nvars)
    projective = None
    if homogeneous:
        projective = affine - 1 if affine >= 0 else -1
    return IdealDimension(generators=tuple(gens), basis=tuple(basis),
                          affine_dim=affine, projective_dim=projective)


@dataclass(frozen=True)
class RegularSequenceVerdict:
    ok: bool
    expected_affine_dim: int
    ideal: IdealDimension


def is_regular_sequence(gens, *, ring: PolyRing | None = None,
                        homogeneous: bool = True,
                        budget: int | None = None) -> RegularSequenceVerdict:
    """k forms in n variables are a regular sequence iff dim V = n - k."""
    gens = list(gens)
    if ring is None:
        nonzero = [g for g in gens if not g.is_zero]
        if not nonzero:
            raise ValueError("pass ring= when all generators are zero")
        ring = nonzero[0].ring
    k = len(gens)
    if k > ring.nvars:
        raise ValueError(f"{k} forms in {ring.nvars} variables cannot be regular")
    dim = ideal_dimension(gens, ring=ring, homogeneous=homogeneous, budget=budget)
    expected = ring.nvars - k
    return RegularSequenceVerdict(ok=dim.affine_dim == expected,
                                  expected_affine_dim=expected, ideal=dim)
