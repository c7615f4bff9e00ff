"""Finite-field sampling harness and exhaustive exclusion scans.

Random degree-M forms over F_p are sampled coefficient-by-coefficient,
classified at their singular points, and the failure frequencies are
compared against the p^(-codim) heuristics from the codimension tables.
Reports are exact (counts and Fractions, no floats) and byte-identical for
a fixed config: the per-sample RNG stream is derived from (seed, index)
only, and serialization sorts every key.

All finite-field verdicts here are EVIDENCE, not certificates: a
characteristic-zero hypersurface can acquire F_p planes or sections by
reduction, so a clean scan over F_p supports but never proves the
corresponding statement over Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

import numpy as np

from . import codim
from .errors import BudgetExceededError, FieldError
from .expansion import ProjectivePoint, expand_at
from .fields import PrimeField, is_prime
from .fppoints import (canonicalize_rows, encode_rows, evaluate_batch,
                       projective_point_count, projective_points_array,
                       singular_points_array)
from .groebner import DEFAULT_BUDGET
from .poly import Polynomial, PolyRing, monomials_of_degree
from .regularity import check_regularity
from .singularity import HIGHER_MULT, QUADRATIC, check_condition_g, classify_expansion

DEFAULT_ENUM_BUDGET = 1_000_000

KNOWN_CHECKS = frozenset({"classify", "condition_g", "regularity"})


@dataclass(frozen=True)
class CensusConfig:
    M: int
    p: int
    sample_count: int
    seed: str = "0"
    checks: frozenset = frozenset({"classify"})
    groebner_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.M < 5:
            raise ValueError("census needs M >= 5 (the heuristic comparisons "
                             "come from the M >= 5 codimension tables)")
        if self.p == 2 or not is_prime(self.p):
            raise ValueError("p must be an odd prime")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        unknown = set(self.checks) - KNOWN_CHECKS
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")

    @property
    def euler_degenerate(self) -> bool:
        """p divides M: the Euler relation collapses, so f(o) = 0 is an
        independent condition at every point and is always checked."""
        return self.M % self.p == 0


def random_form(ring: PolyRing, degree: int, rng: random.Random) -> Polynomial:
    """Uniform independent coefficients on all degree-d monomials."""
    p = ring.field.p
    terms = {}
    for m in monomials_of_degree(ring.nvars, degree):
        c = rng.randrange(p)
        if c:
            terms[m] = c
    return Polynomial(ring, terms)


def sample_rng(seed, index: int) -> random.Random:
    """Deterministic per-sample stream; string seeding hashes platform-stably."""
    return random.Random(f"{seed}:{index}")


def enumerate_points(f: Polynomial, budget: int = DEFAULT_ENUM_BUDGET) -> list:
    """All F_p-points of {f = 0}, canonical representatives, standard order."""
    ring = f.ring
    if ring.field.kind != "Fp":
        raise FieldError("point enumeration needs a prime field")
    n = ring.nvars - 1
    count = projective_point_count(ring.field.p, n)
    if count > budget:
        raise BudgetExceededError("point enumeration", budget)
    pts = projective_points_array(ring.field.p, n)
    on = pts[evaluate_batch(f, pts) == 0]
    return [tuple(int(x) for x in row) for row in on]


def _heuristics(M: int, p: int) -> dict:
    """Exact p^(-codim) comparison values per condition.

    singular_somewhere uses the per-point count of independent linear
    conditions, M+1 (evaluation plus partials modulo the Euler relation;
    when p | M the partials lose one rank and evaluation restores it),
    summed over all points of P^M.
    """
    out = {
        "singular_somewhere":
            Fraction(projective_point_count(p, M), p ** (M + 1)),
        "rank_le_2_or_mult_ge_3": Fraction(1, p ** (comb(M - 1, 2) + 1)),
        "any_condition_fail": Fraction(1, p ** codim.gamma(M)),
        "condition_g_fail": Fraction(1, p ** codim.bound_BG(M).value),
        "r3_fail": Fraction(1, p ** min(codim.bound_B3(M).per_a.values())),
    }
    if M >= 6:
        out["r1_fail"] = Fraction(1, p ** codim.bound_B1(M).minimum)
    if M >= 7:
        out["r2_fail"] = Fraction(1, p ** codim.bound_B2(M))
    return out


@dataclass
class CensusReport:
    config: dict
    counts: dict
    frequencies: dict  # Fractions, denominators = sample count
    heuristics: dict   # Fractions
    notes: tuple

    def to_dict(self) -> dict:
        return {
            "config": dict(sorted(self.config.items())),
            "counts": dict(sorted(self.counts.items())),
            "frequencies": {k: str(v) for k, v in sorted(self.frequencies.items())},
            "heuristics": {k: str(v) for k, v in sorted(self.heuristics.items())},
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CensusReport":
        return cls(config=dict(data["config"]), counts=dict(data["counts"]),
                   frequencies={k: Fraction(v) for k, v in data["frequencies"].items()},
                   heuristics={k: Fraction(v) for k, v in data["heuristics"].items()},
                   notes=tuple(data["notes"]))


def run_census(config: CensusConfig) -> CensusReport:
    """Sample forms, enumerate singular points, classify, and aggregate."""
    F = PrimeField(config.p)
    ring = PolyRing(F, config.M + 1)
    counts = {
        "samples": config.sample_count,
        "zero_form": 0,
        "singular_somewhere": 0,
        "singular_points_total": 0,
        "rank_le_2_or_mult_ge_3": 0,
        "budget_exhausted_checks": 0,
    }
    classify = "classify" in config.checks
    if classify:
        counts.update(rank_3_points=0, rank_4_to_6_points=0,
                      rank_ge_7_points=0, higher_mult_points=0)
    do_g = "condition_g" in config.checks
    if do_g:
        counts.update(g_checked=0, g_failed=0)
    do_reg = "regularity" in config.checks
    if do_reg:
        counts.update(reg_checked=0, reg_failed=0)

    for i in range(config.sample_count):
        rng = sample_rng(config.seed, i)
        f = random_form(ring, config.M, rng)
        if f.is_zero:
            counts["zero_form"] += 1
            counts["singular_somewhere"] += 1
            continue
        sing = singular_points_array(f)
        if sing.shape[0] == 0:
            continue
        counts["singular_somewhere"] += 1
        counts["singular_points_total"] += int(sing.shape[0])
        if not (classify or do_g or do_reg):
            continue
        for row in sing:
            o = ProjectivePoint.of(F, [int(x) for x in row])
            exp = expand_at(f, o)
            kind = classify_expansion(exp)[0]
            bad_stratum = (kind.kind == HIGHER_MULT
                           or (kind.kind == QUADRATIC and kind.rank <= 2))
            if bad_stratum:
                counts["rank_le_2_or_mult_ge_3"] += 1
            if classify and kind.kind == QUADRATIC:
                if kind.rank >= 7:
                    counts["rank_ge_7_points"] += 1
                elif kind.rank >= 4:
                    counts["rank_4_to_6_points"] += 1
                elif kind.rank == 3:
                    counts["rank_3_points"] += 1
            if classify and kind.kind == HIGHER_MULT:
                counts["higher_mult_points"] += 1
            if bad_stratum:
                continue
            try:
                if do_g and kind.kind == QUADRATIC and kind.rank == 3:
                    counts["g_checked"] += 1
                    if not check_condition_g(f, o, budget=config.groebner_budget).verdict:
                        counts["g_failed"] += 1
                if do_reg:
                    counts["reg_checked"] += 1
                    if not check_regularity(exp, budget=config.groebner_budget).ok:
                        counts["reg_failed"] += 1
            except BudgetExceededError:
                counts["budget_exhausted_checks"] += 1

    n = config.sample_count
    frequencies = {
        "singular_somewhere": Fraction(counts["singular_somewhere"], n),
    }
    heur = _heuristics(config.M, config.p)
    notes = ["finite-field evidence only, not a characteristic-zero certificate"]
    if config.euler_degenerate:
        notes.append("p divides M: Euler relation degenerate, "
                     "f(o) = 0 checked explicitly at every point")
    return CensusReport(
        config={"M": config.M, "p": config.p,
                "sample_count": config.sample_count,
                "seed": str(config.seed),
                "checks": sorted(config.checks),
                "euler_degenerate": config.euler_degenerate},
        counts=counts, frequencies=frequencies, heuristics=heur,
        notes=tuple(notes))


# -- M = 5 exclusion scans --------------------------------------------------


@dataclass(frozen=True)
class EvidenceVerdict:
    """Outcome of an exhaustive F_p scan; `ok` means nothing was found."""

    ok: bool
    p: int
    scanned: int
    witness: tuple | None = None
    label: str = "Fp-evidence"


def _echelon_matrices(rows: int, cols: int, p: int):
    """All full-rank row-reduced echelon rows x cols matrices over F_p.

    Canonical representatives of the row spaces, i.e. of the points of the
    Grassmannian Gr(rows, cols)(F_p).
    """
    for pivots in combinations(range(cols), rows):
        free = [(r, c) for r in range(rows)
                for c in range(pivots[r] + 1, cols) if c not in pivots]
        base = [[0] * cols for _ in range(rows)]
        for r, pc in enumerate(pivots):
            base[r][pc] = 1
        for values in product(range(p), repeat=len(free)):
            mat = [row[:] for row in base]
            for (r, c), v in zip(free, values):
                mat[r][c] = v
            yield mat


def count_subspaces(k: int, n: int, p: int) -> int:
    """Gaussian binomial [n choose k]_p: k-dimensional subspaces of F_p^n."""
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def _restrict_to_subspace(f: Polynomial, mat, ring_small: PolyRing) -> Polynomial:
    """f composed with x = y . mat, as a polynomial in the row parameters."""
    images = []
    F = f.ring.field
    for col in range(f.ring.nvars):
        img = ring_small.zero()
        for r in range(len(mat)):
            if mat[r][col]:
                img = img + ring_small.variable(r).scale(F.of(mat[r][col]))
        images.append(img)
    return f.compose(images, ring_small)


def check_no_planes_M5(f: Polynomial,
                       budget: int = DEFAULT_ENUM_BUDGET) -> EvidenceVerdict:
    """Scan every 2-plane of P^5(F_p) for containment in {f = 0}.

    Numeric prefilter: a plane whose rational points all lie on f. Exact
    confirmation: the restriction of f to the plane is the zero polynomial
    (this is scheme-theoretic containment over F_p, stronger than the
    point test).
    """
    ring = f.ring
    if ring.field.kind != "Fp":
        raise FieldError("the plane scan needs a prime field")
    if ring.nvars != 6:
        raise ValueError("the plane scan is specific to M = 5")
    p = ring.field.p
    n_planes = count_subspaces(3, 6, p)
    if n_planes > budget:
        raise BudgetExceededError("plane enumeration", budget)

    params = projective_points_array(p, 2)  # points of the parameter P^2
    ring3 = PolyRing(ring.field, 3)
    scanned = 0
    for mat in _echelon_matrices(3, 6, p):
        scanned += 1
        pts = (params @ np.array(mat, dtype=np.int64)) % p
        if np.any(evaluate_batch(f, pts)):
            continue
        if _restrict_to_subspace(f, mat, ring3).is_zero:
            return EvidenceVerdict(ok=False, p=p, scanned=scanned,
                                   witness=tuple(tuple(r) for r in mat))
    return EvidenceVerdict(ok=True, p=p, scanned=scanned)


def _line_points(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """The p+1 canonical points of the line through distinct points a, b."""
    rows = [b % p]
    for lam in range(p):
        rows.append((a + lam * b) % p)
    return canonicalize_rows(np.array(rows, dtype=np.int64), p)


def check_no_singular_line_in_3space_M5(
        f: Polynomial, budget: int = DEFAULT_ENUM_BUDGET) -> EvidenceVerdict:
    """Scan every 3-space T of P^5(F_p) for a line along which the surface
    {f = 0} cut by T is singular.

    Numeric prefilter: points y of T with f(x) = 0 and B grad f(x) = 0
    (x = yB), found via one gradient table over P^5; a line all of whose
    rational points are flagged is a candidate. Exact confirmation: all
    partials of the restricted equation vanish identically on the line.
    """
    ring = f.ring
    if ring.field.kind != "Fp":
        raise FieldError("the line scan needs a prime field")
    if ring.nvars != 6:
        raise ValueError("the line scan is specific to M = 5")
    p = ring.field.p
    n_spaces = count_subspaces(4, 6, p)
    n_pts3 = projective_point_count(p, 3)
    if n_spaces * n_pts3 > budget:
        raise BudgetExceededError("3-space enumeration", budget)

    ambient = projective_points_array(p, 5)
    codes = encode_rows(ambient, p)
    index = np.full(int(codes.max()) + 1, -1, dtype=np.int64)
    index[codes] = np.arange(ambient.shape[0])
    fvals = evaluate_batch(f, ambient)
    grads = np.stack([evaluate_batch(f.partial_derivative(i), ambient)
                      for i in range(6)])  # (6, #P^5)

    params3 = projective_points_array(p, 3)
    ring4 = PolyRing(ring.field, 4)
    ring2 = PolyRing(ring.field, 2)
    scanned = 0
    for mat in _echelon_matrices(4, 6, p):
        scanned += 1
        B = np.array(mat, dtype=np.int64)
        x = canonicalize_rows((params3 @ B) % p, p)
        idx = index[encode_rows(x, p)]
        on_f = fvals[idx] == 0
        if int(on_f.sum()) < p + 1:
            continue
        gsec = (B @ grads[:, idx]) % p  # (4, #P^3): section partials
        sing_mask = on_f & np.all(gsec == 0, axis=0)
        if int(sing_mask.sum()) < p + 1:
            continue
        sing = params3[sing_mask]
        sing_codes = set(int(c) for c in encode_rows(sing, p))
        for i, j in combinations(range(sing.shape[0]), 2):
            line = _line_points(sing[i], sing[j], p)
            if not all(int(c) in sing_codes for c in encode_rows(line, p)):
                continue
            # Exact check: section g = f|T singular along the line.
            g = _restrict_to_subspace(f, mat, ring4)
            F = ring.field
            images = []
            for col in range(4):
                img = ring2.zero()
                if sing[i][col]:
                    img = img + ring2.variable(0).scale(F.of(int(sing[i][col])))
                if sing[j][col]:
                    img = img + ring2.variable(1).scale(F.of(int(sing[j][col])))
                images.append(img)
            partials_vanish = all(
                g.partial_derivative(k).compose(images, ring2).is_zero
                for k in range(4))
            if partials_vanish and g.compose(images, ring2).is_zero:
                witness = (tuple(tuple(r) for r in mat),
                           tuple(int(c) for c in sing[i]),
                           tuple(int(c) for c in sing[j]))
                return EvidenceVerdict(ok=False, p=p, scanned=scanned,
                                       witness=witness)
    return EvidenceVerdict(ok=True, p=p, scanned=scanned)