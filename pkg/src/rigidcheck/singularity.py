"""Point classification and the kernel-cubic condition (G).

A point o on the hypersurface is Nonsingular (q1 nonzero), QuadraticRank(a)
(q1 zero, quadratic part of rank a >= 1), or HigherMultiplicity (q1 and q2
both zero). At a rank-3 point, condition (G) looks at the cubic
Q = {q3 restricted to the kernel of q2 = 0}: its singular locus (the common
zeros of the partials of the restricted cubic) must be at most
zero-dimensional, and the degree-4 form

    h = 4 * q4|_K - sum_i (1/c_i) * (d q3 / d y_i |_K)^2

(c_i the diagonal coefficients of q2, the sum over the three non-kernel
variables) must not vanish at any singular point of Q. The latter is
certified scheme-theoretically: the ideal (partials of Q) + (h) must have an
empty projective zero set, which also covers singular points that are not
rational over the base field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ClassificationError
from .expansion import ProjectivePoint, TaylorExpansion, expand_at
from .groebner import IdealDimension, ideal_dimension
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class QuadraticForm:
    """A diagonalized quadratic form.

    gram is the symmetric matrix of the input; change is an invertible
    matrix P such that substituting z = P y makes the form diagonal with
    coefficients `diagonal` (nonzero entries first, so diagonal[:rank] are
    the c_i and the kernel is spanned by the last columns of P).
    """

    gram: tuple
    rank: int
    change: tuple
    diagonal: tuple


def gram_matrix(q2: Polynomial):
    """Symmetric matrix of a quadratic form (needs characteristic != 2)."""
    ring = q2.ring
    F = ring.field
    n = ring.nvars
    deg = q2.homogeneous_degree()
    if deg not in (-1, 2):
        raise ValueError("expected a homogeneous quadratic form (or zero)")
    half = F.inv(F.of(2))
    A = [[F.zero] * n for _ in range(n)]
    for exps, c in q2.terms.items():
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            i = support[0]
            A[i][i] = c
        else:
            i, j = support
            A[i][j] = A[j][i] = F.mul(half, c)
    return A


def diagonalize(q2: Polynomial) -> QuadraticForm:
    """Congruence diagonalization over the base field (no square roots)."""
    ring = q2.ring
    F = ring.field
    n = ring.nvars
    A = gram_matrix(q2)
    D = [row[:] for row in A]
    P = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]

    def add_col(dst, src, factor):
        # column operation with the matching row operation (congruence)
        for r in range(n):
            D[r][dst] = F.add(D[r][dst], F.mul(factor, D[r][src]))
        for c in range(n):
            D[dst][c] = F.add(D[dst][c], F.mul(factor, D[src][c]))
        for r in range(n):
            P[r][dst] = F.add(P[r][dst], F.mul(factor, P[r][src]))

    def swap_cols(a, b):
        for r in range(n):
            D[r][a], D[r][b] = D[r][b], D[r][a]
        D[a], D[b] = D[b], D[a]
        for r in range(n):
            P[r][a], P[r][b] = P[r][b], P[r][a]

    for k in range(n):
        if D[k][k] == F.zero:
            pivot = next((j for j in range(k + 1, n) if D[j][j] != F.zero), None)
            if pivot is not None:
                swap_cols(k, pivot)
            else:
                found = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if D[i][j] != F.zero:
                            found = (i, j)
                            break
                    if found:
                        break
                if found is None:
                    break  # remaining block is zero
                i, j = found
                add_col(i, j, F.one)  # D[i][i] becomes 2*D[i][j] != 0
                if i != k:
                    swap_cols(k, i)
        inv_p = F.inv(D[k][k])
        for j in range(k + 1, n):
            if D[k][j] != F.zero:
                add_col(j, k, F.neg(F.mul(inv_p, D[k][j])))

    # Nonzero diagonal entries first (stable permutation).
    order = ([k for k in range(n) if D[k][k] != F.zero]
             + [k for k in range(n) if D[k][k] == F.zero])
    diagonal = tuple(D[k][k] for k in order)
    change = tuple(tuple(P[r][k] for k in order) for r in range(n))
    rank = sum(1 for d in diagonal if d != F.zero)
    return QuadraticForm(gram=tuple(tuple(row) for row in A), rank=rank,
                         change=change, diagonal=diagonal)


NONSINGULAR = "nonsingular"
QUADRATIC = "quadratic"
HIGHER_MULT = "higher_multiplicity"


@dataclass(frozen=True)
class PointKind:
    kind: str
    rank: int | None = None
    multiplicity: int | None = None

    def describe(self) -> str:
        if self.kind == NONSINGULAR:
            return "Nonsingular"
        if self.kind == QUADRATIC:
            return f"QuadraticRank({self.rank})"
        return f"HigherMultiplicity(mult={self.multiplicity})"


@dataclass
class PointReport:
    point: ProjectivePoint
    kind: PointKind
    expansion: TaylorExpansion
    quadratic_form: QuadraticForm | None = None
    condition_g: "ConditionGReport | None" = None
    regularity: object | None = None


def classify_expansion(exp: TaylorExpansion):
    """(PointKind, QuadraticForm or None) from the graded pieces."""
    if not exp.q[1].is_zero:
        return PointKind(NONSINGULAR), None
    if not exp.q[2].is_zero:
        qf = diagonalize(exp.q[2])
        return PointKind(QUADRATIC, rank=qf.rank), qf
    mult = next(d for d in range(3, exp.M + 1) if not exp.q[d].is_zero)
    return PointKind(HIGHER_MULT, multiplicity=mult), None


def classify_point(f: Polynomial, o: ProjectivePoint) -> PointReport:
    exp = expand_at(f, o)
    kind, qf = classify_expansion(exp)
    return PointReport(point=o, kind=kind, expansion=exp, quadratic_form=qf)


@dataclass
class ConditionGReport:
    """Outcome of condition (G) at a rank-3 point.

    kernel_map columns parametrize the kernel of q2 inside the chart
    variables; restricted_cubic and h live in the M-3 kernel parameters.
    """

    diagonal: tuple
    kernel_map: tuple
    restricted_cubic: Polynomial
    cubic_sing_dim: int
    sing_ideal: IdealDimension
    h: Polynomial
    h_avoids_singularities: bool
    h_ideal: IdealDimension | None
    verdict: bool


def _kernel_images(ring: PolyRing, kernel_ring: PolyRing, rank: int):
    """Images sending the first `rank` variables to 0 and the rest to the
    kernel parameters."""
    F = ring.field
    images = []
    for i in range(ring.nvars):
        if i < rank:
            images.append(kernel_ring.zero())
        else:
            images.append(kernel_ring.variable(i - rank))
    return images


def condition_g_from_expansion(exp: TaylorExpansion,
                               budget: int | None = None) -> ConditionGReport:
    kind, qf = classify_expansion(exp)
    if kind.kind != QUADRATIC or kind.rank != 3:
        raise ClassificationError(
            f"condition (G) applies to quadratic points of rank 3; "
            f"point is {kind.describe()}")
    ring = exp.ring
    F = ring.field
    M = exp.M
    P = [list(row) for row in qf.change]
    q2d = exp.q[2].linear_substitute(P)
    q3d = exp.q[3].linear_substitute(P)
    q4d = exp.q[4].linear_substitute(P) if M >= 4 else ring.zero()

    kernel_ring = PolyRing(F, M - 3)
    images = _kernel_images(ring, kernel_ring, 3)
    restricted_cubic = q3d.compose(images, kernel_ring)
    q4k = q4d.compose(images, kernel_ring)

    h = q4k.scale(4)
    for i in range(3):
        di = q3d.partial_derivative(i).compose(images, kernel_ring)
        h = h - (di * di).scale(F.inv(qf.diagonal[i]))

    partials = [restricted_cubic.partial_derivative(i)
                for i in range(kernel_ring.nvars)]
    sing = ideal_dimension(partials, ring=kernel_ring, homogeneous=True,
                           budget=budget)
    cubic_sing_dim = sing.projective_dim

    h_ideal = None
    if cubic_sing_dim < 0:
        h_avoids = True  # no singular points at all
    else:
        h_ideal = ideal_dimension(partials + [h], ring=kernel_ring,
                                  homogeneous=True, budget=budget)
        h_avoids = h_ideal.is_empty_projective

    # q2 must be exactly diagonal in the new coordinates
    diag_expected = ring.zero()
    for i in range(qf.rank):
        e = [0] * M
        e[i] = 2
        diag_expected = diag_expected + ring.monomial(e, qf.diagonal[i])
    if q2d != diag_expected:
        raise AssertionError("diagonalization did not diagonalize q2")

    verdict = cubic_sing_dim <= 0 and h_avoids
    kernel_map = tuple(tuple(row[3:]) for row in P)
    return ConditionGReport(diagonal=qf.diagonal[:3], kernel_map=kernel_map,
                            restricted_cubic=restricted_cubic,
                            cubic_sing_dim=cubic_sing_dim, sing_ideal=sing,
                            h=h, h_avoids_singularities=h_avoids,
                            h_ideal=h_ideal, verdict=verdict)


def check_condition_g(f: Polynomial, o: ProjectivePoint,
                      budget: int | None = None) -> ConditionGReport:
    return condition_g_from_expansion(expand_at(f, o), budget=budget)


def singular_locus_dimension(f: Polynomial,
                             budget: int | None = None) -> IdealDimension:
    """Projective dimension of V(f, all partials of f)."""
    gens = [f] + [f.partial_derivative(i) for i in range(f.ring.nvars)]
    return ideal_dimension(gens, ring=f.ring, homogeneous=True, budget=budget)
