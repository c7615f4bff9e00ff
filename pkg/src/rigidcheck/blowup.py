"""Rank behavior of a quadratic singularity under one blow-up.

A LocalModel is the truncated local equation g2 + g3 + g4 in N variables at
a quadratic point of rank a >= 3, with g2 already diagonal on the first a
variables (the constructor diagonalizes arbitrary input). Pieces of degree
five and up never matter for the verdicts here and are deliberately not part
of the model.

Two independent paths compute what happens at a kernel point p of the
exceptional quadric:

* rank_after_blowup_formula applies the closed-form rule: p off the cubic
  Q = {g3|kernel = 0} means the blown-up variety is nonsingular at p; on
  Q but off Sing Q the new rank is a+2; on Sing Q the weighted form h
  decides between a+1 (h(p) != 0) and a (h(p) = 0).

* rank_after_blowup_direct knows nothing of the rule or of h: it moves p to
  the distinguished position by a kernel permutation, scaling and shear,
  substitutes the blow-up chart u_c = w_c, u_i = w_i * w_c, divides by
  w_c^2, and reads the answer off the linear and quadratic parts of the
  result.

Their agreement on every kernel point is what the test suite enforces; it is
never assumed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ClassificationError, InvariantViolationError, PointError
from .expansion import ProjectivePoint, expand_at
from .poly import Polynomial, PolyRing
from .singularity import (ConditionGReport, QUADRATIC, classify_expansion,
                          condition_g_from_expansion, diagonalize)


class BlowupStatus(Enum):
    NOT_ON_Q = "not_on_q"            # blown-up variety nonsingular at p
    RANK_A_PLUS_2 = "rank_a_plus_2"  # p on Q, not on Sing Q
    RANK_A_PLUS_1 = "rank_a_plus_1"  # p on Sing Q, h(p) != 0
    RANK_A = "rank_a"                # p on Sing Q, h(p) == 0


@dataclass(frozen=True)
class BlowupPointVerdict:
    point: tuple
    status: BlowupStatus
    quadratic_rank: int | None = None  # filled by the direct path
    h_value: object | None = None      # filled by the formula path


@dataclass(frozen=True)
class LocalModel:
    """Truncated local equation with diagonal quadratic part."""

    g2: Polynomial
    g3: Polynomial
    g4: Polynomial
    rank: int
    diagonal: tuple  # the a nonzero diagonal coefficients

    @property
    def ring(self) -> PolyRing:
        return self.g2.ring

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def kernel_dim(self) -> int:
        return self.nvars - self.rank

    @classmethod
    def from_pieces(cls, g2: Polynomial, g3: Polynomial,
                    g4: Polynomial | None = None) -> "LocalModel":
        """Diagonalize g2 and transform g3, g4 into the same coordinates."""
        ring = g2.ring
        if g4 is None:
            g4 = ring.zero()
        for part, deg in ((g2, 2), (g3, 3), (g4, 4)):
            if part.homogeneous_degree() not in (-1, deg):
                raise ValueError(f"piece of degree {deg} is not homogeneous")
        qf = diagonalize(g2)
        if qf.rank < 3:
            raise ClassificationError(
                f"local model needs quadratic rank >= 3, got {qf.rank}")
        P = [list(row) for row in qf.change]
        return cls(g2=g2.linear_substitute(P), g3=g3.linear_substitute(P),
                   g4=g4.linear_substitute(P), rank=qf.rank,
                   diagonal=qf.diagonal[:qf.rank])


def _kernel_point(model: LocalModel, p) -> tuple:
    """Normalize p to kernel coordinates (length kernel_dim, not all zero)."""
    F = model.ring.field
    coords = [F.of(x) for x in p]
    if len(coords) == model.nvars:
        if any(c != F.zero for c in coords[:model.rank]):
            raise PointError("point is not in the kernel subspace")
        coords = coords[model.rank:]
    if len(coords) != model.kernel_dim:
        raise PointError(
            f"expected {model.kernel_dim} kernel coordinates, got {len(coords)}")
    if all(c == F.zero for c in coords):
        raise PointError("kernel point has all coordinates zero")
    return tuple(coords)


def exceptional_sing_locus(model: LocalModel) -> Polynomial:
    """The cubic Q = {g3 restricted to the kernel = 0} in the kernel ring."""
    ring = model.ring
    kernel_ring = PolyRing(ring.field, model.kernel_dim)
    images = [kernel_ring.zero()] * model.rank + [
        kernel_ring.variable(i) for i in range(model.kernel_dim)]
    return model.g3.compose(images, kernel_ring)


def rank_after_blowup_formula(model: LocalModel, p) -> BlowupPointVerdict:
    """Closed-form rule: Q membership, Sing Q membership, then h."""
    F = model.ring.field
    kp = _kernel_point(model, p)
    cubic = exceptional_sing_locus(model)
    if cubic.evaluate(kp) != F.zero:
        return BlowupPointVerdict(point=kp, status=BlowupStatus.NOT_ON_Q)
    for i in range(model.kernel_dim):
        if cubic.partial_derivative(i).evaluate(kp) != F.zero:
            return BlowupPointVerdict(point=kp, status=BlowupStatus.RANK_A_PLUS_2)
    # p lies on Sing Q; the weighted degree-4 form decides.
    kernel_ring = cubic.ring
    images = [kernel_ring.zero()] * model.rank + [
        kernel_ring.variable(i) for i in range(model.kernel_dim)]
    h = model.g4.compose(images, kernel_ring).scale(4)
    for i in range(model.rank):
        di = model.g3.partial_derivative(i).compose(images, kernel_ring)
        h = h - (di * di).scale(F.inv(model.diagonal[i]))
    hv = h.evaluate(kp)
    status = BlowupStatus.RANK_A_PLUS_1 if hv != F.zero else BlowupStatus.RANK_A
    return BlowupPointVerdict(point=kp, status=status, h_value=hv)


def rank_after_blowup_direct(model: LocalModel, p) -> BlowupPointVerdict:
    """Substitution-only oracle: blow-up chart, divide by w_c^2, read parts.

    Never consults h or the closed-form rule.
    """
    ring = model.ring
    F = ring.field
    N = model.nvars
    a = model.rank
    kp = list(_kernel_point(model, p))

    # Chart coordinate: first nonzero kernel coordinate, scaled to 1.
    local = next(i for i, c in enumerate(kp) if c != F.zero)
    inv = F.inv(kp[local])
    kp = [F.mul(inv, c) for c in kp]
    c_idx = a + local  # absolute index of the distinguished variable

    # Shear u_j -> u_j + p_j * u_c for the other kernel variables moves the
    # point to the coordinate vertex; only kernel variables are touched, so
    # the diagonal quadratic part is unchanged.
    shear = [[F.one if i == j else F.zero for j in range(N)] for i in range(N)]
    for j in range(model.kernel_dim):
        if j != local and kp[j] != F.zero:
            shear[a + j][c_idx] = kp[j]
    g3 = model.g3.linear_substitute(shear)
    g4 = model.g4.linear_substitute(shear)
    g2 = model.g2  # supported on the first a variables; shear fixes them

    # Blow-up chart is a monomial substitution: u_c = w_c and u_i = w_i w_c,
    # so x^e maps to the monomial with e_c replaced by the total degree.
    # Dividing by w_c^2 just lowers that entry by 2.
    def chart_divide(g: Polynomial, drop: int) -> dict:
        out: dict = {}
        for exps, coeff in g.terms.items():
            total = sum(exps)
            new = list(exps)
            new[c_idx] = total - drop
            key = tuple(new)
            acc = F.add(out.get(key, F.zero), coeff)
            if acc == F.zero:
                out.pop(key, None)
            else:
                out[key] = acc
        return out

    terms: dict = {}
    for g in (g2, g3, g4):
        for key, coeff in chart_divide(g, 2).items():
            acc = F.add(terms.get(key, F.zero), coeff)
            if acc == F.zero:
                terms.pop(key, None)
            else:
                terms[key] = acc
    local_eq = Polynomial(ring, terms)

    if local_eq.constant_term() != F.zero:
        raise InvariantViolationError(
            "blown-up local equation does not pass through the center")
    if not local_eq.homogeneous_component(1).is_zero:
        return BlowupPointVerdict(point=tuple(kp), status=BlowupStatus.NOT_ON_Q)
    quad = local_eq.homogeneous_component(2)
    r = diagonalize(quad).rank
    if r == a:
        status = BlowupStatus.RANK_A
    elif r == a + 1:
        status = BlowupStatus.RANK_A_PLUS_1
    elif r == a + 2:
        status = BlowupStatus.RANK_A_PLUS_2
    else:
        raise InvariantViolationError(
            f"unexpected quadratic rank {r} after blow-up (a = {a})")
    return BlowupPointVerdict(point=tuple(kp), status=status, quadratic_rank=r)


@dataclass
class Rank3BlowupReport:
    """Full blow-up sweep at a rank-3 point of a hypersurface."""

    model: LocalModel
    condition_g: ConditionGReport
    cubic: Polynomial
    verdicts: tuple  # BlowupPointVerdict for every supplied/enumerated Q-point
    rank_a_points: tuple


def blow_up_rank3_point(f: Polynomial, o: ProjectivePoint,
                        points=None, budget: int | None = None) -> Rank3BlowupReport:
    """Blow up a rank-3 point and classify points of the kernel cubic Q.

    Points of Q are taken from `points` (kernel coordinates) or enumerated
    over the base field when it is finite. When condition (G) holds at o,
    every point of Q must gain rank, so a RankA verdict raises
    InvariantViolationError: rank-3 singularities stay isolated under the
    blow-up exactly because no such verdict occurs.
    """
    exp = expand_at(f, o)
    kind, _ = classify_expansion(exp)
    if kind.kind != QUADRATIC or kind.rank != 3:
        raise ClassificationError(
            f"blow-up sweep needs a rank-3 quadratic point; got {kind.describe()}")
    cond_g = condition_g_from_expansion(exp, budget=budget)
    model = LocalModel.from_pieces(exp.q[2], exp.q[3],
                                   exp.q[4] if exp.M >= 4 else None)
    cubic = exceptional_sing_locus(model)
    F = model.ring.field

    if points is None:
        if F.kind != "Fp":
            raise PointError(
                "over Q, kernel points of Q must be supplied explicitly")
        from .fppoints import projective_points_list
        candidates = projective_points_list(F.p, model.kernel_dim - 1)
    else:
        candidates = [_kernel_point(model, p) for p in points]

    verdicts = []
    for kp in candidates:
        if cubic.evaluate(kp) != F.zero:
            continue
        verdicts.append(rank_after_blowup_formula(model, kp))
    rank_a = tuple(v for v in verdicts if v.status is BlowupStatus.RANK_A)
    if cond_g.verdict and rank_a:
        raise InvariantViolationError(
            "condition (G) holds but a blown-up point kept rank 3")
    return Rank3BlowupReport(model=model, condition_g=cond_g, cubic=cubic,
                             verdicts=tuple(verdicts), rank_a_points=rank_a)
