"""Regular-sequence conditions at a classified point.

Each condition fixes a list of graded pieces of the local equation and
demands that their common zero set has exactly the expected dimension.
Dimensions are affine-cone dimensions throughout:

* R1 (nonsingular point, M >= 6): q6..qM restricted to the tangent
  hyperplane, M-1 parameters, expected dimension (M-1)-(M-5) = 4.
* R2 (quadratic rank >= 7, M >= 7): {q2, q7..qM} in M variables,
  expected dimension M-(M-5) = 5.
* R3 (quadratic rank 3..6): {q2..qM} in M variables, expected
  dimension M-(M-1) = 1.

For M = 5 a nonsingular point carries no sequence condition at all; the
verdict VacuousM5 records that with an empty sequence (the zero forms cut
nothing out of the 4 tangent parameters, so expected = actual = 4).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ClassificationError
from .expansion import TaylorExpansion, restrict_to_tangent
from .groebner import IdealDimension, ideal_dimension
from .poly import PolyRing
from .singularity import HIGHER_MULT, NONSINGULAR, QUADRATIC, classify_expansion

R1 = "R1"
R2 = "R2"
R3 = "R3"
VACUOUS_M5 = "VacuousM5"


@dataclass(frozen=True)
class RegularityVerdict:
    condition: str
    sequence_checked: tuple  # degree labels of the forms in the sequence
    expected_dim: int
    actual_dim: int
    detail: IdealDimension | None = None

    @property
    def ok(self) -> bool:
        return self.actual_dim == self.expected_dim


def expected_dims(M: int) -> dict:
    """Expected affine dimensions per condition; the arithmetic the
    verdicts are measured against."""
    return {R1: (M - 1) - (M - 5), R2: M - (M - 5), R3: M - (M - 1)}


def check_R1(exp: TaylorExpansion, budget: int | None = None) -> RegularityVerdict:
    """q6..qM restricted to the tangent hyperplane must cut down to dim 4."""
    M = exp.M
    if M < 6:
        raise ClassificationError("the nonsingular-point sequence starts at "
                                  "degree 6 and needs M >= 6")
    restriction = restrict_to_tangent(exp, range(6, M + 1))
    degrees = tuple(range(6, M + 1))
    gens = [restriction.restricted[d] for d in degrees]
    ideal = ideal_dimension(gens, ring=gens[0].ring, budget=budget)
    return RegularityVerdict(condition=R1, sequence_checked=degrees,
                             expected_dim=4, actual_dim=ideal.affine_dim,
                             detail=ideal)


def check_R2(exp: TaylorExpansion, budget: int | None = None) -> RegularityVerdict:
    """{q2, q7..qM} in the M chart variables must cut down to dim 5."""
    M = exp.M
    kind = classify_expansion(exp)[0]
    if kind.kind != QUADRATIC or kind.rank < 7:
        raise ClassificationError(
            f"this condition applies at quadratic points of rank >= 7; "
            f"point is {kind.describe()}")
    degrees = (2,) + tuple(range(7, M + 1))
    gens = [exp.q[d] for d in degrees]
    ideal = ideal_dimension(gens, ring=exp.ring, budget=budget)
    return RegularityVerdict(condition=R2, sequence_checked=degrees,
                             expected_dim=5, actual_dim=ideal.affine_dim,
                             detail=ideal)


def check_R3(exp: TaylorExpansion, budget: int | None = None) -> RegularityVerdict:
    """{q2..qM} in the M chart variables must cut down to dim 1."""
    M = exp.M
    kind = classify_expansion(exp)[0]
    if kind.kind != QUADRATIC or not 3 <= kind.rank <= 6:
        raise ClassificationError(
            f"this condition applies at quadratic points of rank 3..6; "
            f"point is {kind.describe()}")
    degrees = tuple(range(2, M + 1))
    gens = [exp.q[d] for d in degrees]
    ideal = ideal_dimension(gens, ring=exp.ring, budget=budget)
    return RegularityVerdict(condition=R3, sequence_checked=degrees,
                             expected_dim=1, actual_dim=ideal.affine_dim,
                             detail=ideal)


def check_regularity(exp: TaylorExpansion, budget: int | None = None) -> RegularityVerdict:
    """Dispatch on the point classification.

    Rank <= 2 and multiplicity >= 3 points are outside every regularity
    condition (they are excluded from the family by the rank stratum) and
    raise ClassificationError.
    """
    kind = classify_expansion(exp)[0]
    if kind.kind == NONSINGULAR:
        if exp.M == 5:
            restrict_to_tangent(exp, ())  # validates the point is nonsingular
            ring = PolyRing(exp.ring.field, 4)
            ideal = ideal_dimension([], ring=ring, budget=budget)
            return RegularityVerdict(condition=VACUOUS_M5, sequence_checked=(),
                                     expected_dim=4,
                                     actual_dim=ideal.affine_dim, detail=ideal)
        return check_R1(exp, budget=budget)
    if kind.kind == QUADRATIC:
        if kind.rank >= 7:
            return check_R2(exp, budget=budget)
        if kind.rank >= 3:
            return check_R3(exp, budget=budget)
        raise ClassificationError(
            f"quadratic rank {kind.rank} <= 2 is outside the regular family")
    if kind.kind == HIGHER_MULT:
        raise ClassificationError(
            f"multiplicity {kind.multiplicity} >= 3 is outside the regular family")
    raise ClassificationError(f"unrecognized classification {kind.kind}")


@dataclass(frozen=True)
class HypertangentRecord:
    j: int
    affine_dim: int
    codim_in_hypersurface: int
    required: int
    comparison: str  # ">=" or "=="

    @property
    def ok(self) -> bool:
        if self.comparison == "==":
            return self.codim_in_hypersurface == self.required
        return self.codim_in_hypersurface >= self.required


def hypertangent_base_dim(exp: TaylorExpansion, j: int,
                          budget: int | None = None) -> HypertangentRecord:
    """Dimension of the base locus cut by the truncations q1+...+qi, i <= j,
    inside the hypersurface chart, with the codimension requirement for the
    point's type.

    The ideal (f_[1,1], ..., f_[1,j], f) equals (q1, ..., qj, f), which is
    what gets handed to the Groebner engine. The codimension is measured
    inside the (M-1)-dimensional hypersurface germ and must satisfy:
    nonsingular point >= j-4; rank >= 7 point >= j-5; rank 3..6 point
    == j-1 (for 2 <= j <= M-1). Desk scale only: every q-piece of f enters.
    """
    M = exp.M
    kind = classify_expansion(exp)[0]
    if kind.kind == QUADRATIC and 3 <= kind.rank <= 6:
        required, comparison = j - 1, "=="
        lo, hi = 2, M - 1
    elif kind.kind == QUADRATIC and kind.rank >= 7:
        required, comparison = j - 5, ">="
        lo, hi = 1, M
    elif kind.kind == NONSINGULAR:
        required, comparison = j - 4, ">="
        lo, hi = 1, M
    else:
        raise ClassificationError(
            f"no hypertangent bound for {kind.describe()}")
    if not lo <= j <= hi:
        raise ValueError(f"j must lie in [{lo}, {hi}] for this point type")
    gens = [exp.q[d] for d in range(1, j + 1)] + [exp.affine_equation()]
    gens = [g for g in gens if not g.is_zero]
    ideal = ideal_dimension(gens, ring=exp.ring, budget=budget)
    dim_f = M - 1
    return HypertangentRecord(j=j, affine_dim=ideal.affine_dim,
                              codim_in_hypersurface=dim_f - ideal.affine_dim,
                              required=required, comparison=comparison)
