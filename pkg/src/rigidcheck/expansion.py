"""Affine Taylor expansion of a projective hypersurface at a point.

For a degree-M form f in x0..xM vanishing at o, the chart is the first
nonzero coordinate of o (scaled to 1); in the remaining M affine variables
the shifted equation decomposes as q1 + q2 + ... + qM with qd homogeneous
of degree d. Everything downstream (classification, conditions, blow-ups)
consumes these pieces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ClassificationError, PointError
from .poly import Polynomial, PolyRing


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^n, stored canonically: first nonzero coordinate is 1."""

    field: object
    coords: tuple

    @classmethod
    def of(cls, field, coords) -> "ProjectivePoint":
        coords = [field.of(c) for c in coords]
        pivot = next((i for i, c in enumerate(coords) if c != field.zero), None)
        if pivot is None:
            raise PointError("all projective coordinates are zero")
        inv = field.inv(coords[pivot])
        return cls(field, tuple(field.mul(inv, c) for c in coords))

    @classmethod
    def from_string(cls, field, text: str) -> "ProjectivePoint":
        parts = [p.strip() for p in text.split(":")]
        if len(parts) < 2:
            raise PointError(f"bad point {text!r}; expected colon-separated coordinates")
        return cls.of(field, parts)

    @property
    def chart_index(self) -> int:
        return next(i for i, c in enumerate(self.coords) if c != self.field.zero)

    def __str__(self):
        return ":".join(self.field.to_str(c) for c in self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class TaylorExpansion:
    """Graded pieces of f at a point o on {f = 0}.

    q is indexed by degree: q[d] for d in 1..M lives in the M affine chart
    variables (q[0] is kept as the zero polynomial so indexing is natural).
    chart_index is the coordinate set to 1; center holds the remaining
    affine coordinates of o in their original order.
    """

    chart_index: int
    center: tuple
    q: tuple

    @property
    def M(self) -> int:
        return len(self.q) - 1

    @property
    def ring(self) -> PolyRing:
        return self.q[1].ring

    def affine_equation(self) -> Polynomial:
        total = self.ring.zero()
        for part in self.q[1:]:
            total = total + part
        return total


def expand_at(f: Polynomial, o: ProjectivePoint) -> TaylorExpansion:
    """Expand the form f at a point o of {f = 0}."""
    ring = f.ring
    field = ring.field
    if o.field != field:
        raise PointError("point and polynomial have different coefficient fields")
    if len(o) != ring.nvars:
        raise PointError(f"point has {len(o)} coordinates, expected {ring.nvars}")
    M = f.homogeneous_degree()
    if M is None or M < 1:
        raise ValueError("expected a nonzero homogeneous form of positive degree")
    if f.evaluate(o.coords) != field.zero:
        raise PointError(f"point {o} does not lie on the hypersurface")

    k = o.chart_index
    affine_ring = PolyRing(field, ring.nvars - 1)
    # Dehomogenize: set x_k = 1; remaining variables keep their relative order.
    dehom: dict = {}
    for exps, c in f.terms.items():
        key = exps[:k] + exps[k + 1:]
        acc = field.add(dehom.get(key, field.zero), c)
        if acc == field.zero:
            dehom.pop(key, None)
        else:
            dehom[key] = acc
    affine = Polynomial(affine_ring, dehom)

    center = tuple(c for i, c in enumerate(o.coords) if i != k)
    identity = [[field.one if i == j else field.zero for j in range(affine_ring.nvars)]
                for i in range(affine_ring.nvars)]
    shifted = affine.linear_substitute(identity, center)
    if shifted.constant_term() != field.zero:
        raise PointError("internal: nonzero constant term after recentering")

    parts = shifted.homogeneous_parts()
    q = [affine_ring.zero() for _ in range(M + 1)]
    for d, piece in parts.items():
        q[d] = piece
    return TaylorExpansion(chart_index=k, center=center, q=tuple(q))


@dataclass(frozen=True)
class TangentRestriction:
    """Restriction of selected graded pieces to the tangent hyperplane q1 = 0.

    substitution is the M x (M-1) matrix S with z = S t; pivot is the chart
    variable solved for; restricted maps degree -> restricted form in the
    M-1 parameters.
    """

    substitution: tuple
    pivot: int
    restricted: dict


def restrict_to_tangent(exp: TaylorExpansion, degrees) -> TangentRestriction:
    """Restrict q[d] for d in degrees to the hyperplane {q1 = 0}."""
    q1 = exp.q[1]
    if q1.is_zero:
        raise ClassificationError(
            "tangent restriction needs a nonsingular point (q1 is zero)")
    ring = exp.ring
    field = ring.field
    M = ring.nvars
    coeffs = [q1.coefficient(tuple(1 if j == i else 0 for j in range(M)))
              for i in range(M)]
    pivot = next(i for i, c in enumerate(coeffs) if c != field.zero)
    params = [i for i in range(M) if i != pivot]
    target = PolyRing(field, M - 1)

    # z_pivot = -(1/a_pivot) * sum of the other terms; z_i = t_col otherwise.
    rows = []
    inv_p = field.inv(coeffs[pivot])
    for i in range(M):
        row = [field.zero] * (M - 1)
        if i == pivot:
            for col, j in enumerate(params):
                row[col] = field.neg(field.mul(inv_p, coeffs[j]))
        else:
            row[params.index(i)] = field.one
        rows.append(tuple(row))

    images = []
    for i in range(M):
        terms = {}
        for col in range(M - 1):
            if rows[i][col] != field.zero:
                e = [0] * (M - 1)
                e[col] = 1
                terms[tuple(e)] = rows[i][col]
        images.append(Polynomial(target, terms))

    restricted = {}
    for d in degrees:
        if not 1 <= d <= exp.M:
            raise ValueError(f"degree {d} outside 1..{exp.M}")
        restricted[d] = exp.q[d].compose(images, target)
    return TangentRestriction(substitution=tuple(rows), pivot=pivot,
                              restricted=restricted)
