"""Closed-form codimension arithmetic for the bad loci in the space of forms.

Everything here is exact integer arithmetic. The bounds are lower bounds for
the codimension (inside the space of degree-M forms, or inside the slice of
forms singular at a marked point) of the loci where one of the
general-position conditions fails:

* gamma(M): the headline codimension bound for the whole bad set.
* bound_B1 / bound_B2 / bound_B3: failure of the regular-sequence
  conditions at nonsingular, rank >= 7, and rank 3..6 points.
* bound_BG: failure of the rank-3 cubic condition.
* h_poly / h_analysis: the cubic integer polynomial h(t) that controls the
  per-b estimates in the rank 3..6 analysis, with its exhaustive minimum.
* verify_all_bounds: every inequality the bound derivation asserts, as a
  named ledger.

Per-point accounting: the marked-point slice has codimension 1 per se; a
bound of c against the target gamma(M)+M-1 accounts for the M-dimensional
choice of the point and the containment f(o) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb


def gamma(M: int) -> int:
    """Codimension bound for the locus of forms failing some condition."""
    if M < 5:
        raise ValueError("gamma is defined for M >= 5")
    if M in (5, 6, 7):
        return {5: 6, 6: 9, 7: 15}[M]
    return comb(M - 1, 2) + 1


def dim_parameter_space(M: int) -> int:
    """Number of degree-M monomials in M+1 variables: binom(2M, M)."""
    if M < 1:
        raise ValueError("M must be positive")
    return comb(2 * M, M)


def target(M: int) -> int:
    """What each per-point bound must reach: gamma(M) + M - 1."""
    return gamma(M) + M - 1


@dataclass(frozen=True)
class B1Bound:
    per_a: dict  # a -> binom(M+4, a), a = 6..M
    minimum: int


def bound_B1(M: int) -> B1Bound:
    """Failure of the nonsingular-point sequence, stratified by the first
    degree a where regularity breaks."""
    if M < 6:
        raise ValueError("the nonsingular-point sequence needs M >= 6")
    per_a = {a: comb(M + 4, a) for a in range(6, M + 1)}
    return B1Bound(per_a=per_a, minimum=min(per_a.values()))


def bound_B2(M: int) -> int:
    """Failure of the rank >= 7 sequence: binom(M+5, 5) + M, the M coming
    from the point being singular at all."""
    if M < 7:
        raise ValueError("the rank >= 7 sequence needs M >= 7")
    return comb(M + 5, 5) + M


def h_poly(M: int, t: int) -> int:
    """The cubic h(t) = (t^3 + (-2M+1) t^2 + (M^2+M) t + 2) / 2 on [3, M-1]."""
    if M < 5:
        raise ValueError("h is used for M >= 5")
    if not 3 <= t <= M - 1:
        raise ValueError(f"t must lie in [3, {M - 1}]")
    num = t ** 3 + (-2 * M + 1) * t ** 2 + (M * M + M) * t + 2
    assert num % 2 == 0
    return num // 2


def h_prime_times_2(M: int, t: int) -> int:
    """2 h'(t) = 3t^2 + 2(-2M+1)t + (M^2+M); used for the bracketing checks."""
    return 3 * t * t + 2 * (-2 * M + 1) * t + M * M + M


def h_conditions_minus_grassmannian(M: int, b: int) -> int:
    """Independent-conditions count minus the dimension of the family of
    b-dimensional subspaces: b(M + (M-b+2)(M-b-1)/2) + (M-b) - (b+1)(M-1-b).

    Must equal h_poly(M, b); the equality of the two derivations is a test.
    """
    twice = 2 * b * M + b * (M - b + 2) * (M - b - 1) + 2 * (M - b) \
        - 2 * (b + 1) * (M - 1 - b)
    assert twice % 2 == 0
    return twice // 2


@dataclass(frozen=True)
class HAnalysis:
    M: int
    values: dict                # b -> h(b) for every integer b in [3, M-1]
    endpoint_values: dict       # the three closed-form candidates
    increasing_on_range: bool   # h strictly increasing on [3, M-1]
    true_min: int
    true_minimizers: tuple      # every b attaining the minimum
    endpoint_min: int           # minimum over the three candidates


def h_analysis(M: int) -> HAnalysis:
    """Exhaustive minimum of h over integer b in [3, M-1].

    The closed-form candidates are h(3) = (3/2)M(M-5) + 19,
    h(M-2) = M(M-1) - 1 and h(M-1) = M(M-1) + 1. The reported minimum is
    the exhaustive one; whether a candidate attains it is for callers (and
    tests) to inspect, not assumed here.
    """
    if M < 5:
        raise ValueError("h analysis needs M >= 5")
    values = {b: h_poly(M, b) for b in range(3, M)}
    endpoint_values = {3: values[3]}
    if M - 2 >= 3:
        endpoint_values[M - 2] = values[M - 2]
    endpoint_values[M - 1] = values[M - 1]
    true_min = min(values.values())
    minimizers = tuple(sorted(b for b, v in values.items() if v == true_min))
    seq = [values[b] for b in range(3, M)]
    increasing = all(x < y for x, y in zip(seq, seq[1:]))
    return HAnalysis(M=M, values=values, endpoint_values=endpoint_values,
                     increasing_on_range=increasing, true_min=true_min,
                     true_minimizers=minimizers,
                     endpoint_min=min(endpoint_values.values()))


def conditions_plane_conic(M: int) -> int:
    """Conditions forced by all q_i vanishing on a fixed plane conic: M^2-M+1."""
    return M * M - M + 1


@dataclass(frozen=True)
class B3Bound:
    per_a: dict        # a -> binom(M-5,2) + binom(M+1,a) + M, a = 3..M-1
    per_b: dict        # b -> assembled bound for the first-break-at-M stratum
    h_values: dict     # b -> h(b) for b >= 3 (the span-variation estimate)
    conditions_dC2: int


def bound_B3(M: int) -> B3Bound:
    """Failure of the rank 3..6 sequence.

    Strata with the first break at degree a <= M-1 get the projection
    estimate binom(M-5,2) + binom(M+1,a) + M (binom(M-5,2) is zero for
    M in {5,6}). A break at degree a = M is refined by b, the dimension of
    the span of the witness curve: b = 1 and b = 2 have bespoke counts, and
    b >= 3 contributes h(b) on top of the rank and singularity conditions.
    """
    if M < 5:
        raise ValueError("the rank 3..6 sequence needs M >= 5")
    rank_part = comb(M - 5, 2)  # comb returns 0 when M - 5 < 2
    per_a = {a: rank_part + comb(M + 1, a) + M for a in range(3, M)}
    per_b = {1: rank_part + comb(M, 2) + M + 2,
             2: rank_part + conditions_plane_conic(M) + M}
    h_values = {}
    for b in range(3, M):
        h_values[b] = h_poly(M, b)
        per_b[b] = rank_part + M + h_values[b]
    return B3Bound(per_a=per_a, per_b=per_b, h_values=h_values,
                   conditions_dC2=conditions_plane_conic(M))


@dataclass(frozen=True)
class BGBound:
    value: int
    source: str        # "assembled" (M >= 8) or "table" (M in {5,6,7})
    components: dict   # named summands when assembled
    sufficient_inequality_ok: bool | None


def bound_BG(M: int) -> BGBound:
    """Failure of the rank-3 cubic condition.

    For M >= 8 the bound assembles as M (point singular) + binom(M-2, 2)
    (rank exactly 3) + 3(M-6) (singular locus of the kernel cubic
    positive-dimensional) + 1 (the quartic h vanishing at a singular point
    of the cubic); meeting the target reduces to
    binom(M-2,2) + 3M - 17 >= binom(M-1,2), i.e. 2M >= 15. For M in
    {5, 6, 7} the bound is recorded as the target value itself, the case
    analysis being small and checked directly.
    """
    if M < 5:
        raise ValueError("the rank-3 cubic condition needs M >= 5")
    if M <= 7:
        return BGBound(value=target(M), source="table", components={},
                       sufficient_inequality_ok=None)
    components = {"point_singular": M, "rank_exactly_3": comb(M - 2, 2),
                  "cubic_sing_positive_dim": 3 * (M - 6), "h_vanishing": 1}
    value = sum(components.values())
    ok = comb(M - 2, 2) + 3 * M - 17 >= comb(M - 1, 2)
    return BGBound(value=value, source="assembled", components=components,
                   sufficient_inequality_ok=ok)


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: int
    rhs: int
    comparison: str  # ">" or ">="

    @property
    def ok(self) -> bool:
        return self.lhs > self.rhs if self.comparison == ">" else self.lhs >= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class BoundsLedger:
    M: int
    checks: tuple  # InequalityCheck items

    @property
    def verdict(self) -> bool:
        return all(c.ok for c in self.checks)

    def named(self, name: str) -> InequalityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_all_bounds(M: int) -> BoundsLedger:
    """Every inequality the codimension argument asserts, as a named ledger.

    Includes the two global strata (positive-dimensional singular locus;
    rank <= 2 or multiplicity >= 3) against gamma(M), and every per-point
    bound against gamma(M) + M - 1 in its applicable range.
    """
    g = gamma(M)
    tgt = target(M)
    checks = [
        InequalityCheck("positive_dim_singular_locus", M * (M - 2), g, ">"),
        InequalityCheck("rank_le_2_or_mult_ge_3", comb(M - 1, 2) + 1, g, ">="),
        InequalityCheck("BG", bound_BG(M).value, tgt, ">="),
    ]
    if M >= 6:
        checks.append(InequalityCheck("B1_min", bound_B1(M).minimum, tgt, ">="))
    if M >= 7:
        checks.append(InequalityCheck("B2", bound_B2(M), tgt, ">="))
    b3 = bound_B3(M)
    for a, v in sorted(b3.per_a.items()):
        checks.append(InequalityCheck(f"B3_a{a}", v, tgt, ">="))
    for b, v in sorted(b3.per_b.items()):
        checks.append(InequalityCheck(f"B3_aM_b{b}", v, tgt, ">="))
    return BoundsLedger(M=M, checks=tuple(checks))


@dataclass(frozen=True)
class CodimReport:
    M: int
    gamma: int
    dim_P: int
    target: int
    B1: B1Bound | None
    B2: int | None
    B3: B3Bound
    BG: BGBound
    h: HAnalysis
    ledger: BoundsLedger = field(repr=False)

    @property
    def verdict(self) -> bool:
        return self.ledger.verdict

    def to_dict(self) -> dict:
        def intkeys(d):
            return {str(k): v for k, v in d.items()}

        return {
            "M": self.M,
            "gamma": self.gamma,
            "dim_P": self.dim_P,
            "target": self.target,
            "B1": None if self.B1 is None else
                {"per_a": intkeys(self.B1.per_a), "min": self.B1.minimum},
            "B2": self.B2,
            "B3": {"per_a": intkeys(self.B3.per_a),
                   "per_b": intkeys(self.B3.per_b),
                   "h_values": intkeys(self.B3.h_values),
                   "conditions_dC2": self.B3.conditions_dC2},
            "BG": {"value": self.BG.value, "source": self.BG.source,
                   "components": dict(self.BG.components),
                   "sufficient_inequality_ok": self.BG.sufficient_inequality_ok},
            "h_analysis": {
                "values": intkeys(self.h.values),
                "endpoint_values": intkeys(self.h.endpoint_values),
                "increasing_on_range": self.h.increasing_on_range,
                "true_min": self.h.true_min,
                "true_minimizers": list(self.h.true_minimizers),
                "endpoint_min": self.h.endpoint_min},
            "checks": [{"name": c.name, "lhs": c.lhs, "rhs": c.rhs,
                        "comparison": c.comparison, "ok": c.ok,
                        "equality": c.equality} for c in self.ledger.checks],
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CodimReport":
        def keyints(d):
            return {int(k): v for k, v in d.items()}

        M = data["M"]
        b1 = data["B1"]
        h = data["h_analysis"]
        return cls(
            M=M, gamma=data["gamma"], dim_P=data["dim_P"],
            target=data["target"],
            B1=None if b1 is None else
                B1Bound(per_a=keyints(b1["per_a"]), minimum=b1["min"]),
            B2=data["B2"],
            B3=B3Bound(per_a=keyints(data["B3"]["per_a"]),
                       per_b=keyints(data["B3"]["per_b"]),
                       h_values=keyints(data["B3"]["h_values"]),
                       conditions_dC2=data["B3"]["conditions_dC2"]),
            BG=BGBound(value=data["BG"]["value"], source=data["BG"]["source"],
                       components=dict(data["BG"]["components"]),
                       sufficient_inequality_ok=data["BG"]["sufficient_inequality_ok"]),
            h=HAnalysis(M=M, values=keyints(h["values"]),
                        endpoint_values=keyints(h["endpoint_values"]),
                        increasing_on_range=h["increasing_on_range"],
                        true_min=h["true_min"],
                        true_minimizers=tuple(h["true_minimizers"]),
                        endpoint_min=h["endpoint_min"]),
            ledger=BoundsLedger(M=M, checks=tuple(
                InequalityCheck(name=c["name"], lhs=c["lhs"], rhs=c["rhs"],
                                comparison=c["comparison"])
                for c in data["checks"])),
        )


def codim_report(M: int) -> CodimReport:
    if M < 5:
        raise ValueError("codimension reports need M >= 5")
    return CodimReport(
        M=M, gamma=gamma(M), dim_P=dim_parameter_space(M), target=target(M),
        B1=bound_B1(M) if M >= 6 else None,
        B2=bound_B2(M) if M >= 7 else None,
        B3=bound_B3(M), BG=bound_BG(M), h=h_analysis(M),
        ledger=verify_all_bounds(M))
