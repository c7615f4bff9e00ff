"""Command-line surface.

Subcommands: classify, check-membership, codim-tables, census. Exit codes
are a stable contract: 0 verified / tables OK, 1 violation found,
2 inconclusive (a budget ran out), 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .blowup import blow_up_rank3_point
from .census import (DEFAULT_ENUM_BUDGET, CensusConfig, CensusReport,
                     check_no_planes_M5, check_no_singular_line_in_3space_M5,
                     enumerate_points, run_census)
from .codim import codim_report
from .errors import (BudgetExceededError, ClassificationError, FieldError,
                     ParseError)
from .expansion import ProjectivePoint
from .fppoints import projective_point_count, singular_points_array
from .groebner import DEFAULT_BUDGET
from .regularity import check_regularity
from .singularity import (QUADRATIC, check_condition_g, classify_point,
                          singular_locus_dimension)
from .textform import load_hypersurface


class CLIError(Exception):
    """Usage-level problem; maps to exit code 3."""


VERIFIED = "ConditionsVerified"
VIOLATED = "ConditionViolated"
INCONCLUSIVE = "Inconclusive"

_EXIT = {VERIFIED: 0, VIOLATED: 1, INCONCLUSIVE: 2}


def parse_point(text: str, field_obj, nvars: int) -> ProjectivePoint:
    """'1:-1:0:0:0:0' or comma-separated; Q coordinates may be fractions."""
    parts = text.replace(",", ":").split(":")
    if len(parts) != nvars:
        raise CLIError(f"point {text!r} has {len(parts)} coordinates, "
                       f"expected {nvars}")
    try:
        coords = [Fraction(s.strip()) for s in parts]
    except (ValueError, ZeroDivisionError) as e:
        raise CLIError(f"bad point {text!r}: {e}")
    if field_obj.kind == "Fp":
        coords = [int(c) if c.denominator == 1 else
                  c.numerator * pow(c.denominator, -1, field_obj.p)
                  for c in coords]
    try:
        return ProjectivePoint.of(field_obj, coords)
    except (ValueError, FieldError) as e:
        raise CLIError(f"bad point {text!r}: {e}")


def _point_json(o: ProjectivePoint) -> list:
    return [str(c) for c in o.coords]


def _check_point(f, o, budget) -> dict:
    """Classification plus the applicable conditions at one point."""
    rep = classify_point(f, o)
    out = {"point": _point_json(o), "kind": rep.kind.describe(),
           "condition_g": None, "regularity": None, "problems": []}
    kind = rep.kind
    if kind.kind == QUADRATIC and kind.rank is not None and kind.rank <= 2:
        out["problems"].append(f"quadratic rank {kind.rank} <= 2")
        return out
    if kind.kind == "higher_multiplicity":
        out["problems"].append(f"multiplicity {kind.multiplicity} >= 3")
        return out
    if kind.kind == QUADRATIC and kind.rank == 3:
        g = check_condition_g(f, o, budget=budget)
        out["condition_g"] = g.verdict
        if not g.verdict:
            out["problems"].append(
                f"condition (G) fails: restricted cubic singular locus has "
                f"projective dimension {g.cubic_sing_dim}"
                + ("" if g.h_avoids_singularities
                   else "; h vanishes at a singular point of the cubic"))
    reg = check_regularity(rep.expansion, budget=budget)
    out["regularity"] = {"condition": reg.condition,
                         "expected_dim": reg.expected_dim,
                         "actual_dim": reg.actual_dim, "ok": reg.ok}
    if not reg.ok:
        out["problems"].append(
            f"{reg.condition} fails: dimension {reg.actual_dim}, "
            f"expected {reg.expected_dim}")
    return out


@dataclass
class MembershipReport:
    """Everything checked for one input form, with an overall verdict.

    The verdict speaks only for the computations listed: over Q the
    rational singular points are not enumerable, so only user-supplied
    points are checked and a note says so.
    """

    verdict: str
    M: int
    field_spec: str
    sing_locus_dim: int | None
    points: list = field(default_factory=list)
    witness: dict | None = None
    plane_scan: dict | None = None
    line_scan: dict | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "M": self.M,
                "field": self.field_spec,
                "sing_locus_dim": self.sing_locus_dim,
                "points": self.points, "witness": self.witness,
                "plane_scan": self.plane_scan, "line_scan": self.line_scan,
                "notes": self.notes}

    @classmethod
    def from_dict(cls, data: dict) -> "MembershipReport":
        return cls(verdict=data["verdict"], M=data["M"],
                   field_spec=data["field"],
                   sing_locus_dim=data["sing_locus_dim"],
                   points=list(data["points"]), witness=data["witness"],
                   plane_scan=data["plane_scan"], line_scan=data["line_scan"],
                   notes=list(data["notes"]))

    def render(self) -> str:
        lines = [f"M = {self.M}, field = {self.field_spec}",
                 f"singular locus dimension (projective): "
                 f"{'not computed' if self.sing_locus_dim is None else self.sing_locus_dim}"]
        for entry in self.points:
            lines.append(f"  point ({':'.join(entry['point'])}): {entry['kind']}")
            if entry.get("condition_g") is not None:
                lines.append(f"    condition (G): "
                             f"{'holds' if entry['condition_g'] else 'FAILS'}")
            reg = entry.get("regularity")
            if reg:
                lines.append(
                    f"    {reg['condition']}: dimension {reg['actual_dim']} "
                    f"(expected {reg['expected_dim']}) "
                    f"{'ok' if reg['ok'] else 'FAILS'}")
            for p in entry.get("problems", []):
                lines.append(f"    problem: {p}")
        for label, scan in (("plane scan", self.plane_scan),
                            ("line-in-3-space scan", self.line_scan)):
            if scan is not None:
                state = "clean" if scan["ok"] else f"WITNESS {scan['witness']}"
                lines.append(f"  {label} over F_{scan['p']} "
                             f"({scan['scanned']} subspaces): {state} "
                             f"[{scan['label']}]")
        for n in self.notes:
            lines.append(f"  note: {n}")
        if self.witness:
            lines.append(f"  witness: {json.dumps(self.witness, sort_keys=True)}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _scan_dict(v) -> dict:
    return {"ok": v.ok, "p": v.p, "scanned": v.scanned,
            "witness": v.witness, "label": v.label}


def check_membership(hs, user_points, *, all_fp_points: bool,
                     check_planes: bool, check_lines: bool,
                     budget_groebner: int, budget_enum: int) -> MembershipReport:
    f = hs.f
    if hs.M < 5:
        raise CLIError(f"membership conditions are defined for M >= 5, "
                       f"got M = {hs.M}")
    from .fields import field_spec
    rep = MembershipReport(verdict=VERIFIED, M=hs.M,
                           field_spec=field_spec(hs.field),
                           sing_locus_dim=None)
    inconclusive = False
    witness = None

    try:
        dim = singular_locus_dimension(f, budget=budget_groebner)
        rep.sing_locus_dim = dim.projective_dim
        if dim.projective_dim >= 1:
            witness = {"condition": "singular_locus_dimension",
                       "point": None,
                       "data": {"projective_dim": dim.projective_dim}}
    except BudgetExceededError as e:
        inconclusive = True
        rep.notes.append(f"singular locus dimension not computed: {e}")

    # Points to examine: every F_p-rational singular point (enumerated),
    # plus whatever the user supplied. Over Q enumeration is impossible.
    points = []
    seen = set()
    if hs.field.kind == "Fp" and witness is None:
        n_all = projective_point_count(hs.field.p, hs.M)
        if n_all <= budget_enum:
            for row in singular_points_array(f):
                o = ProjectivePoint.of(hs.field, [int(x) for x in row])
                points.append(o)
                seen.add(o.coords)
            rep.notes.append(
                f"all {n_all} points of P^{hs.M}(F_{hs.field.p}) scanned; "
                f"{len(points)} singular")
        else:
            inconclusive = True
            rep.notes.append(
                f"point enumeration skipped: |P^{hs.M}(F_{hs.field.p})| = "
                f"{n_all} exceeds the budget {budget_enum}")
    elif hs.field.kind != "Fp":
        rep.notes.append("over Q only user-supplied points are checked")
    for o in user_points:
        if o.coords not in seen:
            points.append(o)
            seen.add(o.coords)

    if witness is None:
        for o in points:
            try:
                entry = _check_point(f, o, budget_groebner)
            except BudgetExceededError as e:
                inconclusive = True
                rep.points.append({"point": _point_json(o),
                                   "kind": "not classified",
                                   "problems": [f"budget: {e}"]})
                continue
            rep.points.append(entry)
            if entry["problems"] and witness is None:
                witness = {"condition": entry["problems"][0],
                           "point": entry["point"],
                           "data": {"kind": entry["kind"],
                                    "problems": entry["problems"]}}

    if check_planes or check_lines:
        if hs.field.kind != "Fp" or hs.M != 5:
            raise CLIError("plane and line scans need M = 5 over a prime field")
    if check_planes and witness is None:
        try:
            v = check_no_planes_M5(f, budget=budget_enum)
            rep.plane_scan = _scan_dict(v)
            if not v.ok:
                witness = {"condition": "plane_contained_in_hypersurface",
                           "point": None, "data": {"plane_rows": v.witness}}
        except BudgetExceededError as e:
            inconclusive = True
            rep.notes.append(f"plane scan skipped: {e}")
    if check_lines and witness is None:
        try:
            v = check_no_singular_line_in_3space_M5(f, budget=budget_enum)
            rep.line_scan = _scan_dict(v)
            if not v.ok:
                witness = {"condition": "singular_line_in_3space_section",
                           "point": None,
                           "data": {"space_rows": v.witness[0],
                                    "line_through": v.witness[1:]}}
        except BudgetExceededError as e:
            inconclusive = True
            rep.notes.append(f"line scan skipped: {e}")

    if witness is not None:
        rep.verdict = VIOLATED
        rep.witness = witness
    elif inconclusive:
        rep.verdict = INCONCLUSIVE
    else:
        rep.verdict = VERIFIED
    return rep


# -- subcommand drivers ------------------------------------------------------


def cmd_classify(args) -> int:
    hs = load_hypersurface(args.file)
    f = hs.f
    points = [parse_point(t, hs.field, hs.M + 1) for t in args.point or []]
    for o in points:
        if not f.evaluate(o.coords) == f.ring.field.zero:
            raise CLIError(f"point ({':'.join(_point_json(o))}) does not lie "
                           "on the hypersurface")
    entries = []
    summary = {}
    if args.all_Fp_points:
        if hs.field.kind != "Fp":
            raise CLIError("--all-Fp-points needs a prime-field input")
        n_all = projective_point_count(hs.field.p, hs.M)
        if n_all > args.budget_enum:
            raise CLIError(f"|P^{hs.M}(F_{hs.field.p})| = {n_all} exceeds "
                           f"--budget-enum {args.budget_enum}")
        on_f = enumerate_points(f, budget=args.budget_enum)
        sing = singular_points_array(f)
        summary = {"points_on_hypersurface": len(on_f),
                   "singular": int(sing.shape[0]),
                   "nonsingular": len(on_f) - int(sing.shape[0])}
        seen = set(o.coords for o in points)
        for row in sing:
            o = ProjectivePoint.of(hs.field, [int(x) for x in row])
            if o.coords not in seen:
                points.append(o)

    try:
        for o in points:
            entries.append(_check_point(f, o, args.budget_groebner))
    except BudgetExceededError as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return 2

    if args.json:
        print(json.dumps({"M": hs.M, "summary": summary, "points": entries},
                         sort_keys=True, indent=2))
    else:
        if summary:
            print(f"{summary['points_on_hypersurface']} points on the "
                  f"hypersurface: {summary['nonsingular']} nonsingular, "
                  f"{summary['singular']} singular")
        for e in entries:
            print(f"({':'.join(e['point'])}): {e['kind']}")
            if e.get("condition_g") is not None:
                print(f"  condition (G): {'holds' if e['condition_g'] else 'FAILS'}")
            if e.get("regularity"):
                r = e["regularity"]
                print(f"  {r['condition']}: dimension {r['actual_dim']} "
                      f"(expected {r['expected_dim']}) "
                      f"{'ok' if r['ok'] else 'FAILS'}")
            for p in e.get("problems", []):
                print(f"  problem: {p}")
    return 0


def cmd_check_membership(args) -> int:
    hs = load_hypersurface(args.file)
    points = [parse_point(t, hs.field, hs.M + 1) for t in args.point or []]
    rep = check_membership(hs, points, all_fp_points=args.all_Fp_points,
                           check_planes=args.check_planes,
                           check_lines=args.check_lines,
                           budget_groebner=args.budget_groebner,
                           budget_enum=args.budget_enum)
    if args.json:
        print(json.dumps(rep.to_dict(), sort_keys=True, indent=2))
    else:
        print(rep.render())
    return _EXIT[rep.verdict]


def cmd_codim_tables(args) -> int:
    if args.M < 5:
        raise CLIError(f"codimension tables need M >= 5, got {args.M}")
    M_hi = args.M_max if args.M_max is not None else args.M
    if M_hi < args.M:
        raise CLIError("--M-max must be >= --M")
    reports = [codim_report(M) for M in range(args.M, M_hi + 1)]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True,
                         indent=2))
    else:
        from .reporting import format_codim_text
        print("\n\n".join(format_codim_text(r) for r in reports))
    if args.outdir:
        from .reporting import render_codim_figure, write_codim_csv
        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        tag = f"M{args.M}" if M_hi == args.M else f"M{args.M}-{M_hi}"
        csv_path = write_codim_csv(reports, outdir / f"codim_{tag}.csv")
        png_path = render_codim_figure(reports, outdir / f"codim_{tag}.png")
        print(f"wrote {csv_path} and {png_path}", file=sys.stderr)
    return 0 if all(r.verdict for r in reports) else 1


def cmd_census(args) -> int:
    checks = []
    for chunk in args.checks or []:
        checks.extend(c.strip() for c in chunk.split(",") if c.strip())
    if args.checks is None:
        checks = ["classify"]
    try:
        config = CensusConfig(M=args.M, p=args.p, sample_count=args.samples,
                              seed=args.seed, checks=frozenset(checks),
                              groebner_budget=args.budget_groebner)
    except ValueError as e:
        raise CLIError(str(e))
    rep = run_census(config)
    if args.json:
        print(json.dumps(rep.to_dict(), sort_keys=True, indent=2))
    else:
        from .reporting import format_census_text
        print(format_census_text(rep))
    if args.outdir:
        from .reporting import render_census_figure, write_census_csv
        outdir = Path(args.outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        tag = f"M{args.M}_p{args.p}_n{args.samples}_{args.seed}"
        csv_path = write_census_csv(rep, outdir / f"census_{tag}.csv")
        png_path = render_census_figure(rep, outdir / f"census_{tag}.png")
        print(f"wrote {csv_path} and {png_path}", file=sys.stderr)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit code 2; usage problems are 3 here.
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rigidcheck",
                     description="Exact checks for the general-position "
                                 "conditions of degree-M hypersurfaces in P^M.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def add_budgets(p):
        p.add_argument("--budget-groebner", type=int, default=DEFAULT_BUDGET,
                       help="Groebner step budget (default %(default)s)")
        p.add_argument("--budget-enum", type=int, default=DEFAULT_ENUM_BUDGET,
                       help="enumeration budget (default %(default)s)")

    p = sub.add_parser("classify", help="classify points of a hypersurface")
    p.add_argument("file", help="input file: header 'M=<n> field=Q|Fp:<p>', "
                                "then the polynomial")
    p.add_argument("--point", action="append",
                   help="projective point a0:a1:...:aM (repeatable)")
    p.add_argument("--all-Fp-points", action="store_true",
                   help="enumerate P^M(F_p): count nonsingular points and "
                        "classify every singular one")
    p.add_argument("--json", action="store_true")
    add_budgets(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-membership",
                       help="check the general-position conditions")
    p.add_argument("file")
    p.add_argument("--point", action="append",
                   help="additional point to check (repeatable)")
    p.add_argument("--all-Fp-points", action="store_true",
                   help="(default over F_p) enumerate all rational points")
    p.add_argument("--check-planes", action="store_true",
                   help="M = 5 over F_p: scan all 2-planes for containment")
    p.add_argument("--check-lines", action="store_true",
                   help="M = 5 over F_p: scan 3-space sections for singular lines")
    p.add_argument("--json", action="store_true")
    add_budgets(p)
    p.set_defaults(func=cmd_check_membership)

    p = sub.add_parser("codim-tables",
                       help="closed-form codimension bounds and inequalities")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--M-max", type=int, default=None,
                   help="extend the table over M..M_MAX")
    p.add_argument("--json", action="store_true")
    p.add_argument("--outdir", help="write CSV and PNG here")
    p.set_defaults(func=cmd_codim_tables)

    p = sub.add_parser("census", help="random sampling over F_p")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", default="0")
    p.add_argument("--checks", action="append",
                   help="comma-separated from classify, condition_g, "
                        "regularity (repeatable)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--outdir", help="write CSV and PNG here")
    p.add_argument("--budget-groebner", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ParseError, FieldError, ClassificationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except BudgetExceededError as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())