"""Delimited and graphical output for codimension tables and census runs.

CSV files carry the exact integers and fractions; the figures are for
eyeballing only. matplotlib runs on the Agg backend so everything works
headless.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .census import CensusReport  # noqa: E402
from .codim import CodimReport  # noqa: E402


def write_codim_csv(reports: list, path) -> Path:
    """One row per ledger inequality, exact integers throughout."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["M", "check", "bound", "comparison", "required", "ok"])
        for rep in reports:
            for c in rep.ledger.checks:
                w.writerow([rep.M, c.name, c.lhs, c.comparison, c.rhs,
                            "yes" if c.ok else "NO"])
    return path


def render_codim_figure(reports: list, path) -> Path:
    """Left: every per-stratum bound against the target, by M.
    Right: the span-variation count h(t) with its candidate minima, for the
    largest M in the batch."""
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5))

    for rep in reports:
        vals = [c.lhs for c in rep.ledger.checks if c.comparison == ">="]
        ax1.scatter([rep.M] * len(vals), vals, s=12, color="tab:blue",
                    alpha=0.6, zorder=3)
    Ms = [rep.M for rep in reports]
    ax1.plot(Ms, [rep.target for rep in reports], color="tab:red",
             marker="o", label="required codimension")
    ax1.set_xlabel("M")
    ax1.set_ylabel("codimension bound")
    ax1.set_title("per-stratum bounds vs the required codimension")
    ax1.set_yscale("log")
    ax1.legend()

    rep = max(reports, key=lambda r: r.M)
    if rep.h.values:
        bs = sorted(rep.h.values)
        ax2.plot(bs, [rep.h.values[b] for b in bs], marker="o",
                 color="tab:blue", label=f"h(t), M={rep.M}")
        for b in rep.h.true_minimizers:
            ax2.scatter([b], [rep.h.values[b]], color="tab:red", zorder=3,
                        label=f"minimum at t={b}")
        ax2.set_xlabel("t")
        ax2.set_ylabel("h(t)")
        ax2.set_title("span-variation count on 3 <= t <= M-1")
        ax2.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def format_codim_text(rep: CodimReport) -> str:
    lines = [f"M = {rep.M}",
             f"  parameter space dimension : {rep.dim_P}",
             f"  gamma(M)                  : {rep.gamma}",
             f"  required codimension      : {rep.target}  (gamma + M - 1)"]
    if rep.B1 is not None:
        lines.append(f"  B1 (nonsingular points)   : min {rep.B1.minimum} "
                     f"over a = 6..{rep.M}")
    if rep.B2 is not None:
        lines.append(f"  B2 (rank >= 7 points)     : {rep.B2}")
    lines.append(f"  B3 (rank 3..6, a < M)     : min {min(rep.B3.per_a.values())}")
    lines.append(f"  B3 (rank 3..6, a = M)     : min {min(rep.B3.per_b.values())} "
                 f"over b = 1..{rep.M - 1}")
    lines.append(f"  BG (rank-3 cubic)         : {rep.BG.value} [{rep.BG.source}]")
    mins = ", ".join(str(b) for b in rep.h.true_minimizers)
    label = f"h minimum on [3, {rep.M - 1}]"
    lines.append(f"  {label:<26}: {rep.h.true_min} at t = {mins}")
    lines.append(f"  all inequalities hold     : {'yes' if rep.verdict else 'NO'}")
    bad = [c for c in rep.ledger.checks if not c.ok]
    for c in bad:
        lines.append(f"    FAILED {c.name}: {c.lhs} {c.comparison} {c.rhs}")
    return "\n".join(lines)


def write_census_csv(report: CensusReport, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["section", "key", "value"])
        for k, v in sorted(report.config.items()):
            w.writerow(["config", k, v])
        for k, v in sorted(report.counts.items()):
            w.writerow(["count", k, v])
        for k, v in sorted(report.frequencies.items()):
            w.writerow(["frequency", k, str(v)])
        for k, v in sorted(report.heuristics.items()):
            w.writerow(["heuristic", k, str(v)])
        for note in report.notes:
            w.writerow(["note", "", note])
    return path


def render_census_figure(report: CensusReport, path) -> Path:
    """Observed failure frequencies next to the p^(-codim) heuristics."""
    path = Path(path)
    keys = sorted(set(report.frequencies) | set(report.heuristics))
    obs = [float(report.frequencies.get(k, 0)) for k in keys]
    heur = [float(report.heuristics.get(k, 0)) for k in keys]
    xs = range(len(keys))
    fig, ax = plt.subplots(figsize=(max(6, 1.6 * len(keys)), 4.5))
    ax.bar([x - 0.2 for x in xs], obs, width=0.4, label="observed",
           color="tab:blue")
    ax.bar([x + 0.2 for x in xs], heur, width=0.4, label="heuristic",
           color="tab:orange")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(keys, rotation=20, ha="right")
    ax.set_ylabel("frequency")
    cfg = report.config
    ax.set_title(f"census M={cfg['M']} p={cfg['p']} "
                 f"n={cfg['sample_count']} seed={cfg['seed']}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def format_census_text(report: CensusReport) -> str:
    cfg = report.config
    lines = [f"census: M={cfg['M']} p={cfg['p']} samples={cfg['sample_count']} "
             f"seed={cfg['seed']} checks={','.join(cfg['checks'])}"]
    for k, v in sorted(report.counts.items()):
        lines.append(f"  {k:<28}: {v}")
    for k, v in sorted(report.frequencies.items()):
        heur = report.heuristics.get(k)
        extra = f"   (heuristic {heur} = {float(heur):.6g})" if heur else ""
        lines.append(f"  freq {k:<23}: {v} = {float(v):.6g}{extra}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)