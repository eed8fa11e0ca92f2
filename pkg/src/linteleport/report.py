"""Report rendering: the summary table as CSV/JSON plus matplotlib figures.

The table has one row per (input ladder, resource ladder) pair: engine
success probability, the closed-form value, and the engine mean squared
fidelity.  Figures are rendered straight to files; no interactive backend is
ever required.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import analysis
from .qstate import flat_state
from .spectrum import HalfInt, Spectrum
from .teleport import ProtocolConfig, enumerate_outcomes, is_success

TABLE_FIELDS = ("a2x", "b2x", "P_exact", "P_formula", "F_mean")


def engine_success_probability(a2x: int, b2x: int) -> float:
    """Post-selected success probability by exhaustive enumeration."""
    sa = Spectrum(HalfInt(a2x))
    cfg = ProtocolConfig(a=sa, b=Spectrum(HalfInt(b2x)), input_state=flat_state(sa))
    outs = enumerate_outcomes(cfg)
    return float(sum(o.probability for o in outs if is_success(cfg, o.q_sum)))


def build_table(a2x_values=(1, 2, 3, 4), b2x_max: int = 9) -> list[dict]:
    rows = []
    for a2x in a2x_values:
        for b2x in range(a2x, b2x_max + 1):
            rows.append(
                {
                    "a2x": a2x,
                    "b2x": b2x,
                    "P_exact": engine_success_probability(a2x, b2x),
                    "P_formula": analysis.success_probability_formula(
                        HalfInt(a2x), HalfInt(b2x)
                    ),
                    "F_mean": analysis.mean_squared_fidelity(
                        HalfInt(a2x), HalfInt(b2x)
                    ).mean_f,
                }
            )
    return rows


def write_table_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TABLE_FIELDS)
        for r in rows:
            writer.writerow([r["a2x"], r["b2x"], repr(r["P_exact"]),
                             repr(r["P_formula"]), repr(r["F_mean"])])


def write_table_json(rows: list[dict], path: Path) -> None:
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=2)
        fh.write("\n")


def _fig_success(rows: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for a2x in sorted({r["a2x"] for r in rows}):
        sub = [r for r in rows if r["a2x"] == a2x]
        bs = [r["b2x"] / 2 for r in sub]
        ax.plot(bs, [r["P_formula"] for r in sub], "-", lw=1, alpha=0.7)
        ax.plot(bs, [r["P_exact"] for r in sub], "o", ms=4,
                label=f"input half-width {a2x}/2")
    ax.set_xlabel("resource half-width b")
    ax.set_ylabel("success probability")
    ax.set_ylim(0, 1.02)
    ax.legend(fontsize=8, frameon=False)
    ax.set_title("engine (dots) vs 1 - 2a/(2b+1) (lines)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_fidelity(path: Path, b2x_max: int = 19) -> None:
    b2xs = list(range(1, b2x_max + 1, 2))
    engine = [analysis.mean_squared_fidelity(HalfInt(1), HalfInt(b2)).mean_f
              for b2 in b2xs]
    closed = [1.0 - 1.0 / (b2 + 1) + 1.0 / (4 * (b2 + 1)) for b2 in b2xs]
    bs = [b2 / 2 for b2 in b2xs]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7.6, 3.2))
    ax1.plot(bs, closed, "-", lw=1, color="gray", label="closed form")
    ax1.plot(bs, engine, "o", ms=4, label="engine")
    ax1.set_xlabel("resource half-width b")
    ax1.set_ylabel("mean squared fidelity")
    ax1.legend(fontsize=8, frameon=False)
    ax2.loglog(bs, [1 - f for f in engine], "o-", ms=4)
    ax2.set_xlabel("resource half-width b")
    ax2.set_ylabel("1 - mean squared fidelity")
    ax2.set_title("infidelity decays like 1/b", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_counts(path: Path, n_max: int = 12) -> None:
    ns = list(range(n_max + 1))
    klm = [analysis.klm_outcome_count(n) for n in ns]
    # dimension-matched ladder scheme: two-level input, 2b+1 = n+1
    lin = [analysis.linear_outcome_count(HalfInt(1), HalfInt(n)) if n >= 1 else None
           for n in ns]
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.semilogy(ns, klm, "s-", ms=4, label="photon-counting teleporter")
    ax.semilogy(ns[1:], lin[1:], "o-", ms=4, label="sum/difference measurement")
    ax.set_xlabel("n (matched resource dimension n+1)")
    ax.set_ylabel("distinguishable outcomes")
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_limit(path: Path) -> None:
    steps = [2.0 ** -k for k in range(0, 9)]
    rows = analysis.continuous_limit_sweep(1.0, 2.0, steps)
    eps = [r[0] for r in rows]
    gaps = [r[2] for r in rows]
    bound = [e * 1.0 / (2 * 2.0 * 2.0) for e in eps]
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.loglog(eps, gaps, "o-", ms=4, label="gap to continuous value")
    ax.loglog(eps, bound, "--", lw=1, color="gray", label="linear bound")
    ax.set_xlabel("discretization step")
    ax.set_ylabel("P_disc - P_cont")
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(outdir, a2x_values=(1, 2, 3, 4), b2x_max: int = 9) -> list[Path]:
    """Write the CSV/JSON table and all figures; returns the created paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = build_table(a2x_values, b2x_max)
    created = []
    for name, writer in (("report.csv", write_table_csv),
                         ("report.json", write_table_json)):
        path = outdir / name
        writer(rows, path)
        created.append(path)
    for name, renderer in (
        ("fig_success_probability.png", lambda p: _fig_success(rows, p)),
        ("fig_mean_fidelity.png", _fig_fidelity),
        ("fig_outcome_counts.png", _fig_counts),
        ("fig_continuous_limit.png", _fig_limit),
    ):
        path = outdir / name
        renderer(path)
        created.append(path)
    return created
