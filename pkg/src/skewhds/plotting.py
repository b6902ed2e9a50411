"""Figures written next to the JSON/CSV reports."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLORS = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e"]


def write_histogram_csv(path, profile) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["value", "count"])
        w.writerows(profile.csv_rows())
    return path


def write_table_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


def plot_profiles(profiles: dict, path, title: str = "") -> Path:
    """Overlaid multiplicity curves of T{a,b}, one per labelled set."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for (label, prof), color in zip(profiles.items(), COLORS * 4):
        xs, ys = zip(*prof.csv_rows())
        ax.plot(xs, ys, marker="o", ms=3, lw=1.2, color=color, label=f"{label} [{prof.min}, {prof.max}]")
    ax.set_xlabel("triple intersection number T{a,b}")
    ax.set_ylabel("number of pairs {a,b}")
    ax.set_yscale("log")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_min_max(rows, path, title: str = "") -> Path:
    """Range bars [min, max] per set; rows are (label, min, max)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 3.2))
    for y, ((label, lo, hi), color) in enumerate(zip(rows, COLORS * 4)):
        ax.plot([lo, hi], [y, y], lw=6, color=color, solid_capstyle="butt")
        ax.text(hi + 0.5, y, f"{lo}-{hi}", va="center", fontsize=8)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([r[0] for r in rows])
    ax.invert_yaxis()
    ax.set_xlabel("T{a,b}")
    if title:
        ax.set_title(title)
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_lhs_distribution(counts: dict, m: int, path) -> Path:
    """Bar chart of s(a) + s((q-1)/2 - a(alpha+2)) values with the bound m marked."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 3.2))
    xs = sorted(counts)
    ax.bar(xs, [counts[x] for x in xs], color=COLORS[2])
    ax.axvline(m - 0.5, color="k", ls="--", lw=1)
    ax.set_xlabel("digit-sum total")
    ax.set_ylabel("residues a")
    ax.set_title(f"m = {m}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
