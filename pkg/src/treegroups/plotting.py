"""Matplotlib report figures written next to the delimited output files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def residual_figure(rows: list[dict], path: str) -> None:
    """Log-scale residual chart for a check suite; one marker per case, tolerance as a line."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    xs = range(len(rows))
    floor = 1e-17
    residuals = [max(float(r["residual"]), floor) for r in rows]
    tolerances = [max(float(r["tolerance"]), floor) for r in rows]
    colors = ["tab:green" if r["status"] == "pass" else "tab:red" for r in rows]
    ax.scatter(xs, residuals, c=colors, s=22, zorder=3, label="residual")
    ax.plot(xs, tolerances, color="gray", lw=1, ls="--", label="tolerance")
    ax.set_yscale("log")
    ax.set_ylabel("residual")
    ax.set_xlabel("case")
    ax.set_title(f"{rows[0]['suite']} suite" if rows else "empty suite")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ball_growth_figure(spheres: list[int], path: str) -> None:
    """Sphere sizes of the Cayley ball as a bar chart."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(spheres)), spheres, color="steelblue")
    ax.set_xlabel("distance from base")
    ax.set_ylabel("sphere size")
    ax.set_title("Cayley ball growth")
    for i, v in enumerate(spheres):
        ax.text(i, v, str(v), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
