"""Matplotlib rendering of sweep results as disturbance-information diagrams.

Figures are written next to the delimited data file (same stem, ``.png``).
The x axis is the receiver error rate; per-attacker information curves are
drawn against the optimal trade-off curve (dotted) and the sender-receiver
information (dashed).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def apply_plot_style() -> None:
    plt.rcParams.update({
        "figure.figsize": (7.0, 4.8),
        "font.size": 11,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.linewidth": 1.6,
        "legend.framealpha": 0.9,
        "savefig.dpi": 150,
    })


def figure_path(data_path: str | Path) -> Path:
    return Path(data_path).with_suffix(".png")


def render_diagram(rows: list[dict], n_eves: int, out_path: str | Path,
                   title: str | None = None) -> Path:
    """Plot information-vs-error-rate curves for one sweep.

    ``rows`` are the emitted records (dicts with d_b, i_ae_j, i_ab, i_opt
    keys); returns the written figure path.
    """
    apply_plot_style()
    xs = [r["d_b"] for r in rows]
    fig, ax = plt.subplots()
    for j in range(1, n_eves + 1):
        ax.plot(xs, [r[f"i_ae_{j}"] for r in rows], label=f"attacker {j}")
    ax.plot(xs, [r["i_opt"] for r in rows], linestyle=":", color="black",
            label="optimal curve")
    ax.plot(xs, [r["i_ab"] for r in rows], linestyle="--", color="gray",
            label="sender-receiver")
    ax.set_xlabel("receiver error rate")
    ax.set_ylabel("mutual information (bits)")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path = figure_path(out_path)
    fig.savefig(path, metadata={"Software": "eavesim"})
    plt.close(fig)
    return path
