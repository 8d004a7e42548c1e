"""Matplotlib renderers for the CLI report path.

Plots are drawn straight from the result rows the CLI just wrote to CSV;
nothing is recomputed. Vector formats (.svg/.pdf) work out of the box.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_figure"]


def _group(rows: list[dict], key: str) -> dict:
    out: dict = {}
    for row in rows:
        out.setdefault(row[key], []).append(row)
    return out


def render_ber(rows: list[dict], path: str) -> None:
    """BER vs N, one log-y curve per bandwidth exponent."""
    fig, ax = plt.subplots(figsize=(6, 4.2))
    for eps, pts in sorted(_group(rows, "epsilon").items()):
        pts = sorted(pts, key=lambda r: r["N"])
        ax.semilogy(
            [p["N"] for p in pts],
            [max(p["ber"], 0.5 / p["n_bits"]) for p in pts],
            marker="o",
            label=f"eps={eps:g}",
        )
    ax.set_xscale("log", base=2)
    ax.set_xlabel("receive antennas N")
    ax.set_ylabel("bit error rate")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_rate(rows: list[dict], path: str) -> None:
    """Transmitted EM rate (bits per coherence block) vs N per exponent."""
    fig, ax = plt.subplots(figsize=(6, 4.2))
    for eps, pts in sorted(_group(rows, "epsilon").items()):
        pts = sorted(pts, key=lambda r: r["N"])
        ax.loglog(
            [p["N"] for p in pts],
            [p["rate_bits_per_block"] for p in pts],
            marker="s",
            label=f"eps={eps:g}",
        )
    ax.set_xlabel("receive antennas N")
    ax.set_ylabel("rate (bits / coherence block)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_threshold(rows: list[dict], path: str) -> None:
    """Genie and pilot rates vs bandwidth with one star per threshold row."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    points = [r for r in rows if not r["is_threshold"]]
    stars = [r for r in rows if r["is_threshold"]]
    for n, pts in sorted(_group(points, "N").items()):
        pts = sorted(pts, key=lambda r: r["bandwidth_hz"])
        bw = [p["bandwidth_hz"] / 1e6 for p in pts]
        ax.plot(bw, [p["genie_rate_bps"] / 1e6 for p in pts], "--", label=f"genie N={n}")
        ax.plot(bw, [p["pilot_rate_bps"] / 1e6 for p in pts], "-", label=f"pilot N={n}")
    for s in stars:
        ax.plot(
            s["bandwidth_hz"] / 1e6,
            s["pilot_rate_bps"] / 1e6,
            marker="*",
            color="green",
            markersize=14,
            linestyle="none",
        )
    ax.set_xlabel("bandwidth (MHz)")
    ax.set_ylabel("rate (Mbit/s)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


_RENDERERS = {
    "ber": render_ber,
    "rate": render_rate,
    "threshold": render_threshold,
}


def render_figure(kind: str, rows: list[dict], path: str) -> None:
    if kind not in _RENDERERS:
        raise ValueError(f"unknown figure kind {kind!r}")
    if not rows:
        raise ValueError("no rows to plot")
    _RENDERERS[kind](rows, path)
