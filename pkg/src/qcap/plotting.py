"""Matplotlib figure rendering for the CLI report paths.

Figures are rendered to files next to the delimited output; nothing here is
needed by the numerical library.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["render_sweep_figure", "render_ellipsoid_figure"]


def render_sweep_figure(rows: list[dict], var: str, path: str) -> None:
    """Capacity and chi(a=1/2) against the swept parameter."""
    params = [r["param"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(params, [r["capacity_bits"] for r in rows], color="tab:blue",
            label="capacity")
    ax.plot(params, [r["chi_at_half"] for r in rows], color="tab:red",
            label=r"$\chi(a=1/2)$")
    ax.set_xlabel(var)
    ax.set_ylabel("bits")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_ellipsoid_figure(rows: list[dict], path: str) -> None:
    """Input sphere and output ellipsoid point clouds, optimal states marked."""
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    plain = [r for r in rows if not r["is_optimal"]]
    opt = [r for r in rows if r["is_optimal"]]
    ax.scatter([r["x"] for r in plain], [r["y"] for r in plain],
               [r["z"] for r in plain], s=4, alpha=0.25, color="gray",
               label="input sphere")
    ax.scatter([r["x_out"] for r in plain], [r["y_out"] for r in plain],
               [r["z_out"] for r in plain], s=4, alpha=0.4, color="tab:red",
               label="output ellipsoid")
    if opt:
        ax.scatter([r["x"] for r in opt], [r["y"] for r in opt],
                   [r["z"] for r in opt], s=60, color="tab:blue", marker="^",
                   label="optimal inputs")
        ax.scatter([r["x_out"] for r in opt], [r["y_out"] for r in opt],
                   [r["z_out"] for r in opt], s=60, color="darkred", marker="^")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
