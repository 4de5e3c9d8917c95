"""Static figures written next to the CSV output.

Uses ``matplotlib.figure.Figure`` directly so no pyplot state or GUI
backend is involved.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .ballots import Decision
from .dynamics import GameResult
from .experiment import SweepResult, find_optimum

# PNG metadata without the matplotlib version keeps reruns byte-stable.
_PNG_METADATA = {"Software": None}


def plot_sweep(sweep: SweepResult, path, title: str | None = None) -> Path:
    """Heat map of mean survival over (n0, altruist count).

    The best cell is starred and plateau cells are dotted.
    """
    surface = sweep.surface()
    a_vals, s_vals = sweep.altruist_counts, sweep.support_sizes
    best, plateau = find_optimum(sweep)

    fig = Figure(figsize=(6.4, 5.2))
    ax = fig.add_subplot()
    mesh = ax.imshow(surface, origin="lower", aspect="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="mean surviving fraction")
    ax.set_xticks(range(len(s_vals)), [str(s) for s in s_vals])
    ax.set_yticks(range(len(a_vals)), [str(a) for a in a_vals])
    ax.set_xlabel("support screen n0")
    ax.set_ylabel("altruists")

    px = [s_vals.index(c.support_size) for c in plateau]
    py = [a_vals.index(c.altruist_count) for c in plateau]
    ax.scatter(px, py, s=18, c="white", edgecolors="k", linewidths=0.5, label="within 1 s.e. of best")
    ax.scatter(
        [s_vals.index(best.support_size)], [a_vals.index(best.altruist_count)],
        s=140, c="red", marker="*", label="best",
    )
    ax.legend(loc="upper center", bbox_to_anchor=(0.5, -0.13), ncol=2, fontsize="small", frameon=False)

    env = sweep.base_config.env
    ax.set_title(title or f"mu={env.mu:g}, sigma={env.sigma:g}, K={sweep.base_config.initial_capital:g}, "
                          f"T={sweep.base_config.steps}, reps={sweep.replications}")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    return Path(path)


def plot_trace(result: GameResult, path) -> Path:
    if result.trace is None:
        raise ValueError("game result has no trace")
    steps = np.array([r.step_index for r in result.trace])
    alive = np.array([r.alive_after for r in result.trace])
    accepted = np.array([r.decision is Decision.ACCEPTED for r in result.trace])

    fig = Figure(figsize=(6.4, 3.6))
    ax = fig.add_subplot()
    ax.step(steps, alive, where="post", color="k", lw=1.2, label="alive")
    ax.plot(steps, np.cumsum(accepted), color="tab:blue", lw=0.8, alpha=0.7, label="accepted so far")
    ax.set_xlabel("step")
    ax.set_ylabel("count")
    ax.set_ylim(bottom=0)
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    return Path(path)
