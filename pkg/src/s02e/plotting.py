"""PNG figures for soundness and fuzz reports (Agg backend, no display)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fuzz import FuzzReport  # noqa: E402
from .soundness import SoundnessReport  # noqa: E402

_COLORS = {"holds": "tab:green", "vacuous": "tab:gray", "fails": "tab:red"}


def plot_soundness(report: SoundnessReport, path: str) -> None:
    """Grid points checked per node, coloured by outcome."""
    nodes = report.nodes
    fig, ax = plt.subplots(figsize=(max(6, 0.45 * len(nodes) + 2), 4))
    xs = range(len(nodes))
    ax.bar(xs, [max(n.checked, 0.8) for n in nodes], color=[_COLORS[n.outcome] for n in nodes])
    ax.set_yscale("log")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"{n.nodePath}\n{n.rule}" for n in nodes], rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("grid points checked")
    grid = "relative" if report.relative else "absolute"
    ax.set_title(f"u = {report.u}, {report.mode}, {grid} grid: {report.verdict}")
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in _COLORS.values()]
    ax.legend(handles, list(_COLORS), fontsize=7, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_fuzz(report: FuzzReport, path: str) -> None:
    """Outcome counts and proof-size histograms."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4))
    labels = ["accepted"] + sorted(report.rejected)
    counts = [report.accepted] + [report.rejected[k] for k in labels[1:]]
    left.bar(labels, counts, color=["tab:green"] + ["tab:orange"] * (len(labels) - 1))
    left.set_ylabel("attempts")
    left.tick_params(axis="x", labelrotation=30, labelsize=8)
    left.set_title(f"{report.count} attempts, seed {report.seed}")
    bins = range(1, max(report.sizes + [2]) + 2)
    right.hist(report.sizes, bins=bins, alpha=0.5, label="all attempts")
    right.hist(report.accepted_sizes, bins=bins, alpha=0.7, label="accepted")
    right.set_xlabel("proof nodes")
    right.legend(fontsize=8)
    right.set_title(
        f"empty end-sequents accepted: {report.empty_sequent_accepted}, "
        f"soundness failures: {len(report.soundness_failures)}",
        fontsize=9,
    )
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
