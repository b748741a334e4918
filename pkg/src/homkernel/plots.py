"""Matplotlib figure rendering for the CLI report path.

Figures are written to files next to the delimited outputs; nothing
here is needed for the numerical results themselves.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .data import LABELS


def dip_figure(curves: dict, path, title="HOM dip"):
    """Plot one or more dip curves, keyed by legend label."""
    fig, ax = plt.subplots(figsize=(6, 4))
    styles = ["-", "--", ":", "-."]
    for style, (name, curve) in zip(styles * 8, curves.items()):
        ax.plot(curve.delays, curve.cc, style, label=name)
    ax.set_xlabel("relative delay dt")
    ax.set_ylabel("normalized CC")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def confusion_figure(matrix, path, title="confusion matrix"):
    """Heatmap of column-normalized classification percentages."""
    percents = np.array(
        [[matrix.percent(pred, true) for true in LABELS] for pred in LABELS]
    )
    fig, ax = plt.subplots(figsize=(4.2, 4))
    image = ax.imshow(percents, cmap="Blues", vmin=0, vmax=100)
    for i, pred in enumerate(LABELS):
        for j, true in enumerate(LABELS):
            color = "white" if percents[i, j] > 50 else "black"
            ax.text(j, i, f"{percents[i, j]:.1f}%", ha="center", va="center",
                    color=color)
    ax.set_xticks(range(len(LABELS)), LABELS)
    ax.set_yticks(range(len(LABELS)), LABELS)
    ax.set_xlabel("true classification")
    ax.set_ylabel("calculated classification")
    ax.set_title(title)
    fig.colorbar(image, ax=ax, label="percent of true class")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def score_violin_figure(scores, path, title="classification scores"):
    """Violin plot of score distributions per true class."""
    fig, ax = plt.subplots(figsize=(5, 4))
    data = [scores.by_true[label] for label in LABELS]
    present = [(label, values) for label, values in zip(LABELS, data) if values]
    if present:
        ax.violinplot([v for _, v in present], showmeans=True)
        ax.set_xticks(range(1, len(present) + 1), [l for l, _ in present])
    ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xlabel("true class")
    ax.set_ylabel("classifier score")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def trace_figure(trace, path, title="training cost"):
    """Cost (MMD) versus iteration."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(trace.iterations, trace.costs)
    ax.set_xlabel("iteration")
    ax.set_ylabel("MMD cost")
    ax.set_ylim(0, 2.05)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
