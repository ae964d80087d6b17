"""PNG figures for sweep tables and multiplicity scans (matplotlib, Agg backend)."""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .simulate import axis_rows  # noqa: E402


def plot_sweep(rows, path, title=None):
    """Mean distance against tau along both noise axes, log-log."""
    labels = list(dict.fromkeys(r["sequence_label"] for r in rows))
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.8), sharey=True)
    for ax, axis, xlabel in [(axes[0], "delta", r"$\tau\Delta$"),
                             (axes[1], "gamma", r"$\tau\Gamma$")]:
        for lab in labels:
            xs, ys = axis_rows(rows, lab, axis)
            keep = [(x, y) for x, y in zip(xs, ys) if y > 0]
            if not keep:
                continue
            ax.loglog(*zip(*keep), marker="o", ms=3, label=lab,
                      ls="--" if lab == "NoDD" else "-")
        ax.set_xlabel(xlabel)
        ax.grid(True, which="both", alpha=0.3)
    axes[0].set_ylabel("mean distance")
    axes[1].legend(fontsize=7)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_scan(rows, path, x="L", y="multiplicity", series="group", title=None):
    """Step plot of a multiplicity scan, one line per series value."""
    fig, ax = plt.subplots(figsize=(6, 3.8))
    for name in dict.fromkeys(r[series] for r in rows):
        pts = sorted((r[x], r[y]) for r in rows if r[series] == name)
        ax.plot(*zip(*pts), "o-", ms=3, label=str(name))
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    ax.legend(fontsize=7)
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
