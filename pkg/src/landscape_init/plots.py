"""Figure rendering for the CLI reports.

Every report that writes a CSV also renders a PNG next to it; figures
go through the Agg backend so the CLI works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .rmt import PainleveSolution, semicircle_density, tracy_widom_f1  # noqa: E402


def plot_experiment(agg_rows: list[dict], path: str) -> str:
    names = [r["initializer"] for r in agg_rows]
    x = np.arange(len(names))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.bar(x - 0.2, [r["mean_accuracy"] for r in agg_rows], 0.4, label="mean")
    ax1.bar(x + 0.2, [r["max_accuracy"] for r in agg_rows], 0.4, label="max")
    ax1.set_xticks(x, names, rotation=20)
    ax1.set_ylabel("accuracy")
    ax1.set_ylim(0, 1.05)
    ax1.legend(frameon=False)
    ax2.bar(x - 0.2, [r["mean_epochs"] for r in agg_rows], 0.4, label="mean")
    ax2.bar(x + 0.2, [r["max_epochs"] for r in agg_rows], 0.4, label="max")
    ax2.set_xticks(x, names, rotation=20)
    ax2.set_ylabel("epochs")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_sweep(agg_rows: list[dict], path: str) -> str:
    names = sorted({r["initializer"] for r in agg_rows})
    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    for name in names:
        rows = sorted((r for r in agg_rows if r["initializer"] == name),
                      key=lambda r: r["class_count"])
        ax.plot([r["class_count"] for r in rows],
                [r["mean_accuracy"] for r in rows], marker="o", label=name)
    ax.set_xlabel("number of classes")
    ax.set_ylabel("mean accuracy")
    ax.set_ylim(0, 1.05)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_phase(rows: list[dict], path: str) -> str:
    ns = sorted({r["n"] for r in rows})
    ratios = sorted({r["ratio"] for r in rows})
    grid = np.full((len(ns), len(ratios)), np.nan)
    lookup = {(r["n"], r["ratio"]): r["log_mean_count"] for r in rows}
    for i, n in enumerate(ns):
        for j, ratio in enumerate(ratios):
            grid[i, j] = lookup[(n, ratio)]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 3.6))
    im = ax1.imshow(grid, aspect="auto", origin="lower", cmap="coolwarm",
                    extent=(min(ratios), max(ratios), 0, len(ns)),
                    vmin=-np.nanmax(np.abs(grid)), vmax=np.nanmax(np.abs(grid)))
    ax1.set_yticks(np.arange(len(ns)) + 0.5, [str(n) for n in ns])
    ax1.set_xlabel("mu / mu_c")
    ax1.set_ylabel("dimension n")
    fig.colorbar(im, ax=ax1, label="log mean minima")
    for i, n in enumerate(ns):
        ax2.plot(ratios, grid[i], label=f"n={n}")
    ax2.axhline(0.0, color="k", lw=0.6)
    ax2.set_xlabel("mu / mu_c")
    ax2.set_ylabel("log mean minima")
    ax2.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_table(sol: PainleveSolution, path: str) -> str:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    ax1.semilogy(sol.grid, sol.q)
    ax1.set_xlabel("t")
    ax1.set_ylabel("q(t)")
    ax2.plot(sol.grid, np.exp(sol.ln_f1))
    ax2.set_xlabel("t")
    ax2.set_ylabel("F1(t)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_semicircle_check(eigs_scaled: np.ndarray, path: str) -> str:
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.hist(eigs_scaled, bins=80, density=True, alpha=0.6, label="samples")
    xs = np.linspace(-1.2, 1.2, 400)
    ax.plot(xs, semicircle_density(xs), "k", label="semicircle")
    ax.set_xlabel("eigenvalue / sqrt(2N)")
    ax.set_ylabel("density")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_edge_check(sol: PainleveSolution, t_samples: np.ndarray, path: str) -> str:
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ts = np.sort(t_samples)
    ax.step(ts, np.arange(1, len(ts) + 1) / len(ts), where="post",
            label="scaled max eigenvalues")
    inside = np.clip(ts, sol.t_min, sol.t_max)
    ax.plot(ts, tracy_widom_f1(sol, inside), "k", label="F1")
    ax.set_xlabel("t")
    ax.set_ylabel("CDF")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
