"""Matplotlib figures for sweep and comparison reports (written straight to files)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_STYLE = {
    "figure.dpi": 110,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 9,
    "legend.fontsize": 7,
}


def plot_sweep(result, out_dir) -> list[Path]:
    """PSNR and SSIM against normalized threshold; thin line per image, bold mean."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    with plt.rc_context(_STYLE):
        for metric, label in (("psnr", "PSNR (dB)"), ("ssim", "SSIM")):
            fig, ax = plt.subplots(figsize=(5.5, 3.4))
            for im in result.images:
                ys = [getattr(result.reports[t, im], metric) for t in result.thresholds]
                ax.plot(result.thresholds, ys, lw=0.8, alpha=0.6, label=im)
            ax.plot(result.thresholds, result.mean_curve(metric), color="k", lw=2, label="mean")
            best = result.best_threshold(metric)
            ax.axvline(best, color="k", ls=":", lw=1)
            ax.set_xlabel("similarity threshold (0-1 scale)")
            ax.set_ylabel(label)
            ax.legend(ncol=2, frameon=False)
            fig.tight_layout()
            path = out_dir / f"sweep_{metric}.png"
            fig.savefig(path)
            plt.close(fig)
            paths.append(path)
    return paths


def plot_comparison(summary: dict, out_dir) -> list[Path]:
    """Grouped bars (mean with std error bars) for each reference mode and metric."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    refs = sorted({ref for ref, _ in summary})
    methods = list(dict.fromkeys(m for _, m in summary))
    with plt.rc_context(_STYLE):
        for ref in refs:
            fig, axes = plt.subplots(1, 3, figsize=(9, 3))
            for ax, metric in zip(axes, ("mse", "psnr", "ssim")):
                means = [summary[ref, m][metric][0] for m in methods]
                stds = [summary[ref, m][metric][1] for m in methods]
                ax.bar(np.arange(len(methods)), means, yerr=stds, capsize=3, color="0.6", edgecolor="k")
                ax.set_xticks(np.arange(len(methods)))
                ax.set_xticklabels(methods, rotation=30, ha="right")
                ax.set_title(metric.upper())
            fig.suptitle(f"{ref} reference")
            fig.tight_layout()
            path = out_dir / f"compare_{ref}.png"
            fig.savefig(path)
            plt.close(fig)
            paths.append(path)
    return paths
