"""Matplotlib report figures written to files by the CLI report paths."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .cantor import MANDELBROT_CODIMENSION, TYPICAL_INTERSECTION_DIMENSION, MonteCarloResult
from .dimension import DimensionEstimate, partial_sum_log
from .ifs import Schedule, SimilitudeSystem
from .intervals import IntervalSet


def save_levels_figure(levels: Sequence[IntervalSet], path: str) -> None:
    fig, ax = plt.subplots(figsize=(8, 0.45 * max(4, len(levels))))
    for row, level in enumerate(levels):
        spans = [(float(lo), max(float(hi - lo), 0.0015)) for lo, hi in level]
        ax.broken_barh(spans, (len(levels) - 1 - row, 0.8), color="#1f6fb4")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.2, len(levels))
    ax.set_yticks([len(levels) - 1 - r + 0.4 for r in range(len(levels))])
    ax.set_yticklabels([f"level {r}" for r in range(len(levels))])
    ax.set_xlabel("x")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_dimension_figure(
    system: SimilitudeSystem, schedule: Schedule, estimate: DimensionEstimate, path: str
) -> None:
    lo, hi = estimate.window
    depths = list(range(lo, hi + 1))
    values = [partial_sum_log(system, schedule, k, estimate.s_hat) / k for k in depths]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(depths, values, lw=1.2, label="normalized log-sum at s_hat")
    ax.axhline(0.0, color="k", lw=0.8, ls="--")
    ax.set_xlabel("depth k")
    ax.set_ylabel("log-sum / k")
    ax.set_title(f"s_hat = {estimate.s_hat:.9g}  (residual {estimate.residual:.3g})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_montecarlo_figure(result: MonteCarloResult, path: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.hist(result.s_hat, bins=30, color="#1f6fb4", alpha=0.85)
    ax.axvline(
        TYPICAL_INTERSECTION_DIMENSION,
        color="#c0392b",
        lw=1.4,
        label=f"ln2/(3 ln3) = {TYPICAL_INTERSECTION_DIMENSION:.9g}",
    )
    ax.axvline(
        MANDELBROT_CODIMENSION,
        color="#7f8c8d",
        lw=1.4,
        ls="--",
        label=f"ln4/ln3 - 1 = {MANDELBROT_CODIMENSION:.9g}",
    )
    ax.set_xlabel("per-sample dimension")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
