"""Figure rendering for the report path.

Each function draws one figure from already-computed results and writes it
to a file next to the delimited output.  Rendering always goes through the
Agg backend so it works headless.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .curves import CurveRow
from .design import FitResult, fit_model_eta

_FIGSIZE = (7.0, 4.5)
_DPI = 150


def _new_axes(xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _save(fig, path: str | os.PathLike) -> None:
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)


def plot_sweep(rows: list[CurveRow], path: str | os.PathLike) -> None:
    """Efficiency and ledger components against the cycle count."""
    ns = [r.n for r in rows]
    fig, ax = _new_axes("cycles N", "probability")
    ax.plot(ns, [r.eta for r in rows], "-", color="tab:blue", lw=1.8, label=r"$\eta$")
    ax.plot(ns, [r.p_qi for r in rows], "--", color="tab:green", lw=1.2,
            label="interaction-free detection")
    ax.plot(ns, [r.p_abs for r in rows], ":", color="tab:red", lw=1.2, label="absorption")
    ax.axhline(0.5, color="gray", lw=0.8, ls="--", label="single-pass limit")
    ax.set_ylim(0.0, 1.0)
    ax.legend(loc="best", fontsize=9)
    _save(fig, path)


def plot_noise(points: list[tuple[int, float]], path: str | os.PathLike) -> None:
    """False-positive probability of the empty system against N."""
    ns = [n for n, _ in points]
    pw = [p for _, p in points]
    fig, ax = _new_axes("cycles N", "false-positive probability")
    positive = [p for p in pw if p > 0.0]
    if positive and min(positive) < 1e-3:
        ax.set_yscale("log")
        floor = min(positive) / 10.0
        pw = [max(p, floor) for p in pw]
    ax.plot(ns, pw, "-o", color="tab:purple", ms=3, lw=1.2)
    _save(fig, path)


def plot_fit(data: list[tuple[int, float, float]], result: FitResult,
             t_obj_fixed: float, path: str | os.PathLike) -> None:
    """Measured efficiencies with the fitted survival curve."""
    fig, ax = _new_axes("cycles N", r"$\eta$")
    ns = [n for n, _, _ in data]
    ax.errorbar(ns, [e for _, e, _ in data], yerr=[s for _, _, s in data],
                fmt="o", color="tab:blue", ms=4, capsize=3, label="data")
    grid = range(1, max(ns) + max(2, max(ns) // 4))
    ax.plot(list(grid), [fit_model_eta(n, result.t_cycl, t_obj_fixed) for n in grid],
            "-", color="tab:orange", lw=1.5,
            label=f"fit: per-cycle survival {result.t_cycl:.4f}")
    unc = result.uncertainty
    if math.isfinite(unc):
        for shift in (-unc, unc):
            t = min(max(result.t_cycl + shift, 0.5), 1.0)
            ax.plot(list(grid), [fit_model_eta(n, t, t_obj_fixed) for n in grid],
                    "-", color="tab:orange", lw=0.6, alpha=0.4)
    ax.legend(loc="best", fontsize=9)
    _save(fig, path)


def plot_compare(entries: list[tuple[str, str, float]], path: str | os.PathLike) -> None:
    """Bar chart of best efficiency per interrogation scheme."""
    labels = [f"{name}\n({detail})" for name, detail, _ in entries]
    etas = [eta for _, _, eta in entries]
    fig, ax = _new_axes("", r"best $\eta$")
    bars = ax.bar(labels, etas, color=["tab:blue", "tab:gray", "tab:green"][:len(entries)])
    ax.bar_label(bars, fmt="%.3f", fontsize=9)
    ax.set_ylim(0.0, 1.05)
    _save(fig, path)
