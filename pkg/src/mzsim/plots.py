"""Matplotlib figure builders for sweep results, used by the report command.

The backend is whatever the caller configured; the CLI forces Agg before
importing this module so reports render headlessly.
"""

from __future__ import annotations

import math

import matplotlib.pyplot as plt
import numpy as np

from .experiments import SweepResult, variant_theory


def _groups(result: SweepResult):
    """Points grouped by alpha in grid order: [(alpha, [points...]), ...]."""
    n_phi = len(result.config.phis)
    points = result.points
    return [
        (points[i].alpha, list(points[i : i + n_phi]))
        for i in range(0, len(points), n_phi)
    ]


def _alpha_label(alpha: float | None) -> str:
    if alpha is None:
        return "simulated"
    return rf"$\alpha$ = {alpha:.4g}"


def intensity_figure(result: SweepResult):
    """Detector intensity versus phase: simulated points as symbols, the
    closed-form reference as solid lines, one series per alpha."""
    cfg = result.config
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    dense = np.linspace(min(cfg.phis), max(cfg.phis), 241)
    for alpha, pts in _groups(result):
        theory = [variant_theory(cfg.variant, alpha, p) for p in dense]
        (line,) = ax.plot(dense, theory, "-", linewidth=1.0)
        ax.plot(
            [p.phi for p in pts],
            [p.s0 for p in pts],
            "o",
            markersize=4,
            color=line.get_color(),
            label=_alpha_label(alpha),
        )
    ax.set_xlabel(r"phase $\phi$ (rad)")
    ax.set_ylabel(r"intensity $S_0$")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"{cfg.variant} ({cfg.mode})")
    ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    return fig


def visibility_figure(result: SweepResult):
    """Visibility versus alpha with the sin(alpha)^2 reference curve."""
    cfg = result.config
    if cfg.variant == "wheeler":
        raise ValueError("the visibility figure is not defined for the wheeler variant")
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    if cfg.variant == "quantum_delayed":
        dense = np.linspace(0.0, np.pi / 2.0, 181)
        ax.plot(dense, np.sin(dense) ** 2, "-", linewidth=1.0, label=r"$\sin^2\alpha$")
        ax.plot(
            [a for a, _ in result.visibility_by_alpha],
            [nu for _, nu in result.visibility_by_alpha],
            "o",
            markersize=5,
            label="simulated",
        )
        ax.set_xlabel(r"$\alpha$ (rad)")
    else:
        alpha_eff = 0.0 if cfg.variant == "open" else math.pi / 2.0
        nu = result.visibility_by_alpha[0][1]
        ax.plot([alpha_eff], [math.sin(alpha_eff) ** 2], "_", markersize=14, label="reference")
        ax.plot([alpha_eff], [nu], "o", markersize=5, label="simulated")
        ax.set_xlim(-0.2, math.pi / 2.0 + 0.2)
        ax.set_xlabel(r"effective $\alpha$ (rad)")
    ax.set_ylabel(r"visibility $\nu$")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"{cfg.variant} ({cfg.mode})")
    ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    return fig


def spectra_figure(result: SweepResult):
    """Target-spin line amplitudes versus phase, one panel per alpha: the
    low line (partner spin |0>) stays flat while the high line interferes."""
    groups = [(a, pts) for a, pts in _groups(result) if pts[0].target_lines is not None]
    if not groups:
        raise ValueError("no spectral lines recorded; spectra need the quantum_delayed variant")
    fig, axes = plt.subplots(
        len(groups), 1, figsize=(6.0, 1.8 * len(groups)), sharex=True, squeeze=False
    )
    for ax_row, (alpha, pts) in zip(axes[:, 0], groups):
        phis = [p.phi for p in pts]
        ax_row.plot(phis, [p.target_lines.line_low for p in pts], "s-",
                    markersize=3, linewidth=0.8, label="line (ancilla |0>)")
        ax_row.plot(phis, [p.target_lines.line_high for p in pts], "o-",
                    markersize=3, linewidth=0.8, label="line (ancilla |1>)")
        ax_row.set_ylabel("amplitude", fontsize=8)
        ax_row.set_title(_alpha_label(alpha), fontsize=8)
    axes[-1, 0].set_xlabel(r"phase $\phi$ (rad)")
    axes[0, 0].legend(fontsize=7, loc="upper right")
    fig.tight_layout()
    return fig
