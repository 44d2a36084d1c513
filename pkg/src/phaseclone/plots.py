"""Figure rendering for sweep results.

Two report figures: both fidelities against the asymmetry angle, and the
(F_a, F_b) trade-off plane with the ideal circle and the universal
frontier.  Files are written with the Agg backend, so no display is
needed.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import cloner


def _marker_groups(records):
    """Group records by (source, epsilon, phi) for distinguishable markers."""
    groups: dict[tuple, list] = {}
    for rec in records:
        groups.setdefault((rec.source, rec.epsilon, rec.phi), []).append(rec)
    return groups


def _group_label(source: str, epsilon: float, phi: float) -> str:
    label = f"{source}, phi={phi:.3g}"
    if epsilon != 0.0:
        label += f", eps={epsilon:.3g}"
    return label


def fidelity_curves_figure(records, path) -> str:
    """Fidelities of both copies versus alpha, with the closed-form curves."""
    alphas = np.linspace(0.0, np.pi, 256)
    pairs = [cloner.theoretical_fidelities(a) for a in alphas]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(alphas, [p.f_a for p in pairs], color="tab:blue", lw=1.4, label="F_a closed form")
    ax.plot(alphas, [p.f_b for p in pairs], color="tab:red", lw=1.4, label="F_b closed form")
    for (source, eps, phi), group in sorted(_marker_groups(records).items()):
        marker = "o" if source == "ideal" else "s"
        xs = [r.alpha for r in group]
        ax.scatter(xs, [r.f_a for r in group], marker=marker, s=18, facecolors="none",
                   edgecolors="tab:blue", linewidths=0.9)
        ax.scatter(xs, [r.f_b for r in group], marker=marker, s=18, facecolors="none",
                   edgecolors="tab:red", linewidths=0.9,
                   label=_group_label(source, eps, phi))
    ax.set_xlabel("asymmetry angle alpha (rad)")
    ax.set_ylabel("fidelity")
    ax.set_xlim(0.0, np.pi)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=7, ncol=2)
    fig.savefig(os.fspath(path), dpi=150, bbox_inches="tight")
    plt.close(fig)
    return os.fspath(path)


def tradeoff_circle_figure(records, path) -> str:
    """(F_a, F_b) plane: ideal quarter circle, universal frontier, sweep points."""
    t = np.linspace(0.0, np.pi / 2.0, 256)
    universal = cloner.universal_bound_curve(256)
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    ax.plot(0.5 + 0.5 * np.cos(t), 0.5 + 0.5 * np.sin(t), color="black", lw=1.4,
            label="equatorial trade-off circle")
    ax.plot([p.f_a for p in universal], [p.f_b for p in universal], color="gray",
            lw=1.2, ls="--", label="universal frontier")
    for (source, eps, phi), group in sorted(_marker_groups(records).items()):
        marker = "o" if source == "ideal" else "s"
        ax.scatter([r.f_a for r in group], [r.f_b for r in group], marker=marker, s=20,
                   facecolors="none", edgecolors="tab:green" if source == "ideal" else "tab:orange",
                   linewidths=0.9, label=_group_label(source, eps, phi))
    ax.set_xlabel("F_a")
    ax.set_ylabel("F_b")
    ax.set_aspect("equal")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=7, loc="lower left")
    fig.savefig(os.fspath(path), dpi=150, bbox_inches="tight")
    plt.close(fig)
    return os.fspath(path)
