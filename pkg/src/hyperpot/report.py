"""Figure rendering for the CLI report paths.

Each helper takes plain arrays already computed by the CLI and writes a PNG
next to the delimited output.  Rendering is optional and never touches the
numeric pipelines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_potential_figure",
    "save_wavefunction_figure",
    "save_scatter_figure",
    "save_phase_diagram_figure",
]


def _new_axes(xlabel, ylabel):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_potential_figure(z, U, path, energies=()):
    fig, ax = _new_axes("z", "U")
    ax.plot(z, U, lw=1.5)
    for e in energies:
        ax.axhline(e, color="crimson", lw=0.8, alpha=0.7)
    _finish(fig, path)


def save_wavefunction_figure(z, psi_re, psi_im, path):
    fig, ax = _new_axes("z", "psi")
    ax.plot(z, psi_re, lw=1.2, label="Re")
    if np.any(np.abs(psi_im) > 0):
        ax.plot(z, psi_im, lw=1.2, label="Im")
    ax.legend(frameon=False)
    _finish(fig, path)


def save_scatter_figure(energies, P, path):
    fig, ax = _new_axes("energy", "reflection probability")
    ax.plot(energies, P, lw=1.5)
    ax.set_ylim(-0.02, 1.02)
    _finish(fig, path)


def save_phase_diagram_figure(qs, rs, region_codes, path, ylabel="r"):
    fig, ax = _new_axes("q", ylabel)
    colors = {"green": "#2a9d2a", "blue": "#2a6fd4", "none": "#e8e8e8"}
    for code, col in colors.items():
        mask = region_codes == code
        if mask.any():
            ax.scatter(qs[mask], rs[mask], c=col, s=4, marker="s", label=code)
    ax.legend(frameon=False, markerscale=3, loc="upper left")
    _finish(fig, path)
