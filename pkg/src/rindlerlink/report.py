"""Static figure rendering for sweep results.

Figures are a convenience view of the CSV, written next to it as PNG
files: key-rate curves K(T) per k_so, and a K(T, k_so) surface when
both axes have at least two points. Rendering is file-only (Agg);
nothing opens a window, and disabling figures in the config removes
the matplotlib dependency from the run entirely.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .config import SweepConfig

_T_LABEL = "emission null invariant T = x + t"
_K_LABEL = "secret key rate K (bits/pulse)"


def _slice_rows(rows, config: SweepConfig):
    a0 = config.a_values[0]
    eta0 = config.eta_values[0]
    return [row for row in rows if row.a == a0 and row.eta == eta0], a0, eta0


def _wants_log_t(config: SweepConfig) -> bool:
    positive = [t for t in config.t_values if t > 0]
    if len(positive) != len(config.t_values) or not positive:
        return False
    return max(positive) / min(positive) > 30.0


def _render_curves(rows, config: SweepConfig, path: str) -> None:
    sliced, a0, eta0 = _slice_rows(rows, config)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for k_so in config.k_so_values:
        ts = [row.T for row in sliced if row.k_so == k_so]
        ks = [row.K for row in sliced if row.k_so == k_so]
        ax.plot(ts, ks, marker="o", markersize=3, label=f"k_so = {k_so:g}")
    if _wants_log_t(config):
        ax.set_xscale("log")
    ax.set_xlabel(_T_LABEL)
    ax.set_ylabel(_K_LABEL)
    ax.set_title(f"key rate vs emission time (a = {a0:g}, eta = {eta0:g})")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _render_surface(rows, config: SweepConfig, path: str) -> None:
    sliced, a0, eta0 = _slice_rows(rows, config)
    by_key = {(row.T, row.k_so): row.K for row in sliced}
    t_axis = np.asarray(config.t_values)
    k_axis = np.asarray(config.k_so_values)
    grid = np.full((len(k_axis), len(t_axis)), math.nan)
    for i, k_so in enumerate(k_axis):
        for j, t in enumerate(t_axis):
            grid[i, j] = by_key[(t, k_so)]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    masked = np.ma.masked_invalid(grid)
    mesh = ax.pcolormesh(t_axis, k_axis, masked, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=_K_LABEL)
    if _wants_log_t(config):
        ax.set_xscale("log")
    ax.set_xlabel(_T_LABEL)
    ax.set_ylabel("pulse central wavenumber k_so")
    ax.set_title(f"key-rate surface (a = {a0:g}, eta = {eta0:g})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_figures(rows, config: SweepConfig, outdir: str) -> dict:
    """Write the figures for one sweep; returns {kind: filename}."""
    written = {}
    curves = config.prefix + "_rate_curves.png"
    _render_curves(rows, config, os.path.join(outdir, curves))
    written["figure_curves"] = curves
    if len(config.t_values) > 1 and len(config.k_so_values) > 1:
        surface = config.prefix + "_rate_surface.png"
        _render_surface(rows, config, os.path.join(outdir, surface))
        written["figure_surface"] = surface
    return written
