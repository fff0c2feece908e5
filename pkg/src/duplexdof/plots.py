"""Matplotlib rendering of DoF regions, crossover curves, and rate sweeps.

Figures are written straight to files (Agg backend); the CLI report path
drops them next to the delimited output when asked to.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .dof_search import DofRegion

MODE_STYLE = {
    "hd": dict(color="tab:blue", linestyle="-"),
    "ac": dict(color="tab:orange", linestyle="--"),
    "rc": dict(color="tab:green", linestyle="-."),
    "hd_ub": dict(color="tab:blue", linestyle=":"),
    "hd_macbc": dict(color="tab:blue", linestyle="-"),
}
MODE_LABEL = {
    "hd": "HD",
    "ac": "AC FD",
    "rc": "RC FD",
    "hd_ub": "HD upper bound",
    "hd_macbc": "HD MAC-BC",
}


def _style(mode: str) -> dict:
    return MODE_STYLE.get(mode, dict(linestyle="-"))


def plot_regions(regions: dict[str, DofRegion], path: str, title: str = "") -> None:
    """Draw each region's boundary polyline on one pair of DoF axes."""
    fig, ax = plt.subplots(figsize=(6, 5))
    for mode, region in regions.items():
        pts = region.as_array()
        closed = np.vstack([pts, pts[:1]]) if len(pts) > 1 else pts
        ax.plot(closed[:, 0], closed[:, 1], label=MODE_LABEL.get(mode, mode), **_style(mode))
    ax.set_xlabel("DoF forward")
    ax.set_ylabel("DoF reverse")
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_dof_vs_relay_size(
    curves: dict[str, tuple[list[int], list[float]]], path: str, title: str = ""
) -> None:
    """DoF against relay antenna count, one curve per mode."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for mode, (n_rs, dofs) in curves.items():
        ax.plot(n_rs, dofs, marker="o", markersize=3, label=MODE_LABEL.get(mode, mode), **_style(mode))
    ax.set_xlabel("relay antennas $N_R$")
    ax.set_ylabel("DoF")
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_dof_bars(dofs: dict[str, float], path: str, title: str = "") -> None:
    """Scalar DoF per mode as a bar chart."""
    fig, ax = plt.subplots(figsize=(5, 4))
    modes = list(dofs)
    ax.bar([MODE_LABEL.get(m, m) for m in modes], [dofs[m] for m in modes],
           color=[_style(m).get("color") for m in modes])
    ax.set_ylabel("DoF")
    if title:
        ax.set_title(title)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_rate_curves(
    curves: dict[str, dict], path: str, title: str = ""
) -> None:
    """Rate vs SNR per mode with error bars and fitted-slope annotations.

    curves[mode] holds snr_db, r_ab, r_ab_err and optionally r_ba, r_ba_err
    and slope summaries.
    """
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for mode, data in curves.items():
        snr = data["snr_db"]
        label = MODE_LABEL.get(mode, mode)
        if data.get("slope_ab") is not None:
            label += f" (slope {data['slope_ab']:.2f})"
        ax.errorbar(snr, data["r_ab"], yerr=data.get("r_ab_err"), capsize=2,
                    label=label, **_style(mode))
        if data.get("r_ba") is not None:
            ax.errorbar(snr, data["r_ba"], yerr=data.get("r_ba_err"), capsize=2,
                        alpha=0.6, **_style(mode))
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("rate (bits/channel use)")
    if title:
        ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
