"""Empirical DoF estimation: high-SNR slope of Monte-Carlo rate curves.

The DoF of a link is the limit of rate / log2(P) as P grows, so a
least-squares fit of simulated rate against log2(P) over the top of an SNR
window estimates it directly and closes the loop between the rate engine
and the closed-form DoF expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .dof_closed_form import PowerCoupling
from .mimo_mc import McConfig, RateEstimate

DEFAULT_SNR_GRID_DB = tuple(range(40, 75, 5))
TARGET_RELATIVE_STDERR = 0.01
MAX_SAMPLE_DOUBLINGS = 5
MIN_R_SQUARED = 0.99


class FitUnstable(RuntimeError):
    """Rate-vs-log2(P) fit is not linear enough to read a slope off.

    Carries the offending estimate so callers that expect saturation (zero
    slope) can still inspect it.
    """

    def __init__(self, message: str, estimate: "SlopeEstimate"):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class SlopeEstimate:
    """Fitted high-SNR slope (the empirical DoF) with fit diagnostics."""

    slope: float
    intercept: float
    r_squared: float
    snr_window: tuple[float, float]


RateCurveBuilder = Callable[[float, McConfig], "RateEstimate | float"]


def _as_estimate(value) -> RateEstimate:
    if isinstance(value, RateEstimate):
        return value
    return RateEstimate(float(value), 0.0, 0)


def estimate_dof(
    rate_curve_builder: RateCurveBuilder,
    coupling: PowerCoupling | None,
    snr_grid_db: Sequence[float] = DEFAULT_SNR_GRID_DB,
    cfg: McConfig = McConfig(),
) -> SlopeEstimate:
    """Least-squares slope of rate vs log2(P) over the top half of the grid.

    The builder maps a linear transmit power (and sampling config) to a rate;
    any coupled powers (the coupling argument is metadata here) must be set
    to P^gamma inside the builder. Sample counts are doubled until the
    standard error at the top SNR point drops below 1% of the mean.
    Raises FitUnstable when r^2 < 0.99.
    """
    snr = np.asarray(snr_grid_db, dtype=float)
    if len(snr) < 4:
        raise ValueError("need at least 4 SNR grid points")
    if not (np.diff(snr) > 0).all():
        raise ValueError("SNR grid must be strictly increasing")

    # adapt the sample count on the noisiest (top) point first
    top_power = 10.0 ** (snr[-1] / 10.0)
    for _ in range(MAX_SAMPLE_DOUBLINGS):
        top = _as_estimate(rate_curve_builder(top_power, cfg))
        if top.n_samples == 0 or top.std_err <= TARGET_RELATIVE_STDERR * abs(top.mean_rate):
            break
        cfg = replace(cfg, n_samples=2 * cfg.n_samples)

    n_fit = max(4, (len(snr) + 1) // 2)
    fit_snr = snr[-n_fit:]
    rates = np.array(
        [_as_estimate(rate_curve_builder(10.0 ** (db / 10.0), cfg)).mean_rate for db in fit_snr]
    )
    x = fit_snr / 10.0 * math.log2(10.0)  # log2(P) for P = 10^(dB/10)
    slope, intercept = np.polyfit(x, rates, 1)
    resid = rates - (slope * x + intercept)
    ss_tot = float(np.square(rates - rates.mean()).sum())
    r_squared = 1.0 - float(np.square(resid).sum()) / ss_tot if ss_tot > 0 else 0.0
    r_squared = min(max(r_squared, 0.0), 1.0)
    estimate = SlopeEstimate(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        snr_window=(float(fit_snr[0]), float(fit_snr[-1])),
    )
    if r_squared < MIN_R_SQUARED:
        raise FitUnstable(
            f"r^2 = {r_squared:.4f} < {MIN_R_SQUARED}: SNR window too low, rate saturated, "
            "or MC noise too high",
            estimate,
        )
    return estimate
