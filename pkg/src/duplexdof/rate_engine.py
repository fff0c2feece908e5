"""Scenario-level ergodic achievable rates, HD and FD, at finite SNR.

Composes the Monte-Carlo log-det estimator into the two-way, two-hop and
two-way two-hop rate expressions, optimizing time shares, relay splits and
relay power on grids with common random numbers: every candidate parameter
re-uses the same seeded channel draws so comparisons are MC-noise stable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core_model import (
    DuplexMode,
    LinkBudget,
    SiParams,
    antenna_allocation,
    residual_si_power,
    sinr,
)
from .dof_closed_form import ScenarioSpec, relay_tx_antennas
from .mimo_mc import (
    McConfig,
    RateEstimate,
    derive_seed,
    ergodic_rate_curve,
    mc_expectation,
    sample_channel_batch,
)

TAU_GRID_POINTS = 201
RELAY_POWER_POINTS_PER_DECADE = 61

# stream labels so each link in a scenario gets an independent RNG stream
_STREAM_AB, _STREAM_BA, _STREAM_AR, _STREAM_RB, _STREAM_BR, _STREAM_RA, _STREAM_MAC = range(7)


@dataclass(frozen=True)
class ScenarioRates:
    """Achievable rate pair of one scenario run with the parameters that won."""

    r_ab: RateEstimate
    r_ba: RateEstimate | None
    params_used: dict
    mode: DuplexMode


def _link_cfg(cfg: McConfig, stream: int) -> McConfig:
    return replace(cfg, seed=derive_seed(cfg.seed, stream))


def _link_rate(n_rx: int, n_tx: int, gamma: float, cfg: McConfig, stream: int) -> RateEstimate:
    from .mimo_mc import ergodic_rate

    return ergodic_rate(n_rx, n_tx, gamma, _link_cfg(cfg, stream))


def _scale(est: RateEstimate, factor: float) -> RateEstimate:
    return RateEstimate(factor * est.mean_rate, factor * est.std_err, est.n_samples)


def relay_power_grid(p_max: float) -> np.ndarray:
    """Log-spaced relay power candidates from 1 up to p_max (inclusive)."""
    if p_max <= 1.0:
        return np.array([p_max])
    decades = np.log10(p_max)
    count = max(2, int(round(RELAY_POWER_POINTS_PER_DECADE * decades)) + 1)
    return np.logspace(0.0, decades, count)


def twoway_rates(
    spec: ScenarioSpec,
    mode: DuplexMode,
    budget_a: LinkBudget,
    budget_b: LinkBudget,
    si: SiParams,
    cfg: McConfig,
    tau: float = 0.5,
    rx_a: int | None = None,
    rx_b: int | None = None,
) -> ScenarioRates:
    """Two-way achievable rates: HD time-shares tau, FD runs both full time.

    FD folds each receiver's residual SI of its own transmit power into the
    SINR before the channel expectation is taken.
    """
    if spec.kind != "two_way":
        raise ValueError("twoway_rates needs a two_way scenario")
    if mode is DuplexMode.HALF_DUPLEX:
        if not 0.0 <= tau <= 1.0:
            raise ValueError(f"tau must be in [0, 1], got {tau}")
        g_ab = sinr(budget_a, budget_b.noise_var)
        g_ba = sinr(budget_b, budget_a.noise_var)
        r_ab = _scale(_link_rate(spec.n_b, spec.n_a, g_ab, cfg, _STREAM_AB), tau)
        r_ba = _scale(_link_rate(spec.n_a, spec.n_b, g_ba, cfg, _STREAM_BA), 1.0 - tau)
        return ScenarioRates(r_ab, r_ba, {"tau": tau}, mode)

    split_a = antenna_allocation(spec.n_a, mode, rx_a if rx_a is not None else spec.n_a // 2)
    split_b = antenna_allocation(spec.n_b, mode, rx_b if rx_b is not None else spec.n_b // 2)
    g_ab = sinr(budget_a, budget_b.noise_var, residual_si_power(budget_b.tx_power, si))
    g_ba = sinr(budget_b, budget_a.noise_var, residual_si_power(budget_a.tx_power, si))
    r_ab = _link_rate(split_b.rx, split_a.tx, g_ab, cfg, _STREAM_AB)
    r_ba = _link_rate(split_a.rx, split_b.tx, g_ba, cfg, _STREAM_BA)
    return ScenarioRates(r_ab, r_ba, {"rx_a": split_a.rx, "rx_b": split_b.rx}, mode)


def twohop_hd_rate(
    spec: ScenarioSpec,
    budget_a: LinkBudget,
    budget_r: LinkBudget,
    cfg: McConfig,
    tau: float | None = None,
) -> ScenarioRates:
    """End-to-end HD relaying rate min(tau*R_AR, (1-tau)*R_RB).

    With tau unset, the time share is optimized on a grid; both full-time
    link rates are estimated once and shared across all tau candidates.
    """
    if spec.kind != "two_hop":
        raise ValueError("twohop_hd_rate needs a two_hop scenario")
    g_ar = sinr(budget_a, budget_r.noise_var)
    g_rb = sinr(budget_r, budget_a.noise_var)
    e_ar = _link_rate(spec.n_r, spec.n_a, g_ar, cfg, _STREAM_AR)
    e_rb = _link_rate(spec.n_b, spec.n_r, g_rb, cfg, _STREAM_RB)
    if tau is None:
        taus = np.linspace(0.0, 1.0, TAU_GRID_POINTS)
        objective = np.minimum(taus * e_ar.mean_rate, (1.0 - taus) * e_rb.mean_rate)
        tau = float(taus[int(np.argmax(objective))])
    elif not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    phase_ar = _scale(e_ar, tau)
    phase_rb = _scale(e_rb, 1.0 - tau)
    bottleneck = phase_ar if phase_ar.mean_rate <= phase_rb.mean_rate else phase_rb
    return ScenarioRates(bottleneck, None, {"tau": tau, "gamma": 1.0}, DuplexMode.HALF_DUPLEX)


def _fd_relay_link_rates(
    spec: ScenarioSpec,
    mode: DuplexMode,
    p_source: float,
    p_relay: float,
    path_loss: float,
    noise_var: float,
    r: int,
    si: SiParams,
    cfg: McConfig,
    streams: tuple[int, int],
) -> tuple[RateEstimate, RateEstimate]:
    t = relay_tx_antennas(spec.n_r, r, mode)
    g_ar = sinr(
        LinkBudget(p_source, path_loss, noise_var), noise_var, residual_si_power(p_relay, si)
    )
    g_rb = sinr(LinkBudget(p_relay, path_loss, noise_var), noise_var)
    r_ar = _link_rate(r, spec.n_a, g_ar, cfg, streams[0])
    r_rb = _link_rate(spec.n_b, t, g_rb, cfg, streams[1])
    return r_ar, r_rb


def twohop_fd_rate(
    spec: ScenarioSpec,
    mode: DuplexMode,
    budget_a: LinkBudget,
    si: SiParams,
    cfg: McConfig,
    relay_power: float | None = None,
) -> ScenarioRates:
    """End-to-end FD relaying rate max over relay split and relay power.

    Raising the relay power lifts the outgoing link but feeds back as
    residual SI into the incoming one, so min(R_AR, R_RB) is maximized over
    a log-spaced power grid capped at budget_a.max_relay_power (skipped when
    relay_power is pinned). All candidates share channel seeds.
    """
    if spec.kind != "two_hop":
        raise ValueError("twohop_fd_rate needs a two_hop scenario")
    if not mode.is_full_duplex:
        raise ValueError("twohop_fd_rate needs a full-duplex mode")
    if spec.n_r < 2:
        zero = RateEstimate(0.0, 0.0, cfg.n_samples)
        return ScenarioRates(zero, None, {"r": None, "p_r": None}, mode)
    if relay_power is None:
        if budget_a.max_relay_power is None:
            raise ValueError("budget_a.max_relay_power required to optimize relay power")
        powers = relay_power_grid(budget_a.max_relay_power)
    else:
        powers = np.array([float(relay_power)])

    # ties broken towards the larger relay power: with power-independent SI
    # the bottleneck saturates and the full power budget is then optimal
    si_powers = np.array([residual_si_power(float(p), si) for p in powers])
    g_ar = budget_a.tx_power / (budget_a.path_loss * (budget_a.noise_var + si_powers))
    g_rb = powers / (budget_a.path_loss * budget_a.noise_var)
    best: tuple[float, RateEstimate, RateEstimate, int, float] | None = None
    for r in range(1, spec.n_r):
        t = relay_tx_antennas(spec.n_r, r, mode)
        ar_curve = ergodic_rate_curve(r, spec.n_a, g_ar, _link_cfg(cfg, _STREAM_AR))
        rb_curve = ergodic_rate_curve(spec.n_b, t, g_rb, _link_cfg(cfg, _STREAM_RB))
        for r_ar, r_rb, p_r in zip(ar_curve, rb_curve, powers):
            val = min(r_ar.mean_rate, r_rb.mean_rate)
            if best is None or val >= best[0]:
                best = (val, r_ar, r_rb, r, float(p_r))
    _, r_ar, r_rb, r_opt, p_opt = best
    bottleneck = r_ar if r_ar.mean_rate <= r_rb.mean_rate else r_rb
    return ScenarioRates(bottleneck, None, {"r": r_opt, "p_r": p_opt}, mode)


def _mac_sum_rate(
    n_r: int, n_a: int, n_b: int, g_a: float, g_b: float, cfg: McConfig
) -> RateEstimate:
    """E[log2 det(I + (G_A/N_A) H_A H_A* + (G_B/N_B) H_B H_B*)] at the relay."""
    from .mimo_mc import logdet2_pd

    def per_sample(rng, count):
        h_a = sample_channel_batch(n_r, n_a, rng, count)
        h_b = sample_channel_batch(n_r, n_b, rng, count)
        m = np.eye(n_r) + (g_a / n_a) * np.einsum("cij,ckj->cik", h_a, h_a.conj())
        m += (g_b / n_b) * np.einsum("cij,ckj->cik", h_b, h_b.conj())
        return logdet2_pd(m)

    return mc_expectation(per_sample, _link_cfg(cfg, _STREAM_MAC))


def twr_rates(
    spec: ScenarioSpec,
    mode: DuplexMode,
    budget_a: LinkBudget,
    budget_b: LinkBudget,
    budget_r: LinkBudget,
    si: SiParams,
    cfg: McConfig,
    tau: float = 0.5,
) -> ScenarioRates:
    """Two-way relaying rates.

    HD runs a MAC phase (both nodes to the relay, individual plus sum-rate
    constraints) for tau of the time and a BC phase for the rest; the
    reported pair maximizes the worse direction inside the MAC region.
    FD time-shares two one-way FD relaying phases, relay SI active in both,
    with an independently chosen relay split per phase.
    """
    if spec.kind != "two_way_two_hop":
        raise ValueError("twr_rates needs a two_way_two_hop scenario")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")

    if mode is DuplexMode.HALF_DUPLEX:
        g_ar = sinr(budget_a, budget_r.noise_var)
        g_br = sinr(budget_b, budget_r.noise_var)
        g_ra = sinr(budget_r, budget_a.noise_var)
        g_rb = sinr(budget_r, budget_b.noise_var)
        e_ar = _link_rate(spec.n_r, spec.n_a, g_ar, cfg, _STREAM_AR)
        e_br = _link_rate(spec.n_r, spec.n_b, g_br, cfg, _STREAM_BR)
        e_sum = _mac_sum_rate(spec.n_r, spec.n_a, spec.n_b, g_ar, g_br, cfg)
        e_ra = _link_rate(spec.n_a, spec.n_r, g_ra, cfg, _STREAM_RA)
        e_rb = _link_rate(spec.n_b, spec.n_r, g_rb, cfg, _STREAM_RB)
        cap_ab = min(tau * e_ar.mean_rate, (1.0 - tau) * e_rb.mean_rate)
        cap_ba = min(tau * e_br.mean_rate, (1.0 - tau) * e_ra.mean_rate)
        sum_cap = tau * e_sum.mean_rate
        # max-min split of the MAC sum budget, then fill the other direction
        if cap_ab <= cap_ba:
            r_ab_val = min(cap_ab, sum_cap / 2.0)
            r_ba_val = min(cap_ba, sum_cap - r_ab_val)
        else:
            r_ba_val = min(cap_ba, sum_cap / 2.0)
            r_ab_val = min(cap_ab, sum_cap - r_ba_val)
        err_ab = tau * max(e_ar.std_err, e_sum.std_err) + (1 - tau) * e_rb.std_err
        err_ba = tau * max(e_br.std_err, e_sum.std_err) + (1 - tau) * e_ra.std_err
        return ScenarioRates(
            RateEstimate(r_ab_val, err_ab, cfg.n_samples),
            RateEstimate(r_ba_val, err_ba, cfg.n_samples),
            {"tau": tau},
            mode,
        )

    # FD: only the relay is full duplex; one phase per direction
    if spec.n_r < 2:
        zero = RateEstimate(0.0, 0.0, cfg.n_samples)
        return ScenarioRates(zero, zero, {"tau": tau}, mode)
    p_r = budget_r.tx_power
    fwd = ScenarioSpec.two_hop(spec.n_a, spec.n_r, spec.n_b)
    rev = ScenarioSpec.two_hop(spec.n_b, spec.n_r, spec.n_a)

    def best_phase(phase_spec, p_source, streams):
        best = None
        for r in range(1, spec.n_r):
            r_in, r_out = _fd_relay_link_rates(
                phase_spec, mode, p_source, p_r, budget_r.path_loss, budget_r.noise_var,
                r, si, cfg, streams,
            )
            val = min(r_in.mean_rate, r_out.mean_rate)
            if best is None or val > best[0]:
                bottleneck = r_in if r_in.mean_rate <= r_out.mean_rate else r_out
                best = (val, bottleneck, r)
        return best

    ab = best_phase(fwd, budget_a.tx_power, (_STREAM_AR, _STREAM_RB))
    ba = best_phase(rev, budget_b.tx_power, (_STREAM_BR, _STREAM_RA))
    return ScenarioRates(
        _scale(ab[1], tau),
        _scale(ba[1], 1.0 - tau),
        {"tau": tau, "r_ab_phase": ab[2], "r_ba_phase": ba[2]},
        mode,
    )
