"""Residual self-interference model, SINR, and hardware accounting.

Everything downstream (closed-form DoF, rate simulation) is built on three
primitives: the residual-SI power law I = P^(1-lambda) / (beta * mu^lambda),
the SINR P / (K * (sigma^2 + I)), and the antenna/RF-chain conservation rules
that map a half-duplex node with N antennas onto its full-duplex splits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class FdSplitOutOfRange(ValueError):
    """Requested full-duplex antenna split is not realizable in hardware."""


class DuplexMode(enum.Enum):
    """Radio implementation: half-duplex, antenna-conserved FD, RF-chain-conserved FD."""

    HALF_DUPLEX = "hd"
    AC_FD = "ac"
    RC_FD = "rc"

    @property
    def is_full_duplex(self) -> bool:
        return self is not DuplexMode.HALF_DUPLEX

    @classmethod
    def from_string(cls, s: str) -> "DuplexMode":
        key = s.strip().lower()
        for mode in cls:
            if key == mode.value:
                return mode
        raise ValueError(f"unknown duplex mode {s!r} (expected hd, ac or rc)")


@dataclass(frozen=True)
class SiParams:
    """Residual self-interference model parameters.

    lam is the cancellation exponent in [0, 1]: lam=1 is a pure noise-floor
    increase (SI independent of transmit power), lam=0 is SI scaling linearly
    with transmit power. beta and mu are positive cancellation constants.
    """

    lam: float
    beta: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.lam <= 1.0):
            raise ValueError(f"lam must be in [0, 1], got {self.lam}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")


@dataclass(frozen=True)
class LinkBudget:
    """Link budget in noise-normalized linear units.

    tx_power is P, path_loss is K, noise_var is the receiver noise sigma^2.
    With the defaults K = 1, sigma^2 = 1, SNR(dB) = 10*log10(P).
    """

    tx_power: float
    path_loss: float = 1.0
    noise_var: float = 1.0
    max_relay_power: float | None = None

    def __post_init__(self):
        if self.tx_power < 0:
            raise ValueError(f"tx_power must be >= 0, got {self.tx_power}")
        if not self.path_loss > 0:
            raise ValueError(f"path_loss must be positive, got {self.path_loss}")
        if not self.noise_var > 0:
            raise ValueError(f"noise_var must be positive, got {self.noise_var}")
        if self.max_relay_power is not None and not self.max_relay_power > 0:
            raise ValueError("max_relay_power must be positive when given")


@dataclass(frozen=True)
class AntennaSplit:
    """Receive/transmit antenna counts of one node under a duplex mode."""

    rx: int
    tx: int
    total_antennas_used: int


def residual_si_power(p_tx: float, si: SiParams) -> float:
    """Average residual self-interference power p_tx^(1-lam) / (beta * mu^lam).

    At lam=1 the result is 1/(beta*mu) independent of p_tx, including p_tx=0
    (noise-floor interpretation); callers modelling a silent radio must skip
    the SI term themselves.
    """
    if p_tx < 0:
        raise ValueError(f"p_tx must be >= 0, got {p_tx}")
    if si.lam == 1.0:
        return 1.0 / (si.beta * si.mu)
    return p_tx ** (1.0 - si.lam) / (si.beta * si.mu**si.lam)


def sinr(tx: LinkBudget, rx_noise_var: float, si_power: float = 0.0) -> float:
    """SINR P / (K * (sigma^2 + I)) at the receiving end of a link.

    si_power is the residual SI variance at the receiver; zero for a
    half-duplex receiver.
    """
    if not rx_noise_var > 0:
        raise ValueError(f"rx_noise_var must be positive, got {rx_noise_var}")
    if si_power < 0 or not math.isfinite(si_power):
        raise ValueError(f"si_power must be finite and >= 0, got {si_power}")
    return tx.tx_power / (tx.path_loss * (rx_noise_var + si_power))


def antenna_allocation(n_total: int, mode: DuplexMode, rx_count: int | None = None) -> AntennaSplit:
    """Antenna split of a node with n_total HD antennas under the given mode.

    HD uses all N antennas both ways. AC FD splits the N antennas (tx = N-r).
    RC FD keeps the 2N RF chains: r receive chains are doubled for analog
    cancellation, leaving 2N-2r transmit chains/antennas (2N-r antennas total).
    """
    if n_total < 1:
        raise ValueError(f"n_total must be >= 1, got {n_total}")
    if mode is DuplexMode.HALF_DUPLEX:
        return AntennaSplit(rx=n_total, tx=n_total, total_antennas_used=n_total)
    if rx_count is None:
        raise ValueError("rx_count is required for full-duplex modes")
    if rx_count < 1 or rx_count > n_total - 1:
        raise FdSplitOutOfRange(
            f"rx_count={rx_count} infeasible for N={n_total} in {mode.value} mode "
            f"(need 1 <= r <= N-1)"
        )
    if mode is DuplexMode.AC_FD:
        return AntennaSplit(rx=rx_count, tx=n_total - rx_count, total_antennas_used=n_total)
    return AntennaSplit(
        rx=rx_count, tx=2 * n_total - 2 * rx_count, total_antennas_used=2 * n_total - rx_count
    )


def fd_splits(n_total: int, mode: DuplexMode) -> list[AntennaSplit]:
    """All feasible FD splits of a node; empty when n_total < 2."""
    if not mode.is_full_duplex:
        raise ValueError("fd_splits only applies to full-duplex modes")
    return [antenna_allocation(n_total, mode, r) for r in range(1, n_total)]
