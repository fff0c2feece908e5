"""Closed-form DoF expressions and trade-off regions for the three scenarios.

Scenarios: two-way (both nodes FD-capable), two-hop decode-and-forward
relaying (FD relay), and two-way two-hop relaying (only the relay FD).
All full-duplex DoF values come from power coupling log(P_2)/log(P_1) = gamma,
which turns the residual-SI exponent into the bracket factors
[1 - gamma*(1-lambda)]^+ and [1 - (1-lambda)/gamma]^+.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_model import AntennaSplit, DuplexMode, SiParams, antenna_allocation, fd_splits
from .dof_search import DofPoint, DofRegion, convex_hull

__all__ = [
    "PowerCoupling",
    "ScenarioSpec",
    "twoway_hd_region",
    "twoway_fd_point",
    "twoway_fd_region",
    "prop1_check",
    "prop2_witness",
    "twohop_hd_dof",
    "twohop_fd_dof",
    "twohop_fd_dof_detail",
    "twohop_crossover",
    "asym_crossover",
    "twr_hd_regions",
    "twr_fd_region",
]


@dataclass(frozen=True)
class PowerCoupling:
    """Exponent gamma coupling two transmit powers via log(P_2)/log(P_1) = gamma."""

    gamma_exp: float

    def __post_init__(self):
        if not self.gamma_exp > 0:
            raise ValueError(f"gamma_exp must be positive, got {self.gamma_exp}")


@dataclass(frozen=True)
class ScenarioSpec:
    """Topology and per-node antenna counts of one communication scenario."""

    kind: str  # "two_way", "two_hop" or "two_way_two_hop"
    n_a: int
    n_b: int
    n_r: int | None = None

    KINDS = ("two_way", "two_hop", "two_way_two_hop")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"kind must be one of {self.KINDS}, got {self.kind!r}")
        if self.n_a < 1 or self.n_b < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.kind == "two_way":
            if self.n_r is not None:
                raise ValueError("two_way scenario takes no relay")
        elif self.n_r is None or self.n_r < 1:
            raise ValueError("relay scenarios need n_r >= 1")

    @classmethod
    def two_way(cls, n_a: int, n_b: int) -> "ScenarioSpec":
        return cls("two_way", n_a, n_b)

    @classmethod
    def two_hop(cls, n_a: int, n_r: int, n_b: int) -> "ScenarioSpec":
        return cls("two_hop", n_a, n_b, n_r)

    @classmethod
    def two_way_two_hop(cls, n_a: int, n_r: int, n_b: int) -> "ScenarioSpec":
        return cls("two_way_two_hop", n_a, n_b, n_r)


# ---------------------------------------------------------------------------
# two-way channel


def twoway_hd_region(n_a: int, n_b: int) -> DofRegion:
    """Half-duplex time-sharing trade-off: d1 + d2 <= min(N_A, N_B)."""
    if n_a < 1 or n_b < 1:
        raise ValueError("antenna counts must be >= 1")
    m = min(n_a, n_b)
    return convex_hull([(m, 0.0), (0.0, m)])


def twoway_fd_point(
    n_a: int,
    n_b: int,
    mode: DuplexMode,
    split_a: AntennaSplit,
    split_b: AntennaSplit,
    coupling: PowerCoupling,
    si: SiParams,
) -> DofPoint:
    """Achievable full-duplex DoF pair for fixed splits and power coupling.

    d_ab = [1 - gamma*(1-lam)]^+ * min(r_B, t_A) and
    d_ba = [1 - (1-lam)/gamma]^+ * min(r_A, t_B).
    """
    if not mode.is_full_duplex:
        raise ValueError("twoway_fd_point needs a full-duplex mode")
    g = coupling.gamma_exp
    c = 1.0 - si.lam
    d_ab = max(0.0, 1.0 - g * c) * min(split_b.rx, split_a.tx)
    d_ba = max(0.0, 1.0 - c / g) * min(split_a.rx, split_b.tx)
    return DofPoint(d_ab, d_ba)


def _twoway_axis_corners(n_a: int, n_b: int, mode: DuplexMode) -> tuple[float, float]:
    """Single-direction corner DoFs reached when the reverse stream is shut off.

    With one node effectively silent (its coupled power exponent driven to 0)
    the active direction keeps the best split's min(tx-capable, rx-capable).
    """
    max_tx_a = (n_a - 1) if mode is DuplexMode.AC_FD else 2 * n_a - 2
    max_tx_b = (n_b - 1) if mode is DuplexMode.AC_FD else 2 * n_b - 2
    corner_ab = min(max_tx_a, n_b - 1)
    corner_ba = min(max_tx_b, n_a - 1)
    return float(corner_ab), float(corner_ba)


def twoway_fd_region(
    n_a: int,
    n_b: int,
    mode: DuplexMode,
    si: SiParams,
    gamma_steps: int = 2001,
    gamma_max: float = 2.0,
) -> DofRegion:
    """Convex hull of achievable FD DoF pairs over all splits and couplings.

    Both directions' brackets are swept over a uniform gamma grid on
    (0, gamma_max] with the per-split analytic sum optimum gamma = sqrt(b/a)
    and gamma = 1 inserted exactly, plus the axis corner points.
    """
    if not mode.is_full_duplex:
        raise ValueError("twoway_fd_region needs a full-duplex mode")
    splits_a = fd_splits(n_a, mode) if n_a >= 2 else []
    splits_b = fd_splits(n_b, mode) if n_b >= 2 else []
    if not splits_a or not splits_b:
        return DofRegion((DofPoint(0.0, 0.0),))

    c = 1.0 - si.lam
    base = gamma_max * np.arange(1, gamma_steps + 1) / gamma_steps
    inserts = [1.0]
    if 0.0 < c < 1.0:
        inserts += [c, 1.0 / c]

    pts: list[tuple[float, float]] = []
    corner_ab, corner_ba = _twoway_axis_corners(n_a, n_b, mode)
    pts += [(corner_ab, 0.0), (0.0, corner_ba)]
    for sa in splits_a:
        for sb in splits_b:
            a = min(sb.rx, sa.tx)
            b = min(sa.rx, sb.tx)
            extra = list(inserts)
            if c > 0.0 and a > 0 and b > 0:
                extra.append(math.sqrt(b / a))  # sum-DoF tangent point
            g = np.concatenate([base, np.array(extra)])
            d_ab = np.maximum(0.0, 1.0 - g * c) * a
            d_ba = np.maximum(0.0, 1.0 - c / g) * b
            pts.extend(zip(d_ab.tolist(), d_ba.tolist()))
    return convex_hull(pts)


def prop1_check(n_a: int, n_b: int, si: SiParams) -> tuple[bool, float]:
    """Antenna-conserved FD two-way sum-DoF check against the HD line.

    Returns (ok, max_sum) where max_sum is the supremum of d_ab + d_ba over
    the power-coupled achievable points whose both brackets are nonnegative
    (the closure of the strictly-interior set; time-sharing mixtures of the
    axis corners are excluded on purpose). ok means max_sum < min(N_A, N_B),
    and analytically max_sum <= (1 - (1-lam)^2) * min(N_A, N_B).
    """
    if si.lam >= 1.0:
        raise ValueError("prop1_check requires lam < 1")
    c = 1.0 - si.lam
    best = 0.0
    splits_a = fd_splits(n_a, DuplexMode.AC_FD) if n_a >= 2 else []
    splits_b = fd_splits(n_b, DuplexMode.AC_FD) if n_b >= 2 else []
    for sa in splits_a:
        for sb in splits_b:
            a = min(sb.rx, sa.tx)
            b = min(sa.rx, sb.tx)
            # both brackets >= 0 forces gamma in [c, 1/c]; f is concave there
            candidates = [c, 1.0 / c]
            if a > 0 and b > 0:
                candidates.append(min(1.0 / c, max(c, math.sqrt(b / a))))
            for g in candidates:
                f = a * max(0.0, 1.0 - g * c) + b * max(0.0, 1.0 - c / g)
                best = max(best, f)
    return best < min(n_a, n_b), best


def prop2_witness(n_a: int, n_b: int, si: SiParams) -> DofPoint | None:
    """RF-chain-conserved witness point outside the HD two-way region, if any.

    Evaluates the construction gamma = 1, r_A = floor(2 N_A / 3),
    r_B = floor(2 N_B / 3) through the general FD DoF pair formula and
    returns the point when its coordinate sum exceeds min(N_A, N_B).
    """
    r_a = (2 * n_a) // 3
    r_b = (2 * n_b) // 3
    if r_a < 1 or r_b < 1:
        return None
    split_a = antenna_allocation(n_a, DuplexMode.RC_FD, r_a)
    split_b = antenna_allocation(n_b, DuplexMode.RC_FD, r_b)
    point = twoway_fd_point(
        n_a, n_b, DuplexMode.RC_FD, split_a, split_b, PowerCoupling(1.0), si
    )
    if point.d_ab + point.d_ba > min(n_a, n_b):
        return point
    return None


# ---------------------------------------------------------------------------
# two-hop channel (decode-and-forward relaying)


def twohop_hd_dof(n_a: int, n_r: int, n_b: int) -> tuple[float, float]:
    """Optimal time share and DoF of half-duplex relaying.

    Equalizing tau*min(N_A, N_R) = (1-tau)*min(N_R, N_B) gives
    tau = m2/(m1+m2) and DoF = m1*m2/(m1+m2), which reproduces all four
    case formulas of the HD relaying table on their domains.
    """
    if min(n_a, n_r, n_b) < 1:
        raise ValueError("antenna counts must be >= 1")
    m1 = min(n_a, n_r)
    m2 = min(n_r, n_b)
    return m2 / (m1 + m2), (m1 * m2) / (m1 + m2)


def relay_tx_antennas(n_r: int, r: int, mode: DuplexMode) -> int:
    """Transmit antennas left at an FD relay that reserves r receive antennas."""
    if mode is DuplexMode.AC_FD:
        return n_r - r
    if mode is DuplexMode.RC_FD:
        return 2 * (n_r - r)
    raise ValueError("relay split applies to full-duplex modes only")


def twohop_fd_dof_detail(
    n_a: int, n_r: int, n_b: int, mode: DuplexMode, si: SiParams
) -> tuple[float, int | None, float | None]:
    """(DoF, best relay split r, best gamma) for full-duplex relaying.

    Maximizes min((1-g(1-lam))*min(N_A, r), g*min(t, N_B)) exactly: for each
    integer split r the two envelopes cross at g = a/(b + a(1-lam)); when that
    exceeds 1 the cap g <= 1 binds and the value is b.
    """
    if not mode.is_full_duplex:
        raise ValueError("twohop_fd_dof needs a full-duplex relay mode")
    if n_r < 2:
        return 0.0, None, None
    c = 1.0 - si.lam
    best = (0.0, None, None)
    for r in range(1, n_r):
        a = min(n_a, r)
        b = min(relay_tx_antennas(n_r, r, mode), n_b)
        g_star = a / (b + a * c)
        if g_star <= 1.0:
            val, g = (a * b) / (b + a * c), g_star
        else:
            val, g = float(b), 1.0
        if val > best[0]:
            best = (val, r, g)
    return best


def twohop_fd_dof(n_a: int, n_r: int, n_b: int, mode: DuplexMode, si: SiParams) -> float:
    """DoF of full-duplex relaying, maximized over the relay split and coupling."""
    return twohop_fd_dof_detail(n_a, n_r, n_b, mode, si)[0]


def twohop_crossover(n: int, mode: DuplexMode, si: SiParams) -> int | None:
    """Smallest relay antenna count at which symmetric FD relaying beats HD.

    Scans the mode's natural relay-size lattice (even N_R for the
    antenna-conserved mode, multiples of 3 for the RF-chain-conserved mode)
    and compares the exact FD and HD DoF directly. Returns None for lam = 0,
    where FD never strictly beats HD.
    """
    if not mode.is_full_duplex:
        raise ValueError("crossover compares an FD mode against HD")
    if si.lam == 0.0:
        return None
    step = 2 if mode is DuplexMode.AC_FD else 3
    for n_r in range(step, 4 * n + 2 * step + 1, step):
        hd = min(n, n_r) / 2
        if twohop_fd_dof(n, n_r, n, mode, si) > hd + 1e-12:
            return n_r
    raise AssertionError("no crossover found within scan range")  # pragma: no cover


def asym_crossover(n_b: int, n_r: int, si: SiParams) -> bool:
    """Whether FD relaying beats HD for a single-antenna source (AC split).

    Compares m/(m + 1 - lam) with m = min(N_R - 1, N_B) against the HD value
    M/(M + 1) with M = min(N_R, N_B); equivalent to N_R > min(N_B, 1/lam)
    away from the equality boundary.
    """
    if n_b < 1 or n_r < 1:
        raise ValueError("antenna counts must be >= 1")
    m = min(n_r - 1, n_b)
    big_m = min(n_r, n_b)
    fd = m / (m + 1.0 - si.lam) if m > 0 else 0.0
    hd = big_m / (big_m + 1.0)
    return fd > hd + 1e-9


# ---------------------------------------------------------------------------
# two-way two-hop channel (two-way relaying)


def twr_hd_regions(n: int, n_r: int) -> tuple[DofRegion, DofRegion]:
    """(cut-set upper bound, MAC-BC achievable) DoF regions at tau = 1/2.

    Upper bound: per-direction cap min(N/2, N_R/2). The achievable region
    adds the multiple-access sum constraint d1 + d2 <= min(N, N_R/2);
    dropping that constraint recovers the bound.
    """
    if n < 1 or n_r < 1:
        raise ValueError("antenna counts must be >= 1")
    cap = min(n, n_r) / 2.0
    sum_cap = min(2 * n, n_r) / 2.0
    upper = convex_hull([(cap, 0.0), (cap, cap), (0.0, cap)])
    candidates = [
        (min(cap, sum_cap), 0.0),
        (0.0, min(cap, sum_cap)),
        (cap, cap),
        (cap, sum_cap - cap),
        (sum_cap - cap, cap),
    ]
    feasible = [
        (x, y)
        for x, y in candidates
        if x >= 0 and y >= 0 and x <= cap + 1e-12 and y <= cap + 1e-12 and x + y <= sum_cap + 1e-12
    ]
    return upper, convex_hull(feasible)


def twr_fd_region(
    n_a: int, n_r: int, n_b: int, mode: DuplexMode, si: SiParams
) -> DofRegion:
    """Time-sharing DoF region of two-way relaying with an FD relay.

    Phase 1 carries A->B at the one-way FD relaying DoF, phase 2 carries
    B->A; sweeping the time share traces the segment between the two
    single-direction corners.
    """
    d_ab = twohop_fd_dof(n_a, n_r, n_b, mode, si)
    d_ba = twohop_fd_dof(n_b, n_r, n_a, mode, si)
    if d_ab == 0.0 and d_ba == 0.0:
        return DofRegion((DofPoint(0.0, 0.0),))
    return convex_hull([(d_ab, 0.0), (0.0, d_ba)])
