"""Half-duplex vs full-duplex degrees-of-freedom analysis toolkit.

Closed-form DoF trade-offs and brute-force oracles for two-way, two-hop and
two-way two-hop wireless scenarios under the residual self-interference
model I = P^(1-lambda) / (beta * mu^lambda), plus Monte-Carlo ergodic-rate
simulation whose high-SNR slopes confirm the closed forms.
"""

from .core_model import (
    AntennaSplit,
    DuplexMode,
    FdSplitOutOfRange,
    LinkBudget,
    SiParams,
    antenna_allocation,
    fd_splits,
    residual_si_power,
    sinr,
)
from .dof_closed_form import (
    PowerCoupling,
    ScenarioSpec,
    asym_crossover,
    prop1_check,
    prop2_witness,
    twohop_crossover,
    twohop_fd_dof,
    twohop_fd_dof_detail,
    twohop_hd_dof,
    twoway_fd_point,
    twoway_fd_region,
    twoway_hd_region,
    twr_fd_region,
    twr_hd_regions,
)
from .dof_search import (
    DofPoint,
    DofRegion,
    EmptyDomain,
    GridSpec,
    convex_hull,
    grid_maximin,
    region_contains,
    region_strict_subset,
)
from .mimo_mc import (
    ChannelSample,
    McConfig,
    NumericalFailure,
    RateEstimate,
    ergodic_rate,
    instantaneous_rate,
    sample_channel,
)
from .rate_engine import ScenarioRates, twohop_fd_rate, twohop_hd_rate, twoway_rates, twr_rates
from .slope_validator import FitUnstable, SlopeEstimate, estimate_dof

__version__ = "0.1.0"

__all__ = [
    "AntennaSplit",
    "ChannelSample",
    "DofPoint",
    "DofRegion",
    "DuplexMode",
    "EmptyDomain",
    "FdSplitOutOfRange",
    "FitUnstable",
    "GridSpec",
    "LinkBudget",
    "McConfig",
    "NumericalFailure",
    "PowerCoupling",
    "RateEstimate",
    "ScenarioRates",
    "ScenarioSpec",
    "SiParams",
    "SlopeEstimate",
    "antenna_allocation",
    "asym_crossover",
    "convex_hull",
    "ergodic_rate",
    "estimate_dof",
    "fd_splits",
    "grid_maximin",
    "instantaneous_rate",
    "prop1_check",
    "prop2_witness",
    "region_contains",
    "region_strict_subset",
    "residual_si_power",
    "sample_channel",
    "sinr",
    "twohop_crossover",
    "twohop_fd_dof",
    "twohop_fd_dof_detail",
    "twohop_hd_dof",
    "twohop_fd_rate",
    "twohop_hd_rate",
    "twoway_fd_point",
    "twoway_fd_region",
    "twoway_hd_region",
    "twoway_rates",
    "twr_fd_region",
    "twr_hd_regions",
    "twr_rates",
]
