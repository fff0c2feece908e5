"""Command-line front end.

Subcommands:
  dof    {two-way|two-hop|twr}  closed-form DoF regions/values + grid oracle report
  rate   {p2p|two-way|two-hop|twr}  Monte-Carlo rate sweeps + slope summaries
  advise {two-way|two-hop|twr}  HD-vs-FD mode recommendation

Outputs are CSV ('.' decimal, ',' separator, LF, header row, 10 significant
digits) or JSON ({config, results, oracle_report, assumptions}); every file
embeds the full run configuration and library version. --plot additionally
renders a matplotlib figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .core_model import DuplexMode, LinkBudget, SiParams
from .dof_closed_form import (
    PowerCoupling,
    ScenarioSpec,
    asym_crossover,
    prop1_check,
    prop2_witness,
    relay_tx_antennas,
    twohop_crossover,
    twohop_fd_dof,
    twohop_fd_dof_detail,
    twohop_hd_dof,
    twoway_fd_region,
    twoway_hd_region,
    twr_fd_region,
    twr_hd_regions,
)
from .core_model import fd_splits
from .dof_search import (
    DofRegion,
    GridSpec,
    convex_hull,
    grid_maximin,
    region_max_mutual_violation,
)
from .mimo_mc import McConfig, ergodic_rate
from .rate_engine import twohop_fd_rate, twohop_hd_rate, twoway_rates, twr_rates
from .slope_validator import FitUnstable, estimate_dof

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_SLOPE = 4

DEFAULT_LAMBDA = 0.9


@dataclass
class RunConfig:
    """One CLI invocation, embedded verbatim in every output for provenance."""

    command: str
    scenario: str
    n_a: int
    n_b: int
    n_r: int | None
    modes: list[str]
    lam: float
    beta: float
    mu: float
    tau: float | None
    gamma: float | None
    seed: int
    samples: int
    snr_db: list[float]
    pr_max_db: float | None
    output_path: str | None
    output_format: str
    plot: bool
    nr_sweep: list[int] | None
    assumptions: list[str] = field(default_factory=list)
    version: str = __version__

    def si(self) -> SiParams:
        return SiParams(self.lam, self.beta, self.mu)

    def duplex_modes(self) -> list[DuplexMode]:
        return [DuplexMode.from_string(m) for m in self.modes]

    def mc(self) -> McConfig:
        return McConfig(n_samples=self.samples, seed=self.seed)

    def to_dict(self) -> dict:
        return asdict(self)


def _parse_modes(raw: str) -> list[str]:
    modes = [m.strip().lower() for m in raw.split(",") if m.strip()]
    for m in modes:
        DuplexMode.from_string(m)
    if not modes:
        raise ValueError("at least one mode required")
    return modes


def _parse_range(raw: str, step_default: float = 1.0) -> list[float]:
    parts = raw.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    lo, hi = float(parts[0]), float(parts[1])
    step = float(parts[2]) if len(parts) > 2 else step_default
    if step <= 0 or hi < lo:
        raise ValueError(f"bad range {raw!r}")
    out = []
    v = lo
    while v <= hi + 1e-9:
        out.append(round(v, 9))
        v += step
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duplexdof",
        description="Half-duplex vs full-duplex DoF trade-off analysis",
    )
    parser.add_argument("--version", action="version", version=f"duplexdof {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenarios):
        p.add_argument("scenario", choices=scenarios)
        p.add_argument("--na", type=int, required=True, help="antennas at node A")
        p.add_argument("--nb", type=int, required=True, help="antennas at node B")
        p.add_argument("--nr", type=int, help="antennas at the relay (HD count)")
        p.add_argument("--lambda", dest="lam", type=float, default=None,
                       help="SI cancellation exponent in [0,1] (default 0.9, noted)")
        p.add_argument("--beta", type=float, default=1.0)
        p.add_argument("--mu", type=float, default=1.0)
        p.add_argument("--modes", type=str, default="hd",
                       help="comma list of hd,ac,rc")
        p.add_argument("--tau", type=float, default=None, help="time share in [0,1]")
        p.add_argument("--gamma", type=float, default=None,
                       help="power coupling exponent log(P2)/log(P1)")
        p.add_argument("--seed", type=int, default=1234)
        p.add_argument("--samples", type=int, default=20000)
        p.add_argument("--snr", type=str, default="40:70:5", help="dB sweep lo:hi:step")
        p.add_argument("--pr-max-db", type=float, default=None,
                       help="relay power cap in dB (default: source power)")
        p.add_argument("--out", type=str, default=None, help="output path / prefix")
        p.add_argument("--format", dest="output_format", choices=("csv", "json"),
                       default="csv")
        p.add_argument("--plot", action="store_true",
                       help="also render a figure next to the output")

    p_dof = sub.add_parser("dof", help="closed-form DoF regions and values")
    add_common(p_dof, ("two-way", "two-hop", "twr"))
    p_dof.add_argument("--nr-sweep", type=str, default=None,
                       help="relay-size sweep lo:hi for two-hop (e.g. 2:12)")

    p_rate = sub.add_parser("rate", help="Monte-Carlo rate sweeps")
    add_common(p_rate, ("p2p", "two-way", "two-hop", "twr"))

    p_adv = sub.add_parser("advise", help="HD-vs-FD recommendation")
    add_common(p_adv, ("two-way", "two-hop", "twr"))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    scenario = args.scenario
    if scenario in ("two-hop", "twr") and args.nr is None:
        raise ValueError(f"--nr is required for {scenario}")
    assumptions: list[str] = []
    lam = args.lam
    if lam is None:
        lam = DEFAULT_LAMBDA
        assumptions.append(f"lambda not specified; using {DEFAULT_LAMBDA}")
    modes = _parse_modes(args.modes)
    nr_sweep = None
    if getattr(args, "nr_sweep", None):
        vals = _parse_range(args.nr_sweep, 1.0)
        nr_sweep = [int(v) for v in vals]
    cfg = RunConfig(
        command=args.command,
        scenario=scenario,
        n_a=args.na,
        n_b=args.nb,
        n_r=args.nr,
        modes=modes,
        lam=lam,
        beta=args.beta,
        mu=args.mu,
        tau=args.tau,
        gamma=args.gamma,
        seed=args.seed,
        samples=args.samples,
        snr_db=_parse_range(args.snr, 5.0),
        pr_max_db=args.pr_max_db,
        output_path=args.out,
        output_format=args.output_format,
        plot=args.plot,
        nr_sweep=nr_sweep,
        assumptions=assumptions,
    )
    cfg.si()  # validate lambda/beta/mu now
    cfg.duplex_modes()
    if args.command in ("dof", "rate") and cfg.output_path is None:
        raise ValueError("--out is required for dof and rate commands")
    if cfg.tau is not None and not 0.0 <= cfg.tau <= 1.0:
        raise ValueError("--tau must be in [0, 1]")
    if cfg.gamma is not None and cfg.gamma <= 0:
        raise ValueError("--gamma must be positive")
    if cfg.n_a < 1 or cfg.n_b < 1 or (cfg.n_r is not None and cfg.n_r < 1):
        raise ValueError("antenna counts must be >= 1")
    return cfg


# ---------------------------------------------------------------------------
# output plumbing


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _stem(path: str) -> str:
    return path[:-4] if path.endswith(".csv") else path


def write_csv(path: str, header: list[str], rows: list[list], config: RunConfig) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(f"# duplexdof {__version__}\n")
        f.write("# config: " + json.dumps(config.to_dict(), sort_keys=True) + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path: str, config: RunConfig, results: dict, oracle_report) -> None:
    if not path.endswith(".json"):
        path += ".json"
    payload = {
        "config": config.to_dict(),
        "results": results,
        "oracle_report": oracle_report,
        "assumptions": config.assumptions,
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def region_to_lists(region: DofRegion) -> list[list[float]]:
    return [[v.d_ab, v.d_ba] for v in region.vertices]


def region_from_lists(pairs) -> DofRegion:
    from .dof_search import DofPoint

    return DofRegion(tuple(DofPoint(float(x), float(y)) for x, y in pairs))


# ---------------------------------------------------------------------------
# dof command


def _grid_region_oracle(n_a: int, n_b: int, mode: DuplexMode, si: SiParams) -> DofRegion:
    """Pure uniform-grid rebuild of the two-way FD region (no analytic inserts)."""
    splits_a = fd_splits(n_a, mode) if n_a >= 2 else []
    splits_b = fd_splits(n_b, mode) if n_b >= 2 else []
    if not splits_a or not splits_b:
        return convex_hull([(0.0, 0.0)])
    gammas = 2.0 * np.arange(1, 4002) / 4001
    c = 1.0 - si.lam
    pts = []
    from .dof_closed_form import _twoway_axis_corners

    corner_ab, corner_ba = _twoway_axis_corners(n_a, n_b, mode)
    pts += [(corner_ab, 0.0), (0.0, corner_ba)]
    for sa in splits_a:
        for sb in splits_b:
            a = min(sb.rx, sa.tx)
            b = min(sa.rx, sb.tx)
            d_ab = np.maximum(0.0, 1.0 - gammas * c) * a
            d_ba = np.maximum(0.0, 1.0 - c / gammas) * b
            pts.extend(zip(d_ab.tolist(), d_ba.tolist()))
    return convex_hull(pts)


def _twohop_fd_oracle(n_a: int, n_r: int, n_b: int, mode: DuplexMode, si: SiParams) -> float:
    c = 1.0 - si.lam

    def objective(tau, gammas, r):
        t = relay_tx_antennas(n_r, r, mode)
        lead = np.maximum(0.0, 1.0 - gammas * c)
        return np.minimum.reduce([lead * n_a, lead * r, gammas * t, gammas * n_b])

    exact = []
    for r in range(1, n_r):
        a = min(n_a, r)
        b = min(relay_tx_antennas(n_r, r, mode), n_b)
        exact.append((0.0, min(1.0, a / (b + a * c))))
    grid = GridSpec(tau_steps=2, gamma_steps=2001, gamma_max=1.0,
                    include_exact_points=tuple(exact))
    value, _ = grid_maximin(objective, n_r, grid)
    return value


def _twohop_hd_oracle(n_a: int, n_r: int, n_b: int) -> float:
    m1 = min(n_a, n_r)
    m2 = min(n_r, n_b)

    def objective(tau, gammas, r):
        return np.minimum(tau * m1, gammas * (1.0 - tau) * m2)

    grid = GridSpec(tau_steps=2001, gamma_steps=2, gamma_max=1.0,
                    include_exact_points=((m2 / (m1 + m2), 1.0),))
    value, _ = grid_maximin(objective, 2, grid)
    return value


def cmd_dof(config: RunConfig) -> int:
    si = config.si()
    modes = config.duplex_modes()
    results: dict = {}
    oracle_rows: list[list] = []
    oracle_json: list[dict] = []

    if config.scenario == "two-way":
        regions: dict[str, DofRegion] = {}
        for mode in modes:
            if mode is DuplexMode.HALF_DUPLEX:
                region = twoway_hd_region(config.n_a, config.n_b)
                diff = 0.0
            else:
                region = twoway_fd_region(config.n_a, config.n_b, mode, si)
                oracle = _grid_region_oracle(config.n_a, config.n_b, mode, si)
                diff = region_max_mutual_violation(region, oracle)
            regions[mode.value] = region
            oracle_rows.append([mode.value, "region_support", None, None, diff])
            oracle_json.append({"mode": mode.value, "quantity": "region_support",
                                "abs_diff": diff})
        results["regions"] = {m: region_to_lists(r) for m, r in regions.items()}
        if config.output_format == "csv":
            stem = _stem(config.output_path)
            for m, region in regions.items():
                rows = [[m, i, v.d_ab, v.d_ba] for i, v in enumerate(region.vertices)]
                write_csv(f"{stem}_{m}.csv", ["mode", "vertex_index", "d_ab", "d_ba"],
                          rows, config)
            write_csv(f"{stem}_oracle.csv",
                      ["mode", "quantity", "closed_form", "grid", "abs_diff"],
                      oracle_rows, config)
        else:
            write_json(config.output_path, config, results, oracle_json)
        if config.plot:
            from .plots import plot_regions

            plot_regions(regions, _stem(config.output_path) + ".png",
                         title=f"two-way N_A={config.n_a} N_B={config.n_b} lam={config.lam}")
        return EXIT_OK

    if config.scenario == "two-hop":
        rows: list[list] = []
        sweep_rows: list[list] = []
        dof_by_mode: dict[str, float] = {}
        curves: dict[str, tuple[list[int], list[float]]] = {}
        for mode in modes:
            if mode is DuplexMode.HALF_DUPLEX:
                tau_opt, dof = twohop_hd_dof(config.n_a, config.n_r, config.n_b)
                rows.append([mode.value, tau_opt, 1.0, None, dof])
                grid_val = _twohop_hd_oracle(config.n_a, config.n_r, config.n_b)
            else:
                dof, r_opt, g_opt = twohop_fd_dof_detail(
                    config.n_a, config.n_r, config.n_b, mode, si)
                rows.append([mode.value, None, g_opt, r_opt, dof])
                grid_val = _twohop_fd_oracle(config.n_a, config.n_r, config.n_b, mode, si)
            dof_by_mode[mode.value] = dof
            oracle_rows.append([mode.value, "dof", dof, grid_val, abs(dof - grid_val)])
            oracle_json.append({"mode": mode.value, "quantity": "dof",
                                "closed_form": dof, "grid": grid_val,
                                "abs_diff": abs(dof - grid_val)})
            if config.nr_sweep:
                pts = []
                for nr in config.nr_sweep:
                    if mode is DuplexMode.HALF_DUPLEX:
                        d = twohop_hd_dof(config.n_a, nr, config.n_b)[1]
                    else:
                        d = twohop_fd_dof(config.n_a, nr, config.n_b, mode, si)
                    sweep_rows.append([nr, mode.value, d])
                    pts.append(d)
                curves[mode.value] = (list(config.nr_sweep), pts)
        results["dof"] = {
            r[0]: {"tau_opt": r[1], "gamma_opt": r[2], "r_opt": r[3], "dof": r[4]}
            for r in rows
        }
        if config.nr_sweep:
            results["nr_sweep"] = {m: dict(zip(c[0], c[1])) for m, c in curves.items()}
        if config.output_format == "csv":
            stem = _stem(config.output_path)
            write_csv(f"{stem}.csv", ["mode", "tau_opt", "gamma_opt", "r_opt", "dof"],
                      rows, config)
            write_csv(f"{stem}_oracle.csv",
                      ["mode", "quantity", "closed_form", "grid", "abs_diff"],
                      oracle_rows, config)
            if sweep_rows:
                write_csv(f"{stem}_sweep.csv", ["nr", "mode", "dof"], sweep_rows, config)
        else:
            write_json(config.output_path, config, results, oracle_json)
        if config.plot:
            stem = _stem(config.output_path)
            title = f"two-hop N={config.n_a}/{config.n_b} lam={config.lam}"
            if curves:
                from .plots import plot_dof_vs_relay_size

                plot_dof_vs_relay_size(curves, stem + ".png", title=title)
            else:
                from .plots import plot_dof_bars

                plot_dof_bars(dof_by_mode, stem + ".png",
                              title=title + f" N_R={config.n_r}")
        return EXIT_OK

    # twr
    if config.n_a != config.n_b:
        raise ValueError("twr DoF regions require symmetric end nodes (N_A = N_B)")
    regions = {}
    upper, mac_bc = twr_hd_regions(config.n_a, config.n_r)
    if DuplexMode.HALF_DUPLEX in modes:
        regions["hd_ub"] = upper
        regions["hd_macbc"] = mac_bc
        oracle_rows.append(["hd", "region_support", None, None, 0.0])
        oracle_json.append({"mode": "hd", "quantity": "region_support", "abs_diff": 0.0})
    for mode in modes:
        if mode is DuplexMode.HALF_DUPLEX:
            continue
        region = twr_fd_region(config.n_a, config.n_r, config.n_b, mode, si)
        regions[mode.value] = region
        corner = twohop_fd_dof(config.n_a, config.n_r, config.n_b, mode, si)
        grid_corner = _twohop_fd_oracle(config.n_a, config.n_r, config.n_b, mode, si)
        oracle_rows.append([mode.value, "corner_dof", corner, grid_corner,
                            abs(corner - grid_corner)])
        oracle_json.append({"mode": mode.value, "quantity": "corner_dof",
                            "closed_form": corner, "grid": grid_corner,
                            "abs_diff": abs(corner - grid_corner)})
    results["regions"] = {m: region_to_lists(r) for m, r in regions.items()}
    if config.output_format == "csv":
        stem = _stem(config.output_path)
        for m, region in regions.items():
            rows = [[m, i, v.d_ab, v.d_ba] for i, v in enumerate(region.vertices)]
            write_csv(f"{stem}_{m}.csv", ["mode", "vertex_index", "d_ab", "d_ba"],
                      rows, config)
        write_csv(f"{stem}_oracle.csv",
                  ["mode", "quantity", "closed_form", "grid", "abs_diff"],
                  oracle_rows, config)
    else:
        write_json(config.output_path, config, results, oracle_json)
    if config.plot:
        from .plots import plot_regions

        plot_regions(regions, _stem(config.output_path) + ".png",
                     title=f"two-way relaying N={config.n_a} N_R={config.n_r} lam={config.lam}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# rate command


def _rate_pair(config: RunConfig, mode: DuplexMode, p_a: float, mc: McConfig):
    """(r_ab, r_ba or None) estimates at source power p_a for one mode."""
    si = config.si()
    gamma = config.gamma
    tau = config.tau
    if config.scenario == "p2p":
        est = ergodic_rate(config.n_b, config.n_a, p_a, mc)
        return est, None
    if config.scenario == "two-way":
        spec = ScenarioSpec.two_way(config.n_a, config.n_b)
        p_b = p_a ** gamma if gamma is not None else p_a
        rates = twoway_rates(spec, mode, LinkBudget(p_a), LinkBudget(p_b), si, mc,
                             tau=tau if tau is not None else 0.5)
        return rates.r_ab, rates.r_ba
    if config.scenario == "two-hop":
        spec = ScenarioSpec.two_hop(config.n_a, config.n_r, config.n_b)
        if mode is DuplexMode.HALF_DUPLEX:
            rates = twohop_hd_rate(spec, LinkBudget(p_a), LinkBudget(p_a), mc, tau=tau)
            return rates.r_ab, None
        if gamma is not None:
            rates = twohop_fd_rate(spec, mode, LinkBudget(p_a), si, mc,
                                   relay_power=p_a ** gamma)
        else:
            p_max = 10 ** (config.pr_max_db / 10) if config.pr_max_db is not None else p_a
            budget = LinkBudget(p_a, max_relay_power=p_max)
            rates = twohop_fd_rate(spec, mode, budget, si, mc)
        return rates.r_ab, None
    # twr
    spec = ScenarioSpec.two_way_two_hop(config.n_a, config.n_r, config.n_b)
    p_r = p_a ** gamma if gamma is not None else p_a
    rates = twr_rates(spec, mode, LinkBudget(p_a), LinkBudget(p_a), LinkBudget(p_r),
                      si, mc, tau=tau if tau is not None else 0.5)
    return rates.r_ab, rates.r_ba


def cmd_rate(config: RunConfig) -> int:
    mc = config.mc()
    modes = config.duplex_modes() if config.scenario != "p2p" else [DuplexMode.HALF_DUPLEX]
    rows: list[list] = []
    slope_rows: list[list] = []
    results: dict = {"per_snr": [], "slopes": {}}
    curves: dict[str, dict] = {}
    unstable = False

    for mode in modes:
        label = "p2p" if config.scenario == "p2p" else mode.value
        cache: dict[tuple, tuple] = {}

        def pair_at(p_a: float, cfg: McConfig):
            key = (round(float(np.log10(p_a)), 12), cfg.n_samples)
            if key not in cache:
                cache[key] = _rate_pair(config, mode, p_a, cfg)
            return cache[key]

        snr = config.snr_db
        data = {"snr_db": snr, "r_ab": [], "r_ab_err": [], "r_ba": None, "r_ba_err": None,
                "slope_ab": None, "slope_ba": None}
        has_ba = False
        for db in snr:
            r_ab, r_ba = pair_at(10 ** (db / 10), mc)
            rows.append([db, label, r_ab.mean_rate, r_ab.std_err,
                         r_ba.mean_rate if r_ba else None,
                         r_ba.std_err if r_ba else None])
            results["per_snr"].append({
                "snr_db": db, "mode": label,
                "r_ab": r_ab.mean_rate, "r_ab_stderr": r_ab.std_err,
                "r_ba": r_ba.mean_rate if r_ba else None,
                "r_ba_stderr": r_ba.std_err if r_ba else None,
            })
            data["r_ab"].append(r_ab.mean_rate)
            data["r_ab_err"].append(r_ab.std_err)
            if r_ba is not None:
                has_ba = True
                data.setdefault("_ba", []).append(r_ba.mean_rate)
                data.setdefault("_ba_err", []).append(r_ba.std_err)
        if has_ba:
            data["r_ba"] = data.pop("_ba")
            data["r_ba_err"] = data.pop("_ba_err")

        coupling = PowerCoupling(config.gamma) if config.gamma else None
        slopes = {}
        for direction, idx in (("ab", 0), ("ba", 1)):
            if direction == "ba" and not has_ba:
                continue
            try:
                est = estimate_dof(lambda p, c, i=idx: pair_at(p, c)[i],
                                   coupling, snr, mc)
            except FitUnstable as exc:
                est = exc.estimate
                unstable = True
            slopes[direction] = est
            data[f"slope_{direction}"] = est.slope
        slope_rows.append(["slope", label,
                           slopes["ab"].slope, slopes["ab"].r_squared,
                           slopes.get("ba").slope if "ba" in slopes else None,
                           slopes.get("ba").r_squared if "ba" in slopes else None])
        results["slopes"][label] = {
            d: {"slope": e.slope, "intercept": e.intercept, "r_squared": e.r_squared,
                "snr_window": list(e.snr_window)}
            for d, e in slopes.items()
        }
        curves[label] = data

    header = ["snr_db", "mode", "r_ab", "r_ab_stderr", "r_ba", "r_ba_stderr"]
    if config.output_format == "csv":
        # slope rows reuse the schema: r_* carries the slope, *_stderr the fit r^2
        write_csv(_stem(config.output_path) + ".csv", header, rows + slope_rows, config)
    else:
        write_json(config.output_path, config, results, None)
    if config.plot:
        from .plots import plot_rate_curves

        plot_rate_curves(curves, _stem(config.output_path) + ".png",
                         title=f"{config.scenario} rates")
    return EXIT_SLOPE if unstable else EXIT_OK


# ---------------------------------------------------------------------------
# advise command


def _advise_record(config: RunConfig) -> dict:
    si = config.si()
    modes = [m for m in config.duplex_modes() if m.is_full_duplex]
    if not modes:
        raise ValueError("advise needs at least one FD mode in --modes")

    if config.scenario == "two-way":
        m = min(config.n_a, config.n_b)
        best = {"recommended_mode": "hd", "margin_dof": 0.0,
                "binding_condition": "sum DoF <= min(N_A, N_B) for HD time sharing"}
        detail = {}
        for mode in modes:
            if mode is DuplexMode.AC_FD:
                if si.lam < 1.0:
                    ok, max_sum = prop1_check(config.n_a, config.n_b, si)
                    detail["ac"] = {"interior_sum_dof": max_sum, "hd_sum_dof": float(m)}
                    cond = "sum DoF <= (1-(1-lambda)^2)*min(N_A,N_B) < min(N_A,N_B)"
                else:
                    detail["ac"] = {"interior_sum_dof": float(m), "hd_sum_dof": float(m)}
                    cond = "lambda = 1: AC FD ties the HD sum DoF"
                best.setdefault("binding_condition_ac", cond)
            else:
                witness = prop2_witness(config.n_a, config.n_b, si)
                if witness is not None:
                    margin = witness.d_ab + witness.d_ba - m
                    detail["rc"] = {"witness": [witness.d_ab, witness.d_ba],
                                    "margin_dof": margin}
                    if margin > best["margin_dof"]:
                        best = {
                            "recommended_mode": "rc",
                            "margin_dof": margin,
                            "binding_condition":
                                "2*lambda*min(floor(2N_A/3), floor(2N_B/3)) > min(N_A, N_B)",
                        }
                else:
                    detail["rc"] = {"witness": None}
        best["detail"] = detail
        return best

    if config.scenario == "two-hop":
        _, hd = twohop_hd_dof(config.n_a, config.n_r, config.n_b)
        symmetric = config.n_a == config.n_b
        best_mode, best_dof = "hd", hd
        detail = {"hd_dof": hd}
        for mode in modes:
            fd = twohop_fd_dof(config.n_a, config.n_r, config.n_b, mode, si)
            detail[f"{mode.value}_dof"] = fd
            if fd > best_dof + 1e-12:
                best_mode, best_dof = mode.value, fd
        if best_mode == "hd":
            margin = hd - max(detail.get("ac_dof", 0.0), detail.get("rc_dof", 0.0))
        else:
            margin = best_dof - hd
        if config.n_a == 1:
            binding = "N_R > min(N_B, 1/lambda)"
            detail["asym_rule_fd_beats_hd"] = asym_crossover(config.n_b, config.n_r, si)
        elif symmetric:
            if best_mode == "rc" or (best_mode == "hd" and "rc" in config.modes):
                binding = "N_R > (3/4)*N*(2-lambda)"
            else:
                binding = "N_R > N*(2-lambda)"
            for mode in modes:
                xover = twohop_crossover(config.n_a, mode, si) if si.lam > 0 else None
                detail[f"{mode.value}_crossover_nr"] = xover
        else:
            binding = "direct DoF comparison"
        return {"recommended_mode": best_mode, "margin_dof": margin,
                "binding_condition": binding, "detail": detail}

    # twr: symmetric-point objective, corner advantage reported separately
    if config.n_a != config.n_b:
        raise ValueError("twr advice requires symmetric end nodes (N_A = N_B)")
    n, n_r = config.n_a, config.n_r
    hd_sym = min(2 * n, n_r) / 4.0  # per-direction coordinate of the MAC-BC midpoint
    hd_corner = min(n, n_r) / 2.0
    best = {"recommended_mode": "hd", "margin_dof": 0.0,
            "binding_condition": "symmetric point: HD MAC-BC vs FD time sharing"}
    detail = {"hd_symmetric_coordinate": hd_sym, "hd_corner_dof": hd_corner}
    for mode in modes:
        fd_corner = twohop_fd_dof(n, n_r, n, mode, si)
        fd_sym = fd_corner / 2.0
        detail[f"{mode.value}_symmetric_coordinate"] = fd_sym
        detail[f"{mode.value}_corner_dof"] = fd_corner
        detail[f"{mode.value}_corner_advantage"] = fd_corner - hd_corner
        if fd_sym > hd_sym + 1e-12 and fd_sym - hd_sym > best["margin_dof"]:
            best = {"recommended_mode": mode.value, "margin_dof": fd_sym - hd_sym,
                    "binding_condition": "symmetric point: FD time sharing beats HD MAC-BC"}
    if best["recommended_mode"] == "hd":
        fd_best = max(detail.get(f"{m.value}_symmetric_coordinate", 0.0) for m in modes)
        best["margin_dof"] = hd_sym - fd_best
    best["detail"] = detail
    return best


def cmd_advise(config: RunConfig) -> int:
    record = _advise_record(config)
    payload = {
        "config": config.to_dict(),
        "results": record,
        "oracle_report": None,
        "assumptions": config.assumptions,
    }
    if config.output_path:
        if config.output_format == "json":
            write_json(config.output_path, config, record, None)
        else:
            header = ["recommended_mode", "margin_dof", "binding_condition"]
            rows = [[record["recommended_mode"], record["margin_dof"],
                     record["binding_condition"]]]
            write_csv(_stem(config.output_path) + ".csv", header, rows, config)
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    print(f"recommended mode: {record['recommended_mode']} "
          f"(margin {record['margin_dof']:.4g} DoF; {record['binding_condition']})",
          file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "dof":
            return cmd_dof(config)
        if args.command == "rate":
            return cmd_rate(config)
        return cmd_advise(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
