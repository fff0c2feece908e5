"""Brute-force oracles: exhaustive grid max-min search and region geometry.

These are the independent checks against which every closed-form DoF
expression is validated, so the geometry here is deliberately self-contained:
a plain monotone-chain hull with explicit duplicate/collinear handling rather
than a library wrapper, exact on rational inputs up to 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

MERGE_TOL = 1e-12


class EmptyDomain(ValueError):
    """No feasible relay split exists (n_r < 2)."""


@dataclass(frozen=True)
class DofPoint:
    """One achievable DoF pair (forward, reverse); clamped nonnegative upstream."""

    d_ab: float
    d_ba: float

    def __post_init__(self):
        if not (np.isfinite(self.d_ab) and np.isfinite(self.d_ba)):
            raise ValueError("DoF coordinates must be finite")
        if self.d_ab < 0 or self.d_ba < 0:
            raise ValueError("DoF coordinates must be >= 0 (apply the positive-part clamp first)")

    def as_tuple(self) -> tuple[float, float]:
        return (self.d_ab, self.d_ba)


@dataclass(frozen=True)
class DofRegion:
    """Convex first-quadrant DoF polygon, closed against both axes.

    Vertices are counter-clockwise starting at the origin, no duplicates.
    Degenerate regions (a single point or an axis segment) keep fewer than
    three vertices.
    """

    vertices: tuple[DofPoint, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("region needs at least one vertex")
        pts = self.as_array()
        if (pts < -MERGE_TOL).any():
            raise ValueError("region must lie in the first quadrant")
        if np.hypot(pts[0, 0], pts[0, 1]) > MERGE_TOL:
            raise ValueError("region must contain the origin as its first vertex")
        k = len(pts)
        if k >= 3:
            nxt = np.roll(pts, -1, axis=0)
            prv = np.roll(pts, 1, axis=0)
            u = pts - prv
            v = nxt - pts
            cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
            if (cross < -1e-9).any():
                raise ValueError("region vertices must be convex and counter-clockwise")

    def as_array(self) -> np.ndarray:
        return np.array([v.as_tuple() for v in self.vertices], dtype=float)

    def max_coordinate_sum(self) -> float:
        pts = self.as_array()
        return float((pts[:, 0] + pts[:, 1]).max())


@dataclass(frozen=True)
class GridSpec:
    """Exhaustive-search grid over the time share tau and power exponent gamma."""

    tau_steps: int = 2001
    gamma_steps: int = 2001
    gamma_max: float = 1.0
    include_exact_points: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.tau_steps < 2 or self.gamma_steps < 2:
            raise ValueError("grid steps must be >= 2")
        if not self.gamma_max > 0:
            raise ValueError("gamma_max must be positive")

    def tau_values(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.tau_steps)

    def gamma_values(self) -> np.ndarray:
        # uniform on (0, gamma_max]: excludes 0, includes gamma_max
        return self.gamma_max * np.arange(1, self.gamma_steps + 1) / self.gamma_steps


def _better(cand: tuple, best: tuple | None) -> bool:
    # lexicographic preference: larger value, then smaller r, gamma, tau
    if best is None:
        return True
    v, r, g, t = cand
    bv, br, bg, bt = best
    if v != bv:
        return v > bv
    if r != br:
        return r < br
    if g != bg:
        return g < bg
    return t < bt


def grid_maximin(
    objective: Callable[[float, np.ndarray, int], np.ndarray], n_r: int, grid: GridSpec
) -> tuple[float, tuple[float, float, int]]:
    """Exhaustive max of objective(tau, gamma, r) over the grid and r in 1..n_r-1.

    objective must broadcast over a numpy array of gamma values. Returns
    (best_value, (tau, gamma, r)); ties are broken towards the smallest r,
    then the smallest gamma, then the smallest tau.
    """
    if n_r < 2:
        raise EmptyDomain(f"no feasible relay split for n_r={n_r}")
    taus = grid.tau_values()
    gammas = grid.gamma_values()
    best = None
    for r in range(1, n_r):
        for tau in taus:
            vals = np.asarray(objective(tau, gammas, r), dtype=float)
            i = int(np.argmax(vals))  # first max -> smallest gamma
            cand = (vals[i], r, float(gammas[i]), float(tau))
            if _better(cand, best):
                best = cand
        for tau, gamma in grid.include_exact_points:
            val = float(np.asarray(objective(tau, np.array([gamma]), r), dtype=float)[0])
            cand = (val, r, float(gamma), float(tau))
            if _better(cand, best):
                best = cand
    value, r, gamma, tau = best
    return value, (tau, gamma, r)


def _coerce_points(points: Iterable) -> np.ndarray:
    rows = []
    for p in points:
        if isinstance(p, DofPoint):
            rows.append(p.as_tuple())
        else:
            x, y = p
            rows.append((float(x), float(y)))
    return np.array(rows, dtype=float) if rows else np.zeros((0, 2))


def _dedupe(pts: np.ndarray) -> np.ndarray:
    # bucket on a 1e-12 grid, keeping the first exact representative per bucket
    kept: dict[tuple[float, float], np.ndarray] = {}
    for p in pts:
        key = (round(float(p[0]), 12), round(float(p[1]), 12))
        kept.setdefault(key, p)
    return np.array(list(kept.values()))


def _monotone_chain(pts: np.ndarray) -> np.ndarray:
    """Counter-clockwise convex hull, collinear interior points dropped."""
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def build(seq):
        chain: list[np.ndarray] = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= MERGE_TOL:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def convex_hull(points: Iterable) -> DofRegion:
    """Down-closed convex hull of first-quadrant DoF points.

    The hull always includes the origin and the axis projections of both
    extreme points (largest d_ab, largest d_ba), so the resulting region is
    closed against the axes as a DoF trade-off region must be.
    """
    pts = _coerce_points(points)
    if pts.size == 0:
        raise ValueError("need at least one point")
    if not np.isfinite(pts).all():
        raise ValueError("points must be finite")
    if (pts < -MERGE_TOL).any():
        raise ValueError("points must lie in the first quadrant")
    pts = np.clip(pts, 0.0, None)
    aug = np.vstack(
        [pts, [[0.0, 0.0]], [[pts[:, 0].max(), 0.0]], [[0.0, pts[:, 1].max()]]]
    )
    aug = _dedupe(aug)
    if len(aug) == 1:
        return DofRegion((DofPoint(0.0, 0.0),))
    if len(aug) == 2:
        far = max(aug, key=lambda p: p[0] + p[1])
        return DofRegion((DofPoint(0.0, 0.0), DofPoint(float(far[0]), float(far[1]))))
    hull = _monotone_chain(aug)
    if len(hull) < 3:  # all points collinear through the origin
        far = max(hull, key=lambda p: p[0] + p[1])
        return DofRegion((DofPoint(0.0, 0.0), DofPoint(float(far[0]), float(far[1]))))
    # rotate so the origin (always extreme for a first-quadrant region) leads
    start = int(np.argmin(hull[:, 0] + hull[:, 1]))
    hull = np.roll(hull, -start, axis=0)
    return DofRegion(tuple(DofPoint(float(x), float(y)) for x, y in hull))


def _outside_distance(region: DofRegion, p: tuple[float, float]) -> float:
    """How far p sits outside the region (0 when inside), via half-plane tests."""
    pts = region.as_array()
    x, y = float(p[0]), float(p[1])
    if len(pts) == 1:
        return float(np.hypot(x - pts[0, 0], y - pts[0, 1]))
    if len(pts) == 2:
        a, b = pts
        ab = b - a
        denom = float(ab @ ab)
        t = 0.0 if denom == 0 else np.clip(((x - a[0]) * ab[0] + (y - a[1]) * ab[1]) / denom, 0, 1)
        cx, cy = a + t * ab
        return float(np.hypot(x - cx, y - cy))
    worst = 0.0
    for i in range(len(pts)):
        a = pts[i]
        b = pts[(i + 1) % len(pts)]
        ex, ey = b - a
        norm = float(np.hypot(ex, ey))
        if norm <= MERGE_TOL:
            continue
        signed = (ex * (y - a[1]) - ey * (x - a[0])) / norm  # >= 0 inside (CCW)
        worst = max(worst, -signed)
    return worst


def region_contains(region: DofRegion, p, tol: float = 1e-9) -> bool:
    """Point-in-convex-region test with absolute geometric tolerance."""
    if isinstance(p, DofPoint):
        p = p.as_tuple()
    return _outside_distance(region, p) <= tol


def region_strict_subset(a: DofRegion, b: DofRegion, tol: float = 1e-9) -> bool:
    """True when a is contained in b and b's boundary strictly exceeds a somewhere."""
    if not all(region_contains(b, v, tol) for v in a.vertices):
        return False
    return any(_outside_distance(a, v.as_tuple()) > tol for v in b.vertices)


def region_max_mutual_violation(a: DofRegion, b: DofRegion) -> float:
    """Largest distance by which either region's vertices leave the other."""
    out_a = max(_outside_distance(b, v.as_tuple()) for v in a.vertices)
    out_b = max(_outside_distance(a, v.as_tuple()) for v in b.vertices)
    return max(out_a, out_b)


def regions_equal(a: DofRegion, b: DofRegion, tol: float = 1e-9) -> bool:
    return region_max_mutual_violation(a, b) <= tol
