import numpy as np
import pytest

from duplexdof.core_model import DuplexMode, SiParams
from duplexdof.dof_closed_form import relay_tx_antennas, twohop_fd_dof
from duplexdof.dof_search import (
    DofPoint,
    DofRegion,
    EmptyDomain,
    GridSpec,
    convex_hull,
    grid_maximin,
    region_contains,
    region_strict_subset,
)


class TestConvexHull:
    def test_interior_point_dropped(self):
        region = convex_hull([(1.0, 0.0), (0.0, 1.0), (0.5, 0.5)])
        assert {v.as_tuple() for v in region.vertices} == {(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)}

    def test_square_from_dominant_corner(self):
        region = convex_hull([(2.0, 0.0), (0.0, 2.0), (2.0, 2.0)])
        assert {v.as_tuple() for v in region.vertices} == {
            (0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)}

    def test_axis_projections_added(self):
        region = convex_hull([(3.0, 1.0)])
        assert {v.as_tuple() for v in region.vertices} == {
            (0.0, 0.0), (3.0, 0.0), (3.0, 1.0), (0.0, 1.0)}

    def test_idempotent(self):
        region = convex_hull([(1.0, 2.0), (2.5, 0.5), (0.3, 0.3)])
        again = convex_hull([v.as_tuple() for v in region.vertices])
        assert [v.as_tuple() for v in again.vertices] == [v.as_tuple() for v in region.vertices]

    def test_monotone_under_point_addition(self):
        rng = np.random.default_rng(5)
        pts = rng.uniform(0, 4, size=(30, 2)).tolist()
        small = convex_hull(pts[:12])
        big = convex_hull(pts)
        assert all(region_contains(big, v, 1e-9) for v in small.vertices)

    def test_degenerate_origin(self):
        region = convex_hull([(0.0, 0.0)])
        assert region.vertices == (DofPoint(0.0, 0.0),)

    def test_degenerate_axis_segment(self):
        region = convex_hull([(2.0, 0.0), (1.0, 0.0)])
        assert [v.as_tuple() for v in region.vertices] == [(0.0, 0.0), (2.0, 0.0)]

    def test_duplicates_merged(self):
        region = convex_hull([(1.0, 1.0), (1.0 + 1e-13, 1.0 - 1e-13), (1.0, 1.0)])
        assert len(region.vertices) == 4  # origin + projections + corner

    def test_rejects_negative_quadrant(self):
        with pytest.raises(ValueError):
            convex_hull([(-1.0, 2.0)])


class TestRegionPredicates:
    def test_triangle_contains(self):
        tri = convex_hull([(1.0, 0.0), (0.0, 1.0)])
        assert region_contains(tri, (0.2, 0.2))
        assert region_contains(tri, (0.5, 0.5))  # on the boundary
        assert not region_contains(tri, (0.6, 0.6))

    def test_strict_subset(self):
        small = convex_hull([(1.0, 0.0), (0.0, 1.0)])
        big = convex_hull([(2.0, 0.0), (0.0, 2.0)])
        assert region_strict_subset(small, big)
        assert not region_strict_subset(big, small)
        assert not region_strict_subset(big, big)

    def test_point_region_validation(self):
        with pytest.raises(ValueError):
            DofPoint(-0.5, 1.0)
        with pytest.raises(ValueError):
            DofPoint(float("nan"), 1.0)
        with pytest.raises(ValueError):
            DofRegion((DofPoint(1.0, 1.0),))  # does not start at the origin


class TestGridMaximin:
    def test_symmetric_max_min_in_tau(self):
        grid = GridSpec(tau_steps=2001, gamma_steps=2, gamma_max=1.0)
        value, (tau, gamma, r) = grid_maximin(
            lambda t, g, r: np.minimum(2 * t, 2 * (1 - t)) + 0 * g, 2, grid)
        assert value == pytest.approx(1.0, abs=1e-3)
        assert tau == pytest.approx(0.5, abs=1e-3)

    def test_relay_hd_objective(self):
        m1, m2 = min(2, 6), min(6, 3)
        grid = GridSpec(tau_steps=2001, gamma_steps=2, gamma_max=1.0)
        value, (tau, gamma, r) = grid_maximin(
            lambda t, g, r: np.minimum(t * m1, g * (1 - t) * m2), 2, grid)
        assert value == pytest.approx(6 / 5, abs=2e-3)
        assert tau == pytest.approx(3 / 5, abs=1e-3)
        assert gamma == 1.0

    def test_relay_fd_objective_hits_closed_form(self):
        c = 0.5

        def objective(t, g, r):
            lead = np.maximum(0.0, 1 - g * c)
            return np.minimum.reduce([lead * 4, lead * r, g * (8 - r), g * 4])

        grid = GridSpec(tau_steps=2, gamma_steps=2001, gamma_max=1.0)
        value, (tau, gamma, r) = grid_maximin(objective, 8, grid)
        assert value == pytest.approx(8 / 3, abs=2e-3)
        assert gamma == pytest.approx(2 / 3, abs=1e-3)
        assert r == 4

    def test_empty_domain(self):
        with pytest.raises(EmptyDomain):
            grid_maximin(lambda t, g, r: g, 1, GridSpec())

    def test_tie_breaks_prefer_small_r_gamma_tau(self):
        grid = GridSpec(tau_steps=3, gamma_steps=4, gamma_max=1.0)
        value, (tau, gamma, r) = grid_maximin(lambda t, g, r: np.ones_like(g), 5, grid)
        assert value == 1.0
        assert r == 1 and gamma == 0.25 and tau == 0.0

    def test_exact_points_override_grid_resolution(self):
        # sharp peak exactly at gamma = 1/3, far from the coarse grid
        def objective(t, g, r):
            return 1.0 - np.abs(g - 1.0 / 3.0)

        coarse = GridSpec(tau_steps=2, gamma_steps=5, gamma_max=1.0)
        v0, _ = grid_maximin(objective, 2, coarse)
        with_exact = GridSpec(tau_steps=2, gamma_steps=5, gamma_max=1.0,
                              include_exact_points=((0.0, 1.0 / 3.0),))
        v1, (_, gamma, _) = grid_maximin(objective, 2, with_exact)
        assert v1 == pytest.approx(1.0) and v1 > v0
        assert gamma == pytest.approx(1.0 / 3.0)


def _fd_objective(n_a, n_r, n_b, lam, mode):
    c = 1.0 - lam

    def objective(t, g, r):
        t_tx = relay_tx_antennas(n_r, r, mode)
        lead = np.maximum(0.0, 1.0 - g * c)
        return np.minimum.reduce([lead * n_a, lead * r, g * t_tx, g * n_b])

    return objective


def test_grid_refinement_converges_on_acceptance_cases():
    # pure uniform grids, no analytic inserts: 2001 vs 4001 steps within 1e-3;
    # nondecreasing is guaranteed for the nested doubling 2001 -> 4002
    modes = (DuplexMode.AC_FD, DuplexMode.RC_FD)
    lams = (0.0, 0.25, 0.5, 0.75, 0.9, 1.0)
    worst = 0.0
    for mode in modes:
        for lam in lams:
            for n in range(1, 7):
                for n_r in range(2, 13):
                    obj = _fd_objective(n, n_r, n, lam, mode)
                    coarse, _ = grid_maximin(obj, n_r, GridSpec(tau_steps=2, gamma_steps=2001))
                    nested, _ = grid_maximin(obj, n_r, GridSpec(tau_steps=2, gamma_steps=4002))
                    fine, _ = grid_maximin(obj, n_r, GridSpec(tau_steps=2, gamma_steps=4001))
                    assert nested >= coarse - 1e-15
                    worst = max(worst, abs(fine - coarse))
    assert worst < 1e-3


def test_closed_form_within_grid_resolution():
    # uniform grid alone reaches the exact optimum up to one step's Lipschitz error
    for mode in (DuplexMode.AC_FD, DuplexMode.RC_FD):
        for lam in (0.0, 0.5, 0.9, 1.0):
            for n_r in (2, 5, 8, 12):
                exact = twohop_fd_dof(4, n_r, 4, mode, SiParams(lam))
                grid_val, _ = grid_maximin(
                    _fd_objective(4, n_r, 4, lam, mode), n_r,
                    GridSpec(tau_steps=2, gamma_steps=2001))
                assert grid_val <= exact + 1e-12
                assert abs(exact - grid_val) < 2e-3
