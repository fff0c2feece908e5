import math

import pytest

from duplexdof.core_model import (
    DuplexMode,
    FdSplitOutOfRange,
    LinkBudget,
    SiParams,
    antenna_allocation,
    fd_splits,
    residual_si_power,
    sinr,
)


class TestSiParams:
    def test_valid_construction(self):
        si = SiParams(0.5, 2.0, 3.0)
        assert si.lam == 0.5 and si.beta == 2.0 and si.mu == 3.0

    @pytest.mark.parametrize("lam,beta,mu", [(-0.1, 1, 1), (1.1, 1, 1), (0.5, 0, 1),
                                             (0.5, 1, 0), (0.5, -1, 1), (0.5, 1, -2)])
    def test_rejects_out_of_range(self, lam, beta, mu):
        with pytest.raises(ValueError):
            SiParams(lam, beta, mu)


class TestResidualSiPower:
    def test_noise_floor_model(self):
        # lam=1 makes the residual power independent of the transmit power
        assert residual_si_power(100.0, SiParams(1.0, 2.0, 5.0)) == pytest.approx(0.1)
        assert residual_si_power(1e9, SiParams(1.0, 2.0, 5.0)) == pytest.approx(0.1)
        assert residual_si_power(0.0, SiParams(1.0, 2.0, 5.0)) == pytest.approx(0.1)

    def test_linear_model(self):
        assert residual_si_power(100.0, SiParams(0.0, 1.0, 7.0)) == pytest.approx(100.0)

    def test_square_root_model(self):
        got = residual_si_power(1e4, SiParams(0.5, 10.0, 10.0))
        assert got == pytest.approx(math.sqrt(10.0), abs=1e-9)

    def test_zero_power_with_partial_cancellation(self):
        assert residual_si_power(0.0, SiParams(0.7)) == 0.0

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            residual_si_power(-1.0, SiParams(0.5))

    @pytest.mark.parametrize("lam", [0.1, 0.4, 0.8])
    def test_strictly_increasing_and_sublinear(self, lam):
        si = SiParams(lam)
        powers = [0.5, 1.0, 3.0, 10.0, 250.0]
        vals = [residual_si_power(p, si) for p in powers]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        for p in powers:
            for c in (1.5, 2.0, 10.0):
                assert residual_si_power(c * p, si) < c * residual_si_power(p, si)

    def test_lam_one_constant(self):
        si = SiParams(1.0, 3.0, 4.0)
        assert residual_si_power(1.0, si) == residual_si_power(12345.0, si)


class TestSinr:
    def test_hd_zero_si(self):
        assert sinr(LinkBudget(10.0, 1.0, 1.0), 1.0, 0.0) == pytest.approx(10.0)

    def test_direct_substitution(self):
        assert sinr(LinkBudget(10.0, 2.0, 1.0), 1.0, 4.0) == pytest.approx(1.0)
        assert sinr(LinkBudget(100.0, 1.0, 1.0), 1.0, 1.0) == pytest.approx(50.0)

    def test_monotonicity(self):
        base = sinr(LinkBudget(10.0, 1.0), 1.0, 1.0)
        assert sinr(LinkBudget(20.0, 1.0), 1.0, 1.0) > base
        assert sinr(LinkBudget(10.0, 2.0), 1.0, 1.0) < base
        assert sinr(LinkBudget(10.0, 1.0), 2.0, 1.0) < base
        assert sinr(LinkBudget(10.0, 1.0), 1.0, 2.0) < base

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            LinkBudget(-1.0)
        with pytest.raises(ValueError):
            LinkBudget(1.0, path_loss=0.0)
        with pytest.raises(ValueError):
            LinkBudget(1.0, noise_var=0.0)
        with pytest.raises(ValueError):
            LinkBudget(1.0, max_relay_power=-2.0)


class TestAntennaAllocation:
    def test_hd_uses_everything(self):
        split = antenna_allocation(2, DuplexMode.HALF_DUPLEX)
        assert (split.rx, split.tx, split.total_antennas_used) == (2, 2, 2)

    def test_ac_split(self):
        split = antenna_allocation(2, DuplexMode.AC_FD, 1)
        assert (split.rx, split.tx, split.total_antennas_used) == (1, 1, 2)

    def test_rc_split(self):
        split = antenna_allocation(2, DuplexMode.RC_FD, 1)
        assert (split.rx, split.tx, split.total_antennas_used) == (1, 2, 3)

    @pytest.mark.parametrize("mode", [DuplexMode.AC_FD, DuplexMode.RC_FD])
    @pytest.mark.parametrize("bad_r", [0, 4, 5, -1])
    def test_out_of_range_split(self, mode, bad_r):
        with pytest.raises(FdSplitOutOfRange):
            antenna_allocation(4, mode, bad_r)

    def test_missing_rx_count(self):
        with pytest.raises(ValueError):
            antenna_allocation(4, DuplexMode.AC_FD)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_conservation_rules(self, n):
        # AC keeps the antenna count; RC keeps the 2N RF chains (rx doubled)
        for split in fd_splits(n, DuplexMode.AC_FD):
            assert split.rx + split.tx == n
            assert split.total_antennas_used == n
        for split in fd_splits(n, DuplexMode.RC_FD):
            assert 2 * split.rx + split.tx == 2 * n
            assert split.total_antennas_used == 2 * n - split.rx

    def test_mode_parsing(self):
        assert DuplexMode.from_string("HD") is DuplexMode.HALF_DUPLEX
        assert DuplexMode.from_string("ac") is DuplexMode.AC_FD
        assert DuplexMode.from_string("rc") is DuplexMode.RC_FD
        with pytest.raises(ValueError):
            DuplexMode.from_string("fd")
