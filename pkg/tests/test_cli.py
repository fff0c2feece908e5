import json

import pytest

from duplexdof.cli import main, region_from_lists
from duplexdof.core_model import DuplexMode, SiParams
from duplexdof.dof_closed_form import twoway_fd_region


def read_csv_rows(path):
    rows = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#"):
                continue
            rows.append(line.rstrip("\n").split(","))
    return rows[0], rows[1:]


class TestDofCommand:
    def test_two_way_region_files(self, tmp_path):
        out = tmp_path / "fig"
        code = main(["dof", "two-way", "--na", "4", "--nb", "6", "--lambda", "0.9",
                     "--modes", "hd,ac,rc", "--out", str(out)])
        assert code == 0
        header, rows = read_csv_rows(f"{out}_hd.csv")
        assert header == ["mode", "vertex_index", "d_ab", "d_ba"]
        pts = {(float(r[2]), float(r[3])) for r in rows}
        assert pts == {(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)}
        for mode in ("ac", "rc"):
            assert (tmp_path / f"fig_{mode}.csv").exists()
        _, oracle = read_csv_rows(f"{out}_oracle.csv")
        for row in oracle:
            assert float(row[4]) < 1e-3

    def test_two_hop_scalar_rows(self, tmp_path):
        out = tmp_path / "th"
        code = main(["dof", "two-hop", "--na", "4", "--nr", "8", "--nb", "4",
                     "--lambda", "0.5", "--modes", "hd,ac", "--out", str(out)])
        assert code == 0
        header, rows = read_csv_rows(f"{out}.csv")
        assert header == ["mode", "tau_opt", "gamma_opt", "r_opt", "dof"]
        hd = next(r for r in rows if r[0] == "hd")
        assert (float(hd[1]), float(hd[2]), hd[3], float(hd[4])) == (0.5, 1.0, "", 2.0)
        ac = next(r for r in rows if r[0] == "ac")
        assert ac[1] == ""
        assert float(ac[2]) == pytest.approx(2 / 3, abs=1e-9)
        assert int(ac[3]) == 4
        assert float(ac[4]) == pytest.approx(8 / 3, abs=1e-9)

    def test_two_hop_first_table_row(self, tmp_path):
        out = tmp_path / "row1"
        main(["dof", "two-hop", "--na", "4", "--nr", "2", "--nb", "4",
              "--modes", "hd", "--out", str(out)])
        _, rows = read_csv_rows(f"{out}.csv")
        assert (float(rows[0][1]), float(rows[0][2]), float(rows[0][4])) == (0.5, 1.0, 1.0)

    def test_json_round_trip_reproduces_vertices(self, tmp_path):
        out = tmp_path / "regions.json"
        main(["dof", "two-way", "--na", "4", "--nb", "6", "--lambda", "0.9",
              "--modes", "ac,rc", "--out", str(out), "--format", "json"])
        payload = json.loads(out.read_text())
        si = SiParams(0.9)
        for mode_name, mode in (("ac", DuplexMode.AC_FD), ("rc", DuplexMode.RC_FD)):
            rebuilt = region_from_lists(payload["results"]["regions"][mode_name])
            expected = twoway_fd_region(4, 6, mode, si)
            assert [v.as_tuple() for v in rebuilt.vertices] == [
                v.as_tuple() for v in expected.vertices]
        assert payload["config"]["version"]
        assert payload["config"]["lam"] == 0.9

    def test_twr_regions(self, tmp_path):
        out = tmp_path / "twr.json"
        code = main(["dof", "twr", "--na", "4", "--nr", "6", "--nb", "4",
                     "--lambda", "0.9", "--modes", "hd,ac", "--out", str(out),
                     "--format", "json"])
        assert code == 0
        payload = json.loads(out.read_text())
        regions = payload["results"]["regions"]
        assert set(regions) == {"hd_ub", "hd_macbc", "ac"}
        sums = [x + y for x, y in regions["hd_macbc"]]
        assert max(sums) == pytest.approx(3.0)

    def test_missing_relay_count_is_config_error(self, tmp_path):
        code = main(["dof", "two-hop", "--na", "4", "--nb", "4",
                     "--out", str(tmp_path / "x")])
        assert code == 2

    def test_bad_lambda_is_config_error(self, tmp_path):
        code = main(["dof", "two-way", "--na", "4", "--nb", "4", "--lambda", "1.5",
                     "--out", str(tmp_path / "x")])
        assert code == 2

    def test_unwritable_path_is_io_error(self):
        code = main(["dof", "two-way", "--na", "2", "--nb", "2", "--lambda", "0.9",
                     "--out", "/nonexistent-dir/deep/x"])
        assert code == 3

    def test_default_lambda_is_recorded_assumption(self, tmp_path):
        out = tmp_path / "assume.json"
        main(["dof", "twr", "--na", "4", "--nr", "6", "--nb", "4",
              "--modes", "hd,ac", "--out", str(out), "--format", "json"])
        payload = json.loads(out.read_text())
        assert any("0.9" in note for note in payload["assumptions"])
        assert payload["config"]["lam"] == 0.9

    def test_plot_file_rendered(self, tmp_path):
        out = tmp_path / "fig"
        code = main(["dof", "two-way", "--na", "3", "--nb", "3", "--lambda", "0.8",
                     "--modes", "hd,rc", "--out", str(out), "--plot"])
        assert code == 0
        png = tmp_path / "fig.png"
        assert png.exists() and png.stat().st_size > 1000

    def test_nr_sweep_rows(self, tmp_path):
        out = tmp_path / "sweep"
        main(["dof", "two-hop", "--na", "4", "--nr", "6", "--nb", "4", "--lambda", "0.5",
              "--modes", "hd,ac", "--nr-sweep", "2:6", "--out", str(out)])
        _, rows = read_csv_rows(f"{out}_sweep.csv")
        assert {(r[1], int(r[0])) for r in rows} == {
            (m, nr) for m in ("hd", "ac") for nr in range(2, 7)}


class TestRateCommand:
    def test_byte_identical_reruns(self, tmp_path):
        args = ["rate", "p2p", "--na", "2", "--nb", "2", "--samples", "2000",
                "--seed", "9", "--snr", "40:60:5"]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        b1 = (tmp_path / "a.csv").read_bytes()
        b2 = (tmp_path / "b.csv").read_bytes()
        # bodies identical; only the embedded output_path differs
        body1 = b"\n".join(l for l in b1.split(b"\n") if not l.startswith(b"#"))
        assert body1 == b"\n".join(l for l in b2.split(b"\n") if not l.startswith(b"#"))
        assert main(args + ["--out", str(out1)]) == 0
        assert (tmp_path / "a.csv").read_bytes() == b1

    def test_p2p_slope_row(self, tmp_path):
        out = tmp_path / "p2p"
        code = main(["rate", "p2p", "--na", "2", "--nb", "2", "--samples", "4000",
                     "--seed", "3", "--out", str(out)])
        assert code == 0
        header, rows = read_csv_rows(f"{out}.csv")
        assert header == ["snr_db", "mode", "r_ab", "r_ab_stderr", "r_ba", "r_ba_stderr"]
        slope_rows = [r for r in rows if r[0] == "slope"]
        assert len(slope_rows) == 1
        assert float(slope_rows[0][2]) == pytest.approx(2.0, rel=0.05)

    def test_si_dominance_per_row(self, tmp_path):
        rows_by_lam = {}
        for lam in ("1.0", "0.5"):
            out = tmp_path / f"fd{lam}"
            main(["rate", "two-hop", "--na", "2", "--nr", "4", "--nb", "2",
                  "--lambda", lam, "--modes", "ac", "--gamma", "1.0",
                  "--samples", "2000", "--seed", "4", "--snr", "40:55:5",
                  "--out", str(out)])
            _, rows = read_csv_rows(f"{out}.csv")
            rows_by_lam[lam] = {r[0]: float(r[2]) for r in rows if r[0] != "slope"}
        for snr in rows_by_lam["1.0"]:
            assert rows_by_lam["1.0"][snr] > rows_by_lam["0.5"][snr]

    def test_saturating_fit_exits_4(self, tmp_path):
        out = tmp_path / "sat"
        code = main(["rate", "two-hop", "--na", "1", "--nr", "2", "--nb", "1",
                     "--lambda", "0", "--modes", "ac", "--gamma", "1.0",
                     "--samples", "2000", "--seed", "4", "--snr", "40:70:5",
                     "--out", str(out)])
        assert code == 4
        _, rows = read_csv_rows(f"{out}.csv")  # rows still written
        slope_rows = [r for r in rows if r[0] == "slope"]
        assert abs(float(slope_rows[0][2])) < 0.1


class TestAdviseCommand:
    def run_advise(self, capsys, *extra):
        code = main(["advise", *extra])
        out = capsys.readouterr().out
        return code, json.loads(out)

    def test_fd_wins_with_big_relay(self, capsys):
        code, payload = self.run_advise(
            capsys, "two-hop", "--na", "4", "--nr", "8", "--nb", "4",
            "--lambda", "0.5", "--modes", "ac")
        assert code == 0
        rec = payload["results"]
        assert rec["recommended_mode"] == "ac"
        assert rec["margin_dof"] == pytest.approx(2 / 3, abs=1e-9)
        assert "N_R > N*(2-lambda)" in rec["binding_condition"]

    def test_hd_wins_below_threshold(self, capsys):
        code, payload = self.run_advise(
            capsys, "two-hop", "--na", "4", "--nr", "4", "--nb", "4",
            "--lambda", "0.5", "--modes", "ac")
        assert payload["results"]["recommended_mode"] == "hd"

    def test_asymmetric_rule(self, capsys):
        code, payload = self.run_advise(
            capsys, "two-hop", "--na", "1", "--nr", "2", "--nb", "4",
            "--lambda", "0.4", "--modes", "ac")
        rec = payload["results"]
        assert rec["recommended_mode"] == "hd"
        assert "min(N_B, 1/lambda)" in rec["binding_condition"]

    def test_twr_symmetric_objective_prefers_hd(self, capsys):
        code, payload = self.run_advise(
            capsys, "twr", "--na", "4", "--nr", "6", "--nb", "4",
            "--lambda", "0.9", "--modes", "ac")
        rec = payload["results"]
        assert rec["recommended_mode"] == "hd"
        # corner advantage of FD reported separately
        assert rec["detail"]["ac_corner_advantage"] == pytest.approx(3 / 1.1 - 2, abs=1e-9)

    def test_two_way_rc_witness(self, capsys):
        code, payload = self.run_advise(
            capsys, "two-way", "--na", "6", "--nb", "6",
            "--lambda", "0.8", "--modes", "ac,rc")
        rec = payload["results"]
        assert rec["recommended_mode"] == "rc"
        assert rec["margin_dof"] == pytest.approx(0.4, abs=1e-9)

    def test_two_way_ac_always_hd(self, capsys):
        code, payload = self.run_advise(
            capsys, "two-way", "--na", "4", "--nb", "6",
            "--lambda", "0.9", "--modes", "ac")
        assert payload["results"]["recommended_mode"] == "hd"
