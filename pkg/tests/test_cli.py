import csv
import json

import numpy as np
import pytest

from noisegauge.cli import main

NEWT_JSON = json.dumps(
    {"kind": "unital", "t": [0, 0.5, 0, 0.73, 0, 0, 0, 0, 0.5]}
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAnalyze:
    def test_swap_fixture(self, capsys):
        code, out, _ = run(capsys, "analyze", NEWT_JSON, "--cap", "8")
        assert code == 0
        data = json.loads(out)
        assert data["mu_c"] == pytest.approx(0.73 / 1.73, abs=1e-4)
        assert data["n_c"] == 2
        assert data["cap"] == 8
        assert data["ebn"][:2] == [False, True]

    def test_damping_band(self, capsys):
        code, out, _ = run(capsys, "analyze", '{"kind":"gad","p":0.9,"gamma":0.5}')
        assert code == 0
        assert json.loads(out)["n_c"] == 1

    def test_rotation_channel(self, capsys):
        channel = json.dumps({"kind": "unital", "t": list(np.eye(3).ravel())})
        code, out, _ = run(capsys, "analyze", channel, "--cap", "8")
        data = json.loads(out)
        assert data["mu_c"] == pytest.approx(2 / 3, abs=1e-4)
        assert data["n_c"] == "exceeds_cap"

    def test_gaussian_channel(self, capsys):
        code, out, _ = run(
            capsys, "analyze", '{"family":"attenuation","k":0.5,"n0":0.05}', "--cap", "8"
        )
        data = json.loads(out)
        assert data["mu_c"] is None and data["n_c"] == 2

    def test_reads_from_file(self, capsys, tmp_path):
        path = tmp_path / "channel.json"
        path.write_text(NEWT_JSON)
        code, out, _ = run(capsys, "analyze", str(path), "--cap", "4")
        assert code == 0 and json.loads(out)["n_c"] == 2

    def test_malformed_json_exits_2(self, capsys):
        code, _, err = run(capsys, "analyze", "{broken")
        assert code == 2 and "malformed" in err

    def test_invariant_violation_exits_3(self, capsys):
        code, _, err = run(capsys, "analyze", '{"kind":"gad","p":2.0,"gamma":0.1}')
        assert code == 3 and "unit square" in err


class TestSweep:
    def test_fig1_interior_point(self, capsys, tmp_path):
        out_path = tmp_path / "f1.csv"
        code, _, _ = run(
            capsys, "sweep", "fig1", "--out", str(out_path),
            "--grid", "lambda1=0.3:0.6:2", "--grid", "lambda2=0.3:0.6:2",
        )
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["lambda1", "lambda2", "ebn_order"]
        first = rows[1]
        assert first[0] == "0.3" and first[1] == "0.3" and first[2] == "2"

    def test_fig2_band_boundary(self, capsys, tmp_path):
        out_path = tmp_path / "f2.csv"
        code, _, _ = run(
            capsys, "sweep", "fig2", "--out", str(out_path),
            "--grid", "p=0.8:0.86:4", "--grid", "gamma=0.5:0.6:2",
        )
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["p", "gamma", "n_c"]
        by_point = {(r[0], r[1]): r[2] for r in rows[1:]}
        assert by_point[("0.8", "0.5")] == "2"
        assert by_point[("0.86", "0.5")] == "1"

    def test_fig2_band_monotone_in_p(self, capsys, tmp_path):
        out_path = tmp_path / "f2big.csv"
        code, _, _ = run(capsys, "sweep", "fig2", "--out", str(out_path), "--steps", "21")
        assert code == 0
        rows = list(csv.reader(out_path.open()))[1:]
        series = {}
        for p, gamma, order in rows:
            series.setdefault(gamma, []).append((float(p), order))
        for gamma, points in series.items():
            orders = [float("inf") if o == "inf" else int(o) for _, o in sorted(points)]
            assert all(a >= b for a, b in zip(orders, orders[1:]))

    def test_fig2_inset_ordering(self, capsys, tmp_path):
        out_path = tmp_path / "inset.csv"
        code, _, _ = run(capsys, "sweep", "fig2-inset", "--out", str(out_path), "--steps", "11")
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["p", "mu_c", "mu_c_sq"]
        for _, mu, mu_sq in rows[1:]:
            assert float(mu_sq) <= float(mu) + 1e-12

    def test_fig3_header_and_band(self, capsys, tmp_path):
        out_path = tmp_path / "f3.csv"
        code, _, _ = run(
            capsys, "sweep", "fig3", "--out", str(out_path),
            "--grid", "p=0.61:0.7:2", "--grid", "gamma=0.25:0.3:2",
        )
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["p", "gamma", "amendable", "filter_kind"]
        by_point = {(r[0], r[1]): (r[2], r[3]) for r in rows[1:]}
        assert by_point[("0.61", "0.25")] == ("true", "s1")
        assert by_point[("0.7", "0.25")] == ("false", "")

    def test_fig4_header(self, capsys, tmp_path):
        out_path = tmp_path / "f4.csv"
        code, _, _ = run(capsys, "sweep", "fig4", "--out", str(out_path), "--steps", "4")
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["p", "mu_c_sq", "mu_c_filtered"]
        assert len(rows) == 5

    def test_fig5_attenuation_boundary(self, capsys, tmp_path):
        out_path = tmp_path / "f5.csv"
        code, _, _ = run(
            capsys, "sweep", "fig5", "--out", str(out_path),
            "--fixed", "family=attenuation",
            "--grid", "k=0.5:0.6:2", "--grid", "n0=0.2:0.25:2",
        )
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["k", "n0", "family", "n_c"]
        by_point = {(r[0], r[1]): r[3] for r in rows[1:] if r[2] == "attenuation"}
        assert by_point[("0.5", "0.2")] == "2"
        assert by_point[("0.5", "0.25")] == "1"

    def test_deterministic_output(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            code, _, _ = run(
                capsys, "sweep", "fig3", "--out", str(path),
                "--steps", "6", "--seed", "42",
            )
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_path_exits_4(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "sweep", "fig2", "--out", str(tmp_path / "no" / "dir.csv"),
            "--steps", "3",
        )
        assert code == 4 and "cannot write" in err

    def test_bad_grid_flag_exits_3(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "sweep", "fig2", "--out", str(tmp_path / "x.csv"),
            "--grid", "p=1:0:5",
        )
        assert code == 3


class TestVerify:
    def test_all_fixtures_pass(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        lines = [ln for ln in out.splitlines() if "PASS" in ln or "FAIL" in ln]
        assert lines and all("PASS" in ln for ln in lines)
        assert "fixtures passed" in out


class TestAmend:
    def test_swap_fixture(self, capsys):
        code, out, _ = run(
            capsys, "amend", NEWT_JSON, "--budget", "27", "--cap", "16", "--seed", "42"
        )
        assert code == 0
        data = json.loads(out)
        assert data["base_nc"] == 2
        assert data["filtered_nc"] >= 3
        assert data["amendable"] is True

    def test_depolarizing_not_amendable(self, capsys):
        channel = json.dumps({"kind": "unital", "t": [0.0] * 9})
        code, out, _ = run(capsys, "amend", channel, "--budget", "8", "--cap", "4")
        assert code == 0
        assert json.loads(out)["amendable"] is False

    def test_deterministic(self, capsys):
        outs = []
        for _ in range(2):
            code, out, _ = run(
                capsys, "amend", NEWT_JSON, "--budget", "27", "--cap", "8", "--seed", "5"
            )
            assert code == 0
            outs.append(out)
        assert outs[0] == outs[1]

    def test_gaussian_rejected(self, capsys):
        code, _, _ = run(capsys, "amend", '{"family":"attenuation","k":0.5,"n0":0.1}')
        assert code == 3
