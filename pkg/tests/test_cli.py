"""Command-line interface: exit codes, outputs, validation, determinism."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from phasekit import cli, gridio

SCENARIOS = os.path.join(os.path.dirname(__file__), os.pardir, "scenarios")


def scenario(name):
    return os.path.join(SCENARIOS, name)


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def read_json(path):
    with open(path) as handle:
        return json.load(handle)


class TestWignerCommand:
    def test_writes_normalized_wigner(self, tmp_path):
        out = tmp_path / "w"
        code = cli.run(["wigner", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"), "--out", str(out)])
        assert code == 0
        with open(out / "wigner.csv") as handle:
            w = gridio.wigner_from_csv(handle.read())
        assert abs(w.normalization() - 1.0) < 1e-9
        summary = read_json(out / "summary.json")
        assert summary["purity"] == pytest.approx(1.0, abs=1e-6)

    def test_binary_format(self, tmp_path):
        out = tmp_path / "wb"
        code = cli.run(["wigner", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"), "--out", str(out),
                        "--format", "binary"])
        assert code == 0
        with open(out / "wigner.bin", "rb") as handle:
            w = gridio.wigner_from_binary(handle.read())
        assert abs(w.normalization() - 1.0) < 1e-9

    def test_missing_state_file_names_path(self, tmp_path, capsys):
        code = cli.run(["wigner", "--state", "missing.json",
                        "--grid", scenario("grid.json"),
                        "--out", str(tmp_path / "x")])
        assert code == 1
        record = json.loads(capsys.readouterr().err.strip())
        assert "missing.json" in record["message"]

    def test_cat_state_has_negative_values(self, tmp_path):
        out = tmp_path / "wc"
        code = cli.run(["wigner", "--state", scenario("cat.json"),
                        "--grid", scenario("grid.json"), "--out", str(out)])
        assert code == 0
        summary = read_json(out / "summary.json")
        assert summary["w_min"] < -0.05
        assert summary["negativity_volume"] > 0.1


class TestStateCommand:
    def test_moments(self, tmp_path):
        out = tmp_path / "s"
        code = cli.run(["state", "--state", scenario("packet.json"),
                        "--grid", scenario("grid.json"), "--out", str(out)])
        assert code == 0
        summary = read_json(out / "summary.json")
        assert summary["q_mean"] == pytest.approx(2.0, abs=1e-9)
        assert summary["p_mean"] == pytest.approx(1.0, abs=1e-9)
        assert summary["q_var"] == pytest.approx(0.64, abs=1e-9)


class TestEvolveCommand:
    def test_harmonic_run_conserves_norm_and_purity(self, tmp_path):
        out = tmp_path / "e"
        code = cli.run(["evolve", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"),
                        "--hamiltonian", scenario("evolve_harmonic.json"),
                        "--out", str(out)])
        assert code == 0
        rows = [line.split(",") for line in
                (out / "trajectory.csv").read_text().splitlines()[2:]]
        norms = np.array([float(r[2]) for r in rows])
        purities = np.array([float(r[3]) for r in rows])
        assert np.max(np.abs(norms - 1.0)) < 1e-9
        assert np.max(np.abs(purities - purities[0])) < 1e-9

    def test_cfl_violation_is_validation_error(self, tmp_path):
        bad = write_json(tmp_path / "bad.json", {
            "hamiltonian": {"mass": 1.0, "potential": [0.0, 0.0, 0.5]},
            "dt": 0.5, "steps": 10, "generator": "moyal"})
        code = cli.run(["evolve", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"),
                        "--hamiltonian", bad, "--out", str(tmp_path / "x")])
        assert code == 1


class TestTomographyCommands:
    def test_round_trip_through_files(self, tmp_path):
        out_t = tmp_path / "t"
        code = cli.run(["tomogram", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"), "--out", str(out_t),
                        "--angles", "64", "--nu-points", "256"])
        assert code == 0
        out_r = tmp_path / "r"
        code = cli.run(["reconstruct", "--tomogram",
                        str(out_t / "tomogram.csv"), "--out", str(out_r),
                        "--grid", scenario("grid.json")])
        assert code == 0
        summary = read_json(out_r / "summary.json")
        assert summary["normalization"] == pytest.approx(1.0, abs=1e-3)
        assert summary["purity"] == pytest.approx(1.0, abs=1e-3)

    def test_tomogram_values_nonnegative(self, tmp_path):
        out = tmp_path / "t2"
        code = cli.run(["tomogram", "--state", scenario("cat.json"),
                        "--grid", scenario("grid.json"), "--out", str(out),
                        "--angles", "32", "--nu-points", "256"])
        assert code == 0
        summary = read_json(out / "summary.json")
        assert summary["min_value"] >= -1e-9
        assert summary["worst_ray_norm_error"] < 1e-8


class TestSpinSearchCommand:
    def test_reports_violation(self, tmp_path):
        out = tmp_path / "sp"
        code = cli.run(["spin-search", "--resolution", "5",
                        "--out", str(out)])
        assert code == 0
        report = read_json(out / "spin_search.json")
        assert report["violated"] is True
        assert report["min_slack"] <= -0.40

    def test_resolution_validated(self, tmp_path):
        code = cli.run(["spin-search", "--resolution", "0.1",
                        "--out", str(tmp_path / "x")])
        assert code == 1


class TestHistoriesCommand:
    def test_two_slit_report(self, tmp_path):
        out = tmp_path / "h"
        code = cli.run(["histories", "--spec",
                        scenario("histories_twoslit.json"), "--out", str(out)])
        assert code == 0
        report = read_json(out / "histories_report.json")
        assert report["strict"]["consistent"] is False
        assert report["weak"]["consistent"] is False
        assert report["total"] == pytest.approx(1.0, abs=1e-10)


class TestDecayCommand:
    def test_survival_and_pole_outputs(self, tmp_path):
        out = tmp_path / "d"
        code = cli.run(["decay", "--model", scenario("decay_flat.json"),
                        "--out", str(out)])
        assert code == 0
        report = read_json(out / "pole.json")
        gamma = report["gamma_golden_rule"]
        assert abs(report["gamma_fit"] / gamma - 1.0) < 0.05
        assert abs(report["pole"]["im"] / (-gamma / 2) - 1.0) < 0.05
        lines = (out / "survival.csv").read_text().splitlines()
        probs = np.array([float(l.split(",")[3]) for l in lines[2:]])
        assert np.max(np.abs(probs - probs[::-1])) < 1e-12


class TestValidateCommand:
    def test_bundled_scenarios_are_valid(self, capsys):
        for name in ("grid.json", "gaussian.json", "packet.json", "cat.json",
                     "mixture.json", "evolve_harmonic.json",
                     "decay_flat.json", "histories_twoslit.json"):
            assert cli.run(["validate", scenario(name)]) == 0, name

    def test_non_power_of_two_grid_names_field(self, tmp_path, capsys):
        path = write_json(tmp_path / "grid.json",
                          {"q_min": -8.0, "q_max": 8.0, "n_points": 100})
        assert cli.run(["validate", path]) == 1
        assert "n_points" in capsys.readouterr().out

    def test_negative_mixture_weight_cites_constraint(self, tmp_path, capsys):
        path = write_json(tmp_path / "mix.json", {
            "type": "mixture", "components": [
                {"weight": -0.25,
                 "state": {"type": "gaussian", "q0": 0.0, "p0": 0.0,
                           "sigma": 1.0}},
                {"weight": 1.25,
                 "state": {"type": "gaussian", "q0": 1.0, "p0": 0.0,
                           "sigma": 1.0}}]})
        assert cli.run(["validate", path]) == 1
        out = capsys.readouterr().out
        assert "weight" in out and "nonnegative" in out


class TestThreadsFlag:
    def test_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PHASEKIT_THREADS", "3")
        out = tmp_path / "w"
        assert cli.run(["state", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"),
                        "--out", str(out)]) == 0
        assert read_json(out / "summary.json")["threads"] == 3

    def test_invalid_thread_count(self, tmp_path):
        assert cli.run(["state", "--state", scenario("gaussian.json"),
                        "--grid", scenario("grid.json"),
                        "--out", str(tmp_path / "x"), "--threads", "0"]) == 1


class TestDeterminism:
    def test_repeated_wigner_runs_are_byte_identical(self, tmp_path):
        payloads = []
        for i in range(2):
            out = tmp_path / f"run{i}"
            assert cli.run(["wigner", "--state", scenario("cat.json"),
                            "--grid", scenario("grid.json"),
                            "--out", str(out)]) == 0
            payloads.append((out / "wigner.csv").read_bytes()
                            + (out / "summary.json").read_bytes())
        assert payloads[0] == payloads[1]


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "phasekit", "validate", scenario("grid.json")],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert "OK" in result.stdout
