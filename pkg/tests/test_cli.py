"""End-to-end tests for the command line interface."""

import json
import math

import pytest

from bicentric.cli import main
from bicentric.constants import ENV_TOL


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(ENV_TOL, raising=False)


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.json"
    code = main(["generate", "--n", "5", "--d", "0.2", "--start-angle", "0.7", "--out", str(path)])
    assert code == 0
    return path


class TestSolve:
    def test_json(self, capsys):
        assert main(["solve", "--n", "3", "--rk", "1", "--d", "0.2", "--json"]) == 0
        result = json.loads(capsys.readouterr().out)
        assert result["r_c"] == pytest.approx(0.48, abs=1e-11)
        assert result["r_e"] == pytest.approx(2.0, abs=1e-10)
        assert abs(result["euler3_residual"]) <= 1e-10

    def test_text(self, capsys):
        assert main(["solve", "--n", "4", "--d", "0.2"]) == 0
        out = capsys.readouterr().out
        assert "R_C = 0.6656" in out
        assert "R_E = " in out

    def test_no_simple_orbit(self, capsys):
        assert main(["solve", "--n", "6", "--winding", "2", "--d", "0.1"]) == 3
        assert "NoSolution" in capsys.readouterr().err

    def test_not_nested(self):
        assert main(["solve", "--n", "3", "--d", "1.5"]) == 2

    def test_missing_argument(self):
        assert main(["solve", "--d", "0.2"]) == 2

    def test_degenerate_n(self):
        assert main(["solve", "--n", "2", "--d", "0.2"]) == 2


class TestGenerateAndVerify:
    def test_round_trip(self, pentagon_file, capsys):
        assert pentagon_file.exists()
        capsys.readouterr()
        assert main(["verify", str(pentagon_file)]) == 0
        assert "All" in capsys.readouterr().out

    def test_json_report(self, pentagon_file, capsys):
        capsys.readouterr()
        assert main(["verify", str(pentagon_file), "--tol", "1e-10", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["overall_pass"] is True
        assert report["tolerance"] == 1e-10

    def test_tampered_excenter(self, pentagon_file, capsys):
        data = json.loads(pentagon_file.read_text())
        cx, cy = data["circles"]["e"]["cx"], data["circles"]["e"]["cy"]
        mx, my = data["excenters"][0]
        reach = math.hypot(mx - cx, my - cy)
        data["excenters"][0] = [mx + 1e-3 * (mx - cx) / reach, my + 1e-3 * (my - cy) / reach]
        pentagon_file.write_text(json.dumps(data))
        capsys.readouterr()

        assert main(["verify", str(pentagon_file), "--json"]) == 1
        entries = {e["name"]: e for e in json.loads(capsys.readouterr().out)["entries"]}
        assert entries["concyclicity"]["pass"] is False
        assert entries["concyclicity"]["value"] == pytest.approx(1e-3, rel=1e-6)

    def test_missing_file(self, tmp_path, capsys):
        assert main(["verify", str(tmp_path / "nope.json")]) == 2
        assert "❌" in capsys.readouterr().err

    def test_schema_error(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"schema_version\": 1}")
        assert main(["verify", str(path)]) == 2

    def test_env_tolerance(self, pentagon_file, monkeypatch):
        monkeypatch.setenv(ENV_TOL, "1e-30")
        assert main(["verify", str(pentagon_file)]) == 1
        assert main(["verify", str(pentagon_file), "--tol", "1e-6"]) == 0

    def test_bad_env_tolerance(self, pentagon_file, monkeypatch):
        monkeypatch.setenv(ENV_TOL, "abc")
        assert main(["verify", str(pentagon_file)]) == 2

    def test_generate_failure_writes_nothing(self, tmp_path):
        path = tmp_path / "strict.json"
        code = main(["generate", "--n", "5", "--d", "0.2", "--out", str(path), "--tol", "1e-30"])
        assert code == 1
        assert not path.exists()


def test_render(pentagon_file, tmp_path):
    out = tmp_path / "svg" / "pentagon.svg"
    assert main(["render", str(pentagon_file), "--out", str(out), "--show-excircles",
                 "--width", "300"]) == 0
    svg = out.read_bytes()
    assert svg.startswith(b"<?xml")
    assert b'width="300"' in svg


def test_sweep(tmp_path):
    out = tmp_path / "frames"
    code = main(["sweep", "--n", "4", "--d", "0.2", "--frames", "6", "--workers", "2", "--out", str(out)])
    assert code == 0
    assert len(list(out.glob("frame_*.json"))) == 6
    summary = json.loads((out / "summary.json").read_text())
    assert summary["frames"] == 6
    assert summary["porism_pass"] is True
    assert summary["rolling_pass"] is True
    assert summary["closure_spread"] <= 1e-9


def test_sweep_rejects_zero_frames(tmp_path):
    assert main(["sweep", "--n", "4", "--d", "0.2", "--frames", "0", "--out", str(tmp_path)]) == 2


def test_sweep_hundred_frames(tmp_path):
    out = tmp_path / "frames"
    assert main(["sweep", "--n", "4", "--d", "0.2", "--frames", "100", "--out", str(out)]) == 0
    assert len(list(out.glob("frame_*.json"))) == 100
    summary = json.loads((out / "summary.json").read_text())
    assert summary["max_closure_defect"] <= 1e-9
    assert summary["closure_spread"] <= 1e-9
    assert summary["max_excenter_deviation"] <= 1e-9


def test_generate_is_deterministic(tmp_path):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        code = main(["generate", "--n", "7", "--winding", "3", "--d", "0.05",
                     "--start-angle", "1.3", "--out", str(path)])
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
