import json
import math
import subprocess
import sys

import numpy as np
import pytest

from fracsemi import __version__
from fracsemi.cli import main


def run(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    out, err = capsys.readouterr()
    return info.value.code, out, err


class TestKernel:
    def test_closed_example(self, capsys):
        code, out, _ = run(["kernel", "--s", "0.5", "--N", "1", "--t", "1", "--r", "0", "--method", "closed"], capsys)
        assert code == 0 and out.strip() == "0.3183099"

    @pytest.mark.parametrize("method", ["subordinated", "fourier"])
    def test_routes_agree(self, capsys, method):
        code, out, _ = run(["kernel", "--s", "0.5", "--t", "1", "--r", "1", "--method", method], capsys)
        assert code == 0 and float(out) == pytest.approx(0.5 / math.pi, rel=1e-6)

    def test_csv_sweep(self, capsys, tmp_path):
        path = tmp_path / "k.csv"
        code, _, _ = run(["kernel", "--s", "0.5", "--t", "0.5,2", "--r", "0,1,3", "--out", str(path)], capsys)
        assert code == 0
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "t,r,s,N,method,value"
        assert len(lines) == 7
        t, r, _, _, method, value = lines[1].split(",")
        assert method == "subordinated"
        assert float(value) == pytest.approx(2.0 / math.pi, rel=1e-6)
        # 17 significant digits round-trip exactly
        assert value == "%.17g" % float(value)

    def test_complex_time(self, capsys):
        code, out, _ = run(["kernel", "--s", "0.5", "--t", "1", "--t-imag", "1", "--method", "fourier",
                            "--format", "json"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["columns"][-2:] == ["value_real", "value_imag"]
        z = 1 + 1j
        want = z / (math.pi * z * z)
        assert complex(*doc["rows"][0][-2:]) == pytest.approx(want, rel=1e-9)

    @pytest.mark.parametrize("argv", [
        ["kernel", "--s", "1.5", "--t", "1"],
        ["kernel", "--s", "0.3", "--t", "1", "--method", "closed"],
        ["kernel", "--s", "0.5", "--t", "-1"],
        ["kernel", "--s", "0.5", "--t", "1", "--N", "2", "--method", "fourier"],
        ["kernel", "--s", "0.5", "--t", "1", "--t-imag", "1"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(argv, capsys)
        assert code == 2 and err


class TestSolveSpectrum:
    def test_malformed_s(self, capsys, tmp_path):
        argv = ["solve", "--a", "-1", "--b", "1", "--n", "16", "--s", "1.5", "--lambda", "0", "--f", "one",
                "--out", str(tmp_path / "u.csv")]
        code, _, err = run(argv, capsys)
        assert code == 2 and "--s" in err
        assert not (tmp_path / "u.csv").exists()

    def test_bad_interval_names_flag(self, capsys):
        code, _, err = run(["solve", "--s", "0.5", "--a", "1", "--b", "-1"], capsys)
        assert code == 2 and "--a/--b" in err

    def test_solve_torsion(self, capsys, tmp_path):
        path = tmp_path / "u.csv"
        code, _, _ = run(["solve", "--s", "0.5", "--n", "256", "--f", "one", "--out", str(path)], capsys)
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        assert code == 0 and data.shape == (256, 2)
        assert data[:, 1].max() == pytest.approx(1.0, rel=0.05)

    @pytest.mark.parametrize("rhs", ["gaussian", "bump"])
    def test_rhs_choices(self, capsys, rhs):
        code, out, _ = run(["solve", "--s", "0.4", "--n", "32", "--f", rhs, "--lambda", "1"], capsys)
        u = np.array([float(line.split(",")[1]) for line in out.splitlines()[1:]])
        assert code == 0 and np.all(u >= 0.0) and u.max() > 0.0

    def test_spectrum(self, capsys):
        code, out, _ = run(["spectrum", "--s", "0.5", "--n", "64", "--k", "3"], capsys)
        lines = out.splitlines()
        assert code == 0 and lines[0] == "index,eigenvalue" and len(lines) == 4
        lam = [float(line.split(",")[1]) for line in lines[1:]]
        assert lam == sorted(lam) and 1.0 < lam[0] < math.pi / 2

    def test_spectrum_json(self, capsys, tmp_path):
        path = tmp_path / "spec.json"
        code, _, _ = run(["spectrum", "--s", "0.5", "--n", "32", "--out", str(path)], capsys)
        doc = json.loads(path.read_text())
        assert code == 0 and doc["version"] == __version__ and len(doc["eigenvalues"]) == 32


class TestConvergence:
    def test_rows(self, capsys):
        code, out, _ = run(["convergence", "--s-list", "0.9"], capsys)
        lines = out.splitlines()
        assert code == 0 and lines[0] == "s,lhs,rhs,gap"
        s, lhs, rhs, gap = map(float, lines[1].split(","))
        assert s == 0.9 and rhs == pytest.approx(math.sqrt(math.pi / 2), abs=1e-6)

    def test_bad_s(self, capsys):
        code, _, err = run(["convergence", "--s-list", "0.5,1.0"], capsys)
        assert code == 2 and "--s-list" in err


class TestVerify:
    def test_json_report(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, _, err = run(["verify", "extension_constants", "resolvent_sector", "--n", "64",
                            "--out", str(path)], capsys)
        doc = json.loads(path.read_text())
        assert code == 0
        assert set(doc) == {"version", "config", "checks"}
        assert doc["config"]["seed"] == 42
        assert [c["name"] for c in doc["checks"]] == ["extension_constants", "resolvent_sector"]
        for c in doc["checks"]:
            assert set(c) == {"name", "fitted_constants", "max_violation", "tolerance", "pass", "samples", "seed"}
            assert c["pass"] is True
        assert err.count("PASS") == 2

    def test_failure_exit_code(self, capsys):
        # an s far from the domination regime fails that check honestly
        code, out, err = run(["verify", "domination", "--s", "0.3", "--n", "64"], capsys)
        assert code == 1 and "FAIL domination" in err

    def test_unknown_check(self, capsys):
        code, _, err = run(["verify", "bogus"], capsys)
        assert code == 2 and "bogus" in err

    def test_bad_omega(self, capsys):
        code, _, err = run(["verify", "extension_constants", "--omega", "1,-1"], capsys)
        assert code == 2 and "--omega" in err

    def test_threads_env(self, capsys, monkeypatch):
        monkeypatch.setenv("FRACSEMI_THREADS", "many")
        code, _, err = run(["verify", "extension_constants"], capsys)
        assert code == 2 and "FRACSEMI_THREADS" in err

    def test_byte_identical(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("FRACSEMI_THREADS", "2")
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            run(["verify", "submarkovian_forms", "holomorphy_axioms", "--n", "32", "--seed", "7", "--out", str(p)],
                capsys)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestConfig:
    def test_file_defaults_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"s": 0.5, "t": "1", "r": "0", "method": "closed"}))
        code, out, _ = run(["--config", str(cfg), "kernel"], capsys)
        assert code == 0 and out.strip() == "0.3183099"
        code, out, _ = run(["--config", str(cfg), "kernel", "--t", "2"], capsys)
        assert code == 0 and float(out) == pytest.approx(0.5 / math.pi, abs=1e-7)

    def test_bad_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        code, _, err = run(["--config", str(cfg), "kernel", "--s", "0.5", "--t", "1"], capsys)
        assert code == 2 and "config" in err


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "fracsemi.cli", "kernel", "--s", "0.5", "--t", "1", "--r", "0",
                           "--method", "closed"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "0.3183099"


def test_version(capsys):
    code, out, _ = run(["--version"], capsys)
    assert code == 0 and __version__ in out
