"""End-to-end tests of the command-line interface."""
import json

import numpy as np
import pytest

from gltkit.cli import main, TABLE2_REFERENCE


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_contains_registry_entries(capsys):
    code, out, _ = run_cli(capsys, "list")
    assert code == 0
    assert "fd_t1 | a(x)(2-2cos(theta)) | alpha=1" in out
    assert "Ln | (a/c)(6-6cos)/(2+cos) | alpha=(n+1)^-2" in out
    assert out.strip()


def test_spectrum_small_laplacian(capsys, tmp_path):
    path = tmp_path / "spec.csv"
    code, _, _ = run_cli(capsys, "spectrum", "--case", "fd_t1", "--coeff", "one",
                         "--n", "4", "--out", str(path))
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "n,index,value"
    values = sorted(float(line.split(",")[2]) for line in lines[1:])
    ref = sorted(2 - 2 * np.cos(np.arange(1, 5) * np.pi / 5))
    assert np.allclose(values, ref, atol=1e-12)


def test_spectrum_two_blocks(capsys, tmp_path):
    path = tmp_path / "spec.csv"
    code, _, _ = run_cli(capsys, "spectrum", "--case", "fd_t1", "--coeff", "xexp",
                         "--n", "50,100", "--out", str(path))
    assert code == 0
    lines = path.read_text().strip().splitlines()[1:]
    assert len(lines) == 150
    assert sum(1 for line in lines if line.startswith("50,")) == 50


def test_unknown_case_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--case", "fd_t99", "--n", "4")
    assert code == 2
    assert "unknown case" in err


def test_compare_writes_report_and_overlay(capsys, tmp_path):
    path = tmp_path / "cmp.json"
    code, _, _ = run_cli(capsys, "compare", "--case", "fd_t1", "--coeff", "xexp",
                         "--n", "50", "--r", "1000", "--quad-res", "100",
                         "--format", "json", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    rep = doc["reports"][0]
    for key in ("case", "n", "alpha_n", "functionals", "rearrangement_gap", "outliers"):
        assert key in rep
    assert rep["rearrangement_gap"] == pytest.approx(0.0327, abs=2e-3)
    overlay = (tmp_path / "cmp_overlay.csv").read_text().strip().splitlines()
    assert overlay[0] == "n,t,rearrangement,eigenvalue"
    assert len(overlay) == 51


def test_compare_schur_runs(capsys, tmp_path):
    path = tmp_path / "schur.json"
    code, _, _ = run_cli(capsys, "compare", "--case", "schur:rho=0", "--coeff", "one",
                         "--n", "40", "--r", "400", "--quad-res", "100",
                         "--format", "json", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["reports"][0]["case"] == "schur"


def test_compare_unbounded_symbol_records_refusal(capsys, tmp_path):
    path = tmp_path / "t7.json"
    code, _, _ = run_cli(capsys, "compare", "--case", "fd_t7:q=2", "--coeff", "one",
                         "--n", "40", "--quad-res", "100", "--mode", "sigma",
                         "--format", "json", "--out", str(path))
    assert code == 0
    rep = json.loads(path.read_text())["reports"][0]
    assert "rearrangement_error" in rep


def test_compare_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(capsys, "compare", "--case", "fe_t1", "--coeff", "xexp",
                             "--n", "30", "--r", "200", "--quad-res", "80",
                             "--format", "json", "--out", str(path))
        assert code == 0
    assert a.read_text() == b.read_text()


def test_certify_pass_and_unknown_family(capsys):
    code, out, _ = run_cli(capsys, "certify", "--family", "thm2", "--n", "50,100")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out

    code, _, err = run_cli(capsys, "certify", "--family", "bogus")
    assert code == 2
    assert "unknown certificate family" in err


def test_certify_fd_t4(capsys):
    code, out, _ = run_cli(capsys, "certify", "--family", "fd_t4", "--n", "50,100")
    assert code == 0
    assert out.count("[PASS]") == 4


def test_table2_benchmark(capsys, tmp_path):
    path = tmp_path / "t2.csv"
    code, out, _ = run_cli(capsys, "table2", "--out", str(path))
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert len(lines) == len(TABLE2_REFERENCE) + 1
    for line in lines[1:]:
        n, computed, reference, ok = line.split(",")
        assert ok == "yes"
        assert abs(float(computed) - float(reference)) <= max(5e-4, 0.05 * float(reference))
