"""End-to-end CLI checks against stored golden outputs.

Set UPDATE_GOLDEN=1 to rewrite the golden files for the active kernel backend.
"""

import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from graphsteklov import _kernels
from graphsteklov.cli import EXIT_BOUNDARY, EXIT_NUMERIC, EXIT_OK, EXIT_PARSE, EXIT_VIOLATION, main
from graphsteklov.graph_core import format_graph, parse_graph

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def check_golden(name, text):
    path = GOLDEN / name
    if UPDATE:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    assert path.exists(), f"missing golden file {path}; rerun with UPDATE_GOLDEN=1"
    assert text == path.read_text(encoding="utf-8")


JSON_CASES = {
    "spectra_p3": ["spectra", DATA / "p3.graph", "--steklov", "--dtn"],
    "spectra_weighted": ["spectra", DATA / "weighted.graph", "--steklov", "--dirichlet", "a"],
    "verify_c4": ["verify", DATA / "c4.graph"],
    "verify_p4": ["verify", DATA / "p4.graph"],
    "verify_k13": ["verify", DATA / "k13.graph"],
    "verify_weighted": ["verify", DATA / "weighted.graph"],
    "bounds_k13": ["bounds", DATA / "k13.graph", "--index", "3", "--index", "2"],
    "bounds_c4": ["bounds", DATA / "c4.graph", "--index", "2", "--cd", "2", "3"],
    "curvature_c4": ["curvature", DATA / "c4.graph", "--pairs", "adjacent"],
    "curvature_weighted_all": ["curvature", DATA / "weighted.graph", "--pairs", "all"],
}

GEN_CASES = {
    "star_3_1.graph": ["gen", "star", "--degree", "3", "--arm", "1", "--boundary", "endpoints"],
    "star_4_2.graph": ["gen", "star", "--degree", "4", "--arm", "2"],
    "comb_3_2.graph": ["gen", "comb", "--teeth", "3", "--tooth-length", "2"],
    "cycle_6.graph": ["gen", "cycle", "--n", "6", "--boundary", "0,3"],
    "complete_4.graph": ["gen", "complete", "--n", "4", "--boundary", "0"],
    "random_s7.graph": ["gen", "random", "--n", "9", "--p", "0.4", "--seed", "7"],
    "random_unit_s3.graph": ["gen", "random", "--n", "8", "--p", "0.5", "--seed", "3", "--unit"],
}


@pytest.mark.parametrize("name", sorted(JSON_CASES))
def test_json_golden(capsys, name):
    code, out, _ = run(capsys, *JSON_CASES[name])
    assert code == EXIT_OK
    check_golden(f"{_kernels.BACKEND}/{name}.json", out)
    doc = json.loads(out)
    assert list(doc) == ["input", "command", "tolerances", "results"]


@pytest.mark.parametrize("name", sorted(GEN_CASES))
def test_gen_golden(capsys, name):
    code, out, _ = run(capsys, *GEN_CASES[name])
    assert code == EXIT_OK
    check_golden(f"gen/{name}", out)


@pytest.mark.parametrize("name", sorted(GEN_CASES))
def test_gen_round_trip(capsys, tmp_path, name):
    target = tmp_path / name
    code, out, _ = run(capsys, *GEN_CASES[name], "-o", target)
    assert code == EXIT_OK and out == ""
    text = target.read_text()
    g, boundary = parse_graph(text)
    assert format_graph(g, boundary) == text


def test_spectra_values(capsys):
    _, out, _ = run(capsys, "spectra", DATA / "p3.graph", "--steklov", "--dtn")
    res = json.loads(out)["results"]
    assert np.allclose(res["laplacian"], [0, 1, 3], atol=1e-12)
    assert np.allclose(res["steklov"]["values"], [0, 1], atol=1e-12)
    assert np.allclose(res["dtn"]["matrix"], [[0.5, -0.5], [-0.5, 0.5]], atol=1e-12)


def test_verify_values(capsys):
    _, out, _ = run(capsys, "verify", DATA / "c4.graph")
    rig = json.loads(out)["results"]["rigidity"]
    assert rig["full_equality_predicted"] and rig["full_equality_observed"]
    code, out, _ = run(capsys, "verify", DATA / "p4.graph")
    res = json.loads(out)["results"]
    assert code == EXIT_OK
    assert res["comparison"]["equality_indices"] == [1]
    assert res["rigidity"]["consistent"]


def test_bounds_values(capsys):
    _, out, _ = run(capsys, "bounds", DATA / "k13.graph", "--index", "3")
    fr = [b for b in json.loads(out)["results"]["bounds"] if b["name"].startswith("friedman")][0]
    assert fr["bound"] == pytest.approx(1.0) and fr["target_value"] == pytest.approx(1.0)
    assert abs(fr["slack"]) < 1e-12


def test_curvature_values(capsys):
    _, out, _ = run(capsys, "curvature", DATA / "c4.graph")
    pairs = json.loads(out)["results"]["pairs"]
    assert len(pairs) == 4
    assert all(abs(p["kappa"] - 2) < 1e-8 for p in pairs)


def test_deterministic(capsys):
    for argv in JSON_CASES.values():
        first = run(capsys, *argv)
        assert run(capsys, *argv) == first


def test_inf_serialised_as_string(capsys):
    # K1,3 has a single interior vertex, so the rigidity form minimum is +inf
    _, out, _ = run(capsys, "verify", DATA / "k13.graph")
    assert json.loads(out)["results"]["rigidity"]["form_min_eigenvalue"] == "inf"


def test_tol_override(capsys):
    _, out, _ = run(capsys, "verify", DATA / "p4.graph", "--tol", "1e-3")
    assert json.loads(out)["tolerances"] == {"equality": 1e-3}


def test_batch(capsys, tmp_path):
    for name in ("p3.graph", "c4.graph", "weighted.graph"):
        shutil.copy(DATA / name, tmp_path / name)
    code, out, _ = run(capsys, "verify", "--batch", tmp_path, "--jobs", "3")
    docs = json.loads(out)
    assert code == EXIT_OK
    assert [d["input"]["file"] for d in docs] == ["c4.graph", "p3.graph", "weighted.graph"]
    shutil.copy(DATA / "corrupt.graph", tmp_path / "zz.graph")
    code, out, _ = run(capsys, "verify", "--batch", tmp_path)
    assert code == EXIT_PARSE
    assert "error" in json.loads(out)[-1]


EXIT_MATRIX = [
    (["spectra", DATA / "p3.graph"], EXIT_OK),
    (["spectra", DATA / "noboundary.graph"], EXIT_OK),
    (["spectra", DATA / "noboundary.graph", "--steklov"], EXIT_BOUNDARY),
    (["spectra", DATA / "noboundary.graph", "--dtn"], EXIT_BOUNDARY),
    (["spectra", DATA / "adjacent_boundary.graph"], EXIT_BOUNDARY),
    (["spectra", DATA / "corrupt.graph"], EXIT_PARSE),
    (["spectra", DATA / "missing.graph"], EXIT_PARSE),
    (["spectra", DATA / "p3.graph", "--dirichlet", "0", "1", "2"], EXIT_BOUNDARY),
    (["verify", DATA / "corrupt.graph"], EXIT_PARSE),
    (["verify", DATA / "noboundary.graph"], EXIT_BOUNDARY),
    (["verify", DATA / "adjacent_boundary.graph"], EXIT_BOUNDARY),
    (["verify"], EXIT_PARSE),
    (["bounds", DATA / "c4.graph", "--index", "7"], EXIT_PARSE),
    (["bounds", DATA / "weighted.graph"], EXIT_OK),
    (["curvature", DATA / "corrupt.graph"], EXIT_PARSE),
    (["gen", "torus"], EXIT_PARSE),
    (["gen", "star", "--arm", "2", "--boundary", "arms"], EXIT_PARSE),
    (["gen", "path", "--n", "3", "--boundary", "0,1"], EXIT_BOUNDARY),
    (["gen", "path", "--n", "3", "--boundary", "0,9"], EXIT_BOUNDARY),
]


def _case_id(v):
    return " ".join(Path(a).name if isinstance(a, Path) else str(a) for a in v) if isinstance(v, list) else str(v)


@pytest.mark.parametrize("argv,expected", EXIT_MATRIX, ids=_case_id)
def test_exit_codes(capsys, argv, expected):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    capsys.readouterr()
    assert code == expected


def test_parse_error_names_line(capsys):
    code, _, err = run(capsys, "spectra", DATA / "corrupt.graph")
    assert code == EXIT_PARSE
    assert "line 3" in err


def test_numerical_failure_exit(capsys, monkeypatch):
    def never_converges(a, tol, max_sweeps):
        return np.zeros(a.shape[0]), np.eye(a.shape[0]), -1

    monkeypatch.setattr(_kernels, "jacobi", never_converges)
    code, _, err = run(capsys, "spectra", DATA / "p3.graph")
    assert code == EXIT_NUMERIC
    assert "Jacobi" in err


def test_violation_exit(capsys, monkeypatch):
    import graphsteklov.cli as cli

    real = cli.verify_payload

    def broken(bg, tol):
        payload, _ = real(bg, tol)
        return payload, False

    monkeypatch.setattr(cli, "verify_payload", broken)
    code, _, _ = run(capsys, "verify", DATA / "c4.graph")
    assert code == EXIT_VIOLATION


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "graphsteklov", "curvature", str(DATA / "c4.graph")],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"]["name"] == "curvature"
