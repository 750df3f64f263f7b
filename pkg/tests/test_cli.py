import json
import os
import subprocess
import sys

import pytest

from qldpc_bounds.cli import main
from qldpc_bounds.codes import format_code, make_family, parse_code
from qldpc_bounds.generators import locality_problems, parse_coords
from qldpc_bounds.graph import parse_graph


@pytest.fixture
def steane_file(tmp_path):
    path = tmp_path / "steane.qecc"
    path.write_text(format_code(make_family("steane")))
    return path


def run_cli(*args, threads=None):
    env = dict(os.environ)
    if threads is not None:
        env["QLDPC_BOUNDS_THREADS"] = str(threads)
    return subprocess.run(
        [sys.executable, "-m", "qldpc_bounds.cli", *map(str, args)], capture_output=True, text=True, env=env
    )


def test_analyze_steane(steane_file, tmp_path):
    out = tmp_path / "r.json"
    assert main(["analyze", str(steane_file), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "bounds-report/1"
    assert rep["k_actual"] == 1 and rep["d_brute"] == 3
    assert rep["d_upper_treewidth"] >= 3 and rep["k_upper_partition"] >= 1
    assert rep["d_upper_treewidth"] == rep["delta"] * (rep["tw_upper"] + 1)
    assert set(rep["provenance"].values()) <= {"exact", "heuristic", "formula", "brute-force"}


def test_analyze_repetition_text(tmp_path, capsys):
    path = tmp_path / "rep.qecc"
    path.write_text(format_code(make_family("repetition", 3)))
    assert main(["analyze", str(path), "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "d_brute: 1" in text and "d_upper_treewidth: 4" in text


def test_formula_flags(steane_file, capsys):
    assert main(["analyze", str(steane_file), "--exponent", "0.5", "--alpha-dist", "0.5", "--genus", "2", "--hyperbolic-dim", "2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["R_formula"] == 2
    assert {f["kind"] for f in rep["formula_evaluations"]} == {"projector", "genus_g", "hyperbolic_D"}


def test_heuristic_path_for_large_codes(tmp_path, capsys):
    path = tmp_path / "toric.qecc"
    path.write_text(format_code(make_family("toric", 4)))
    assert main(["analyze", str(path), "--exact-tw-max", "10", "--exact-sep-max", "0"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["provenance"]["tw_upper"] == "heuristic"
    assert rep["tw_lower"] <= rep["tw_upper"]
    assert rep["d_brute"] == 4


def test_distance_cap_is_reported(steane_file, capsys):
    assert main(["analyze", str(steane_file), "--distance-cap", "2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["d_brute"] is None and rep["d_lb"] == 3


def test_exit_codes(tmp_path):
    empty = tmp_path / "empty.qecc"
    empty.write_text("")
    assert main(["analyze", str(empty)]) == 2
    assert main(["analyze", str(tmp_path / "missing.qecc")]) == 2
    bad = tmp_path / "bad.qecc"
    bad.write_text("qecc v1 n=2\nXX\nZI\n")
    assert main(["analyze", str(bad)]) == 2
    assert main(["generate", "repetition", "1"]) == 2
    assert main(["generate", "nosuch"]) == 2


def test_budget_exit_code(tmp_path):
    path = tmp_path / "toric.qecc"
    path.write_text(format_code(make_family("toric", 4)))
    # 32-vertex exact treewidth is allowed by the cutoff but blows the node budget
    args = ["analyze", str(path), "--exact-tw-max", "32", "--exact-sep-max", "0", "--distance-cap", "2"]
    assert main(args + ["--exact-budget", "500"]) == 3
    # the same budget also caps the exact separator
    assert main(["analyze", str(path), "--exact-tw-max", "0", "--exact-sep-max", "16", "--exact-budget", "5"]) == 3


def test_generate_round_trip(tmp_path):
    out = tmp_path / "s3.qecc"
    assert main(["generate", "surface", "3", "--out", str(out)]) == 0
    assert parse_code(out.read_text()) == make_family("surface", 3)


def test_generate_hyperbolic_with_sidecar(tmp_path):
    out = tmp_path / "patch.graph"
    assert main(["generate", "hyperbolic", "7", "3", "--rings", "4", "--out", str(out)]) == 0
    g = parse_graph(out.read_text())
    eg = parse_coords((tmp_path / "patch.graph.coords").read_text(), g)
    assert eg.model == "poincare" and locality_problems(eg) == []


def test_generate_graph_families(tmp_path, capsys):
    assert main(["generate", "random_regular", "3", "10", "--seed", "4"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert all(g.degree(v) == 3 for v in range(10))
    assert main(["generate", "grid", "2", "4", "--out", str(tmp_path / "g.graph")]) == 0
    assert (tmp_path / "g.graph.coords").exists()
    assert main(["generate", "grid", "2"]) == 2


def test_profile_command(tmp_path, capsys):
    graph = tmp_path / "g.graph"
    main(["generate", "grid", "2", "32", "--out", str(graph)])
    assert main(["profile", str(graph), "--r-grid", "64,256,1024", "--coords", str(graph) + ".coords"]) == 0
    prof = json.loads(capsys.readouterr().out)
    assert 0.35 <= prof["fitted_c"] <= 0.65
    assert main(["profile", str(graph), "--r-grid", "4,16", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("r,s_observed,seed\n")


def test_reports_identical_across_thread_counts(steane_file):
    outs = [run_cli("analyze", steane_file, "--seed", "7", threads=t) for t in (1, 8, 1)]
    assert all(o.returncode == 0 for o in outs)
    assert outs[0].stdout == outs[1].stdout == outs[2].stdout
