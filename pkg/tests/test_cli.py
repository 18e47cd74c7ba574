import json

import numpy as np
import pytest

from hullsketch import PointCloud, exact_extreme_points
from hullsketch.cli import (
    BenchConfig,
    bench_rows,
    main,
)
from hullsketch.io import read_matrix, read_points

from oracles import monotone_chain_indices


def run(argv):
    return main(argv)


def gen_simplex(tmp_path, n=200, seed=17, dims=2):
    path = tmp_path / "pts.csv"
    assert run([
        "gen", "--shape", "simplex", "--dims", str(dims), "--points", str(n),
        "--seed", str(seed), "--out", str(path),
    ]) == 0
    return path


def test_gen_writes_points(tmp_path):
    path = gen_simplex(tmp_path, n=100)
    pts = read_points(path)
    assert pts.shape == (100, 2)
    assert np.all(pts >= 0) and np.all(pts.sum(axis=1) <= 1 + 1e-12)


def test_sketch_outputs_and_oracle_subset(tmp_path):
    pts_path = gen_simplex(tmp_path, n=200, seed=17)
    prefix = tmp_path / "run"
    code = run([
        "sketch", "--in", str(pts_path), "--dirs", "500", "--alpha", "0",
        "--seed", "3", "--out-prefix", str(prefix),
    ])
    assert code == 0
    summary = json.loads((tmp_path / "run_summary.json").read_text())
    assert summary["n_found"] >= 3
    assert summary["seed"] == 3
    assert summary["version"]
    assert "runtime_ms" in summary
    inner = read_matrix(tmp_path / "run_inner.csv")
    assert inner.shape[1] == 3  # x, y, curvature estimate
    assert summary["n_kept"] == inner.shape[0]
    # every kept point is one of the oracle extremes
    pts = read_points(pts_path)
    oracle = {tuple(np.round(pts[i], 12)) for i in exact_extreme_points(PointCloud(pts))}
    kept = {tuple(np.round(row[:2], 12)) for row in inner}
    assert kept <= oracle
    hs = read_matrix(tmp_path / "run_halfspaces.csv")
    assert hs.shape == (500, 3)
    margins = pts @ hs[:, :2].T - hs[:, 2]
    assert margins.max() <= 1e-9


def test_sketch_alpha_one_warns(tmp_path, capsys):
    pts_path = gen_simplex(tmp_path)
    prefix = tmp_path / "warn"
    assert run([
        "sketch", "--in", str(pts_path), "--dirs", "100", "--alpha", "1",
        "--seed", "0", "--out-prefix", str(prefix),
    ]) == 0
    summary = json.loads((tmp_path / "warn_summary.json").read_text())
    assert summary["n_kept"] == 0
    assert "warning" in summary
    assert "kept no points" in capsys.readouterr().err


def test_compress_beta_zero_matches_sketch_output(tmp_path):
    pts_path = gen_simplex(tmp_path, n=150, seed=5)
    assert run([
        "sketch", "--in", str(pts_path), "--dirs", "300", "--alpha", "0",
        "--seed", "9", "--out-prefix", str(tmp_path / "s"),
    ]) == 0
    assert run([
        "compress", "--in", str(pts_path), "--dirs", "300", "--alpha", "0",
        "--seed", "9", "--beta", "0", "--out-prefix", str(tmp_path / "c"),
    ]) == 0
    assert (tmp_path / "c_vertices.csv").read_bytes() == (tmp_path / "s_inner.csv").read_bytes()
    clusters = json.loads((tmp_path / "c_clusters.json").read_text())
    for rep, members in clusters["members"].items():
        assert members == [int(rep)]


def test_compress_ratios_match_hand_counts(tmp_path):
    pts_path = gen_simplex(tmp_path, n=120, seed=21)
    assert run([
        "compress", "--in", str(pts_path), "--dirs", "400", "--alpha", "0",
        "--seed", "2", "--beta", "0.05", "--out-prefix", str(tmp_path / "r"),
    ]) == 0
    ratios = json.loads((tmp_path / "r_ratios.json").read_text())
    pts = read_points(pts_path)
    true_count = len(monotone_chain_indices(pts))
    assert ratios["true_vertices"] == true_count
    kept = read_matrix(tmp_path / "r_vertices.csv").shape[0]
    assert ratios["found_vertices"] == kept
    assert ratios["vertex_ratio"] == pytest.approx(kept / true_count)


def test_compress_hyperplanes_writes_constraints(tmp_path):
    pts_path = gen_simplex(tmp_path, n=1500, seed=31)
    assert run([
        "compress", "--in", str(pts_path), "--dirs", "800", "--alpha", "0",
        "--seed", "4", "--beta", "0.2", "--hyperplanes",
        "--out-prefix", str(tmp_path / "h"),
    ]) == 0
    hs = read_matrix(tmp_path / "h_halfspaces.csv")
    assert 3 <= hs.shape[0] < 100
    pts = read_points(pts_path)
    assert (pts @ hs[:, :2].T - hs[:, 2]).max() <= 1e-9


def test_error_command_reports(tmp_path):
    pts_path = gen_simplex(tmp_path, n=150, seed=41)
    assert run([
        "sketch", "--in", str(pts_path), "--dirs", "200", "--alpha", "0",
        "--seed", "11", "--out-prefix", str(tmp_path / "e"),
    ]) == 0
    out = tmp_path / "report.json"
    assert run([
        "error", "--in", str(pts_path), "--inner", str(tmp_path / "e_inner.csv"),
        "--halfspaces", str(tmp_path / "e_halfspaces.csv"), "--out", str(out),
        "--seed", "11",
    ]) == 0
    report = json.loads(out.read_text())
    assert report["inner_error"] >= 0
    assert report["outer_error"] >= 0
    assert report["outer_method"] == "exact-2d"
    assert report["n_dirs_used"] == 200
    assert report["reference"] == "oracle"


def test_bounds_json(tmp_path, capsys):
    assert run([
        "bounds", "--n", "3", "--eps", "0.1", "--p", "0.05", "--x-count", "10000",
        "--omega", "0.25", "--k", "0.25", "--m", "1000", "--theta", "1.0",
    ]) == 0
    payload = json.loads(capsys.readouterr().out)
    # chebyshev evaluated at the shared eps=0.1: 0.25*0.75/(1000*0.01)
    assert payload["chebyshev"] == pytest.approx(0.01875)
    assert payload["direction_count"] == 16
    assert "aleksandrov" in payload
    assert "cap_lower_bound" in payload
    assert payload["directions_worst_case"] >= payload["directions_single_point"]


def test_bounds_sweep_csv(tmp_path):
    out = tmp_path / "curves.csv"
    assert run(["bounds", "--sweep", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("#")
    assert any(line.startswith("aleksandrov") for line in lines[1:])
    assert any(line.startswith("direction-count") for line in lines[1:])


def test_bench_schedule_must_increase(tmp_path):
    pts_path = gen_simplex(tmp_path, n=100)
    code = run([
        "bench", "--in", str(pts_path), "--schedule", "100,50", "--seed", "1",
        "--out", str(tmp_path / "b.csv"),
    ])
    assert code == 1


def test_bench_single_entry_matches_sketch_metrics(tmp_path):
    pts_path = gen_simplex(tmp_path, n=150, seed=51)
    assert run([
        "sketch", "--in", str(pts_path), "--dirs", "120", "--alpha", "0",
        "--seed", "6", "--out-prefix", str(tmp_path / "sk"),
    ]) == 0
    summary = json.loads((tmp_path / "sk_summary.json").read_text())
    rows = bench_rows(BenchConfig(
        schedule=[120], out="", seed=6, points_path=str(pts_path), oracle_cap=2000,
    ))
    assert len(rows) == 1
    assert rows[0]["n_dirs"] == 120
    assert rows[0]["n_found"] == summary["n_found"]
    assert rows[0]["n_kept"] == summary["n_kept"]


def test_bench_nested_prefix_reproduces_standalone_rows(tmp_path):
    pts_path = gen_simplex(tmp_path, n=200, seed=61)
    common = dict(points_path=str(pts_path), seed=8, oracle_cap=2000, out="")
    nested = bench_rows(BenchConfig(schedule=[40, 90, 160], **common))
    for m, row in zip((40, 90, 160), nested):
        alone = bench_rows(BenchConfig(schedule=[m], **common))[0]
        assert alone == row


def test_bench_csv_columns(tmp_path):
    pts_path = gen_simplex(tmp_path, n=120, seed=71)
    out = tmp_path / "bench.csv"
    assert run([
        "bench", "--in", str(pts_path), "--schedule", "30,60", "--seed", "2",
        "--out", str(out),
    ]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "# n_dirs,n_found,n_kept,inner_error,outer_error,method"
    first = lines[1].split(",")
    assert int(first[0]) == 30
    assert first[5] == "exact-2d"


def test_commands_deterministic_given_seed(tmp_path):
    pts_path = gen_simplex(tmp_path, n=120, seed=91)
    for prefix in ("d1", "d2"):
        assert run([
            "sketch", "--in", str(pts_path), "--dirs", "150", "--alpha", "0.001",
            "--seed", "13", "--out-prefix", str(tmp_path / prefix),
        ]) == 0
    assert (tmp_path / "d1_inner.csv").read_bytes() == (tmp_path / "d2_inner.csv").read_bytes()
    assert (tmp_path / "d1_halfspaces.csv").read_bytes() == (tmp_path / "d2_halfspaces.csv").read_bytes()


def test_exit_code_validation_error(tmp_path):
    assert run(["sketch", "--in", "missing.csv", "--dirs", "10",
                "--out-prefix", str(tmp_path / "x")]) == 1
    assert run(["gen", "--shape", "blob", "--dims", "2", "--points", "5",
                "--out", str(tmp_path / "y.csv")]) == 1
    pts_path = gen_simplex(tmp_path)
    assert run(["sketch", "--in", str(pts_path), "--dirs", "10", "--alpha", "7",
                "--out-prefix", str(tmp_path / "z")]) == 1


def test_exit_code_numerical_failure(tmp_path):
    pts_path = gen_simplex(tmp_path, n=50, seed=81)
    # two halfplanes cannot bound the plane: exact 2-d error must report failure
    hs = tmp_path / "open.csv"
    hs.write_text("1,0,5\n0,1,5\n")
    inner = tmp_path / "inner.csv"
    inner.write_text("0.1,0.1,1.0\n0.2,0.1,0.5\n0.1,0.2,0.5\n")
    code = run([
        "error", "--in", str(pts_path), "--inner", str(inner),
        "--halfspaces", str(hs), "--out", str(tmp_path / "r.json"),
    ])
    assert code == 2
