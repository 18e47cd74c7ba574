"""Command-line surface: gen, sketch, compress, error, bounds, bench.

Every command is deterministic given its inputs and seed; JSON summaries
embed the seed, the parameters, and the package version.  Exit codes:
0 success, 1 validation error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bounds import (
    BoundQuery,
    aleksandrov_bound,
    cap_lower_bound,
    chebyshev_bound,
    direction_count_bound,
    directions_for_inner_error,
)
from .compression import (
    NoConstraintsSurvivedError,
    compression_ratios,
    direction_bundle,
    hyperplane_compress,
    vertex_compress,
)
from .datagen import SHAPE_KINDS, ShapeSpec, generate
from .directions import sample_uniform
from .geometry import (
    ConvergenceError,
    PointCloud,
    VertexPolytope,
    exact_extreme_points,
)
from .io import (
    CsvFormatError,
    read_halfspaces,
    read_matrix,
    read_points,
    write_halfspaces,
    write_matrix,
    write_points,
)
from .metrics import (
    ErrorReport,
    UnboundedOuterHullError,
    inner_error,
    outer_error,
    support_under_constraints,
)
from .sketch import CurvatureSketch, OuterHull, build_sketch, outer_hull, threshold_filter

__all__ = [
    "GenConfig",
    "SketchConfig",
    "CompressConfig",
    "ErrorConfig",
    "BoundsConfig",
    "BenchConfig",
    "cmd_gen",
    "cmd_sketch",
    "cmd_compress",
    "cmd_error",
    "cmd_bounds",
    "cmd_bench",
    "main",
    "entrypoint",
]

# Derived-seed offsets so each random stage has its own stream.
FILTER_SEED_OFFSET = 1
PROBE_SEED_OFFSET = 2
REFERENCE_SEED_OFFSET = 3
SUBSAMPLE_SEED_OFFSET = 4

DEFAULT_ORACLE_CAP = 2000


class CliValidationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configs


@dataclass
class GenConfig:
    shape: str
    dims: int
    points: int
    seed: int
    out: str
    transform_path: str | None = None


@dataclass
class SketchConfig:
    points_path: str
    n_dirs: int
    alpha: float
    mode: str
    seed: int
    out_prefix: str
    save_sketch: bool = False


@dataclass
class CompressConfig:
    points_path: str
    out_prefix: str
    seed: int
    n_dirs: int = 1000
    alpha: float = 0.0
    mode: str = "hard"
    beta: float = 0.0
    order: str = "decreasing"
    sketch_json: str | None = None
    hyperplanes: bool = False
    inner_alpha: float = 0.1
    inner_beta: float = 0.0
    merge_angle: float = math.pi / 36
    variant: str = "recursive"
    gamma: float | None = None
    oracle_cap: int = DEFAULT_ORACLE_CAP


@dataclass
class ErrorConfig:
    points_path: str
    inner_path: str
    halfspaces_path: str
    out: str
    seed: int = 0
    probes: int = 200
    oracle_cap: int = DEFAULT_ORACLE_CAP
    sketch_json: str | None = None


@dataclass
class BoundsConfig:
    out: str | None = None
    sweep: bool = False
    n: int = 3
    r: float = 1.0
    p: float = 0.05
    eps: float = 0.1
    x_count: int = 1
    omega: float | None = None
    k: float | None = None
    m: int | None = None
    theta: float | None = None


@dataclass
class BenchConfig:
    schedule: list[int]
    out: str
    seed: int
    points_path: str | None = None
    shape: str | None = None
    dims: int = 3
    points: int = 10000
    gen_seed: int | None = None
    alpha: float = 0.0
    mode: str = "hard"
    probes: int = 200
    oracle_cap: int = DEFAULT_ORACLE_CAP
    ref_dirs: int | None = None
    transform_path: str | None = None


# ---------------------------------------------------------------------------
# helpers


def _load_transform(path: str | None, dims: int):
    """Affine map file: dims rows, dims+1 columns (linear part | shift)."""
    if path is None:
        return None, None
    data = read_matrix(path)
    if data.shape == (dims, dims + 1):
        return data[:, :dims], data[:, dims]
    if data.shape == (dims, dims):
        return data, None
    raise CliValidationError(
        f"transform file must be ({dims}, {dims}) or ({dims}, {dims + 1}), got {data.shape}"
    )


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _summary_base(seed: int, params: dict) -> dict:
    return {"seed": seed, "version": __version__, "params": params}


def _inner_csv(path: str, coords: np.ndarray, curvatures: np.ndarray) -> None:
    write_matrix(path, np.hstack([coords, curvatures[:, None]]))


def _read_inner_csv(path: str, dim: int) -> np.ndarray:
    data = read_matrix(path)
    if data.shape[1] == dim + 1:  # kept points + curvature column
        return data[:, :dim]
    if data.shape[1] == dim:
        return data
    raise CliValidationError(
        f"{path}: expected {dim} or {dim + 1} columns, got {data.shape[1]}"
    )


def _blocked_supports(points: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Exact support values of a cloud for many directions, memory-blocked."""
    out = np.empty(dirs.shape[0])
    block = max(1, (1 << 26) // (8 * max(1, points.shape[0])))
    for j0 in range(0, dirs.shape[0], block):
        out[j0 : j0 + block] = (points @ dirs[j0 : j0 + block].T).max(axis=0)
    return out


def _reference_extremes(
    cloud: PointCloud, seed: int, oracle_cap: int, ref_dirs: int
) -> tuple[VertexPolytope, str]:
    """Reference vertex set for inner error: exact oracle at desk scale,
    otherwise the found set of an independent, larger direction sample."""
    if len(cloud) <= oracle_cap:
        idx = exact_extreme_points(cloud)
        return VertexPolytope(cloud.points[idx]), "oracle"
    ref_set = sample_uniform(ref_dirs, cloud.dim, seed + REFERENCE_SEED_OFFSET)
    ref_sketch = build_sketch(cloud, ref_set)
    found = np.flatnonzero(ref_sketch.counts > 0)
    return VertexPolytope(cloud.points[found]), "reference-run"


# ---------------------------------------------------------------------------
# commands


def cmd_gen(cfg: GenConfig) -> dict:
    matrix, shift = _load_transform(cfg.transform_path, cfg.dims)
    spec = ShapeSpec(
        kind=cfg.shape,
        dim=cfg.dims,
        count=cfg.points,
        seed=cfg.seed,
        transform=matrix,
        shift=shift,
    )
    cloud = generate(spec)
    write_points(cfg.out, cloud.points)
    summary = _summary_base(cfg.seed, {"shape": cfg.shape, "dims": cfg.dims, "points": cfg.points})
    summary.update({"out": cfg.out})
    return summary


def cmd_sketch(cfg: SketchConfig) -> dict:
    if not 0.0 <= cfg.alpha <= 1.0:
        raise CliValidationError("alpha must lie in [0, 1]")
    if cfg.n_dirs < 1:
        raise CliValidationError("dirs must be >= 1")
    t0 = time.perf_counter()
    cloud = PointCloud(read_points(cfg.points_path))
    dirs = sample_uniform(cfg.n_dirs, cloud.dim, cfg.seed)
    sketch = build_sketch(cloud, dirs)
    inner = threshold_filter(sketch, cfg.alpha, cfg.mode, cfg.seed + FILTER_SEED_OFFSET)
    outer = outer_hull(sketch, cloud, dirs)
    runtime_ms = 1000.0 * (time.perf_counter() - t0)

    n_found = int(np.count_nonzero(sketch.counts))
    _inner_csv(f"{cfg.out_prefix}_inner.csv", inner.select(cloud), inner.curvatures)
    write_halfspaces(f"{cfg.out_prefix}_halfspaces.csv", outer.normals, outer.offsets)
    summary = _summary_base(
        cfg.seed,
        {"dirs": cfg.n_dirs, "alpha": cfg.alpha, "mode": cfg.mode, "in": cfg.points_path},
    )
    summary.update(
        {
            "n_found": n_found,
            "n_kept": len(inner),
            "runtime_ms": runtime_ms,
        }
    )
    if len(inner) == 0:
        summary["warning"] = "threshold kept no points (every curvature <= alpha)"
        print(summary["warning"], file=sys.stderr)
    if cfg.save_sketch:
        _write_json(f"{cfg.out_prefix}_sketch.json", sketch.to_dict())
    _write_json(f"{cfg.out_prefix}_summary.json", summary)
    return summary


def _sketch_from_json(path: str, cloud: PointCloud) -> CurvatureSketch:
    with open(path) as fh:
        payload = json.load(fh)
    if payload["n_points"] != len(cloud) or payload["dim"] != cloud.dim:
        raise CliValidationError(f"{path}: sketch does not match the point file")
    dirs = sample_uniform(payload["n_dirs"], payload["dim"], payload["dirs_seed"])
    return CurvatureSketch(
        cloud=cloud,
        dirs=dirs,
        assignment=np.asarray(payload["assignment"], dtype=np.int64),
        counts=np.asarray(payload["counts"], dtype=np.int64),
    )


def cmd_compress(cfg: CompressConfig) -> dict:
    if cfg.beta < 0:
        raise CliValidationError("beta must be nonnegative")
    t0 = time.perf_counter()
    cloud = PointCloud(read_points(cfg.points_path))
    if cfg.sketch_json is not None:
        sketch = _sketch_from_json(cfg.sketch_json, cloud)
    else:
        dirs = sample_uniform(cfg.n_dirs, cloud.dim, cfg.seed)
        sketch = build_sketch(cloud, dirs)
    inner = threshold_filter(sketch, cfg.alpha, cfg.mode, cfg.seed + FILTER_SEED_OFFSET)
    compressed, clusters = vertex_compress(inner, cloud, sketch, cfg.beta, cfg.order)

    _inner_csv(
        f"{cfg.out_prefix}_vertices.csv", compressed.select(cloud), compressed.curvatures
    )
    cluster_payload = {
        "representatives": clusters.representatives.tolist(),
        "members": {str(k): v.tolist() for k, v in clusters.members.items()},
        "beta": cfg.beta,
        "order": cfg.order,
    }

    n_planes_out = None
    if cfg.hyperplanes:
        bundle = direction_bundle(sketch, clusters)
        hull = hyperplane_compress(
            cloud,
            sketch,
            sketch.dirs,
            clusters,
            bundle,
            inner_alpha=cfg.inner_alpha,
            inner_beta=cfg.inner_beta,
            merge_angle=cfg.merge_angle,
            variant=cfg.variant,
            gamma=cfg.gamma,
            seed=cfg.seed,
        )
        write_halfspaces(f"{cfg.out_prefix}_halfspaces.csv", hull.normals, hull.offsets)
        n_planes_out = len(hull)
        cluster_payload["n_halfspaces"] = n_planes_out

    _write_json(f"{cfg.out_prefix}_clusters.json", cluster_payload)

    ratios_payload: dict = {
        "found_vertices": len(compressed),
        "true_vertices": None,
        "vertex_ratio": None,
        "found_planes": n_planes_out,
        "true_planes": None,
        "plane_ratio": None,
    }
    if len(cloud) <= cfg.oracle_cap:
        true_idx = exact_extreme_points(cloud)
        true_v = int(true_idx.size)
        ratios_payload["true_vertices"] = true_v
        # In the plane the facet count of a polygon equals its vertex count.
        if cloud.dim == 2 and n_planes_out is not None:
            vr, pr = compression_ratios(len(compressed), true_v, n_planes_out, true_v)
            ratios_payload["plane_ratio"] = pr
            ratios_payload["true_planes"] = true_v
        else:
            vr, _ = compression_ratios(len(compressed), true_v)
        ratios_payload["vertex_ratio"] = vr
    _write_json(f"{cfg.out_prefix}_ratios.json", ratios_payload)

    summary = _summary_base(
        cfg.seed,
        {
            "beta": cfg.beta,
            "alpha": cfg.alpha,
            "order": cfg.order,
            "hyperplanes": cfg.hyperplanes,
            "in": cfg.points_path,
        },
    )
    summary.update(
        {
            "n_found": int(np.count_nonzero(sketch.counts)),
            "n_kept_threshold": len(inner),
            "n_kept": len(compressed),
            "runtime_ms": 1000.0 * (time.perf_counter() - t0),
        }
    )
    _write_json(f"{cfg.out_prefix}_summary.json", summary)
    return summary


def cmd_error(cfg: ErrorConfig) -> dict:
    cloud = PointCloud(read_points(cfg.points_path))
    kept = _read_inner_csv(cfg.inner_path, cloud.dim)
    normals, offsets = read_halfspaces(cfg.halfspaces_path)
    if normals.shape[1] != cloud.dim:
        raise CliValidationError("halfspace dimension does not match the points")
    outer = OuterHull(
        normals=normals,
        offsets=offsets,
        support_indices=np.full(len(offsets), -1, dtype=np.int64),
    )

    if len(cloud) <= cfg.oracle_cap:
        oracle_idx = exact_extreme_points(cloud)
        reference = VertexPolytope(cloud.points[oracle_idx])
        reference_tag = "oracle"
    else:
        rng = np.random.Generator(np.random.PCG64(cfg.seed + SUBSAMPLE_SEED_OFFSET))
        pick = rng.choice(len(cloud), size=cfg.oracle_cap, replace=False)
        sub = PointCloud(cloud.points[np.sort(pick)])
        oracle_idx = exact_extreme_points(sub)
        reference = VertexPolytope(sub.points[oracle_idx])
        reference_tag = "oracle-subsample"

    inner_val = inner_error(reference, VertexPolytope(kept), check_containment=False)

    outer_val = None
    outer_method = None
    n_probes = 0
    if cfg.probes > 0 or cloud.dim == 2:
        probes = None
        if cloud.dim >= 3:
            probes = sample_uniform(cfg.probes, cloud.dim, cfg.seed + PROBE_SEED_OFFSET)
        result = outer_error(outer, VertexPolytope(cloud.points), probes)
        outer_val, outer_method, n_probes = result.value, result.method, result.n_probes

    n_found = None
    if cfg.sketch_json is not None:
        with open(cfg.sketch_json) as fh:
            n_found = int(np.count_nonzero(np.asarray(json.load(fh)["counts"])))

    report = ErrorReport(
        inner_error=inner_val,
        outer_error=outer_val,
        outer_method=outer_method,
        n_probes=n_probes,
        n_dirs_used=len(offsets),
        n_found=n_found if n_found is not None else -1,
        n_kept=kept.shape[0],
    )
    payload = report.to_dict()
    payload["reference"] = reference_tag
    payload["reference_vertices"] = len(reference)
    _write_json(cfg.out, payload)
    return payload


def cmd_bounds(cfg: BoundsConfig) -> dict:
    if cfg.sweep:
        if cfg.out is None:
            raise CliValidationError("--sweep needs --out for the CSV")
        rows = []
        omegas = np.linspace(0.002, 0.5, 250)
        for n in (2, 3, 4, 5):
            for w in omegas:
                rows.append(("aleksandrov", n, w, aleksandrov_bound(cfg.r, n, w)))
        for w in omegas:
            rows.append(("direction-count", 0, w, direction_count_bound(w, cfg.p)))
        with open(cfg.out, "w") as fh:
            fh.write("# curve,n,omega,value\n")
            for curve, n, w, v in rows:
                fh.write(f"{curve},{n},{w:.17g},{v:.17g}\n")
        return {"out": cfg.out, "rows": len(rows)}

    out: dict = {"params": {"n": cfg.n, "r": cfg.r, "p": cfg.p, "eps": cfg.eps, "x_count": cfg.x_count}}
    if cfg.k is not None and cfg.m is not None:
        out["chebyshev"] = chebyshev_bound(cfg.k, cfg.m, cfg.eps)
    if cfg.omega is not None:
        out["direction_count"] = direction_count_bound(cfg.omega, cfg.p)
        out["aleksandrov"] = aleksandrov_bound(cfg.r, cfg.n, cfg.omega)
    if cfg.theta is not None:
        out["cap_lower_bound"] = cap_lower_bound(cfg.theta, cfg.n)
    query = BoundQuery(n=cfg.n, r=cfg.r, p=cfg.p, eps=cfg.eps, x_count=cfg.x_count)
    out["directions_worst_case"] = directions_for_inner_error(query, "worst-case")
    out["directions_single_point"] = directions_for_inner_error(query, "single-point")
    text = json.dumps(out, indent=2, sort_keys=True)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return out


def _bench_cloud(cfg: BenchConfig) -> PointCloud:
    if cfg.points_path is not None:
        return PointCloud(read_points(cfg.points_path))
    if cfg.shape is None:
        raise CliValidationError("bench needs --in or --shape")
    matrix, shift = _load_transform(cfg.transform_path, cfg.dims)
    spec = ShapeSpec(
        kind=cfg.shape,
        dim=cfg.dims,
        count=cfg.points,
        seed=cfg.gen_seed if cfg.gen_seed is not None else cfg.seed,
        transform=matrix,
        shift=shift,
    )
    return generate(spec)


def bench_rows(cfg: BenchConfig) -> list[dict]:
    """Run the direction-count schedule and return one metrics row per entry.

    The schedule shares a single nested direction sample: the run at M uses
    the first M directions of the longest run, so found sets grow and the
    outer constraint sets are nested, making the error columns non-increasing
    sequences rather than statistical trends.
    """
    if len(cfg.schedule) == 0:
        raise CliValidationError("schedule must be nonempty")
    if any(m < 1 for m in cfg.schedule):
        raise CliValidationError("schedule entries must be >= 1")
    if any(b <= a for a, b in zip(cfg.schedule, cfg.schedule[1:])):
        raise CliValidationError("schedule must be strictly increasing")
    cloud = _bench_cloud(cfg)
    m_max = cfg.schedule[-1]
    dirs = sample_uniform(m_max, cloud.dim, cfg.seed)
    full = build_sketch(cloud, dirs)

    ref_dirs = cfg.ref_dirs if cfg.ref_dirs is not None else 4 * m_max
    reference, ref_tag = _reference_extremes(cloud, cfg.seed, cfg.oracle_cap, ref_dirs)

    probes = None
    true_supports = None
    if cloud.dim >= 3:
        if cfg.probes < 1:
            raise CliValidationError("bench needs probes >= 1 in dimension >= 3")
        probes = sample_uniform(cfg.probes, cloud.dim, cfg.seed + PROBE_SEED_OFFSET)
        true_supports = _blocked_supports(cloud.points, probes.directions)

    rows = []
    for m in cfg.schedule:
        prefix_dirs = dirs.prefix(m)
        assignment = full.assignment[:m]
        counts = np.bincount(assignment, minlength=len(cloud))
        sketch_m = CurvatureSketch(
            cloud=cloud, dirs=prefix_dirs, assignment=assignment, counts=counts
        )
        inner_m = threshold_filter(
            sketch_m, cfg.alpha, cfg.mode, cfg.seed + FILTER_SEED_OFFSET
        )
        n_found = int(np.count_nonzero(counts))
        if len(inner_m) > 0:
            inner_val = inner_error(
                reference,
                VertexPolytope(inner_m.select(cloud)),
                check_containment=False,
            )
        else:
            inner_val = math.inf

        outer_m = outer_hull(sketch_m, cloud, prefix_dirs)
        if cloud.dim == 2:
            res = outer_error(outer_m, VertexPolytope(cloud.points))
            outer_val, method = res.value, res.method
        else:
            worst = 0.0
            for j, d in enumerate(probes.directions):
                worst = max(worst, support_under_constraints(outer_m, d) - true_supports[j])
            outer_val, method = max(worst, 0.0), "support-gap-estimate"

        rows.append(
            {
                "n_dirs": m,
                "n_found": n_found,
                "n_kept": len(inner_m),
                "inner_error": inner_val,
                "outer_error": outer_val,
                "method": method,
                "reference": ref_tag,
            }
        )
    return rows


def cmd_bench(cfg: BenchConfig) -> list[dict]:
    rows = bench_rows(cfg)
    with open(cfg.out, "w") as fh:
        fh.write("# n_dirs,n_found,n_kept,inner_error,outer_error,method\n")
        for r in rows:
            fh.write(
                f"{r['n_dirs']},{r['n_found']},{r['n_kept']},"
                f"{r['inner_error']:.17g},{r['outer_error']:.17g},{r['method']}\n"
            )
    return rows


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 via CliValidationError, not SystemExit(2)
        raise CliValidationError(message)


def _parse_schedule(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise CliValidationError(f"bad schedule {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hullsketch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic point cloud CSV")
    p.add_argument("--shape", required=True, choices=SHAPE_KINDS)
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--transform", default=None, help="CSV with the affine map")
    p.set_defaults(run=lambda a: cmd_gen(
        GenConfig(a.shape, a.dims, a.points, a.seed, a.out, a.transform)
    ))

    p = sub.add_parser("sketch", help="curvature sketch: inner hull + halfspaces")
    p.add_argument("--in", dest="points_path", required=True)
    p.add_argument("--dirs", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--mode", choices=("hard", "proportional"), default="hard")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--save-sketch", action="store_true")
    p.set_defaults(run=lambda a: cmd_sketch(
        SketchConfig(a.points_path, a.dirs, a.alpha, a.mode, a.seed, a.out_prefix, a.save_sketch)
    ))

    p = sub.add_parser("compress", help="vertex and hyperplane compression")
    p.add_argument("--in", dest="points_path", required=True)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dirs", type=int, default=1000)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--mode", choices=("hard", "proportional"), default="hard")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--order", choices=("decreasing", "paper-increasing"), default="decreasing")
    p.add_argument("--sketch-json", default=None)
    p.add_argument("--hyperplanes", action="store_true")
    p.add_argument("--inner-alpha", type=float, default=0.1)
    p.add_argument("--inner-beta", type=float, default=0.0)
    p.add_argument("--merge-angle", type=float, default=math.pi / 36)
    p.add_argument("--variant", choices=("recursive", "gamma-threshold"), default="recursive")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(run=lambda a: cmd_compress(
        CompressConfig(
            points_path=a.points_path,
            out_prefix=a.out_prefix,
            seed=a.seed,
            n_dirs=a.dirs,
            alpha=a.alpha,
            mode=a.mode,
            beta=a.beta,
            order=a.order,
            sketch_json=a.sketch_json,
            hyperplanes=a.hyperplanes,
            inner_alpha=a.inner_alpha,
            inner_beta=a.inner_beta,
            merge_angle=a.merge_angle,
            variant=a.variant,
            gamma=a.gamma,
            oracle_cap=a.oracle_cap,
        )
    ))

    p = sub.add_parser("error", help="inner/outer error report")
    p.add_argument("--in", dest="points_path", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--halfspaces", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--probes", type=int, default=200)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--sketch-json", default=None)
    p.set_defaults(run=lambda a: cmd_error(
        ErrorConfig(
            points_path=a.points_path,
            inner_path=a.inner,
            halfspaces_path=a.halfspaces,
            out=a.out,
            seed=a.seed,
            probes=a.probes,
            oracle_cap=a.oracle_cap,
            sketch_json=a.sketch_json,
        )
    ))

    p = sub.add_parser("bounds", help="evaluate the probabilistic/geometric bounds")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--p", type=float, default=0.05)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--x-count", type=int, default=1)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--sweep", action="store_true")
    p.set_defaults(run=lambda a: cmd_bounds(
        BoundsConfig(
            out=a.out, sweep=a.sweep, n=a.n, r=a.r, p=a.p, eps=a.eps,
            x_count=a.x_count, omega=a.omega, k=a.k, m=a.m, theta=a.theta,
        )
    ))

    p = sub.add_parser("bench", help="error-vs-directions curves over a schedule")
    p.add_argument("--schedule", required=True, type=_parse_schedule)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="points_path", default=None)
    p.add_argument("--shape", choices=SHAPE_KINDS, default=None)
    p.add_argument("--dims", type=int, default=3)
    p.add_argument("--points", type=int, default=10000)
    p.add_argument("--gen-seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--mode", choices=("hard", "proportional"), default="hard")
    p.add_argument("--probes", type=int, default=200)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--ref-dirs", type=int, default=None)
    p.add_argument("--transform", default=None)
    p.set_defaults(run=lambda a: cmd_bench(
        BenchConfig(
            schedule=a.schedule,
            out=a.out,
            seed=a.seed,
            points_path=a.points_path,
            shape=a.shape,
            dims=a.dims,
            points=a.points,
            gen_seed=a.gen_seed,
            alpha=a.alpha,
            mode=a.mode,
            probes=a.probes,
            oracle_cap=a.oracle_cap,
            ref_dirs=a.ref_dirs,
            transform_path=a.transform,
        )
    ))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.run(args)
    except (CliValidationError, CsvFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        ConvergenceError,
        UnboundedOuterHullError,
        NoConstraintsSurvivedError,
        FloatingPointError,
    ) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


def entrypoint() -> None:  # console-script hook
    sys.exit(main())
