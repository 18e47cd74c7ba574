"""Sparsification of sketch output: vertex clustering and hyperplane reduction.

Vertex compression greedily absorbs kept points within a radius ``beta`` of a
representative, ordered by estimated curvature.  Hyperplane compression then
shrinks each representative's won-direction bundle to its extreme spread,
merges near-parallel survivors across representatives, and re-derives the
outer hull from the merged directions only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .directions import DirectionSet, sample_uniform
from .geometry import PointCloud
from .sketch import (
    CurvatureSketch,
    InnerHull,
    OuterHull,
    build_sketch,
    outer_hull,
    threshold_filter,
)

__all__ = [
    "ClusterMap",
    "DirectionBundle",
    "NoConstraintsSurvivedError",
    "vertex_compress",
    "direction_bundle",
    "hyperplane_compress",
    "compression_ratios",
]

VERTEX_ORDERS = ("decreasing", "paper-increasing")
HYPERPLANE_VARIANTS = ("recursive", "gamma-threshold")


class NoConstraintsSurvivedError(RuntimeError):
    """Hyperplane compression produced an empty constraint set."""


@dataclass(frozen=True)
class ClusterMap:
    """Partition of the inner-hull indices into clusters around representatives.

    ``representatives`` is in greedy processing order; ``members[v]`` holds
    every absorbed inner-hull index including ``v`` itself.
    """

    representatives: np.ndarray
    members: dict[int, np.ndarray]

    def __post_init__(self):
        reps = np.asarray(self.representatives, dtype=np.int64).copy()
        reps.setflags(write=False)
        object.__setattr__(self, "representatives", reps)
        frozen = {}
        for rep, mem in self.members.items():
            arr = np.asarray(mem, dtype=np.int64).copy()
            arr.setflags(write=False)
            frozen[int(rep)] = arr
        object.__setattr__(self, "members", frozen)

    def covered_indices(self) -> np.ndarray:
        return np.sort(np.concatenate(list(self.members.values())))


@dataclass(frozen=True)
class DirectionBundle:
    """For each representative, the direction indices won by its cluster."""

    per_representative: dict[int, np.ndarray]

    def __post_init__(self):
        frozen = {}
        for rep, idx in self.per_representative.items():
            arr = np.asarray(idx, dtype=np.int64).copy()
            arr.setflags(write=False)
            frozen[int(rep)] = arr
        object.__setattr__(self, "per_representative", frozen)


def vertex_compress(
    inner: InnerHull,
    cloud: PointCloud,
    sketch: CurvatureSketch,
    beta: float,
    order: str = "decreasing",
) -> tuple[InnerHull, ClusterMap]:
    """Greedy radius clustering of the kept points (vertex compression).

    Walks the kept points in the chosen curvature order; the current point is
    kept and every other remaining point strictly closer than ``beta`` is
    absorbed into its cluster.  ``beta = 0`` is the identity.  The Hausdorff
    distance between the hulls before and after is below ``beta``.

    ``order="decreasing"`` (default) makes each cluster's representative its
    highest-curvature member; ``order="paper-increasing"`` walks lowest
    curvature first.
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    if order not in VERTEX_ORDERS:
        raise ValueError(f"unknown order {order!r}; expected one of {VERTEX_ORDERS}")
    kept = inner.kept_indices
    curv = inner.curvatures
    if order == "decreasing":
        walk = np.lexsort((kept, -curv))
    else:
        walk = np.lexsort((kept, curv))
    coords = cloud.points[kept]

    absorbed = np.zeros(len(kept), dtype=bool)
    reps: list[int] = []
    members: dict[int, np.ndarray] = {}
    for pos in walk:
        if absorbed[pos]:
            continue
        here = coords[pos]
        remaining = ~absorbed
        remaining[pos] = False  # the current point absorbs others, never itself
        close = remaining & (
            np.linalg.norm(coords - here, axis=1) < beta
        )
        absorbed |= close
        rep_idx = int(kept[pos])
        cluster = np.sort(np.concatenate([[rep_idx], kept[close]]))
        reps.append(rep_idx)
        members[rep_idx] = cluster
        absorbed[pos] = True  # processed; marked after the scan

    rep_arr = np.array(reps, dtype=np.int64)
    keep_sorted = np.sort(rep_arr)
    pos_of = {int(k): i for i, k in enumerate(kept)}
    new_curv = np.array([curv[pos_of[int(k)]] for k in keep_sorted])
    compressed = InnerHull(
        kept_indices=keep_sorted,
        curvatures=new_curv,
        alpha=inner.alpha,
        mode=inner.mode,
    )
    return compressed, ClusterMap(representatives=rep_arr, members=members)


def direction_bundle(sketch: CurvatureSketch, cluster_map: ClusterMap) -> DirectionBundle:
    """Collect, per representative, the directions won by any cluster member."""
    rep_of = np.full(len(sketch.cloud), -1, dtype=np.int64)
    for rep, mem in cluster_map.members.items():
        rep_of[mem] = rep
    winner_rep = rep_of[sketch.assignment]
    per_rep = {
        int(rep): np.flatnonzero(winner_rep == rep).astype(np.int64)
        for rep in cluster_map.representatives
    }
    return DirectionBundle(per_representative=per_rep)


def _angular_components(dirs: np.ndarray, merge_angle: float) -> list[np.ndarray]:
    """Single-linkage components of a direction set at angular threshold.

    Component count is monotone non-increasing in ``merge_angle`` (growing the
    threshold only adds edges), which is the property the caller relies on.
    """
    k = dirs.shape[0]
    parent = np.arange(k)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    cos_thresh = np.cos(merge_angle)
    gram = dirs @ dirs.T
    ii, jj = np.nonzero(np.triu(gram > cos_thresh, k=1))
    for i, j in zip(ii, jj):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(k)])
    return [np.flatnonzero(roots == r) for r in np.unique(roots)]


def hyperplane_compress(
    cloud: PointCloud,
    sketch: CurvatureSketch,
    dirs: DirectionSet,
    cluster_map: ClusterMap,
    bundle: DirectionBundle,
    inner_alpha: float = 0.1,
    inner_beta: float = 0.0,
    merge_angle: float = np.pi / 36,
    variant: str = "recursive",
    gamma: float | None = None,
    seed: int = 0,
    inner_dirs: int = 2048,
) -> OuterHull:
    """Reduce the outer hull to a small set of merged supporting hyperplanes.

    Recursive variant: each representative's direction bundle is treated as a
    point cloud on the sphere and itself sketched, thresholded at
    ``inner_alpha`` and radius-compressed at ``inner_beta``; the survivors are
    the bundle's extreme spread (for a corner's normal fan these are the
    adjacent facet normals).  When both inner parameters are zero the bundle
    passes through unchanged: points of the unit sphere are all extreme in
    their own hull, so the exact reduction is the identity there.

    Gamma-threshold variant: a direction survives iff three distinct
    representatives have pairwise support-value differences below ``gamma``
    under it.

    Survivors are then merged by single-linkage at ``merge_angle`` (each
    cluster replaced by the renormalised mean of its members) and the outer
    hull is rebuilt from the merged directions against the original cloud.
    The result may be unbounded when few constraints survive; that is
    reported, not raised.
    """
    if not 0.0 < merge_angle < np.pi:
        raise ValueError("merge_angle must lie in (0, pi)")
    if variant not in HYPERPLANE_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")

    if variant == "recursive":
        groups: list[np.ndarray] = []
        weights: list[int] = []
        inner_set = None
        for rep in cluster_map.representatives:
            f_v = bundle.per_representative.get(int(rep))
            if f_v is None or f_v.size == 0:
                continue
            if inner_alpha == 0.0 and inner_beta == 0.0:
                survivors = f_v
            else:
                sub_cloud = PointCloud(dirs.directions[f_v])
                if inner_set is None:
                    inner_set = sample_uniform(inner_dirs, cloud.dim, seed)
                sub_sketch = build_sketch(sub_cloud, inner_set)
                sub_inner = threshold_filter(sub_sketch, inner_alpha, "hard")
                if len(sub_inner) == 0:
                    continue
                if inner_beta > 0.0:
                    sub_inner, _ = vertex_compress(
                        sub_inner, sub_cloud, sub_sketch, inner_beta
                    )
                survivors = f_v[sub_inner.kept_indices]
            groups.append(survivors)
            weights.append(int(f_v.size))
        if groups:
            by_weight = np.argsort(-np.asarray(weights), kind="stable")
            surviving = np.concatenate([groups[i] for i in by_weight])
        else:
            surviving = np.array([], dtype=np.int64)
    else:
        if gamma is None or gamma <= 0:
            raise ValueError("gamma-threshold variant needs a positive gamma")
        reps = cluster_map.representatives
        if reps.size >= 3:
            vals = np.sort(cloud.points[reps] @ dirs.directions.T, axis=0)
            spread3 = vals[2:, :] - vals[:-2, :]
            surviving = np.flatnonzero(spread3.min(axis=0) < gamma).astype(np.int64)
        else:
            surviving = np.array([], dtype=np.int64)

    if surviving.size == 0:
        raise NoConstraintsSurvivedError("no constraints survived")

    chosen = dirs.directions[surviving]
    merged = []
    for comp in _angular_components(chosen, merge_angle):
        mean = chosen[comp].mean(axis=0)
        norm = np.linalg.norm(mean)
        if norm < 1e-12:  # antipodal degenerate cluster; keep its first member
            merged.append(chosen[comp[0]])
        else:
            merged.append(mean / norm)
    final_dirs = DirectionSet(np.asarray(merged), seed=dirs.seed, method=dirs.method)

    final_sketch = build_sketch(cloud, final_dirs)
    raw = outer_hull(final_sketch, cloud, final_dirs)
    return OuterHull(
        normals=raw.normals,
        offsets=raw.offsets,
        support_indices=raw.support_indices,
        source="compressed",
    )


def compression_ratios(
    found_vertices: int,
    true_vertices: int,
    found_planes: int | None = None,
    true_planes: int | None = None,
) -> tuple[float, float | None]:
    """Found-over-true counts for vertices and (optionally) hyperplanes."""
    if true_vertices <= 0:
        raise ValueError("true vertex count must be positive")
    vertex_ratio = found_vertices / true_vertices
    plane_ratio = None
    if found_planes is not None or true_planes is not None:
        if true_planes is None or found_planes is None:
            raise ValueError("both plane counts are required for the plane ratio")
        if true_planes <= 0:
            raise ValueError("true plane count must be positive")
        plane_ratio = found_planes / true_planes
    return vertex_ratio, plane_ratio
