"""Curvature sketching: per-direction support winners and threshold filtering.

The sketch assigns every sampled direction to the cloud point maximising the
dot product.  The fraction of directions a point wins estimates the relative
spherical measure of its normal cone, which is what the threshold filter
keys on.  The same pass yields the outer hull: one supporting halfspace per
direction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .directions import DirectionSet
from .geometry import Halfspace, PointCloud

__all__ = [
    "CurvatureSketch",
    "InnerHull",
    "OuterHull",
    "build_sketch",
    "relative_curvature",
    "threshold_filter",
    "outer_hull",
]

# Working-set budget for the blocked support computation (bytes).
_BLOCK_BYTES = 1 << 27
# Above this point count the norm-pruned scan kicks in.
_PRUNE_THRESHOLD = 65536
_PRUNE_BLOCK = 16384
_PRUNE_CHUNK = 512


@dataclass(frozen=True)
class CurvatureSketch:
    """Per-direction winners and per-point win counts for one (cloud, dirs) pair."""

    cloud: PointCloud
    dirs: DirectionSet
    assignment: np.ndarray  # winner index per direction, length M
    counts: np.ndarray  # wins per point, length N

    def __post_init__(self):
        assignment = np.asarray(self.assignment, dtype=np.int64).copy()
        counts = np.asarray(self.counts, dtype=np.int64).copy()
        if assignment.shape != (len(self.dirs),):
            raise ValueError("assignment length must match the direction count")
        if counts.shape != (len(self.cloud),):
            raise ValueError("counts length must match the point count")
        if counts.sum() != len(self.dirs):
            raise ValueError("counts must sum to the direction count")
        recount = np.bincount(assignment, minlength=len(self.cloud))
        if not np.array_equal(recount, counts):
            raise ValueError("counts must tally the assignment")
        assignment.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "counts", counts)

    @property
    def d_count(self) -> int:
        return len(self.dirs)

    def curvatures(self) -> np.ndarray:
        """Relative curvature estimate for every point: counts / |D|."""
        return self.counts / float(self.d_count)

    def to_dict(self) -> dict:
        """JSON-ready export of the sketch (schema is part of the public API)."""
        return {
            "dim": self.cloud.dim,
            "n_points": len(self.cloud),
            "n_dirs": self.d_count,
            "counts": self.counts.tolist(),
            "assignment": self.assignment.tolist(),
            "dirs_seed": self.dirs.seed,
            "dirs_method": self.dirs.method,
        }


@dataclass(frozen=True)
class InnerHull:
    """Point indices kept by the threshold filter, with their curvature estimates."""

    kept_indices: np.ndarray
    curvatures: np.ndarray
    alpha: float
    mode: str

    def __post_init__(self):
        kept = np.asarray(self.kept_indices, dtype=np.int64).copy()
        curv = np.asarray(self.curvatures, dtype=np.float64).copy()
        if kept.ndim != 1 or curv.shape != kept.shape:
            raise ValueError("kept_indices and curvatures must be aligned 1-d arrays")
        kept.setflags(write=False)
        curv.setflags(write=False)
        object.__setattr__(self, "kept_indices", kept)
        object.__setattr__(self, "curvatures", curv)

    def __len__(self) -> int:
        return self.kept_indices.shape[0]

    def select(self, cloud: PointCloud) -> np.ndarray:
        """Coordinates of the kept points."""
        return cloud.points[self.kept_indices]


@dataclass(frozen=True)
class OuterHull:
    """Intersection of supporting halfspaces ``normal . x <= offset``."""

    normals: np.ndarray
    offsets: np.ndarray
    support_indices: np.ndarray
    source: str = "raw-sketch"

    def __post_init__(self):
        normals = np.asarray(self.normals, dtype=np.float64).copy()
        offsets = np.asarray(self.offsets, dtype=np.float64).copy()
        sup = np.asarray(self.support_indices, dtype=np.int64).copy()
        if normals.ndim != 2 or normals.shape[0] < 1:
            raise ValueError("normals must be a nonempty (M, dim) array")
        if offsets.shape != (normals.shape[0],) or sup.shape != offsets.shape:
            raise ValueError("offsets/support_indices must align with normals")
        if np.any(np.abs(np.linalg.norm(normals, axis=1) - 1.0) > 1e-9):
            raise ValueError("all normals must be unit length")
        for a in (normals, offsets, sup):
            a.setflags(write=False)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "support_indices", sup)

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    def __len__(self) -> int:
        return self.normals.shape[0]

    @property
    def halfspaces(self) -> list[Halfspace]:
        return [
            Halfspace(n, b, int(s) if s >= 0 else None)
            for n, b, s in zip(self.normals, self.offsets, self.support_indices)
        ]

    def contains(self, points, tol: float = 1e-9) -> np.ndarray:
        """Boolean feasibility of each row of ``points`` against all constraints."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        margins = pts @ self.normals.T - self.offsets
        return np.all(margins <= tol, axis=1)


def _assign_blocked(pts: np.ndarray, dmat: np.ndarray) -> np.ndarray:
    """Direct blocked argmax; first occurrence of the max = smallest index."""
    m = dmat.shape[0]
    assignment = np.empty(m, dtype=np.int64)
    block = max(1, _BLOCK_BYTES // (8 * max(1, pts.shape[0])))
    for j0 in range(0, m, block):
        scores = pts @ dmat[j0 : j0 + block].T
        assignment[j0 : j0 + scores.shape[1]] = np.argmax(scores, axis=0)
    return assignment


def _assign_pruned(pts: np.ndarray, dmat: np.ndarray) -> np.ndarray:
    """Argmax with an exact norm bound: ``x . d <= ||x - c|| + c . d``.

    Points are scanned in blocks of decreasing distance from the centroid; a
    block is skipped for a direction once the bound proves it cannot beat
    the current winner, so only a small fraction of the score matrix is ever
    formed.  Skipping is strictly sound (a safety margin absorbs dot-product
    rounding), hence winners agree with the direct scan; only the order in
    which *exactly* tied scores are met can differ.
    """
    centroid = pts.mean(axis=0)
    norms = np.linalg.norm(pts - centroid, axis=1)
    order = np.argsort(-norms, kind="stable")
    sorted_pts = pts[order]
    sorted_norms = norms[order]
    n, m = pts.shape[0], dmat.shape[0]
    n_blocks = (n + _PRUNE_BLOCK - 1) // _PRUNE_BLOCK
    block_bound = sorted_norms[np.arange(n_blocks) * _PRUNE_BLOCK]
    margin = 1e-9 * (block_bound[0] + float(np.abs(centroid).sum()) + 1.0)

    assignment = np.empty(m, dtype=np.int64)
    for j0 in range(0, m, _PRUNE_CHUNK):
        chunk = dmat[j0 : j0 + _PRUNE_CHUNK]
        k = chunk.shape[0]
        shift = centroid @ chunk.T
        best = np.full(k, -np.inf)
        winner = np.zeros(k, dtype=np.int64)
        alive = np.arange(k)
        for b in range(n_blocks):
            keep = block_bound[b] + shift[alive] >= best[alive] - margin
            alive = alive[keep]
            if alive.size == 0:
                break
            rows = sorted_pts[b * _PRUNE_BLOCK : (b + 1) * _PRUNE_BLOCK]
            scores = rows @ chunk[alive].T
            vals = scores.max(axis=0)
            args = scores.argmax(axis=0) + b * _PRUNE_BLOCK
            improved = vals > best[alive]
            hit = alive[improved]
            best[hit] = vals[improved]
            winner[hit] = args[improved]
        assignment[j0 : j0 + k] = order[winner]
    return assignment


def build_sketch(cloud: PointCloud, dirs: DirectionSet) -> CurvatureSketch:
    """Assign every direction to its support winner and tally win counts.

    Each direction's argmax is resolved independently, so results do not
    depend on internal blocking or thread counts.  Large clouds take a
    norm-pruned scan that skips point blocks provably unable to win; for
    clouds with exactly tied scores (symmetric integer data) the documented
    smallest-index tie-break is guaranteed on the direct path used below
    the size threshold.
    """
    if cloud.dim != dirs.dim:
        raise ValueError(f"dimension mismatch: cloud {cloud.dim}, dirs {dirs.dim}")
    pts = cloud.points
    dmat = dirs.directions
    if len(cloud) >= _PRUNE_THRESHOLD:
        assignment = _assign_pruned(pts, dmat)
    else:
        assignment = _assign_blocked(pts, dmat)
    counts = np.bincount(assignment, minlength=len(cloud))
    return CurvatureSketch(cloud=cloud, dirs=dirs, assignment=assignment, counts=counts)


def relative_curvature(sketch: CurvatureSketch, v: int) -> float:
    """Fraction of directions won by point ``v`` (in [0, 1])."""
    if not 0 <= v < len(sketch.cloud):
        raise IndexError(f"point index {v} out of range")
    return float(sketch.counts[v]) / sketch.d_count


def threshold_filter(
    sketch: CurvatureSketch,
    alpha: float,
    mode: str = "hard",
    seed: int = 0,
) -> InnerHull:
    """Keep the high-curvature winners of a sketch.

    Hard mode keeps exactly the points with estimated curvature strictly
    above ``alpha`` ("at or below the threshold" deletes).  Proportional mode
    additionally keeps each sub-threshold winner with probability
    ``curvature / alpha``, drawn from a generator seeded with ``seed`` in
    point-index order.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if mode not in ("hard", "proportional"):
        raise ValueError(f"unknown mode {mode!r}")
    curv = sketch.curvatures()
    kept_mask = curv > alpha
    if mode == "proportional" and alpha > 0.0:
        candidates = np.flatnonzero((curv > 0.0) & ~kept_mask)
        if candidates.size:
            rng = np.random.Generator(np.random.PCG64(int(seed)))
            draws = rng.random(candidates.size)
            kept_mask[candidates] = draws < curv[candidates] / alpha
    kept = np.flatnonzero(kept_mask).astype(np.int64)
    return InnerHull(
        kept_indices=kept, curvatures=curv[kept], alpha=float(alpha), mode=mode
    )


def outer_hull(
    sketch: CurvatureSketch, cloud: PointCloud, dirs: DirectionSet
) -> OuterHull:
    """One supporting halfspace per direction: ``d . x <= d . winner``.

    Every cloud point satisfies every constraint by construction (within
    floating-point noise).
    """
    if cloud is not sketch.cloud and not np.array_equal(cloud.points, sketch.cloud.points):
        raise ValueError("cloud does not match the sketch")
    if dirs is not sketch.dirs and not np.array_equal(dirs.directions, sketch.dirs.directions):
        raise ValueError("dirs do not match the sketch")
    winners = cloud.points[sketch.assignment]
    offsets = np.einsum("ij,ij->i", winners, dirs.directions)
    return OuterHull(
        normals=dirs.directions,
        offsets=offsets,
        support_indices=sketch.assignment,
        source="raw-sketch",
    )
