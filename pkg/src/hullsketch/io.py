"""CSV readers/writers for points, directions, and halfspaces.

Grammar: comma-separated decimal floats, optional comment/header lines
starting with ``#``, LF or CRLF endings.  Values are written with 17
significant digits so a write/read round trip is bitwise exact.
"""
from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np

__all__ = [
    "CsvFormatError",
    "read_matrix",
    "write_matrix",
    "read_points",
    "write_points",
    "read_halfspaces",
    "write_halfspaces",
    "read_directions",
    "write_directions",
]

FLOAT_FORMAT = "%.17g"


class CsvFormatError(ValueError):
    """Malformed CSV input; the message pinpoints the offending line."""


def _scan_for_error(path: Path) -> None:
    """Re-parse line by line to locate the defect behind a fast-path failure."""
    width = None
    with open(path, "r", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = [f.strip() for f in stripped.split(",")]
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise CsvFormatError(
                    f"{path}: line {lineno}: expected {width} fields, got {len(fields)}"
                )
            for col, field in enumerate(fields, start=1):
                try:
                    float(field)
                except ValueError:
                    raise CsvFormatError(
                        f"{path}: line {lineno}, field {col}: not a number: {field!r}"
                    ) from None
    raise CsvFormatError(f"{path}: no data rows found")


def read_matrix(path) -> np.ndarray:
    """Read a CSV of floats into a 2-d array, with located parse errors."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)  # empty-input chatter
            data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=np.float64)
    except ValueError:
        _scan_for_error(path)  # always raises with a precise location
        raise  # pragma: no cover
    if data.size == 0:
        raise CsvFormatError(f"{path}: no data rows found")
    return data


def write_matrix(path, data) -> None:
    data = np.atleast_2d(np.asarray(data, dtype=np.float64))
    np.savetxt(path, data, delimiter=",", fmt=FLOAT_FORMAT)


def read_points(path) -> np.ndarray:
    return read_matrix(path)


def write_points(path, points) -> None:
    write_matrix(path, points)


def write_halfspaces(path, normals, offsets) -> None:
    """Halfspace CSV: dim normal columns followed by one offset column."""
    normals = np.atleast_2d(np.asarray(normals, dtype=np.float64))
    offsets = np.asarray(offsets, dtype=np.float64).reshape(-1, 1)
    if normals.shape[0] != offsets.shape[0]:
        raise ValueError("normals and offsets must have matching row counts")
    write_matrix(path, np.hstack([normals, offsets]))


def read_halfspaces(path) -> tuple[np.ndarray, np.ndarray]:
    data = read_matrix(path)
    if data.shape[1] < 2:
        raise CsvFormatError(f"{path}: halfspace rows need at least 2 columns")
    return data[:, :-1], data[:, -1]


def write_directions(path, dirs) -> None:
    """Direction CSV: one unit vector per row."""
    from .directions import DirectionSet

    arr = dirs.directions if isinstance(dirs, DirectionSet) else dirs
    write_matrix(path, arr)


def read_directions(path, seed: int = 0, method: str = "gaussian-uniform"):
    """Read a direction CSV back into a set.

    The file carries no RNG provenance; ``seed``/``method`` are caller-supplied
    tags and the stored vectors are authoritative.
    """
    from .directions import DirectionSet

    return DirectionSet(read_matrix(path), seed=seed, method=method)
