"""Plain-text CSV and PGM output for matrices."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .linalg import as_matrix


def save_csv(path, X) -> None:
    """One matrix row per line, comma separated, round-trip precision."""
    np.savetxt(path, np.atleast_2d(np.asarray(X, dtype=np.float64)), fmt="%.17g", delimiter=",")


def load_csv(path, name: str | None = None) -> np.ndarray:
    X = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    return as_matrix(X, name or Path(path).name)


def heatmap_pixels(X) -> np.ndarray:
    """Map ``X`` to 8-bit gray: 0 -> 128, the minimum -> 0, the maximum -> 255.

    Negative and positive entries are scaled separately so both extremes
    reach the ends of the range.
    """
    X = np.asarray(X, dtype=np.float64)
    pix = np.full(X.shape, 128.0)
    hi = X.max(initial=0.0)
    lo = X.min(initial=0.0)
    if hi > 0:
        pos = X > 0
        pix[pos] = 128.0 + 127.0 * X[pos] / hi
    if lo < 0:
        neg = X < 0
        pix[neg] = 128.0 - 128.0 * X[neg] / lo
    return np.clip(np.rint(pix), 0, 255).astype(np.uint8)


def save_pgm(path, X) -> None:
    """Binary PGM (P5, maxval 255) of :func:`heatmap_pixels`."""
    pix = heatmap_pixels(X)
    rows, cols = pix.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(pix).tobytes())


def load_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        m = re.compile(rb"\s*(\S+)").match(data, pos)
        if m is None:
            raise ValueError(f"{path}: truncated PGM header")
        fields.append(m.group(1))
        pos = m.end()
    if fields[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    cols, rows, maxval = (int(f) for f in fields[1:])
    if maxval != 255:
        raise ValueError(f"{path}: unsupported maxval {maxval}")
    # exactly one whitespace byte separates the header from the raster
    raster = data[pos + 1: pos + 1 + rows * cols]
    return np.frombuffer(raster, dtype=np.uint8).reshape(rows, cols)
