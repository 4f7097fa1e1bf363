"""On-disk formats: WVF1 wavefunction snapshots, the ledger CSV and 16-bit PGM.

WVF1 layout (all little-endian)::

    b"WVF1" | u32 nx | u32 ny | f64 lx | f64 ly | f64 t | f64 b_field
    | nx*ny complex samples as (f64 re, f64 im), row-major, y slowest
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Grid2D, WaveField
from .errors import SnapshotError

MAGIC = b"WVF1"
_HEADER = struct.Struct("<4sIIdddd")

CSV_COLUMNS = (
    "t", "norm", "x", "y", "rho0", "l_can", "l_kin", "i_total", "i_prime",
    "l_dia", "l_cyclo", "mu_dia", "orbit_cx", "orbit_cy", "x_analytic",
    "y_analytic", "rho0_analytic", "res_parallel_axis", "res_ledger",
    "boundary_leak",
)


@dataclass
class Snapshot:
    psi: WaveField
    t: float
    b_field: float


def write_snapshot(path, psi: WaveField, t: float, b_field: float) -> Path:
    g = psi.grid
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, g.nx, g.ny, g.lx, g.ly, float(t), float(b_field)))
        fh.write(np.ascontiguousarray(psi.values, dtype="<c16").tobytes())
    return path


def read_snapshot(path) -> Snapshot:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise SnapshotError(f"{path}: truncated header")
    magic, nx, ny, lx, ly, t, b = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise SnapshotError(f"{path}: bad magic {magic!r}")
    expected = _HEADER.size + 16 * nx * ny
    if len(data) != expected:
        raise SnapshotError(f"{path}: expected {expected} bytes, found {len(data)}")
    try:
        grid = Grid2D(nx, ny, lx, ly)
    except ValueError as exc:
        raise SnapshotError(f"{path}: invalid grid header ({exc})") from exc
    values = np.frombuffer(data, dtype="<c16", offset=_HEADER.size).reshape(ny, nx)
    return Snapshot(WaveField(grid, values.astype(np.complex128)), t, b)


def format_value(v: float) -> str:
    return f"{v:.17g}"


def write_ledger_csv(path, rows) -> Path:
    """``rows`` are mappings holding every name in :data:`CSV_COLUMNS`."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(format_value(row[c]) for c in CSV_COLUMNS) + "\n")
    return path


def read_ledger_csv(path) -> dict[str, np.ndarray]:
    arr = np.genfromtxt(path, delimiter=",", names=True)
    arr = np.atleast_1d(arr)
    return {name: np.asarray(arr[name], dtype=float) for name in arr.dtype.names}


def density_to_pgm(dens: np.ndarray) -> bytes:
    """Encode a density as binary 16-bit PGM, linearly scaled to [0, max].

    The first image row is the largest y so that +y points up.
    """
    dens = np.asarray(dens, dtype=float)
    ny, nx = dens.shape
    peak = float(dens.max()) if dens.size else 0.0
    if peak > 0:
        pixels = np.rint(dens / peak * 65535.0)
    else:
        pixels = np.zeros_like(dens)
    pixels = np.clip(pixels, 0, 65535).astype(">u2")[::-1]
    return f"P5\n{nx} {ny}\n65535\n".encode("ascii") + pixels.tobytes()


def read_pgm(path) -> np.ndarray:
    """Read back a 16-bit P5 file (rows as stored, top row first)."""
    data = Path(path).read_bytes()
    m = re.match(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s", data)
    if m is None:
        raise ValueError("not a binary PGM")
    nx, ny, maxval = (int(g) for g in m.groups())
    if maxval != 65535:
        raise ValueError("only 16-bit PGM is supported")
    return np.frombuffer(data, dtype=">u2", count=nx * ny, offset=m.end()).reshape(ny, nx)


def write_pgm(path, dens: np.ndarray) -> Path:
    path = Path(path)
    path.write_bytes(density_to_pgm(dens))
    return path


def write_arrows(path, grid: Grid2D, current: np.ndarray, stride: int = 8) -> Path:
    """Decimated ``x y j_x j_y`` samples for external quiver plots."""
    path = Path(path)
    X, Y = grid.mesh
    sl = (slice(None, None, stride), slice(None, None, stride))
    cols = np.column_stack([X[sl].ravel(), Y[sl].ravel(), current[0][sl].ravel(), current[1][sl].ravel()])
    np.savetxt(path, cols, fmt="%.17g", header="x y j_x j_y")
    return path
