"""File formats for sampled coefficient fields.

Sampled complex-distortion grid: CSV with header ``x,y,re,im`` in row-major
order (x fastest), plus a sidecar JSON descriptor next to it (``<file>.json``)
holding ``{origin: [x0, y0], spacing: h, nx, ny, k_max}``.

Sampled matrix grid mirrors the same layout with header ``x,y,a11,a12,a22``
and a descriptor ``{origin, spacing, nx, ny, K}``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .elliptic import MatrixField
from .errors import ConfigError
from .plane import SampledField, grid_interpolate

MU_HEADER = "x,y,re,im"
MATRIX_HEADER = "x,y,a11,a12,a22"


def sidecar_path(csv_path) -> Path:
    return Path(str(csv_path) + ".json")


def _load_descriptor(csv_path, required_keys) -> dict:
    path = sidecar_path(csv_path)
    if not path.exists():
        raise ConfigError(f"missing sidecar descriptor {path}")
    try:
        desc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad JSON in {path} at line {exc.lineno}: {exc.msg}")
    missing = [k for k in required_keys if k not in desc]
    if missing:
        raise ConfigError(f"descriptor {path} missing keys {missing}")
    return desc


def _load_grid_csv(csv_path, header: str) -> np.ndarray:
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise ConfigError(f"no such file: {csv_path}")
    with open(csv_path) as fh:
        first = fh.readline().strip()
    if first.replace(" ", "") != header:
        raise ConfigError(f"{csv_path} must start with header {header!r}, got {first!r}")
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(header.split(",")):
        raise ConfigError(f"{csv_path}: expected {len(header.split(','))} columns")
    return data


def _check_grid_coords(data, desc, csv_path):
    nx, ny = int(desc["nx"]), int(desc["ny"])
    h = float(desc["spacing"])
    x0, y0 = float(desc["origin"][0]), float(desc["origin"][1])
    if data.shape[0] != nx * ny:
        raise ConfigError(
            f"{csv_path}: {data.shape[0]} rows but descriptor says nx*ny = {nx * ny}"
        )
    ix = np.tile(np.arange(nx), ny)
    iy = np.repeat(np.arange(ny), nx)
    if not (
        np.allclose(data[:, 0], x0 + ix * h, atol=1e-9 * max(1.0, h))
        and np.allclose(data[:, 1], y0 + iy * h, atol=1e-9 * max(1.0, h))
    ):
        raise ConfigError(f"{csv_path}: grid coordinates disagree with the descriptor")
    return nx, ny, h, complex(x0, y0)


def load_sampled_field(csv_path, interpolation: str = "bilinear") -> SampledField:
    """Read a sampled complex-distortion grid (CSV + sidecar descriptor)."""
    desc = _load_descriptor(csv_path, ("origin", "spacing", "nx", "ny", "k_max"))
    data = _load_grid_csv(csv_path, MU_HEADER)
    nx, ny, h, origin = _check_grid_coords(data, desc, csv_path)
    values = (data[:, 2] + 1j * data[:, 3]).reshape(ny, nx)
    return SampledField(
        origin=origin,
        spacing=h,
        values=values,
        k_max=float(desc["k_max"]),
        interpolation=interpolation,
    )


def save_sampled_field(csv_path, field: SampledField) -> None:
    """Write a sampled grid and its sidecar descriptor."""
    ny, nx = field.shape
    ix = np.tile(np.arange(nx), ny)
    iy = np.repeat(np.arange(ny), nx)
    flat = field.values.reshape(-1)
    rows = np.column_stack(
        [
            field.origin.real + ix * field.spacing,
            field.origin.imag + iy * field.spacing,
            flat.real,
            flat.imag,
        ]
    )
    np.savetxt(csv_path, rows, delimiter=",", header=MU_HEADER, comments="")
    sidecar_path(csv_path).write_text(
        json.dumps(
            {
                "origin": [field.origin.real, field.origin.imag],
                "spacing": field.spacing,
                "nx": nx,
                "ny": ny,
                "k_max": field.k_max,
            },
            sort_keys=True,
        )
        + "\n"
    )


def load_matrix_field(csv_path, interpolation: str = "bilinear") -> MatrixField:
    """Read a sampled coefficient-matrix grid as an interpolating MatrixField."""
    desc = _load_descriptor(csv_path, ("origin", "spacing", "nx", "ny", "K"))
    data = _load_grid_csv(csv_path, MATRIX_HEADER)
    nx, ny, h, origin = _check_grid_coords(data, desc, csv_path)
    K = float(desc["K"])
    grids = [data[:, col].reshape(ny, nx) for col in (2, 3, 4)]

    def entries(z):
        return tuple(
            grid_interpolate(origin, h, g, z, interpolation) for g in grids
        )

    dets = data[:, 2] * data[:, 4] - data[:, 3] ** 2
    det_normalized = bool(np.abs(dets - 1.0).max() <= 1e-9)
    return MatrixField(entries=entries, K=K, det_normalized=det_normalized)


def save_matrix_field(csv_path, entries_grid, origin, spacing, K) -> None:
    """Write matrix-entry grids (a11, a12, a22 arrays of shape (ny, nx))."""
    a11, a12, a22 = (np.asarray(g, dtype=float) for g in entries_grid)
    ny, nx = a11.shape
    ix = np.tile(np.arange(nx), ny)
    iy = np.repeat(np.arange(ny), nx)
    origin = complex(origin)
    rows = np.column_stack(
        [
            origin.real + ix * spacing,
            origin.imag + iy * spacing,
            a11.reshape(-1),
            a12.reshape(-1),
            a22.reshape(-1),
        ]
    )
    np.savetxt(csv_path, rows, delimiter=",", header=MATRIX_HEADER, comments="")
    sidecar_path(csv_path).write_text(
        json.dumps(
            {
                "origin": [origin.real, origin.imag],
                "spacing": float(spacing),
                "nx": nx,
                "ny": ny,
                "K": float(K),
            },
            sort_keys=True,
        )
        + "\n"
    )
