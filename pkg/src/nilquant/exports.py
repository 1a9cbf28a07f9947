"""Flat-file export formats for matrices, fields and reports.

Matrices go out two ways: CSV with row-major "re,im" cell pairs, and raw
little-endian complex128 binary next to a JSON sidecar that records the grid,
the scheme and a format version.  Fields export as CSV rows of node
coordinates followed by the value's real and imaginary parts.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .grids import Grid, XiGrid
from .operators import OperatorMatrix

FORMAT_VERSION = 1


def _grid_meta(grid: Grid) -> dict:
    return {"half_width": list(grid.half_width), "counts": list(grid.counts),
            "dual": grid.dual}


def save_matrix(op: OperatorMatrix, base_path: str, scheme: str = "",
                extra: dict | None = None) -> tuple[str, str]:
    """Write <base>.bin (little-endian complex128, row major) and <base>.json."""
    bin_path = base_path + ".bin"
    meta_path = base_path + ".json"
    data = np.ascontiguousarray(op.kernel, dtype="<c16")
    with open(bin_path, "wb") as fh:
        fh.write(data.tobytes())
    meta = {
        "format_version": FORMAT_VERSION,
        "dtype": "complex128",
        "byte_order": "little",
        "shape": list(op.kernel.shape),
        "grid": _grid_meta(op.grid),
        "scheme": scheme,
    }
    if extra:
        meta.update(extra)
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
    return bin_path, meta_path


def load_matrix(base_path: str) -> OperatorMatrix:
    with open(base_path + ".json", encoding="utf-8") as fh:
        meta = json.load(fh)
    shape = tuple(meta["shape"])
    g = meta["grid"]
    grid = Grid(tuple(g["half_width"]), tuple(g["counts"]), g.get("dual", False))
    data = np.fromfile(base_path + ".bin", dtype="<c16").reshape(shape)
    return OperatorMatrix(grid, data.astype(complex), meta={"scheme": meta.get("scheme")})


def matrix_to_csv(op: OperatorMatrix, path: str):
    """Row-major CSV; each matrix entry contributes a "re,im" pair of cells."""
    m = op.kernel
    with open(path, "w", encoding="utf-8") as fh:
        for row in m:
            cells = []
            for v in row:
                cells.append(f"{v.real:.17g},{v.imag:.17g}")
            fh.write(",".join(cells) + "\n")


def load_matrix_csv(path: str, grid: Grid) -> OperatorMatrix:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            vals = [float(v) for v in line.strip().split(",") if v]
            rows.append([complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)])
    return OperatorMatrix(grid, np.asarray(rows, dtype=complex))


def field_to_csv(samples: np.ndarray, grid: Grid, path: str):
    """CSV rows: node coordinates, value real part, value imaginary part."""
    nodes = grid.nodes()
    vals = np.asarray(samples, dtype=complex).reshape(-1)
    if len(vals) != len(nodes):
        raise ValueError("sample count does not match the grid")
    with open(path, "w", encoding="utf-8") as fh:
        for node, v in zip(nodes, vals):
            coords = ",".join(f"{c:.17g}" for c in node)
            fh.write(f"{coords},{v.real:.17g},{v.imag:.17g}\n")


def xi_field_to_csv(values: np.ndarray, xi_grid: XiGrid, path: str):
    """CSV rows: z coordinates, zeta coordinates, re, im."""
    z_nodes, zeta_nodes = xi_grid.node_pairs()
    vals = np.asarray(values, dtype=complex)
    with open(path, "w", encoding="utf-8") as fh:
        for i, z in enumerate(z_nodes):
            for j, zeta in enumerate(zeta_nodes):
                coords = ",".join(f"{c:.17g}" for c in z)
                dcoords = ",".join(f"{c:.17g}" for c in zeta)
                v = vals[i, j]
                fh.write(f"{coords},{dcoords},{v.real:.17g},{v.imag:.17g}\n")


def write_json(obj: dict, path: str):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
