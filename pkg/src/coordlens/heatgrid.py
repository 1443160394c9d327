"""Kernel-smoothed point-density grids behind the heatmap layers.

Points are projected to spherical-Mercator meters and each deposits a
triangular kernel max(0, 1 - d/kernel_radius) onto nearby cell centers,
rescaled so the point's total deposited mass equals its weight.  The grid
covers the projected bounding box of the points padded by the kernel
radius.  The ``global`` mode is computed over all records, ``local`` over
the currently selected ones; the math is identical, only the input set
differs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .projections import SphericalMercator, project_forward

MODES = ("global", "local")


@dataclass
class HeatGrid:
    origin: tuple  # projected (x, y) of the grid's lower-left corner
    cell_size_m: float
    width: int
    height: int
    intensities: np.ndarray  # shape (height, width), row 0 at origin y
    mode: str

    def total(self) -> float:
        return float(self.intensities.sum()) if self.intensities.size else 0.0


def heat_grid(points, cell_size_m: float, kernel_radius_m: float, mode: str = "global"):
    """Rasterize weighted (GeoPoint, weight) pairs into a HeatGrid."""
    if mode not in MODES:
        raise ValueError(f"unknown heat grid mode: {mode!r}")
    if cell_size_m <= 0:
        raise ValueError("cell_size_m must be > 0")
    if kernel_radius_m < cell_size_m / 2:
        raise ValueError("kernel_radius_m must be >= cell_size_m / 2")

    pts = list(points)
    if not pts:
        return HeatGrid((0.0, 0.0), cell_size_m, 0, 0,
                        np.zeros((0, 0), dtype=np.float64), mode)

    proj = SphericalMercator()
    xs = np.empty(len(pts))
    ys = np.empty(len(pts))
    ws = np.empty(len(pts))
    for i, (pt, w) in enumerate(pts):
        xs[i], ys[i] = project_forward(proj, pt)
        ws[i] = w

    x0 = xs.min() - kernel_radius_m
    y0 = ys.min() - kernel_radius_m
    width = int(np.ceil((xs.max() + kernel_radius_m - x0) / cell_size_m)) or 1
    height = int(np.ceil((ys.max() + kernel_radius_m - y0) / cell_size_m)) or 1
    grid = np.zeros((height, width), dtype=np.float64)

    # Deposit over a (2*reach+1)^2 window of index offsets, vectorized
    # across all points per offset: first accumulate each point's total
    # kernel mass over its in-grid cells, then scale so it deposits
    # exactly its weight.
    reach = int(np.ceil(kernel_radius_m / cell_size_m)) + 1
    ci = np.floor((xs - x0) / cell_size_m).astype(np.int64)
    cj = np.floor((ys - y0) / cell_size_m).astype(np.int64)
    offsets = [(di, dj) for dj in range(-reach, reach + 1) for di in range(-reach, reach + 1)]

    def window(di, dj):
        ii = ci + di
        jj = cj + dj
        ok = (ii >= 0) & (ii < width) & (jj >= 0) & (jj < height)
        cx = x0 + (ii + 0.5) * cell_size_m
        cy = y0 + (jj + 0.5) * cell_size_m
        d = np.hypot(cx - xs, cy - ys)
        kern = np.maximum(0.0, 1.0 - d / kernel_radius_m)
        return ii, jj, ok, kern

    mass = np.zeros(len(pts))
    for di, dj in offsets:
        _, _, ok, kern = window(di, dj)
        mass += np.where(ok, kern, 0.0)

    covered = mass > 0
    scale = np.where(covered, ws / np.where(covered, mass, 1.0), 0.0)
    for di, dj in offsets:
        ii, jj, ok, kern = window(di, dj)
        take = ok & (kern > 0) & covered
        if take.any():
            np.add.at(grid, (jj[take], ii[take]), kern[take] * scale[take])

    if not covered.all():
        # No cell center in reach (point at a far corner of its cell);
        # conserve mass by dropping the whole weight in the nearest cell.
        stray = ~covered
        np.add.at(grid, (np.clip(cj[stray], 0, height - 1),
                         np.clip(ci[stray], 0, width - 1)), ws[stray])

    return HeatGrid((float(x0), float(y0)), cell_size_m, width, height, grid, mode)
