"""Marker clustering and spiderfy layouts for dense point maps.

Clustering is greedy in Web-Mercator pixel space at a given zoom: points
are visited in stable key order and join the first existing cluster whose
centroid lies within the pixel radius, otherwise they seed a new cluster.
Coincident or tightly packed members of one cluster can then be fanned out
with a spiderfy layout (a circle for small counts, an Archimedean spiral
beyond that) so each marker is individually clickable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NotApplicable
from .geo import GeoPoint
from .projections import lonlat_to_pixel, pixel_to_lonlat

SPIDERFY_CIRCLE_MAX = 8
SPIDERFY_BASE_RADIUS_PX = 28.0
SPIDERFY_SPIRAL_SPACING_PX = 6.0
SPIDERFY_SPIRAL_SEPARATION_PX = 24.0


@dataclass
class Cluster:
    centroid: GeoPoint
    members: list
    pixel: tuple = field(repr=False, default=(0.0, 0.0))


def cluster(points, zoom: int, radius_px: float):
    """Greedily cluster (key, GeoPoint) pairs at a zoom level.

    Returns a list of Cluster partitioning the input.  Points are
    processed sorted by key so the result is independent of input order;
    each point joins the earliest-created cluster whose current centroid
    lies within radius_px, else starts its own.  A spatial hash keyed on
    radius-sized cells keeps the scan near-linear for dense inputs.
    """
    if radius_px <= 0:
        raise ValueError("radius_px must be > 0")
    if not (0 <= zoom <= 22):
        raise ValueError("zoom must be in [0, 22]")

    clusters = []
    cells = {}  # (cx, cy) -> list of cluster indices whose centroid sits in the cell

    def cell_of(px, py):
        return (math.floor(px / radius_px), math.floor(py / radius_px))

    for key, pt in sorted(points, key=lambda kp: kp[0]):
        px, py = lonlat_to_pixel(pt.lon, pt.lat, zoom)
        cx, cy = cell_of(px, py)
        best = None
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in cells.get((cx + dx, cy + dy), ()):
                    if best is not None and idx >= best:
                        continue
                    ccx, ccy = clusters[idx].pixel
                    if math.hypot(px - ccx, py - ccy) <= radius_px:
                        best = idx
        if best is None:
            clusters.append(Cluster(centroid=pt, members=[key], pixel=(px, py)))
            cells.setdefault((cx, cy), []).append(len(clusters) - 1)
        else:
            c = clusters[best]
            n = len(c.members)
            old_cell = cell_of(*c.pixel)
            c.pixel = ((c.pixel[0] * n + px) / (n + 1), (c.pixel[1] * n + py) / (n + 1))
            c.members.append(key)
            lon, lat = pixel_to_lonlat(c.pixel[0], c.pixel[1], zoom)
            c.centroid = GeoPoint(lon, lat)
            new_cell = cell_of(*c.pixel)
            if new_cell != old_cell:
                cells[old_cell].remove(best)
                cells.setdefault(new_cell, []).append(best)
    return clusters


def spiderfy(
    n: int,
    base_radius_px: float = SPIDERFY_BASE_RADIUS_PX,
    spacing_px: float = SPIDERFY_SPIRAL_SPACING_PX,
    separation_px: float = SPIDERFY_SPIRAL_SEPARATION_PX,
):
    """Pixel offsets fanning n coincident markers out from their anchor.

    Up to 8 markers sit evenly on one circle (first at angle 0); more than
    8 follow a spiral with radius base + spacing*i and angle advancing by
    separation/radius each leg.
    """
    if n < 2:
        raise NotApplicable("spiderfy needs at least 2 members")
    offsets = []
    if n <= SPIDERFY_CIRCLE_MAX:
        step = 2.0 * math.pi / n
        for i in range(n):
            a = step * i
            offsets.append((base_radius_px * math.cos(a), base_radius_px * math.sin(a)))
    else:
        angle = 0.0
        for i in range(n):
            r = base_radius_px + spacing_px * i
            angle += separation_px / r
            offsets.append((r * math.cos(angle), r * math.sin(angle)))
    return offsets
