"""Geometry primitives and spatial predicates for map-driven filtering.

Geometries come in three flavors drawn on a map: polygons (with optional
holes), bounding boxes, and circles with a radius in meters.  Containment
for polygons uses even-odd ray casting in the lon/lat plane; circles use
great-circle distance on a sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGeometry

EARTH_RADIUS_M = 6371000.0


@dataclass(frozen=True)
class GeoPoint:
    lon: float
    lat: float

    def __post_init__(self):
        if not (math.isfinite(self.lon) and math.isfinite(self.lat)):
            raise InvalidGeometry("point coordinates must be finite")
        if not (-180.0 <= self.lon <= 180.0 and -90.0 <= self.lat <= 90.0):
            raise InvalidGeometry(f"point out of bounds: ({self.lon}, {self.lat})")


@dataclass(frozen=True)
class Polygon:
    """One exterior ring plus zero or more holes.

    Rings are closed (first vertex repeated last) and need at least 4
    vertices in that closed form.  Holes subtract under even-odd filling.
    """

    exterior: tuple
    holes: tuple = field(default=())

    def __post_init__(self):
        for ring in (self.exterior, *self.holes):
            if len(ring) < 4:
                raise InvalidGeometry("polygon ring needs >= 4 vertices (closed)")
            first, last = ring[0], ring[-1]
            if first.lon != last.lon or first.lat != last.lat:
                raise InvalidGeometry("polygon ring must be closed (first == last)")

    @property
    def rings(self):
        return (self.exterior, *self.holes)


@dataclass(frozen=True)
class BBox:
    west: float
    south: float
    east: float
    north: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.west, self.south, self.east, self.north)):
            raise InvalidGeometry("bbox bounds must be finite")
        if self.west > self.east or self.south > self.north:
            raise InvalidGeometry("bbox requires west <= east and south <= north")


@dataclass(frozen=True)
class Circle:
    center: GeoPoint
    radius_m: float

    def __post_init__(self):
        if not (math.isfinite(self.radius_m) and self.radius_m > 0):
            raise InvalidGeometry("circle radius must be > 0 meters")


@dataclass(frozen=True)
class MultiPolygon:
    """Union of polygons; containment means inside any member."""

    polygons: tuple

    def __post_init__(self):
        if not self.polygons:
            raise InvalidGeometry("multipolygon needs at least one polygon")


Geometry = (Polygon, BBox, Circle, MultiPolygon)


def haversine_m(a: GeoPoint, b: GeoPoint, radius_m: float = EARTH_RADIUS_M) -> float:
    """Great-circle distance between two points on a sphere, in meters."""
    lon1, lat1, lon2, lat2 = map(math.radians, (a.lon, a.lat, b.lon, b.lat))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2.0 * radius_m * math.asin(min(1.0, math.sqrt(h)))


def haversine_m_arrays(lon, lat, center: GeoPoint, radius_m: float = EARTH_RADIUS_M):
    """Vectorized haversine from one center to arrays of lon/lat degrees."""
    lon1 = math.radians(center.lon)
    lat1 = math.radians(center.lat)
    lon2 = np.radians(np.asarray(lon, dtype=np.float64))
    lat2 = np.radians(np.asarray(lat, dtype=np.float64))
    h = (
        np.sin((lat2 - lat1) / 2) ** 2
        + math.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2) ** 2
    )
    return 2.0 * radius_m * np.arcsin(np.minimum(1.0, np.sqrt(h)))


def point_in_polygon(pt: GeoPoint, poly: Polygon) -> bool:
    """Even-odd (ray casting) containment in the lon/lat plane.

    A horizontal ray is cast from the point; an odd number of edge
    crossings over all rings means inside, so holes subtract.  Points
    exactly on an edge are implementation-defined.
    """
    x, y = pt.lon, pt.lat
    inside = False
    for ring in poly.rings:
        n = len(ring) - 1  # closed ring: skip duplicate last vertex
        for i in range(n):
            x1, y1 = ring[i].lon, ring[i].lat
            x2, y2 = ring[i + 1].lon, ring[i + 1].lat
            if (y1 > y) != (y2 > y):
                x_cross = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
                if x < x_cross:
                    inside = not inside
    return inside


def _polygon_mask(lon, lat, poly: Polygon):
    """Vectorized even-odd test for arrays of lon/lat; NaN points are outside."""
    x = np.asarray(lon, dtype=np.float64)
    y = np.asarray(lat, dtype=np.float64)
    inside = np.zeros(x.shape, dtype=bool)
    with np.errstate(invalid="ignore", divide="ignore"):
        for ring in poly.rings:
            xs = np.array([p.lon for p in ring], dtype=np.float64)
            ys = np.array([p.lat for p in ring], dtype=np.float64)
            for i in range(len(ring) - 1):
                x1, y1, x2, y2 = xs[i], ys[i], xs[i + 1], ys[i + 1]
                straddles = (y1 > y) != (y2 > y)
                if y2 != y1:
                    x_cross = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
                    inside ^= straddles & (x < x_cross)
    inside &= np.isfinite(x) & np.isfinite(y)
    return inside


def contains(geom, pt: GeoPoint) -> bool:
    """Scalar containment for any geometry variant."""
    if isinstance(geom, Polygon):
        return point_in_polygon(pt, geom)
    if isinstance(geom, MultiPolygon):
        return any(point_in_polygon(pt, p) for p in geom.polygons)
    if isinstance(geom, BBox):
        return geom.west <= pt.lon <= geom.east and geom.south <= pt.lat <= geom.north
    if isinstance(geom, Circle):
        return haversine_m(geom.center, pt) <= geom.radius_m
    raise InvalidGeometry(f"unsupported geometry: {type(geom).__name__}")


def spatial_predicate(geom):
    """Return ``f(GeoPoint) -> bool`` testing containment in ``geom``."""
    if not isinstance(geom, Geometry):
        raise InvalidGeometry(f"unsupported geometry: {type(geom).__name__}")
    return lambda pt: contains(geom, pt)


def contains_mask(geom, lon, lat):
    """Vectorized containment over parallel lon/lat arrays (NaN -> False)."""
    lon = np.asarray(lon, dtype=np.float64)
    lat = np.asarray(lat, dtype=np.float64)
    if isinstance(geom, Polygon):
        return _polygon_mask(lon, lat, geom)
    if isinstance(geom, MultiPolygon):
        mask = np.zeros(lon.shape, dtype=bool)
        for p in geom.polygons:
            mask |= _polygon_mask(lon, lat, p)
        return mask
    if isinstance(geom, BBox):
        with np.errstate(invalid="ignore"):
            return (
                (lon >= geom.west)
                & (lon <= geom.east)
                & (lat >= geom.south)
                & (lat <= geom.north)
            )
    if isinstance(geom, Circle):
        with np.errstate(invalid="ignore"):
            d = haversine_m_arrays(lon, lat, geom.center)
            return ~np.isnan(d) & (d <= geom.radius_m)
    raise InvalidGeometry(f"unsupported geometry: {type(geom).__name__}")


def _ring_from_coords(coords):
    return tuple(GeoPoint(float(c[0]), float(c[1])) for c in coords)


def polygon_from_rings(rings):
    """Build a Polygon from GeoJSON-style rings (lists of [lon, lat])."""
    if not rings:
        raise InvalidGeometry("polygon needs at least one ring")
    return Polygon(_ring_from_coords(rings[0]), tuple(_ring_from_coords(r) for r in rings[1:]))


def geometry_to_dict(geom):
    """Wire form of a geometry (used in spatial-select commands)."""
    if isinstance(geom, Polygon):
        return {
            "type": "polygon",
            "rings": [[[p.lon, p.lat] for p in ring] for ring in geom.rings],
        }
    if isinstance(geom, MultiPolygon):
        return {
            "type": "multipolygon",
            "polygons": [geometry_to_dict(p)["rings"] for p in geom.polygons],
        }
    if isinstance(geom, BBox):
        return {"type": "bbox", "west": geom.west, "south": geom.south,
                "east": geom.east, "north": geom.north}
    if isinstance(geom, Circle):
        return {"type": "circle", "center": [geom.center.lon, geom.center.lat],
                "radius_m": geom.radius_m}
    raise InvalidGeometry(f"unsupported geometry: {type(geom).__name__}")


def geometry_from_dict(d):
    kind = d.get("type")
    if kind == "polygon":
        return polygon_from_rings(d["rings"])
    if kind == "multipolygon":
        return MultiPolygon(tuple(polygon_from_rings(r) for r in d["polygons"]))
    if kind == "bbox":
        return BBox(float(d["west"]), float(d["south"]), float(d["east"]), float(d["north"]))
    if kind == "circle":
        c = d["center"]
        return Circle(GeoPoint(float(c[0]), float(c[1])), float(d["radius_m"]))
    raise InvalidGeometry(f"unsupported geometry type: {kind!r}")
