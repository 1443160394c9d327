"""Forward map projections onto a sphere.

Four projections cover the rendering needs: spherical (web) Mercator for
tile-aligned output, equirectangular as the simple cylindrical default,
Albers equal-area conic for area-preserving regional choropleths, and the
azimuthal stereographic for conformal polar/hemispheric views.  All
formulas operate on a sphere; angles are degrees at the API boundary and
radians internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidGeometry, ProjectionSingularity
from .geo import GeoPoint

MERCATOR_RADIUS_M = 6378137.0
SPHERE_RADIUS_M = 6371000.0

# Web-tile convention: the square world ends where |y| == world width/2.
MERCATOR_MAX_LAT = 85.06


@dataclass(frozen=True)
class SphericalMercator:
    radius_m: float = MERCATOR_RADIUS_M


@dataclass(frozen=True)
class Equirectangular:
    standard_parallel: float = 0.0
    radius_m: float = SPHERE_RADIUS_M


@dataclass(frozen=True)
class AlbersConic:
    """Equal-area conic; defaults are the conterminous-US parameters."""

    parallel1: float = 29.5
    parallel2: float = 45.5
    origin_lat: float = 37.5
    origin_lon: float = -96.0
    radius_m: float = SPHERE_RADIUS_M

    def __post_init__(self):
        n = (math.sin(math.radians(self.parallel1)) + math.sin(math.radians(self.parallel2))) / 2.0
        if n == 0.0:
            raise InvalidGeometry("albers standard parallels must not cancel (sin p1 + sin p2 == 0)")


@dataclass(frozen=True)
class Stereographic:
    origin_lat: float = 90.0
    origin_lon: float = 0.0
    radius_m: float = SPHERE_RADIUS_M


PROJECTION_KINDS = {
    "spherical_mercator": SphericalMercator,
    "equirectangular": Equirectangular,
    "albers_conic": AlbersConic,
    "stereographic": Stereographic,
}


def project_forward(spec, pt: GeoPoint):
    """Project a lon/lat point to planar (x, y) meters under ``spec``."""
    lam = math.radians(pt.lon)
    phi = math.radians(pt.lat)
    R = spec.radius_m

    if isinstance(spec, SphericalMercator):
        phi = math.radians(max(-MERCATOR_MAX_LAT, min(MERCATOR_MAX_LAT, pt.lat)))
        # asinh(tan(phi)) == ln(tan(pi/4 + phi/2)), exact at the equator
        return R * lam, R * math.asinh(math.tan(phi))

    if isinstance(spec, Equirectangular):
        return R * lam * math.cos(math.radians(spec.standard_parallel)), R * phi

    if isinstance(spec, AlbersConic):
        p1 = math.radians(spec.parallel1)
        p2 = math.radians(spec.parallel2)
        phi0 = math.radians(spec.origin_lat)
        lam0 = math.radians(spec.origin_lon)
        n = (math.sin(p1) + math.sin(p2)) / 2.0
        C = math.cos(p1) ** 2 + 2.0 * n * math.sin(p1)
        rho = R * math.sqrt(C - 2.0 * n * math.sin(phi)) / n
        rho0 = R * math.sqrt(C - 2.0 * n * math.sin(phi0)) / n
        theta = n * (lam - lam0)
        return rho * math.sin(theta), rho0 - rho * math.cos(theta)

    if isinstance(spec, Stereographic):
        phi0 = math.radians(spec.origin_lat)
        lam0 = math.radians(spec.origin_lon)
        denom = 1.0 + math.sin(phi0) * math.sin(phi) + math.cos(phi0) * math.cos(phi) * math.cos(lam - lam0)
        if denom <= 1e-12:
            raise ProjectionSingularity("point is antipodal to the projection origin")
        k = 2.0 * R / denom
        x = k * math.cos(phi) * math.sin(lam - lam0)
        y = k * (math.cos(phi0) * math.sin(phi) - math.sin(phi0) * math.cos(phi) * math.cos(lam - lam0))
        return x, y

    raise InvalidGeometry(f"unknown projection spec: {type(spec).__name__}")


def projection_to_dict(spec):
    if isinstance(spec, SphericalMercator):
        return {"kind": "spherical_mercator", "radius_m": spec.radius_m}
    if isinstance(spec, Equirectangular):
        return {"kind": "equirectangular", "standard_parallel": spec.standard_parallel,
                "radius_m": spec.radius_m}
    if isinstance(spec, AlbersConic):
        return {"kind": "albers_conic", "parallel1": spec.parallel1, "parallel2": spec.parallel2,
                "origin_lat": spec.origin_lat, "origin_lon": spec.origin_lon,
                "radius_m": spec.radius_m}
    if isinstance(spec, Stereographic):
        return {"kind": "stereographic", "origin_lat": spec.origin_lat,
                "origin_lon": spec.origin_lon, "radius_m": spec.radius_m}
    raise InvalidGeometry(f"unknown projection spec: {type(spec).__name__}")


def projection_from_dict(d):
    kind = d.get("kind")
    cls = PROJECTION_KINDS.get(kind)
    if cls is None:
        raise InvalidGeometry(f"unknown projection kind: {kind!r}")
    args = {k: v for k, v in d.items() if k != "kind"}
    return cls(**args)


# Web-Mercator pixel space: a zoom-z world is a square of 256 * 2**z pixels.

def lonlat_to_pixel(lon, lat, zoom):
    world = 256.0 * (2.0 ** zoom)
    lat = max(-MERCATOR_MAX_LAT, min(MERCATOR_MAX_LAT, lat))
    x = (lon + 180.0) / 360.0 * world
    siny = math.sin(math.radians(lat))
    y = (0.5 - math.log((1.0 + siny) / (1.0 - siny)) / (4.0 * math.pi)) * world
    return x, y


def pixel_to_lonlat(x, y, zoom):
    world = 256.0 * (2.0 ** zoom)
    lon = x / world * 360.0 - 180.0
    lat = math.degrees(math.atan(math.sinh(math.pi * (1.0 - 2.0 * y / world))))
    return lon, lat
