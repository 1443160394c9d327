"""Geospatial operations: containment predicates and forward projections.

Shows the three drawable filter geometries (polygon, bounding box,
circle) and the four projections, including a numeric check that Albers
really preserves area while Mercator preserves angles.
"""

import math

from coordlens import (
    AlbersConic,
    BBox,
    Circle,
    GeoPoint,
    Polygon,
    SphericalMercator,
    Stereographic,
    haversine_m,
    point_in_polygon,
    project_forward,
    spatial_predicate,
)

# A polygon with a hole: the outer square minus the inner quarter.
outer = [GeoPoint(x, y) for x, y in [(0, 0), (4, 0), (4, 4), (0, 4), (0, 0)]]
hole = [GeoPoint(x, y) for x, y in [(1, 1), (3, 1), (3, 3), (1, 3), (1, 1)]]
donut = Polygon(tuple(outer), (tuple(hole),))

print("inside ring, outside hole:", point_in_polygon(GeoPoint(0.5, 2), donut))
print("inside the hole:", point_in_polygon(GeoPoint(2, 2), donut))

# Bounding box and radius selections behave like the map draw tools.
box = spatial_predicate(BBox(-107, 34.5, -106, 35.5))
print("\nbbox contains downtown point:", box(GeoPoint(-106.65, 35.08)))

one_degree = haversine_m(GeoPoint(0, 0), GeoPoint(1, 0))
print(f"one degree along the equator = {one_degree:.2f} m")
circle = spatial_predicate(Circle(GeoPoint(0, 0), one_degree + 1))
print("circle of that radius contains (1, 0):", circle(GeoPoint(1, 0)))

# Forward projections. Albers with conterminous-US parameters.
albers = AlbersConic()
mercator = SphericalMercator()
stereo = Stereographic(origin_lat=90, origin_lon=0)

for name, spec in [("mercator", mercator), ("albers", albers), ("stereographic", stereo)]:
    x, y = project_forward(spec, GeoPoint(-106.65, 35.08))
    print(f"{name:>14}: Albuquerque -> ({x/1000:.1f} km, {y/1000:.1f} km)")


def area_scale(spec, lon, lat, h=1e-5):
    """Finite-difference area scale factor; 1.0 means equal-area."""
    hdeg = math.degrees(h)
    px = project_forward(spec, GeoPoint(lon + hdeg, lat))
    mx = project_forward(spec, GeoPoint(lon - hdeg, lat))
    py = project_forward(spec, GeoPoint(lon, lat + hdeg))
    my = project_forward(spec, GeoPoint(lon, lat - hdeg))
    x_lam = [(a - b) / (2 * h) for a, b in zip(px, mx)]
    x_phi = [(a - b) / (2 * h) for a, b in zip(py, my)]
    jac = abs(x_lam[0] * x_phi[1] - x_phi[0] * x_lam[1])
    return jac / (spec.radius_m ** 2 * math.cos(math.radians(lat)))


print("\narea scale at 45N (1 = area-true):")
print(f"  albers   {area_scale(albers, -100, 45):.9f}")
print(f"  mercator {area_scale(mercator, -100, 45):.9f}  (inflates area, stays conformal)")
