"""Marker clustering with spiderfy, and the kernel-density heat grid."""

import math
import random

from coordlens import GeoPoint, cluster, heat_grid, spiderfy

rng = random.Random(3)

# Points piled around two hotspots plus a shared sampling site where many
# records sit at exactly the same coordinates.
hot_a = [(f"a{i}", GeoPoint(-106.65 + rng.gauss(0, 0.03), 35.08 + rng.gauss(0, 0.03)))
         for i in range(40)]
hot_b = [(f"b{i}", GeoPoint(-106.30 + rng.gauss(0, 0.02), 35.20 + rng.gauss(0, 0.02)))
         for i in range(25)]
same_spot = [(f"c{i}", GeoPoint(-106.50, 35.00)) for i in range(12)]
points = hot_a + hot_b + same_spot

for zoom in (8, 11, 14):
    out = cluster(points, zoom=zoom, radius_px=40)
    sizes = sorted((len(c.members) for c in out), reverse=True)
    print(f"zoom {zoom:>2}: {len(out):>3} clusters, sizes {sizes[:6]}{'...' if len(sizes) > 6 else ''}")

# Even at max zoom the coincident markers stay stacked; spiderfy fans
# them out so each is individually clickable.
deepest = cluster(same_spot, zoom=18, radius_px=40)
n = len(deepest[0].members)
offsets = spiderfy(n)
radii = sorted({round(math.hypot(dx, dy), 1) for dx, dy in offsets})
print(f"\n{n} coincident markers -> spiderfy radii {radii} px "
      f"({'circle' if len(radii) == 1 else 'spiral'})")

# Heat grid: triangular kernels, mass-conserving, over all or selected points.
weighted = [(pt, 1.0) for _, pt in points]
grid = heat_grid(weighted, cell_size_m=400, kernel_radius_m=1200, mode="global")
print(f"\nheat grid {grid.width}x{grid.height} cells of {grid.cell_size_m:.0f} m")
print(f"deposited mass = {grid.total():.6f} (one unit per point, conserved)")

peak = grid.intensities.max()
rows = []
step = max(1, grid.height // 12)
for j in range(grid.height - 1, -1, -step):
    line = ""
    for i in range(0, grid.width, max(1, grid.width // 60)):
        v = grid.intensities[j, i]
        line += " .:-=+*#%@"[min(9, int(v / peak * 9))] if peak else " "
    rows.append(line)
print("\n" + "\n".join(rows))
