import math
import random

import pytest

from coordlens.cluster import cluster, spiderfy
from coordlens.errors import NotApplicable
from coordlens.geo import GeoPoint
from coordlens.projections import lonlat_to_pixel


class TestCluster:
    def test_single_point(self):
        out = cluster([("a", GeoPoint(10, 20))], zoom=5, radius_px=40)
        assert len(out) == 1
        assert out[0].members == ["a"]

    def test_coincident_points_merge(self):
        pts = [("a", GeoPoint(10, 20)), ("b", GeoPoint(10, 20))]
        out = cluster(pts, zoom=12, radius_px=1)
        assert len(out) == 1
        assert sorted(out[0].members) == ["a", "b"]

    def test_distant_points_stay_apart(self):
        pts = [("a", GeoPoint(0, 0)), ("b", GeoPoint(10, 0))]
        ax, ay = lonlat_to_pixel(0, 0, 4)
        bx, by = lonlat_to_pixel(10, 0, 4)
        assert math.hypot(bx - ax, by - ay) > 40
        out = cluster(pts, zoom=4, radius_px=40)
        assert len(out) == 2

    def test_partition_property(self):
        rng = random.Random(9)
        pts = [(f"k{i}", GeoPoint(rng.uniform(-30, 30), rng.uniform(-30, 30)))
               for i in range(150)]
        zoom, radius = 3, 30
        out = cluster(pts, zoom=zoom, radius_px=radius)
        seen = [m for c in out for m in c.members]
        assert sorted(seen) == sorted(k for k, _ in pts)
        by_key = dict(pts)
        for c in out:
            cx, cy = lonlat_to_pixel(c.centroid.lon, c.centroid.lat, zoom)
            for m in c.members:
                px, py = lonlat_to_pixel(by_key[m].lon, by_key[m].lat, zoom)
                assert math.hypot(px - cx, py - cy) <= 2 * radius

    def test_matches_direct_greedy_scan(self):
        """The spatial-hash fast path equals a plain O(n*k) greedy scan."""
        def greedy_reference(points, zoom, radius):
            clusters = []
            for key, pt in sorted(points, key=lambda kp: kp[0]):
                px, py = lonlat_to_pixel(pt.lon, pt.lat, zoom)
                joined = None
                for c in clusters:
                    if math.hypot(px - c[1], py - c[2]) <= radius:
                        joined = c
                        break
                if joined is None:
                    clusters.append([[key], px, py])
                else:
                    n = len(joined[0])
                    joined[1] = (joined[1] * n + px) / (n + 1)
                    joined[2] = (joined[2] * n + py) / (n + 1)
                    joined[0].append(key)
            return [c[0] for c in clusters]

        rng = random.Random(11)
        for trial in range(20):
            pts = [(f"k{i:03d}", GeoPoint(rng.uniform(-8, 8), rng.uniform(-8, 8)))
                   for i in range(rng.randint(1, 120))]
            zoom = rng.randint(2, 8)
            radius = rng.choice([10, 25, 60])
            got = [c.members for c in cluster(pts, zoom=zoom, radius_px=radius)]
            want = greedy_reference(pts, zoom, radius)
            assert got == want, f"trial={trial}"

    def test_input_order_does_not_matter(self):
        rng = random.Random(10)
        pts = [(f"k{i}", GeoPoint(rng.uniform(-5, 5), rng.uniform(-5, 5)))
               for i in range(40)]
        a = cluster(pts, zoom=6, radius_px=25)
        shuffled = pts[:]
        rng.shuffle(shuffled)
        b = cluster(shuffled, zoom=6, radius_px=25)
        assert [sorted(c.members) for c in a] == [sorted(c.members) for c in b]


class TestSpiderfy:
    def test_two_members_opposite(self):
        (x1, y1), (x2, y2) = spiderfy(2, base_radius_px=28)
        assert (x1, y1) == pytest.approx((28.0, 0.0))
        assert (x2, y2) == pytest.approx((-28.0, 0.0), abs=1e-9)

    def test_eight_members_on_one_circle(self):
        offsets = spiderfy(8, base_radius_px=28)
        assert len(offsets) == 8
        for i, (dx, dy) in enumerate(offsets):
            assert math.hypot(dx, dy) == pytest.approx(28.0)
            assert math.atan2(dy, dx) == pytest.approx(
                math.remainder(2 * math.pi * i / 8, 2 * math.pi), abs=1e-9)

    def test_twenty_members_spiral_radii_increase(self):
        offsets = spiderfy(20)
        radii = [math.hypot(dx, dy) for dx, dy in offsets]
        assert all(b > a for a, b in zip(radii, radii[1:]))

    def test_offsets_distinct(self):
        for n in (2, 5, 8, 9, 15, 40):
            offsets = spiderfy(n)
            assert len({(round(x, 9), round(y, 9)) for x, y in offsets}) == n

    def test_too_few_members(self):
        with pytest.raises(NotApplicable):
            spiderfy(1)
