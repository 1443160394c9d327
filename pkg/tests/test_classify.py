import random

import pytest

from coordlens.classify import ClassBreaks, assign_class, classify
from coordlens.errors import NotEnoughDistinct

from _oracles import exhaustive_jenks, quantile_sorted


class TestEqualInterval:
    def test_two_classes_over_0_10(self):
        b = classify(range(11), "equal_interval", 2)
        assert b.breaks == (0.0, 5.0, 10.0)

    def test_brackets_data(self):
        rng = random.Random(1)
        vals = [rng.uniform(-100, 100) for _ in range(50)]
        b = classify(vals, "equal_interval", 7)
        assert b.breaks[0] == min(vals)
        assert b.breaks[-1] == max(vals)
        assert list(b.breaks) == sorted(b.breaks)


class TestQuantile:
    def test_linear_interpolation_rule(self):
        b = classify([1, 2, 3, 4, 5, 6, 7, 8], "quantile", 4)
        assert b.breaks == (1.0, 2.75, 4.5, 6.25, 8.0)

    def test_matches_sorted_array_oracle(self):
        rng = random.Random(2)
        for _ in range(50):
            n = rng.randint(8, 60)
            vals = sorted(round(rng.uniform(0, 100), 4) for _ in range(n))
            k = rng.randint(2, 5)
            if len(set(vals)) < k:
                continue
            b = classify(vals, "quantile", k)
            for i in range(1, k):
                assert b.breaks[i] == pytest.approx(quantile_sorted(vals, i / k), rel=1e-12)

    def test_not_enough_distinct(self):
        with pytest.raises(NotEnoughDistinct):
            classify([1, 1, 1, 2], "quantile", 3)


class TestJenks:
    def test_gap_split(self):
        b = classify([1, 2, 3, 10, 11, 12], "jenks", 2)
        assert b.breaks == (1.0, 10.0, 12.0)

    def test_matches_exhaustive_partition_search(self):
        rng = random.Random(3)
        for trial in range(60):
            n = rng.randint(4, 12)
            k = rng.randint(2, min(4, n))
            vals = [round(rng.uniform(0, 50), 3) for _ in range(n)]
            if len(set(vals)) < k:
                continue
            got = classify(vals, "jenks", k)
            want, _ = exhaustive_jenks(vals, k)
            assert got.breaks == pytest.approx(want, abs=0), f"trial={trial} vals={vals} k={k}"

    def test_not_enough_distinct(self):
        with pytest.raises(NotEnoughDistinct):
            classify([5, 5, 5], "jenks", 2)


class TestAssignClass:
    BREAKS = ClassBreaks("equal_interval", 2, (0.0, 5.0, 10.0))

    def test_min_goes_first_class(self):
        assert assign_class(0, self.BREAKS) == 0

    def test_max_goes_last_class(self):
        assert assign_class(10, self.BREAKS) == 1

    def test_half_open_rule_at_boundary(self):
        assert assign_class(5, self.BREAKS) == 1

    def test_out_of_range_is_marker_not_error(self):
        assert assign_class(-0.1, self.BREAKS) is None
        assert assign_class(10.1, self.BREAKS) is None
        assert assign_class(None, self.BREAKS) is None

    def test_every_value_lands_in_its_bracket(self):
        rng = random.Random(4)
        vals = [rng.uniform(0, 100) for _ in range(200)]
        b = classify(vals, "quantile", 5)
        for v in vals:
            c = assign_class(v, b)
            assert c is not None
            assert b.breaks[c] <= v
            if c < b.k - 1:
                assert v < b.breaks[c + 1]
