import random

import pytest

from coordlens.errors import (
    DegenerateX,
    EmptyInput,
    InvalidDate,
    KindMismatch,
    LengthMismatch,
    TooFewPoints,
)
from coordlens.stats import (
    HistogramSpec,
    boxplot_stats,
    histogram,
    linear_regression,
    series_aggregate,
    stacked_aggregate,
    time_bucket,
)

from _oracles import quantile_sorted, regression_normal_equations


class TestHistogram:
    def test_basic_binning(self):
        bins, dropped = histogram([1, 2, 2, 3], HistogramSpec(0, 1, (1, 4)))
        assert [c for _, c in bins] == [1, 2, 1]
        assert [lo for lo, _ in bins] == [1, 2, 3]
        assert dropped == 0

    def test_empty_input_zero_bins(self):
        bins, dropped = histogram([], HistogramSpec(0, 1, (0, 3)))
        assert [c for _, c in bins] == [0, 0, 0]
        assert dropped == 0

    def test_wide_bin_swallows_domain(self):
        bins, dropped = histogram([1, 2, 3], HistogramSpec(0, 10, (0, 5)))
        assert len(bins) == 1
        assert bins[0][1] == 3

    def test_out_of_domain_dropped(self):
        bins, dropped = histogram([0.5, 1.5, 9], HistogramSpec(0, 1, (1, 3)))
        assert dropped == 2
        assert sum(c for _, c in bins) == 1

    def test_non_finite_counted_as_dropped(self):
        bins, dropped = histogram([1, float("nan"), float("inf")], HistogramSpec(0, 1, (0, 2)))
        assert dropped == 2

    def test_conservation_property(self):
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(0, 80)
            vals = [rng.uniform(-50, 50) if rng.random() > 0.05 else float("nan")
                    for _ in range(n)]
            spec = HistogramSpec(rng.uniform(-5, 5), rng.choice([0.5, 1, 3, 7]))
            bins, dropped = histogram(vals, spec)
            assert sum(c for _, c in bins) + dropped == n

    def test_default_domain_includes_max(self):
        bins, dropped = histogram([0, 10], HistogramSpec(0, 5))
        assert dropped == 0
        assert sum(c for _, c in bins) == 2


class TestBoxplot:
    def test_single_value(self):
        s = boxplot_stats([7])
        assert (s.min, s.q1, s.median, s.q3, s.max_whisker) == (7, 7, 7, 7, 7)
        assert s.outliers == ()

    def test_five_values_quartiles(self):
        s = boxplot_stats([1, 2, 3, 4, 5])
        assert (s.q1, s.median, s.q3) == (2, 3, 4)
        assert s.outliers == ()

    def test_outlier_beyond_fence(self):
        s = boxplot_stats([1, 2, 3, 4, 100])
        assert s.outliers == (100,)
        assert s.max_whisker == 4

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            boxplot_stats([])

    def test_quantiles_match_oracle(self):
        rng = random.Random(2)
        for _ in range(100):
            vals = sorted(rng.uniform(0, 100) for _ in range(rng.randint(1, 60)))
            s = boxplot_stats(vals)
            assert s.q1 == pytest.approx(quantile_sorted(vals, 0.25), rel=1e-12)
            assert s.median == pytest.approx(quantile_sorted(vals, 0.5), rel=1e-12)
            assert s.q3 == pytest.approx(quantile_sorted(vals, 0.75), rel=1e-12)

    def test_whiskers_attained_and_partition(self):
        rng = random.Random(3)
        for _ in range(100):
            vals = [rng.gauss(0, 10) for _ in range(rng.randint(5, 40))]
            s = boxplot_stats(vals)
            assert s.min in vals and s.max_whisker in vals
            inside = [v for v in vals if s.min <= v <= s.max_whisker]
            assert sorted(inside + list(s.outliers)) == sorted(vals)


class TestRegression:
    def test_perfect_line(self):
        fit = linear_regression([(0, 0), (1, 1), (2, 2)])
        assert fit.slope == pytest.approx(1, abs=1e-15)
        assert fit.intercept == pytest.approx(0, abs=1e-15)
        assert fit.r_squared == 1

    def test_constant_y_reports_r2_one(self):
        fit = linear_regression([(0, 1), (1, 1)])
        assert fit.slope == 0
        assert fit.intercept == 1
        assert fit.r_squared == 1

    def test_matches_normal_equations(self):
        rng = random.Random(4)
        pts = [(rng.uniform(-10, 10), rng.uniform(-10, 10)) for _ in range(100)]
        fit = linear_regression(pts)
        slope, intercept = regression_normal_equations(pts)
        assert fit.slope == pytest.approx(slope, rel=1e-12)
        assert fit.intercept == pytest.approx(intercept, rel=1e-12)

    def test_residual_orthogonality(self):
        rng = random.Random(5)
        for _ in range(30):
            pts = [(rng.uniform(0, 50), rng.uniform(-20, 20)) for _ in range(40)]
            fit = linear_regression(pts)
            res = [y - (fit.slope * x + fit.intercept) for x, y in pts]
            scale = sum(abs(y) for _, y in pts) + 1.0
            assert abs(sum(res)) < 1e-9 * scale
            assert abs(sum(x * r for (x, _), r in zip(pts, res))) < 1e-9 * scale * 50

    def test_degenerate_x(self):
        with pytest.raises(DegenerateX):
            linear_regression([(3, 1), (3, 2)])

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            linear_regression([(1, 1)])


class TestStackedAggregate:
    def test_basic(self):
        m = stacked_aggregate(["X", "X", "Y"], ["+", "-", "+"])
        assert m == {"X": {"+": 1, "-": 1}, "Y": {"+": 1}}

    def test_empty(self):
        assert stacked_aggregate([], []) == {}

    def test_single_pair_times_five(self):
        m = stacked_aggregate(["X"] * 5, ["+"] * 5)
        assert m == {"X": {"+": 5}}

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            stacked_aggregate(["a"], [])

    def test_row_sums(self):
        rng = random.Random(6)
        prim = [rng.choice("ABC") for _ in range(200)]
        sec = [rng.choice("xy") for _ in range(200)]
        m = stacked_aggregate(prim, sec)
        for p in set(prim):
            assert sum(m[p].values()) == prim.count(p)


class TestTimeBucket:
    def test_month(self):
        assert time_bucket(["2020-03-15"], "month") == ["2020-03"]

    def test_year(self):
        assert time_bucket(["2020-03-15"], "year") == ["2020"]

    def test_day_ordering(self):
        a, b = time_bucket(["2019-12-31", "2020-01-01"], "day")
        assert a < b

    def test_idempotent_at_same_granularity(self):
        keys = time_bucket(["2020-03-15", "2021-07-04"], "month")
        again = time_bucket([k + "-01" for k in keys], "month")
        assert again == keys

    def test_invalid_date(self):
        with pytest.raises(InvalidDate):
            time_bucket(["2020-13-40"], "day")


class TestSeriesAggregate:
    def test_two_categories_one_bucket_each(self):
        out = series_aggregate(["2020", "2021"], ["a", "b"], [1.0, 2.0], "mean")
        assert out == {"a": [("2020", 1.0)], "b": [("2021", 2.0)]}

    def test_mean_of_two(self):
        out = series_aggregate(["2020", "2020"], ["a", "a"], [2.0, 4.0], "mean")
        assert out == {"a": [("2020", 3.0)]}

    def test_count_reduction(self):
        out = series_aggregate(["2020", "2020", "2021"], ["a", "a", "a"], None, "count")
        assert out == {"a": [("2020", 2), ("2021", 1)]}

    def test_non_numeric_mean_rejected(self):
        with pytest.raises(KindMismatch):
            series_aggregate(["2020"], ["a"], ["oops"], "mean")

    def test_matches_naive_group_then_average(self):
        rng = random.Random(7)
        buckets = [f"20{rng.randint(10, 12)}" for _ in range(150)]
        cats = [rng.choice("PQ") for _ in range(150)]
        vals = [rng.uniform(0, 9) for _ in range(150)]
        out = series_aggregate(buckets, cats, vals, "mean")
        for c in set(cats):
            for b in set(buckets):
                sample = [v for bb, cc, v in zip(buckets, cats, vals) if bb == b and cc == c]
                if sample:
                    got = dict(out[c])[b]
                    assert got == pytest.approx(sum(sample) / len(sample), rel=1e-12)
