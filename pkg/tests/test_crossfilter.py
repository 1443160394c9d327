import random

import pytest

from coordlens.crossfilter import (
    Crossfilter,
    FixedWidth,
    Identity,
    KeyFilter,
    RangeFilter,
    SetFilter,
    SpatialFilter,
    TagAnyFilter,
    TimeBucket,
)
from coordlens.errors import InvalidRange, KindMismatch, UnknownColumn, UnknownKey
from coordlens.geo import BBox
from coordlens.table import build_table

from conftest import random_filter_for, random_table_inputs


def bins_dict(result):
    return dict(result.bins)


class TestFilters:
    def test_range_filter_selects_half_open(self, t3_engine):
        cf, dims = t3_engine
        cf.set_filter(dims["V"], RangeFilter(0, 3))
        assert cf.selected_count() == (2, 3)

    def test_clear_all_restores_pass_all(self, t3_engine):
        cf, dims = t3_engine
        cf.set_filter(dims["V"], RangeFilter(0, 3))
        cf.set_filter(dims["C"], SetFilter({"A"}))
        cf.clear_all_filters()
        assert cf.selected_count() == (3, 3)

    def test_combined_filters_intersect(self, t3_engine):
        cf, dims = t3_engine
        cf.set_filter(dims["V"], RangeFilter(0, 3))
        cf.set_filter(dims["C"], SetFilter({"A"}))
        assert cf.selected_count() == (1, 3)

    def test_range_bounds_validated(self, t3_engine):
        cf, dims = t3_engine
        with pytest.raises(InvalidRange):
            cf.set_filter(dims["V"], RangeFilter(3, 0))

    def test_spatial_on_non_point_dim_rejected(self, t3_engine):
        cf, dims = t3_engine
        with pytest.raises(KindMismatch):
            cf.set_filter(dims["V"], SpatialFilter(BBox(-1, -1, 1, 1)))

    def test_tag_any_matches_set_intersection(self):
        columns = [("id", "text"), ("part", "tag-list")]
        rows = [
            {"id": "s1", "part": "blood, liver, lung"},
            {"id": "s2", "part": "spleen"},
            {"id": "s3", "part": "liver"},
        ]
        cf = Crossfilter(build_table(columns, rows, "id"))
        d = cf.create_dimension("part", "tag")
        cf.set_filter(d, TagAnyFilter({"liver"}))
        assert cf.selected_count() == (2, 3)

    def test_incompatible_dimension_kind(self, t3):
        cf = Crossfilter(t3)
        with pytest.raises(KindMismatch):
            cf.create_dimension("cat", "point")

    def test_null_fails_any_active_filter(self):
        columns = [("id", "text"), ("v", "number")]
        rows = [{"id": "a", "v": None}, {"id": "b", "v": 1}]
        cf = Crossfilter(build_table(columns, rows, "id"))
        d = cf.create_dimension("v", "scalar")
        cf.set_filter(d, RangeFilter(-100, 100))
        assert cf.selected_count() == (1, 2)


class TestGroups:
    def test_identity_counts_without_filters(self, t3_engine):
        cf, dims = t3_engine
        g = cf.create_group(dims["C"], Identity(), "count")
        assert bins_dict(cf.read_group(g)) == {"A": 2, "B": 1}

    def test_other_dims_filter_applies(self, t3_engine):
        cf, dims = t3_engine
        g = cf.create_group(dims["C"], Identity(), "count")
        cf.set_filter(dims["V"], RangeFilter(0, 3))
        assert bins_dict(cf.read_group(g)) == {"A": 1, "B": 1}

    def test_own_filter_excluded(self, t3_engine):
        cf, dims = t3_engine
        gc = cf.create_group(dims["C"], Identity(), "count")
        gv = cf.create_group(dims["V"], FixedWidth(0, 1), "count")
        cf.set_filter(dims["V"], RangeFilter(0, 3))
        cf.set_filter(dims["C"], SetFilter({"A"}))
        assert bins_dict(cf.read_group(gc)) == {"A": 1, "B": 1}
        v_bins = bins_dict(cf.read_group(gv))
        assert v_bins[1] == 1 and v_bins[5] == 1
        assert sum(v_bins.values()) == 2

    def test_sum_reduction(self, t3_engine):
        cf, dims = t3_engine
        g = cf.create_group(dims["C"], Identity(), ("sum", "v"))
        assert bins_dict(cf.read_group(g)) == {"A": 6, "B": 2}

    def test_sum_over_text_column_rejected(self, t3_engine):
        cf, dims = t3_engine
        with pytest.raises(KindMismatch):
            cf.create_group(dims["C"], Identity(), ("sum", "cat"))

    def test_tag_group_counts_each_tag_once_per_record(self):
        columns = [("id", "text"), ("part", "tag-list")]
        rows = [
            {"id": "s1", "part": "blood, liver"},
            {"id": "s2", "part": "liver"},
        ]
        cf = Crossfilter(build_table(columns, rows, "id"))
        d = cf.create_dimension("part", "tag")
        g = cf.create_group(d, Identity(), "count")
        assert bins_dict(cf.read_group(g)) == {"blood": 1, "liver": 2}

    def test_missing_bin_for_categorical_nulls(self):
        columns = [("id", "text"), ("cat", "text")]
        rows = [{"id": "a", "cat": "X"}, {"id": "b", "cat": None}]
        cf = Crossfilter(build_table(columns, rows, "id"))
        d = cf.create_dimension("cat", "categorical")
        g = cf.create_group(d, Identity(), "count")
        assert bins_dict(cf.read_group(g)) == {"X": 1, "(missing)": 1}

    def test_time_buckets_tile_calendar(self):
        columns = [("id", "text"), ("d", "date")]
        rows = [{"id": "a", "d": "2019-12-05"}, {"id": "b", "d": "2020-02-11"}]
        cf = Crossfilter(build_table(columns, rows, "id"))
        d = cf.create_dimension("d", "scalar")
        g = cf.create_group(d, TimeBucket("month"), "count")
        assert cf.read_group(g).bins == (("2019-12", 1), ("2020-01", 0), ("2020-02", 1))


class TestValuesAndRecords:
    def test_values_for_no_filters(self, t3_engine):
        cf, _ = t3_engine
        assert cf.values_for("v") == [("r1", 1), ("r2", 5), ("r3", 2)]

    def test_values_for_excluding_own_dim(self, t3_engine):
        cf, dims = t3_engine
        cf.set_filter(dims["C"], SetFilter({"A"}))
        assert len(cf.values_for("v", exclude=(dims["C"],))) == 3
        assert cf.values_for("v") == [("r1", 1), ("r2", 5)]

    def test_values_for_unknown_column(self, t3_engine):
        cf, _ = t3_engine
        with pytest.raises(UnknownColumn):
            cf.values_for("nope")

    def test_records_view_all_rows(self, t3_engine):
        cf, _ = t3_engine
        rows, total = cf.records_view()
        assert total == 3 and len(rows) == 3

    def test_records_view_search_text_columns(self, t3_engine):
        cf, _ = t3_engine
        rows, total = cf.records_view(search="a")
        assert total == 2
        assert {r["id"] for r in rows} == {"r1", "r2"}

    def test_records_view_offset_beyond_total(self, t3_engine):
        cf, _ = t3_engine
        rows, total = cf.records_view(page=(10, 5))
        assert rows == [] and total == 3

    def test_records_view_sort_stable(self):
        columns = [("id", "text"), ("g", "text"), ("v", "number")]
        rows = [{"id": f"r{i}", "g": "same", "v": i} for i in range(5)]
        cf = Crossfilter(build_table(columns, rows, "id"))
        out, _ = cf.records_view(sort=("g", "asc"))
        assert [r["id"] for r in out] == [f"r{i}" for i in range(5)]
        out, _ = cf.records_view(sort=("g", "desc"))
        assert [r["id"] for r in out] == [f"r{i}" for i in range(5)]

    def test_records_view_sorts_nulls_last(self):
        columns = [("id", "text"), ("v", "number")]
        rows = [{"id": "a", "v": None}, {"id": "b", "v": 2}, {"id": "c", "v": 1}]
        cf = Crossfilter(build_table(columns, rows, "id"))
        out, _ = cf.records_view(sort=("v", "asc"))
        assert [r["id"] for r in out] == ["c", "b", "a"]
        out, _ = cf.records_view(sort=("v", "desc"))
        assert [r["id"] for r in out] == ["b", "c", "a"]


class TestRowClick:
    def test_click_filters_to_one_record(self, t3_engine):
        cf, _ = t3_engine
        assert cf.row_click_filter("r1") is True
        assert cf.selected_count() == (1, 3)

    def test_second_click_clears(self, t3_engine):
        cf, _ = t3_engine
        cf.row_click_filter("r1")
        assert cf.row_click_filter("r1") is False
        assert cf.selected_count() == (3, 3)

    def test_click_other_row_replaces(self, t3_engine):
        cf, _ = t3_engine
        cf.row_click_filter("r1")
        cf.row_click_filter("r2")
        assert cf.selected_count() == (1, 3)
        assert cf.key_dimension.filter == KeyFilter({"r2"})

    def test_unknown_key(self, t3_engine):
        cf, _ = t3_engine
        with pytest.raises(UnknownKey):
            cf.row_click_filter("nope")


class TestOracleEquivalence:
    """Randomized trials against the naive full-scan evaluator."""

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_naive_evaluator(self, seed):
        from trials import run_oracle_trial
        run_oracle_trial(seed)


class TestProperties:
    def test_adding_filter_never_increases_selection(self):
        rng = random.Random(7)
        columns, rows, key, dim_specs = random_table_inputs(rng, max_rows=80)
        cf = Crossfilter(build_table(columns, rows, key))
        dims = {d: cf.create_dimension(c, k, dim_id=d) for d, c, k in dim_specs}
        unfiltered = {d for d in dims}
        current = cf.selected_count()[0]
        for dim_id, column, kind in dim_specs:
            spec = random_filter_for(rng, kind, dict(columns)[column])
            if spec is None:
                continue
            cf.set_filter(dims[dim_id], spec)
            wasnt_filtered = dim_id in unfiltered
            unfiltered.discard(dim_id)
            n = cf.selected_count()[0]
            if wasnt_filtered:
                assert n <= current
            current = n
        cf.clear_all_filters()
        assert cf.selected_count() == (len(rows), len(rows))

    def test_interleaved_equals_final_state(self):
        """Any set/clear sequence ends at the state of the final specs alone."""
        rng = random.Random(11)
        columns, rows, key, dim_specs = random_table_inputs(rng, max_rows=120)
        table = build_table(columns, rows, key)

        cf_a = Crossfilter(table)
        dims_a = {d: cf_a.create_dimension(c, k, dim_id=d) for d, c, k in dim_specs}
        final = {}
        for _ in range(25):
            dim_id, column, kind = rng.choice(dim_specs)
            spec = random_filter_for(rng, kind, dict(columns)[column])
            cf_a.set_filter(dims_a[dim_id], spec)
            final[dim_id] = spec

        cf_b = Crossfilter(table)
        dims_b = {d: cf_b.create_dimension(c, k, dim_id=d) for d, c, k in dim_specs}
        for dim_id, spec in final.items():
            cf_b.set_filter(dims_b[dim_id], spec)

        assert cf_a.selected_count() == cf_b.selected_count()
        for dim_id in dims_a:
            assert (dims_a[dim_id].reject == dims_b[dim_id].reject).all()

    def test_tag_accounting_totals(self):
        rng = random.Random(13)
        tags_pool = ["blood", "liver", "lung", "spleen"]
        rows = [{"id": f"r{i}", "part": ", ".join(rng.sample(tags_pool, rng.randint(0, 4))) or None}
                for i in range(60)]
        columns = [("id", "text"), ("part", "tag-list")]
        cf = Crossfilter(build_table(columns, rows, "id"))
        d = cf.create_dimension("part", "tag")
        g = cf.create_group(d, Identity(), "count")
        total_units = sum(v for _, v in cf.read_group(g).bins)
        expected = sum(len({t.strip() for t in (r["part"] or "").split(",") if t.strip()})
                       for r in rows)
        assert total_units == expected
