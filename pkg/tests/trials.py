"""Randomized crossfilter trial machinery shared by unit and acceptance tests."""

import random

from coordlens.crossfilter import Crossfilter, FixedWidth, Identity, TimeBucket
from coordlens.errors import KindMismatch
from coordlens.table import build_table

from _oracles import NaiveEvaluator
from conftest import random_filter_for, random_table_inputs


def run_oracle_trial(seed, n_commands=20, max_rows=200, max_dims=5,
                     sum_tolerance=1e-9):
    """One randomized engine-vs-naive trial; raises AssertionError on mismatch.

    Builds a random table, registers a group per groupable dimension, then
    applies random set/clear commands; after every command the selection
    count and every group's bins are compared against the full-scan
    evaluator (counts exactly, sums within ``sum_tolerance`` relative).
    """
    rng = random.Random(seed)
    columns, rows, key, dim_specs = random_table_inputs(rng, max_rows=max_rows,
                                                        max_dims=max_dims)
    cf = Crossfilter(build_table(columns, rows, key))
    naive = NaiveEvaluator(columns, rows, key, dim_specs)

    dims = {}
    groups = {}
    for dim_id, column, kind in dim_specs:
        dims[dim_id] = cf.create_dimension(column, kind, dim_id=dim_id)
        col_kind = dict(columns)[column]
        if kind in ("categorical", "tag"):
            binning = Identity()
        elif col_kind == "number":
            binning = FixedWidth(0.0, rng.choice([0.5, 1.0, 2.5]))
        elif col_kind == "date":
            binning = TimeBucket(rng.choice(["year", "month", "day"]))
        else:
            continue
        reduction = "count"
        if rng.random() < 0.3:
            numeric = [n for n, k in columns if k == "number"]
            if numeric:
                reduction = ("sum", rng.choice(numeric))
        try:
            groups[dim_id] = (cf.create_group(dims[dim_id], binning, reduction),
                              binning, reduction)
        except KindMismatch:
            pass

    for step in range(n_commands):
        if rng.random() < 0.05:
            cf.clear_all_filters()
            naive.clear_all()
        else:
            dim_id, column, kind = rng.choice(dim_specs)
            spec = random_filter_for(rng, kind, dict(columns)[column])
            cf.set_filter(dims[dim_id], spec)
            naive.set_filter(dim_id, spec)

        assert cf.selected_count() == naive.selected_count(), f"seed={seed} step={step}"
        for dim_id, (group, binning, reduction) in groups.items():
            got = cf.read_group(group).bins
            want = naive.group(dim_id, binning, reduction)
            assert len(got) == len(want), f"seed={seed} step={step} dim={dim_id}"
            for (gk, gv), (wk, wv) in zip(got, want):
                assert gk == wk, f"seed={seed} step={step} dim={dim_id}"
                if reduction == "count":
                    assert gv == wv, f"seed={seed} step={step} dim={dim_id} bin={gk}"
                else:
                    scale = max(abs(gv), abs(wv), 1e-12)
                    assert abs(gv - wv) <= sum_tolerance * scale, \
                        f"seed={seed} step={step} dim={dim_id} bin={gk}"
