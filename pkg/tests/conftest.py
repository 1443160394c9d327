import datetime
import random

import pytest

from coordlens import synth
from coordlens.bundle import load_bundle
from coordlens.crossfilter import Crossfilter
from coordlens.table import build_table


@pytest.fixture(scope="session")
def pathogen_bundle_path(tmp_path_factory):
    root = tmp_path_factory.mktemp("bundles") / "pathogen"
    return synth.pathogen_bundle(root)


@pytest.fixture(scope="session")
def tract_bundle_path(tmp_path_factory):
    root = tmp_path_factory.mktemp("bundles") / "tracts"
    return synth.tract_bundle(root)


@pytest.fixture
def pathogen_bundle(pathogen_bundle_path):
    return load_bundle(pathogen_bundle_path)


@pytest.fixture
def tract_bundle(tract_bundle_path):
    return load_bundle(tract_bundle_path)


@pytest.fixture
def t3():
    """The canonical 3-row table: r1:(A, 1), r2:(A, 5), r3:(B, 2)."""
    columns = [("id", "text"), ("cat", "text"), ("v", "number")]
    rows = [
        {"id": "r1", "cat": "A", "v": 1},
        {"id": "r2", "cat": "A", "v": 5},
        {"id": "r3", "cat": "B", "v": 2},
    ]
    return build_table(columns, rows, "id")


@pytest.fixture
def t3_engine(t3):
    cf = Crossfilter(t3)
    dims = {
        "C": cf.create_dimension("cat", "categorical", dim_id="C"),
        "V": cf.create_dimension("v", "scalar", dim_id="V"),
    }
    return cf, dims


def random_table_inputs(rng: random.Random, max_rows=200, max_dims=5):
    """Random (column_specs, rows, key_column, dim_specs) for oracle trials.

    Produces a mix of number, text, date, tag, and point columns with ~10%
    nulls, plus the key column; dim_specs pair each non-key column with
    its natural dimension kind.
    """
    n_rows = rng.randint(1, max_rows)
    pool = [("num_a", "number"), ("num_b", "number"), ("cat_a", "text"),
            ("cat_b", "text"), ("when", "date"), ("parts", "tag-list"),
            ("loc", "point")]
    rng.shuffle(pool)
    chosen = pool[: rng.randint(1, min(max_dims, len(pool)))]
    columns = [("id", "text")] + chosen

    cats = ["A", "B", "C", "D", "E"]
    tags = ["blood", "liver", "lung", "spleen", "kidney"]
    base = datetime.date(2019, 11, 20)

    rows = []
    for i in range(n_rows):
        row = {"id": f"r{i}"}
        for name, kind in chosen:
            if rng.random() < 0.1:
                row[name] = None
            elif kind == "number":
                row[name] = round(rng.uniform(-10, 10), 3)
            elif kind == "text":
                row[name] = rng.choice(cats)
            elif kind == "date":
                row[name] = (base + datetime.timedelta(days=rng.randint(0, 90))).isoformat()
            elif kind == "point":
                row[name] = (round(rng.uniform(-20, 20), 4), round(rng.uniform(-20, 20), 4))
            else:
                row[name] = ", ".join(rng.sample(tags, rng.randint(1, 3)))
        rows.append(row)

    kind_map = {"number": "scalar", "text": "categorical",
                "date": "scalar", "tag-list": "tag", "point": "point"}
    dim_specs = [(f"dim_{name}", name, kind_map[kind]) for name, kind in chosen]
    return columns, rows, "id", dim_specs


def random_filter_for(rng: random.Random, dim_kind, column_kind):
    """A random legal FilterSpec for a dimension kind (None = clear)."""
    from coordlens.crossfilter import RangeFilter, SetFilter, SpatialFilter, TagAnyFilter
    from coordlens.geo import BBox, Circle, GeoPoint, polygon_from_rings

    if rng.random() < 0.15:
        return None
    if dim_kind == "scalar" and column_kind == "number":
        a, b = sorted((round(rng.uniform(-11, 11), 3), round(rng.uniform(-11, 11), 3)))
        return RangeFilter(a, b)
    if dim_kind == "scalar":
        base = datetime.date(2019, 11, 20)
        d1 = base + datetime.timedelta(days=rng.randint(-5, 95))
        d2 = d1 + datetime.timedelta(days=rng.randint(0, 40))
        return RangeFilter(d1.isoformat(), d2.isoformat())
    if dim_kind == "categorical":
        return SetFilter(rng.sample(["A", "B", "C", "D", "E", "Z"], rng.randint(1, 3)))
    if dim_kind == "tag":
        return TagAnyFilter(rng.sample(["blood", "liver", "lung", "spleen", "kidney", "bone"],
                                       rng.randint(1, 3)))
    # point: bbox, circle, or a triangle-ish polygon
    roll = rng.random()
    if roll < 0.4:
        w, e = sorted((rng.uniform(-22, 22), rng.uniform(-22, 22)))
        s, n = sorted((rng.uniform(-22, 22), rng.uniform(-22, 22)))
        return SpatialFilter(BBox(w, s, e, n))
    if roll < 0.7:
        center = GeoPoint(rng.uniform(-20, 20), rng.uniform(-20, 20))
        return SpatialFilter(Circle(center, rng.uniform(1e5, 3e6)))
    pts = [(rng.uniform(-22, 22), rng.uniform(-22, 22)) for _ in range(rng.randint(3, 6))]
    return SpatialFilter(polygon_from_rings([pts + [pts[0]]]))
