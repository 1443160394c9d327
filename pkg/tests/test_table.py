import datetime

import pytest

from coordlens.errors import CellTypeError, DuplicateKey, UnknownColumn
from coordlens.table import build_table, parse_tags


def test_build_three_rows(t3):
    assert t3.size == 3
    assert t3.keys == ["r1", "r2", "r3"]
    assert t3.value_at(1, "v") == 5


def test_tag_cell_splits_on_commas_and_trims():
    columns = [("id", "text"), ("part", "tag-list")]
    rows = [{"id": "s1", "part": "blood, liver, lung"}]
    t = build_table(columns, rows, "id")
    assert set(t.value_at(0, "part")) == {"blood", "liver", "lung"}


def test_duplicate_key_rejected():
    columns = [("id", "text")]
    rows = [{"id": "r1"}, {"id": "r1"}]
    with pytest.raises(DuplicateKey):
        build_table(columns, rows, "id")


def test_null_key_rejected():
    with pytest.raises(CellTypeError):
        build_table([("id", "text")], [{"id": None}], "id")


def test_cell_type_error_reports_row_and_column():
    columns = [("id", "text"), ("v", "number")]
    rows = [{"id": "r1", "v": 2}, {"id": "r2", "v": "oops"}]
    with pytest.raises(CellTypeError) as err:
        build_table(columns, rows, "id")
    assert err.value.row == 1
    assert err.value.column == "v"


def test_rows_as_sequences():
    t = build_table([("id", "text"), ("v", "number")], [("a", 1), ("b", None)], "id")
    assert t.value_at(0, "v") == 1
    assert t.value_at(1, "v") is None


def test_date_parsing_and_output():
    t = build_table([("id", "text"), ("d", "date")],
                    [{"id": "x", "d": "2020-03-15"}, {"id": "y", "d": None}], "id")
    assert t.value_at(0, "d") == datetime.date(2020, 3, 15)
    assert t.value_at(1, "d") is None
    assert t.row_values(0)["d"] == "2020-03-15"


def test_point_bounds_checked():
    with pytest.raises(CellTypeError):
        build_table([("id", "text"), ("p", "point")], [{"id": "x", "p": (200, 0)}], "id")


def test_unknown_column_raises(t3):
    with pytest.raises(UnknownColumn):
        t3.column("nope")


def test_parse_tags_dedupes_and_sorts():
    assert parse_tags("liver, blood, liver") == ("blood", "liver")
    assert parse_tags(None) == ()
    assert parse_tags("  ") == ()
