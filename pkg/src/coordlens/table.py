"""The columnar record table every view filters over.

Columns are typed (number, text, date, point, tag-list) and rows keep
stable indices for the table's lifetime; filters never reorder anything.
Text columns are dictionary-encoded and tag-list columns are flattened
into a CSR layout so filter and group evaluation stays vectorized.
"""

from __future__ import annotations

import datetime
import math

import numpy as np

from .errors import CellTypeError, DuplicateKey, UnknownColumn

COLUMN_KINDS = ("number", "text", "date", "point", "tag-list")


class NumberColumn:
    kind = "number"

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.float64)  # NaN encodes null

    def null_mask(self):
        return np.isnan(self.values)


class TextColumn:
    kind = "text"

    def __init__(self, codes, categories):
        self.codes = np.asarray(codes, dtype=np.int64)  # -1 encodes null
        self.categories = list(categories)
        self.category_index = {c: i for i, c in enumerate(self.categories)}

    def null_mask(self):
        return self.codes < 0

    def value_at(self, i):
        c = self.codes[i]
        return None if c < 0 else self.categories[c]


class DateColumn:
    kind = "date"

    def __init__(self, values):
        self.values = np.asarray(values, dtype="datetime64[D]")  # NaT encodes null

    def null_mask(self):
        return np.isnat(self.values)


class PointColumn:
    kind = "point"

    def __init__(self, lon, lat):
        self.lon = np.asarray(lon, dtype=np.float64)
        self.lat = np.asarray(lat, dtype=np.float64)

    def null_mask(self):
        return np.isnan(self.lon) | np.isnan(self.lat)


class TagColumn:
    kind = "tag-list"

    def __init__(self, tag_tuples):
        self.tags = list(tag_tuples)  # sorted tuple of tags per record; () encodes null/empty
        vocab = sorted({t for tags in self.tags for t in tags})
        self.vocabulary = vocab
        self.vocab_index = {t: i for i, t in enumerate(vocab)}
        counts = np.array([len(t) for t in self.tags], dtype=np.int64)
        self.record_ids = np.repeat(np.arange(len(self.tags)), counts)
        self.tag_codes = np.array(
            [self.vocab_index[t] for tags in self.tags for t in tags], dtype=np.int64
        )

    def null_mask(self):
        return np.array([len(t) == 0 for t in self.tags], dtype=bool)


def parse_tags(cell):
    """Normalize a tag cell (comma string or iterable) to a sorted tuple."""
    if cell is None:
        return ()
    if isinstance(cell, str):
        parts = [p.strip() for p in cell.split(",")]
    elif isinstance(cell, (list, tuple, set, frozenset)):
        parts = [str(p).strip() for p in cell]
    else:
        raise ValueError(f"not a tag list: {cell!r}")
    return tuple(sorted({p for p in parts if p}))


def _parse_date(cell):
    if isinstance(cell, datetime.datetime):
        return cell.date()
    if isinstance(cell, datetime.date):
        return cell
    if isinstance(cell, str):
        return datetime.date.fromisoformat(cell)
    raise ValueError(f"not a date: {cell!r}")


class RecordTable:
    """Immutable-after-build columnar table with unique record keys."""

    def __init__(self, column_specs, columns, keys, key_column):
        self.column_specs = list(column_specs)  # [(name, kind)]
        self.kinds = dict(column_specs)
        self.columns = columns  # name -> column object
        self.keys = keys  # list of key strings, by row index
        self.key_column = key_column
        self.key_index = {k: i for i, k in enumerate(keys)}
        self.size = len(keys)

    def column(self, name):
        try:
            return self.columns[name]
        except KeyError:
            raise UnknownColumn(f"no such column: {name!r}") from None

    def kind_of(self, name):
        if name not in self.kinds:
            raise UnknownColumn(f"no such column: {name!r}")
        return self.kinds[name]

    def value_at(self, row, name):
        """Plain-Python cell value (dates as datetime.date, points as (lon, lat))."""
        col = self.column(name)
        if col.kind == "number":
            v = col.values[row]
            return None if np.isnan(v) else float(v)
        if col.kind == "text":
            return col.value_at(row)
        if col.kind == "date":
            v = col.values[row]
            return None if np.isnat(v) else v.astype(datetime.date)
        if col.kind == "point":
            if np.isnan(col.lon[row]) or np.isnan(col.lat[row]):
                return None
            return (float(col.lon[row]), float(col.lat[row]))
        return list(col.tags[row])

    def row_values(self, row):
        """Whole row as a JSON-friendly dict (dates ISO, points [lon, lat])."""
        out = {}
        for name, kind in self.column_specs:
            v = self.value_at(row, name)
            if kind == "date" and v is not None:
                v = v.isoformat()
            elif kind == "point" and v is not None:
                v = [v[0], v[1]]
            out[name] = v
        return out

    def text_values(self, name):
        col = self.column(name)
        return [col.value_at(i) for i in range(self.size)]


def build_table(columns, rows, key_column) -> RecordTable:
    """Build a RecordTable from (name, kind) specs and row data.

    Rows are mappings keyed by column name or sequences in column order.
    Tag-list cells given as comma-separated strings are split and trimmed;
    empty/None cells become nulls.  Raises DuplicateKey for repeated keys
    and CellTypeError(row, column) for values that do not fit their kind.
    """
    columns = [(str(n), k) for n, k in columns]
    names = [n for n, _ in columns]
    for n, k in columns:
        if k not in COLUMN_KINDS:
            raise ValueError(f"unknown column kind {k!r} for column {n!r}")
    if key_column not in names:
        raise UnknownColumn(f"key column {key_column!r} not among columns")
    if dict(columns)[key_column] != "text":
        raise ValueError("key column must be a text column")

    cells = {n: [] for n in names}
    for ri, row in enumerate(rows):
        if isinstance(row, dict):
            getter = row.get
        else:
            row = list(row)
            if len(row) != len(names):
                raise CellTypeError(ri, names[min(len(row), len(names) - 1)],
                                    f"row {ri} has {len(row)} values, expected {len(names)}")
            getter = dict(zip(names, row)).get
        for n in names:
            cells[n].append(getter(n))

    m = len(cells[names[0]]) if names else 0
    built = {}
    for name, kind in columns:
        built[name] = _build_column(name, kind, cells[name])

    key_col = built[key_column]
    keys = []
    seen = set()
    for i in range(m):
        k = key_col.value_at(i)
        if k is None:
            raise CellTypeError(i, key_column, f"null key at row {i}")
        if k in seen:
            raise DuplicateKey(f"duplicate key {k!r} at row {i}")
        seen.add(k)
        keys.append(k)

    return RecordTable(columns, built, keys, key_column)


def _build_column(name, kind, raw):
    if kind == "number":
        vals = np.empty(len(raw), dtype=np.float64)
        for i, v in enumerate(raw):
            if v is None or (isinstance(v, float) and math.isnan(v)):
                vals[i] = np.nan
            elif isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise CellTypeError(i, name, f"not a finite number: {v!r}")
            else:
                vals[i] = float(v)
        return NumberColumn(vals)

    if kind == "text":
        codes = np.empty(len(raw), dtype=np.int64)
        categories = []
        index = {}
        for i, v in enumerate(raw):
            if v is None:
                codes[i] = -1
            elif isinstance(v, str):
                if v not in index:
                    index[v] = len(categories)
                    categories.append(v)
                codes[i] = index[v]
            else:
                raise CellTypeError(i, name, f"not text: {v!r}")
        return TextColumn(codes, categories)

    if kind == "date":
        vals = np.empty(len(raw), dtype="datetime64[D]")
        for i, v in enumerate(raw):
            if v is None or v == "":
                vals[i] = np.datetime64("NaT")
            else:
                try:
                    vals[i] = np.datetime64(_parse_date(v), "D")
                except ValueError:
                    raise CellTypeError(i, name, f"not an ISO date: {v!r}") from None
        return DateColumn(vals)

    if kind == "point":
        lon = np.empty(len(raw), dtype=np.float64)
        lat = np.empty(len(raw), dtype=np.float64)
        for i, v in enumerate(raw):
            if v is None:
                lon[i] = lat[i] = np.nan
                continue
            try:
                x, y = float(v[0]), float(v[1])
            except (TypeError, ValueError, IndexError):
                raise CellTypeError(i, name, f"not a (lon, lat) pair: {v!r}") from None
            if not (math.isfinite(x) and math.isfinite(y)
                    and -180.0 <= x <= 180.0 and -90.0 <= y <= 90.0):
                raise CellTypeError(i, name, f"point out of bounds: {v!r}")
            lon[i], lat[i] = x, y
        return PointColumn(lon, lat)

    # tag-list
    tags = []
    for i, v in enumerate(raw):
        try:
            tags.append(parse_tags(v))
        except ValueError:
            raise CellTypeError(i, name, f"not a tag list: {v!r}") from None
    return TagColumn(tags)
