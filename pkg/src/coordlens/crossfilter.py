"""Multidimensional crossfilter over one record table.

Each dimension owns at most one active filter and a per-record rejection
mark; a record is selected when no dimension rejects it.  Setting or
clearing a filter re-marks only the records whose membership under that
dimension changed, and every aggregate query answers from the marks, so
interleaved set/clear sequences always equal applying just the final
filter per dimension.

Groups follow the coordinated-view convention: a group over dimension D
aggregates the records passing every active filter except D's own, so a
brushed chart keeps showing its full, unbrushed axis.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass

import numpy as np

from . import geo
from .errors import InvalidRange, KindMismatch, UnknownKey

DIMENSION_KINDS = ("scalar", "categorical", "tag", "point")

_KIND_FOR_COLUMN = {
    "number": "scalar",
    "date": "scalar",
    "text": "categorical",
    "tag-list": "tag",
    "point": "point",
}

MISSING_BIN = "(missing)"

KEY_DIMENSION_ID = "__key__"


# Filter variants; an absent filter (None) passes everything.

@dataclass(frozen=True)
class RangeFilter:
    lo: object
    hi: object


@dataclass(frozen=True)
class SetFilter:
    values: frozenset

    def __init__(self, values):
        object.__setattr__(self, "values", frozenset(values))


@dataclass(frozen=True)
class TagAnyFilter:
    values: frozenset

    def __init__(self, values):
        object.__setattr__(self, "values", frozenset(values))


@dataclass(frozen=True)
class SpatialFilter:
    geometry: object


@dataclass(frozen=True)
class KeyFilter:
    keys: frozenset

    def __init__(self, keys):
        object.__setattr__(self, "keys", frozenset(keys))


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class FixedWidth:
    origin: float
    width: float

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("bin width must be > 0")


@dataclass(frozen=True)
class TimeBucket:
    granularity: str  # year | month | day

    def __post_init__(self):
        if self.granularity not in ("year", "month", "day"):
            raise ValueError(f"unknown granularity: {self.granularity!r}")


@dataclass(frozen=True)
class GroupResult:
    group_id: str
    bins: tuple  # ordered (key, value) pairs
    reduction: object
    binning: object


class Dimension:
    def __init__(self, dim_id, column, kind, size):
        self.id = dim_id
        self.column = column
        self.kind = kind
        self.filter = None
        self.reject = np.zeros(size, dtype=bool)
        self.sort_order = None  # argsort over values, scalar kinds only

    def __repr__(self):
        return f"Dimension({self.id!r}, column={self.column!r}, kind={self.kind!r})"


class Group:
    def __init__(self, group_id, dimension, binning, reduction):
        self.id = group_id
        self.dimension = dimension
        self.binning = binning
        self.reduction = reduction


class Crossfilter:
    """Dimensions, filters, and groups over one RecordTable."""

    def __init__(self, table):
        self.table = table
        self.dimensions = {}
        self.groups = {}
        self._reject_count = np.zeros(table.size, dtype=np.int32)
        self._seq = 0
        self.key_dimension = Dimension(KEY_DIMENSION_ID, table.key_column, "key", table.size)
        self.dimensions[KEY_DIMENSION_ID] = self.key_dimension

    # -- dimensions ------------------------------------------------------

    def create_dimension(self, column, kind=None, dim_id=None) -> Dimension:
        col_kind = self.table.kind_of(column)
        if kind is None:
            kind = _KIND_FOR_COLUMN[col_kind]
        if kind not in DIMENSION_KINDS:
            raise KindMismatch(f"unknown dimension kind: {kind!r}")
        if _KIND_FOR_COLUMN[col_kind] != kind:
            raise KindMismatch(f"{kind} dimension is incompatible with {col_kind} column {column!r}")
        if dim_id is None:
            dim_id = f"d{self._seq}"
            self._seq += 1
        if dim_id in self.dimensions:
            raise ValueError(f"dimension id already in use: {dim_id!r}")
        dim = Dimension(dim_id, column, kind, self.table.size)
        if kind == "scalar":
            col = self.table.column(column)
            dim.sort_order = np.argsort(col.values, kind="stable")
        self.dimensions[dim_id] = dim
        return dim

    # -- filters ---------------------------------------------------------

    def set_filter(self, dim: Dimension, spec):
        if spec is None:
            return self.clear_filter(dim)
        passing = self._evaluate(dim, spec)
        self._apply_marks(dim, ~passing, spec)

    def clear_filter(self, dim: Dimension):
        self._apply_marks(dim, np.zeros(self.table.size, dtype=bool), None)

    def clear_all_filters(self):
        for dim in self.dimensions.values():
            if dim.filter is not None:
                self.clear_filter(dim)

    def _apply_marks(self, dim, new_reject, spec):
        changed = new_reject != dim.reject
        if changed.any():
            self._reject_count[changed] += np.where(new_reject[changed], 1, -1).astype(np.int32)
            dim.reject = new_reject
        dim.filter = spec

    def _evaluate(self, dim, spec):
        """Boolean pass-mask for a filter spec on a dimension; nulls fail."""
        col = self.table.column(dim.column) if dim.kind != "key" else None

        if dim.kind == "key":
            if not isinstance(spec, KeyFilter):
                raise KindMismatch("only key filters apply to the key dimension")
            mask = np.zeros(self.table.size, dtype=bool)
            for k in spec.keys:
                row = self.table.key_index.get(k)
                if row is None:
                    raise UnknownKey(f"unknown record key: {k!r}")
                mask[row] = True
            return mask

        if isinstance(spec, RangeFilter):
            if dim.kind != "scalar":
                raise KindMismatch(f"range filter needs a scalar dimension, not {dim.kind}")
            lo, hi = self._coerce_bounds(col, spec.lo, spec.hi)
            if lo > hi:
                raise InvalidRange(f"range lower bound {spec.lo!r} > upper bound {spec.hi!r}")
            vals = col.values
            out = np.empty(self.table.size, dtype=bool)
            out.fill(False)
            order = dim.sort_order
            sorted_vals = vals[order]
            a = np.searchsorted(sorted_vals, lo, side="left")
            b = np.searchsorted(sorted_vals, hi, side="left")
            out[order[a:b]] = True
            if col.kind == "number":
                out &= ~np.isnan(vals)
            else:
                out &= ~np.isnat(vals)
            return out

        if isinstance(spec, SetFilter):
            if dim.kind != "categorical":
                raise KindMismatch(f"set filter needs a categorical dimension, not {dim.kind}")
            wanted = [col.category_index[v] for v in spec.values if v in col.category_index]
            return np.isin(col.codes, wanted)

        if isinstance(spec, TagAnyFilter):
            if dim.kind != "tag":
                raise KindMismatch(f"tag filter needs a tag dimension, not {dim.kind}")
            wanted = [col.vocab_index[v] for v in spec.values if v in col.vocab_index]
            mask = np.zeros(self.table.size, dtype=bool)
            if wanted:
                hit = np.isin(col.tag_codes, wanted)
                mask[col.record_ids[hit]] = True
            return mask

        if isinstance(spec, SpatialFilter):
            if dim.kind != "point":
                raise KindMismatch(f"spatial filter needs a point dimension, not {dim.kind}")
            return geo.contains_mask(spec.geometry, col.lon, col.lat)

        if isinstance(spec, KeyFilter):
            raise KindMismatch("key filters apply only to the key dimension")
        raise KindMismatch(f"unsupported filter spec: {type(spec).__name__}")

    @staticmethod
    def _coerce_bounds(col, lo, hi):
        if col.kind == "date":
            def conv(v):
                if isinstance(v, str):
                    v = datetime.date.fromisoformat(v)
                return np.datetime64(v, "D")
            return conv(lo), conv(hi)
        return float(lo), float(hi)

    # -- selection -------------------------------------------------------

    def selection_mask(self, exclude=()):
        """Records passing every active filter except those on ``exclude`` dims."""
        count = self._reject_count
        extra = None
        for dim in exclude:
            if dim.filter is not None:
                extra = dim.reject if extra is None else (extra | dim.reject)
        if extra is not None:
            return (count - extra.astype(np.int32)) == 0
        return count == 0

    def selected_count(self):
        return int(np.count_nonzero(self._reject_count == 0)), self.table.size

    def row_click_filter(self, record_key):
        """Toggle the single-record key filter; returns True when now set."""
        if record_key not in self.table.key_index:
            raise UnknownKey(f"unknown record key: {record_key!r}")
        current = self.key_dimension.filter
        if isinstance(current, KeyFilter) and current.keys == frozenset((record_key,)):
            self.clear_filter(self.key_dimension)
            return False
        self.set_filter(self.key_dimension, KeyFilter((record_key,)))
        return True

    # -- groups ----------------------------------------------------------

    def create_group(self, dim: Dimension, binning=None, reduction="count", group_id=None) -> Group:
        if binning is None:
            binning = Identity()
        if isinstance(binning, Identity):
            if dim.kind not in ("categorical", "tag"):
                raise KindMismatch("identity binning needs a categorical or tag dimension")
        elif isinstance(binning, FixedWidth):
            if dim.kind != "scalar" or self.table.kind_of(dim.column) != "number":
                raise KindMismatch("fixed-width binning needs a scalar dimension over numbers")
        elif isinstance(binning, TimeBucket):
            if dim.kind != "scalar" or self.table.kind_of(dim.column) != "date":
                raise KindMismatch("time buckets need a scalar dimension over dates")
        else:
            raise ValueError(f"unknown binning: {binning!r}")

        if reduction != "count":
            kind, column = reduction
            if kind != "sum":
                raise ValueError(f"unknown reduction: {reduction!r}")
            if self.table.kind_of(column) != "number":
                raise KindMismatch(f"sum reduction needs a number column, got {column!r}")

        if group_id is None:
            group_id = f"g{self._seq}"
            self._seq += 1
        group = Group(group_id, dim, binning, reduction)
        self.groups[group_id] = group
        return group

    def read_group(self, group: Group) -> GroupResult:
        mask = self.selection_mask(exclude=(group.dimension,))
        bins = self._aggregate(group, mask)
        return GroupResult(group.id, tuple(bins), group.reduction, group.binning)

    def _weights(self, group, mask):
        if group.reduction == "count":
            return None
        col = self.table.column(group.reduction[1])
        return np.where(np.isnan(col.values), 0.0, col.values)

    def _aggregate(self, group, mask):
        dim = group.dimension
        col = self.table.column(dim.column)
        weights = self._weights(group, mask)

        if isinstance(group.binning, Identity) and dim.kind == "categorical":
            order = sorted(range(len(col.categories)), key=lambda i: col.categories[i])
            has_null = bool((col.codes < 0).any())
            labels = [col.categories[i] for i in order]
            sel_codes = col.codes[mask]
            if weights is None:
                counts = np.bincount(sel_codes[sel_codes >= 0], minlength=len(col.categories))
                missing = int(np.count_nonzero(sel_codes < 0))
            else:
                w = weights[mask]
                counts = np.bincount(sel_codes[sel_codes >= 0],
                                     weights=w[sel_codes >= 0], minlength=len(col.categories))
                missing = float(w[sel_codes < 0].sum())
            bins = [(lbl, self._num(counts[i])) for lbl, i in zip(labels, order)]
            if has_null:
                bins.append((MISSING_BIN, self._num(missing)))
                bins.sort(key=lambda kv: kv[0])
            return bins

        if isinstance(group.binning, Identity):  # tag dimension
            entry_mask = mask[col.record_ids]
            codes = col.tag_codes[entry_mask]
            if weights is None:
                counts = np.bincount(codes, minlength=len(col.vocabulary))
            else:
                counts = np.bincount(codes, weights=weights[col.record_ids][entry_mask],
                                     minlength=len(col.vocabulary))
            return [(t, self._num(counts[i])) for i, t in enumerate(col.vocabulary)]

        if isinstance(group.binning, FixedWidth):
            vals = col.values
            finite = ~np.isnan(vals)
            if not finite.any():
                return []
            origin, width = group.binning.origin, group.binning.width
            first = int(np.floor((vals[finite].min() - origin) / width))
            last = int(np.floor((vals[finite].max() - origin) / width))
            take = mask & finite
            idx = np.floor((vals[take] - origin) / width).astype(np.int64) - first
            if weights is None:
                counts = np.bincount(idx, minlength=last - first + 1)
            else:
                counts = np.bincount(idx, weights=weights[take], minlength=last - first + 1)
            return [(origin + (first + i) * width, self._num(counts[i]))
                    for i in range(last - first + 1)]

        # time buckets
        unit = {"year": "Y", "month": "M", "day": "D"}[group.binning.granularity]
        vals = col.values
        ok = ~np.isnat(vals)
        if not ok.any():
            return []
        buckets = vals.astype(f"datetime64[{unit}]")
        lo = buckets[ok].min()
        hi = buckets[ok].max()
        n_bins = int((hi - lo).astype(np.int64)) + 1
        take = mask & ok
        idx = (buckets[take] - lo).astype(np.int64)
        if weights is None:
            counts = np.bincount(idx, minlength=n_bins)
        else:
            counts = np.bincount(idx, weights=weights[take], minlength=n_bins)
        keys = np.datetime_as_string(lo + np.arange(n_bins))
        return [(str(k), self._num(counts[i])) for i, k in enumerate(keys)]

    @staticmethod
    def _num(v):
        f = float(v)
        i = int(f)
        return i if f == i else f

    # -- raw-value queries -------------------------------------------------

    def values_for(self, value_column, exclude=()):
        """(record_key, value) pairs under all filters except excluded dims.

        The column must be numeric or date; null cells are omitted.
        """
        kind = self.table.kind_of(value_column)
        if kind not in ("number", "date"):
            raise KindMismatch(f"values_for needs a number or date column, got {kind}")
        col = self.table.column(value_column)
        mask = self.selection_mask(exclude=exclude) & ~col.null_mask()
        rows = np.flatnonzero(mask)
        return [(self.table.keys[i], self.table.value_at(i, value_column)) for i in rows]

    def records_view(self, sort=None, search="", page=None):
        """Filtered, searched, sorted, paginated rows for the data table.

        Returns (rows, total_matching) where rows are JSON-friendly dicts.
        Search is a case-insensitive substring match over text columns;
        sorting is stable so equal keys keep row-index order; nulls sort
        last in either direction.
        """
        mask = self.selection_mask()
        rows = np.flatnonzero(mask).tolist()

        if search:
            needle = search.lower()
            text_cols = [self.table.column(n) for n, k in self.table.column_specs if k == "text"]
            kept = []
            for i in rows:
                for col in text_cols:
                    v = col.value_at(i)
                    if v is not None and needle in v.lower():
                        kept.append(i)
                        break
            rows = kept

        if sort is not None:
            column, direction = sort
            if direction not in ("asc", "desc"):
                raise ValueError(f"sort direction must be asc or desc, got {direction!r}")
            self.table.kind_of(column)  # raises UnknownColumn
            keyed = [(i, self._sort_key(i, column)) for i in rows]
            present = [(i, k) for i, k in keyed if k is not None]
            absent = [i for i, k in keyed if k is None]
            present.sort(key=lambda ik: ik[1], reverse=(direction == "desc"))
            rows = [i for i, _ in present] + absent

        total = len(rows)
        if page is not None:
            offset, limit = page
            if offset < 0 or limit < 0:
                raise ValueError("page offset and limit must be >= 0")
            rows = rows[offset:offset + limit]
        return [self.table.row_values(i) for i in rows], total

    def _sort_key(self, row, column):
        v = self.table.value_at(row, column)
        if v is None:
            return None
        kind = self.table.kind_of(column)
        if kind == "tag-list":
            return ", ".join(v) if v else None
        if kind == "date":
            return v.toordinal()
        return v
