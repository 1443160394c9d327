"""Self-contained application bundles: data, geometries, and view specs.

A bundle is a directory with an ``app.config.json`` manifest referencing
CSV data sources and GeoJSON geometry sources by relative path, plus the
declarative list of views and the page layout.  Loading is best-effort:
problems are collected and surface through ``validate_bundle`` so a host
can show every issue at once; errors block session creation, warnings do
not.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import geo
from .errors import (
    CellTypeError,
    DuplicateKey,
    MissingKey,
    SchemaMismatch,
    UnsupportedGeometry,
)
from .table import COLUMN_KINDS, build_table

LAYOUTS = ("single_map", "multi_map_rows")

VIEW_KINDS = (
    "marker_map", "choropleth_map", "prop_symbol_map", "small_multiples",
    "heatmap_layer", "histogram", "boxplot", "scatter", "stacked_bar",
    "donut", "row_chart", "bar_chart", "series_chart", "range_slider",
    "date_slider", "select_menu", "data_table", "status_bar",
)

MAP_KINDS = ("marker_map", "choropleth_map", "prop_symbol_map",
             "small_multiples", "heatmap_layer")


@dataclass
class Feature:
    key: object
    geometry: object
    properties: dict


@dataclass
class JoinedFeature:
    key: object
    geometry: object
    properties: dict
    attributes: dict
    matched: bool


@dataclass
class ViewSpec:
    id: str
    kind: str
    bindings: dict
    options: dict


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def ok(self):
        return not self.errors

    def lines(self):
        out = [f"error: {e}" for e in self.errors]
        out += [f"warning: {w}" for w in self.warnings]
        return out


@dataclass
class AppBundle:
    root: Path
    manifest: dict
    layout: str
    views: list
    palettes: dict
    table: object  # merged RecordTable, or None when loading failed
    features: dict  # geometry source id -> [Feature]
    joined: dict  # geometry source id -> [JoinedFeature]
    load_errors: list
    load_warnings: list
    content_hash: str = ""

    def view(self, view_id):
        for v in self.views:
            if v.id == view_id:
                return v
        return None


def read_csv_rows(path, schema):
    """Read an RFC 4180 CSV with a header into raw row dicts.

    Only schema'd columns are read; every schema column must be present in
    the header.  Empty cells become None (tag-list cells stay strings for
    the table builder to split).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in schema if c not in header]
        if missing:
            raise SchemaMismatch(f"{path}: columns missing from header: {', '.join(sorted(missing))}")
        rows = []
        for raw in reader:
            row = {}
            for col, kind in schema.items():
                cell = raw.get(col)
                row[col] = None if cell is None or cell == "" else cell
            rows.append(row)
    return rows


def _coerce_csv_cell(kind, cell, row_idx, col):
    if cell is None:
        return None
    if kind == "number":
        try:
            return float(cell)
        except ValueError:
            raise CellTypeError(row_idx, col, f"not a number: {cell!r}") from None
    return cell  # text/date/tag-list parsed or validated by build_table


def load_csv(path, schema, key_column, points=None):
    """Load one CSV into a RecordTable.

    ``schema`` maps column name -> kind; ``points`` optionally assembles
    virtual point columns from lon/lat number column pairs, e.g.
    ``{"loc": ["longitude", "latitude"]}``.
    """
    for col, kind in schema.items():
        if kind not in COLUMN_KINDS or kind == "point":
            raise SchemaMismatch(f"column {col!r} has unsupported CSV kind {kind!r}")
    raw_rows = read_csv_rows(path, schema)
    rows = []
    for i, raw in enumerate(raw_rows):
        row = {c: _coerce_csv_cell(k, raw[c], i, c) for c, k in schema.items()}
        rows.append(row)

    columns = list(schema.items())
    if points:
        for pcol, (lon_col, lat_col) in points.items():
            for src in (lon_col, lat_col):
                if schema.get(src) != "number":
                    raise SchemaMismatch(
                        f"point column {pcol!r} needs number columns, {src!r} is {schema.get(src)!r}")
            for row in rows:
                lon, lat = row.get(lon_col), row.get(lat_col)
                row[pcol] = None if lon is None or lat is None else (lon, lat)
            columns.append((pcol, "point"))
    return build_table(columns, rows, key_column)


def load_geometries(path, key_property):
    """Load an RFC 7946 FeatureCollection of Point/Polygon/MultiPolygon."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("type") != "FeatureCollection":
        raise UnsupportedGeometry(f"{path}: expected a FeatureCollection")
    features = []
    for i, f in enumerate(doc.get("features", [])):
        g = f.get("geometry") or {}
        gtype = g.get("type")
        coords = g.get("coordinates")
        if gtype == "Point":
            geom = geo.GeoPoint(float(coords[0]), float(coords[1]))
        elif gtype == "Polygon":
            geom = geo.polygon_from_rings(coords)
        elif gtype == "MultiPolygon":
            geom = geo.MultiPolygon(tuple(geo.polygon_from_rings(r) for r in coords))
        else:
            raise UnsupportedGeometry(f"{path}: feature {i} has geometry type {gtype!r}")
        props = f.get("properties") or {}
        if key_property not in props or props[key_property] is None:
            raise MissingKey(f"{path}: feature {i} lacks key property {key_property!r}")
        features.append(Feature(props[key_property], geom, props))
    return features


def join_attributes(table, features, key):
    """Attach table attributes to features by a shared key column.

    Every feature gains the matching row's attribute dict; unmatched
    features carry nulls and are reported, as are table rows no feature
    references.  Returns (joined_features, unmatched_feature_keys,
    unmatched_row_keys).
    """
    kind = table.kind_of(key)
    if kind != "text":
        raise SchemaMismatch(f"join key {key!r} must be a text column, got {kind}")
    col = table.column(key)
    by_value = {}
    for i in range(table.size):
        v = col.value_at(i)
        if v is None:
            continue
        if v in by_value:
            raise DuplicateKey(f"join key {key!r} has duplicate value {v!r}")
        by_value[v] = i

    null_row = {name: None for name, _ in table.column_specs}
    joined = []
    unmatched_features = []
    seen_rows = set()
    for f in features:
        row = by_value.get(f.key)
        if row is None:
            joined.append(JoinedFeature(f.key, f.geometry, f.properties, dict(null_row), False))
            unmatched_features.append(f.key)
        else:
            seen_rows.add(row)
            joined.append(JoinedFeature(f.key, f.geometry, f.properties,
                                        table.row_values(row), True))
    unmatched_rows = [col.value_at(i) for i in sorted(set(by_value.values()) - seen_rows)]
    return joined, unmatched_features, unmatched_rows


def _merge_sources(sources):
    """Merge raw per-source (schema, rows, key) onto the first source's keys."""
    primary_schema, primary_rows, key = sources[0]
    columns = dict(primary_schema)
    merged = {row[key]: dict(row) for row in primary_rows}
    order = [row[key] for row in primary_rows]
    warnings = []
    for schema, rows, src_key in sources[1:]:
        for col, kind in schema.items():
            if col == src_key:
                continue
            if col in columns:
                raise SchemaMismatch(f"column {col!r} appears in more than one data source")
            columns[col] = kind
        extra = 0
        for row in rows:
            k = row[src_key]
            if k in merged:
                for col in schema:
                    if col != src_key:
                        merged[k][col] = row[col]
            else:
                extra += 1
        if extra:
            warnings.append(f"{extra} rows with keys absent from the primary data source were dropped")
    return list(columns.items()), [merged[k] for k in order], warnings


def load_bundle(manifest_path) -> AppBundle:
    """Load a bundle directory from its app.config.json manifest.

    I/O or schema problems in referenced files become load errors on the
    returned bundle rather than exceptions; only an unreadable or
    non-JSON manifest raises.
    """
    manifest_path = Path(manifest_path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / "app.config.json"
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    root = manifest_path.parent

    errors = []
    warnings = []

    layout = manifest.get("layout", "single_map")
    views = []
    for i, v in enumerate(manifest.get("views", [])):
        views.append(ViewSpec(
            id=str(v.get("id", f"view{i}")),
            kind=v.get("kind", ""),
            bindings=dict(v.get("bindings", {})),
            options=dict(v.get("options", {})),
        ))
    palettes = {str(k): list(v) for k, v in (manifest.get("palettes") or {}).items()}

    # Data sources -> one merged table
    table = None
    sources = []
    key_column = None
    for i, src in enumerate(manifest.get("data", [])):
        label = f"data[{i}] {src.get('path', '?')}"
        try:
            schema = dict(src["schema"])
            src_key = src["key"]
            if src_key not in schema:
                raise SchemaMismatch(f"key column {src_key!r} not in schema")
            raw = read_csv_rows(root / src["path"], schema)
            rows = []
            for ri, r in enumerate(raw):
                rows.append({c: _coerce_csv_cell(k, r[c], ri, c) for c, k in schema.items()})
            sources.append((schema, rows, src_key))
            if key_column is None:
                key_column = src_key
            elif src_key != key_column:
                errors.append(f"{label}: key column {src_key!r} differs from {key_column!r}")
        except (OSError, json.JSONDecodeError) as e:
            errors.append(f"{label}: {e}")
        except (SchemaMismatch, CellTypeError, DuplicateKey, KeyError) as e:
            errors.append(f"{label}: {e}")

    if sources and not errors:
        try:
            columns, rows, merge_warnings = _merge_sources(sources)
            warnings.extend(merge_warnings)
            points = {}
            for src in manifest.get("data", []):
                points.update(src.get("points") or {})
            for pcol, (lon_col, lat_col) in points.items():
                for row in rows:
                    lon, lat = row.get(lon_col), row.get(lat_col)
                    row[pcol] = None if lon is None or lat is None else (lon, lat)
                columns.append((pcol, "point"))
            table = build_table(columns, rows, key_column)
        except (SchemaMismatch, CellTypeError, DuplicateKey, ValueError) as e:
            errors.append(f"data: {e}")
    elif not sources:
        errors.append("data: no data sources declared")

    # Geometry sources + joins
    features = {}
    for i, src in enumerate(manifest.get("geometry", [])):
        gid = str(src.get("id", f"geometry{i}"))
        try:
            features[gid] = load_geometries(root / src["path"], src["key_property"])
        except (OSError, json.JSONDecodeError, UnsupportedGeometry, MissingKey, KeyError) as e:
            errors.append(f"geometry[{i}] {src.get('path', '?')}: {e}")

    joined = {}
    for i, jn in enumerate(manifest.get("joins", [])):
        gid = jn.get("geometry")
        jkey = jn.get("key")
        if gid not in features or table is None:
            if gid not in features:
                errors.append(f"joins[{i}]: unknown geometry source {gid!r}")
            continue
        try:
            out, unmatched_f, unmatched_r = join_attributes(table, features[gid], jkey)
            joined[gid] = out
            if unmatched_f:
                warnings.append(f"joins[{i}]: {len(unmatched_f)} features had no matching row")
            if unmatched_r:
                warnings.append(f"joins[{i}]: {len(unmatched_r)} rows matched no feature")
        except (DuplicateKey, SchemaMismatch, Exception) as e:  # noqa: BLE001 - surfaced in report
            errors.append(f"joins[{i}]: {e}")

    digest = hashlib.sha256(manifest_path.read_bytes())
    for section in ("data", "geometry"):
        for src in manifest.get(section, []):
            path = root / src.get("path", "")
            if path.is_file():
                digest.update(path.read_bytes())
    return AppBundle(root, manifest, layout, views, palettes, table,
                     features, joined, errors, warnings, digest.hexdigest())


def validate_bundle(bundle: AppBundle) -> ValidationReport:
    """Check every bundle invariant; never mutates the bundle."""
    report = ValidationReport()
    report.errors.extend(bundle.load_errors)
    report.warnings.extend(bundle.load_warnings)

    if bundle.layout not in LAYOUTS:
        report.errors.append(f"layout: unknown layout {bundle.layout!r}")

    seen_ids = set()
    kinds = dict(bundle.table.column_specs) if bundle.table is not None else {}
    for v in bundle.views:
        label = f"view {v.id!r}"
        if v.id in seen_ids:
            report.errors.append(f"{label}: duplicate view id")
        seen_ids.add(v.id)
        if v.kind not in VIEW_KINDS:
            report.errors.append(f"{label}: unknown kind {v.kind!r}")
            continue
        for slot, column in sorted(v.bindings.items()):
            if kinds and column not in kinds:
                report.errors.append(f"{label}: binding {slot!r} references unknown column {column!r}")
        if v.kind in ("choropleth_map", "small_multiples"):
            variables = v.options.get("variables") or []
            if not variables:
                report.errors.append(f"{label}: needs at least one variable")
            for var in variables:
                if kinds and var not in kinds:
                    report.errors.append(f"{label}: unknown variable {var!r}")
        if v.kind == "small_multiples" and not (v.options.get("projections") or []):
            report.errors.append(f"{label}: needs at least one projection choice")
        if v.kind in ("choropleth_map", "prop_symbol_map", "small_multiples"):
            gid = v.options.get("geometry")
            if gid not in bundle.features:
                report.errors.append(f"{label}: unknown geometry source {gid!r}")
        k = v.options.get("k")
        palette = v.options.get("palette")
        if palette is not None:
            colors = bundle.palettes.get(palette)
            if colors is None:
                report.errors.append(f"{label}: unknown palette {palette!r}")
            elif k is not None and len(colors) < int(k):
                report.warnings.append(
                    f"{label}: palette {palette!r} has {len(colors)} colors for k={k} classes")
    return report
