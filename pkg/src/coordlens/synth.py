"""Seeded synthetic bundles mirroring the case-study app shapes.

Three generators produce fully self-contained bundle directories:

* ``tract_bundle``  - 612 census-tract polygons with justice-style
  indicators split across two CSVs joined on the tract id; three
  dropdown-driven choropleth maps, small multiples, charts, and a table
  in the multi-row layout.
* ``crash_bundle``  - 68,772 point records with a date and six
  categorical attributes; marker map, two-mode heatmap, date slider,
  select menus, and row charts in the single-map layout.
* ``pathogen_bundle`` - a small sample-tracking app with a multi-value
  tag column, series chart, stacked bars, and a proportional symbol map.

Everything is driven by one seed, so identical invocations write
byte-identical files.
"""

from __future__ import annotations

import csv
import json
import random
from pathlib import Path

TRACT_COUNT = 612
CRASH_COUNT = 68772


def _write_json(path, doc):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))


def _write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _grid_polygons(count, cols, west, south, east, north):
    """Rectangular cells tiling a bbox, flattened row-major to ``count``."""
    rows = (count + cols - 1) // cols
    dw = (east - west) / cols
    dh = (north - south) / rows
    cells = []
    for i in range(count):
        r, c = divmod(i, cols)
        x0 = west + c * dw
        y0 = south + r * dh
        ring = [[x0, y0], [x0 + dw, y0], [x0 + dw, y0 + dh], [x0, y0 + dh], [x0, y0]]
        cells.append([[[round(x, 6), round(y, 6)] for x, y in ring]])
    return cells


def tract_bundle(root, seed=612, n=TRACT_COUNT):
    """Write the 612-tract justice-style bundle; returns the manifest path."""
    root = Path(root)
    rng = random.Random(seed)

    counties = ["Bernalillo", "Santa Fe", "Dona Ana", "Sandoval", "San Juan",
                "Valencia", "McKinley", "Otero"]
    tract_ids = [f"35001{i:06d}" for i in range(1, n + 1)]
    cols = max(2, round((n * 36 / TRACT_COUNT) ** 0.5 * (36 / 17) ** 0.5)) if n != TRACT_COUNT else 36
    cells = _grid_polygons(n, cols, -109.0, 31.3, -103.0, 37.0)

    svi_rows = []
    justice_rows = []
    for i, tid in enumerate(tract_ids):
        county = counties[i * len(counties) // n]
        svi = rng.betavariate(2, 3)
        socio = max(0.0, min(1.0, svi + rng.gauss(0, 0.15)))
        minority = rng.betavariate(2, 2)
        households = rng.randint(200, 3200)
        ring = cells[i][0]
        center_lon = (ring[0][0] + ring[2][0]) / 2
        center_lat = (ring[0][1] + ring[2][1]) / 2
        svi_rows.append([tid, county, f"{svi:.4f}", f"{socio:.4f}",
                         f"{minority:.4f}", households,
                         f"{center_lon:.6f}", f"{center_lat:.6f}"])
        poverty = max(0.0, min(60.0, 12 + 38 * svi + rng.gauss(0, 6)))
        burden = max(0.0, min(1.0, 0.25 + 0.6 * svi + rng.gauss(0, 0.12)))
        food10 = rng.betavariate(1.6, 3.2)
        snap = max(0.0, min(0.8, poverty / 100 + rng.gauss(0.05, 0.04)))
        low_income = "yes" if poverty > 25 else "no"
        justice_rows.append([tid, f"{burden:.4f}", f"{poverty:.2f}",
                             f"{food10:.4f}", f"{snap:.4f}", low_income])

    _write_csv(root / "data" / "svi.csv",
               ["tract_id", "county", "svi_score", "socioeconomic", "minority_share",
                "households", "center_lon", "center_lat"], svi_rows)
    _write_csv(root / "data" / "justice.csv",
               ["tract_id", "climate_burden", "poverty_rate", "food_access_10mi",
                "snap_share", "low_income"], justice_rows)
    features = [{"type": "Feature",
                 "properties": {"tract_id": tid},
                 "geometry": {"type": "Polygon", "coordinates": cell}}
                for tid, cell in zip(tract_ids, cells)]
    _write_json(root / "geo" / "tracts.geojson",
                {"type": "FeatureCollection", "features": features})

    manifest = {
        "name": "Synthetic tract justice explorer",
        "layout": "multi_map_rows",
        "data": [
            {"path": "data/svi.csv", "key": "tract_id",
             "schema": {"tract_id": "text", "county": "text", "svi_score": "number",
                        "socioeconomic": "number", "minority_share": "number",
                        "households": "number", "center_lon": "number",
                        "center_lat": "number"},
             "points": {"centroid": ["center_lon", "center_lat"]}},
            {"path": "data/justice.csv", "key": "tract_id",
             "schema": {"tract_id": "text", "climate_burden": "number",
                        "poverty_rate": "number", "food_access_10mi": "number",
                        "snap_share": "number", "low_income": "text"}},
        ],
        "geometry": [{"id": "tracts", "path": "geo/tracts.geojson",
                      "key_property": "tract_id"}],
        "joins": [{"geometry": "tracts", "key": "tract_id"}],
        "palettes": {
            "burden_reds": ["#ffffb2", "#fecc5c", "#fd8d3c", "#f03b20", "#bd0026"],
            "svi_blues": ["#eff3ff", "#bdd7e7", "#6baed6", "#3182bd", "#08519c"],
            "food_purples": ["#f2f0f7", "#cbc9e2", "#9e9ac8", "#756bb1", "#54278f"],
        },
        "views": [
            {"id": "status", "kind": "status_bar"},
            {"id": "centroid_map", "kind": "marker_map",
             "bindings": {"point": "centroid"},
             "options": {"cluster_radius_px": 40}},
            {"id": "density", "kind": "heatmap_layer",
             "bindings": {"point": "centroid"},
             "options": {"mode": "global", "cell_size_m": 20000,
                         "kernel_radius_m": 60000}},
            {"id": "map_climate", "kind": "choropleth_map",
             "bindings": {"region": "tract_id"},
             "options": {"geometry": "tracts",
                         "variables": ["climate_burden", "poverty_rate"],
                         "method": "quantile", "k": 5, "palette": "burden_reds"}},
            {"id": "map_svi", "kind": "choropleth_map",
             "bindings": {"region": "tract_id"},
             "options": {"geometry": "tracts",
                         "variables": ["svi_score", "socioeconomic", "minority_share"],
                         "method": "quantile", "k": 5, "palette": "svi_blues"}},
            {"id": "map_food", "kind": "choropleth_map",
             "bindings": {"region": "tract_id"},
             "options": {"geometry": "tracts",
                         "variables": ["food_access_10mi", "snap_share"],
                         "method": "quantile", "k": 5, "palette": "food_purples"}},
            {"id": "multiples", "kind": "small_multiples",
             "bindings": {"region": "tract_id"},
             "options": {"geometry": "tracts",
                         "variables": ["socioeconomic", "minority_share"],
                         "projections": ["spherical_mercator", "albers_conic",
                                         "equirectangular", "stereographic"],
                         "method": "quantile", "k": 5, "palette": "svi_blues"}},
            {"id": "county_donut", "kind": "donut",
             "bindings": {"column": "county"}, "options": {"palette": "svi_blues"}},
            {"id": "low_income_bar", "kind": "bar_chart",
             "bindings": {"column": "low_income"}, "options": {}},
            {"id": "poverty_hist", "kind": "histogram",
             "bindings": {"column": "poverty_rate"},
             "options": {"bin_width": 5, "bin_widths": [2, 5, 10], "origin": 0}},
            {"id": "county_menu", "kind": "select_menu",
             "bindings": {"column": "county"}, "options": {}},
            {"id": "svi_vs_poverty", "kind": "scatter",
             "bindings": {"x": "svi_score", "y": "poverty_rate"},
             "options": {"x_choices": ["svi_score", "socioeconomic", "minority_share"],
                         "y_choices": ["poverty_rate", "climate_burden", "snap_share"]}},
            {"id": "svi_box", "kind": "boxplot",
             "bindings": {"value": "svi_score", "by": "low_income"}, "options": {}},
            {"id": "table", "kind": "data_table", "options": {"page_size": 25}},
        ],
    }
    path = root / "app.config.json"
    _write_json(path, manifest)
    return path


def crash_rows(n=CRASH_COUNT, seed=68772):
    """Raw crash-style rows: point + date + six categorical columns."""
    rng = random.Random(seed)
    severities = ["Injury"] * 12 + ["Fatal"]
    cities = ["Albuquerque"] * 8 + ["Rio Rancho", "Los Ranchos", "Tijeras", "Unincorporated"]
    yesno = ["No"] * 7 + ["Yes"] * 2
    rows = []
    for i in range(1, n + 1):
        lon = rng.uniform(-106.90, -106.40)
        lat = rng.uniform(34.90, 35.30)
        day = rng.randint(0, 5113)  # 2010-01-01 .. 2023-12-31
        date = _date_from_epoch_days(day)
        rows.append([
            f"C{i:06d}", date, f"{lon:.6f}", f"{lat:.6f}",
            rng.choice(severities), rng.choice(cities), rng.choice(yesno),
            rng.choice(yesno), rng.choice(yesno), rng.choice(yesno),
            rng.randint(1, 4),
        ])
    return rows


def _date_from_epoch_days(day):
    import datetime
    return (datetime.date(2010, 1, 1) + datetime.timedelta(days=day)).isoformat()


CRASH_HEADER = ["crash_id", "crash_date", "longitude", "latitude", "severity",
                "city", "alcohol_involved", "drug_involved", "pedestrian_involved",
                "bicycle_involved", "vehicles"]

CRASH_SCHEMA = {"crash_id": "text", "crash_date": "date", "longitude": "number",
                "latitude": "number", "severity": "text", "city": "text",
                "alcohol_involved": "text", "drug_involved": "text",
                "pedestrian_involved": "text", "bicycle_involved": "text",
                "vehicles": "number"}


def crash_bundle(root, seed=68772, n=CRASH_COUNT):
    """Write the crash-app-shaped bundle; returns the manifest path."""
    root = Path(root)
    _write_csv(root / "data" / "crashes.csv", CRASH_HEADER, crash_rows(n, seed))

    manifest = {
        "name": "Synthetic crash explorer",
        "layout": "single_map",
        "data": [
            {"path": "data/crashes.csv", "key": "crash_id",
             "schema": CRASH_SCHEMA,
             "points": {"loc": ["longitude", "latitude"]}},
        ],
        "geometry": [],
        "joins": [],
        "palettes": {"severity": ["#feb24c", "#bd0026"]},
        "views": [
            {"id": "status", "kind": "status_bar"},
            {"id": "crash_map", "kind": "marker_map",
             "bindings": {"point": "loc"},
             "options": {"cluster_radius_px": 40, "point_limit": 2000}},
            {"id": "crash_heat", "kind": "heatmap_layer",
             "bindings": {"point": "loc"},
             "options": {"mode": "global", "cell_size_m": 500, "kernel_radius_m": 1500}},
            {"id": "date_slider", "kind": "date_slider",
             "bindings": {"column": "crash_date"}, "options": {"granularity": "month"}},
            {"id": "city_menu", "kind": "select_menu",
             "bindings": {"column": "city"}, "options": {}},
            {"id": "severity_menu", "kind": "select_menu",
             "bindings": {"column": "severity"}, "options": {"palette": "severity"}},
            {"id": "alcohol_row", "kind": "row_chart",
             "bindings": {"column": "alcohol_involved"}, "options": {}},
            {"id": "drug_row", "kind": "row_chart",
             "bindings": {"column": "drug_involved"}, "options": {}},
            {"id": "pedestrian_row", "kind": "row_chart",
             "bindings": {"column": "pedestrian_involved"}, "options": {}},
            {"id": "bicycle_row", "kind": "row_chart",
             "bindings": {"column": "bicycle_involved"}, "options": {}},
            {"id": "vehicles_hist", "kind": "histogram",
             "bindings": {"column": "vehicles"}, "options": {"bin_width": 1, "origin": 0}},
            {"id": "table", "kind": "data_table", "options": {"page_size": 25}},
        ],
    }
    path = root / "app.config.json"
    _write_json(path, manifest)
    return path


def pathogen_bundle(root, seed=1990, n=800):
    """Write a small sample-tracking bundle with a tag column; returns manifest path."""
    root = Path(root)
    rng = random.Random(seed)

    states = ["Panama", "Colon", "Cocle", "Veraguas", "Chiriqui", "Darien"]
    state_centers = {"Panama": (-79.5, 9.0), "Colon": (-79.9, 9.35),
                     "Cocle": (-80.4, 8.55), "Veraguas": (-81.1, 8.1),
                     "Chiriqui": (-82.4, 8.4), "Darien": (-77.9, 8.0)}
    species = ["Oligoryzomys fulvescens", "Zygodontomys brevicauda",
               "Proechimys semispinosus", "Liomys adspersus"]
    parts_pool = ["blood", "liver", "lung", "spleen", "kidney", "whole organism"]

    rows = []
    for i in range(1, n + 1):
        state = rng.choice(states)
        cx, cy = state_centers[state]
        lon = cx + rng.gauss(0, 0.25)
        lat = cy + rng.gauss(0, 0.18)
        sp = rng.choice(species)
        positive = rng.random() < (0.22 if sp == species[0] else 0.08)
        weight = max(5.0, rng.gauss(42 if positive else 38, 9))
        length = max(40.0, rng.gauss(105, 14))
        day = rng.randint(0, 365 * 20)
        parts = ", ".join(sorted(rng.sample(parts_pool, rng.randint(1, 3))))
        rows.append([
            f"MSB{i:05d}", sp, "Positive" if positive else "Negative",
            rng.choice(["female", "male"]), f"{weight:.1f}", f"{length:.1f}",
            _pathogen_date(day), parts, state, f"{lon:.5f}", f"{lat:.5f}",
        ])

    _write_csv(root / "data" / "samples.csv",
               ["sample_id", "species", "result", "sex", "weight_g", "length_mm",
                "collect_date", "part", "state", "longitude", "latitude"], rows)

    cells = _grid_polygons(6, 3, -82.9, 7.2, -77.2, 9.7)
    features = [{"type": "Feature", "properties": {"state": s},
                 "geometry": {"type": "Polygon", "coordinates": cell}}
                for s, cell in zip(states, cells)]
    _write_json(root / "geo" / "states.geojson",
                {"type": "FeatureCollection", "features": features})

    manifest = {
        "name": "Synthetic pathogen sample tracker",
        "layout": "single_map",
        "data": [
            {"path": "data/samples.csv", "key": "sample_id",
             "schema": {"sample_id": "text", "species": "text", "result": "text",
                        "sex": "text", "weight_g": "number", "length_mm": "number",
                        "collect_date": "date", "part": "tag-list", "state": "text",
                        "longitude": "number", "latitude": "number"},
             "points": {"loc": ["longitude", "latitude"]}},
        ],
        "geometry": [{"id": "states", "path": "geo/states.geojson",
                      "key_property": "state"}],
        "joins": [],
        "palettes": {"result": ["#1b9e77", "#d95f02"]},
        "views": [
            {"id": "status", "kind": "status_bar"},
            {"id": "sample_map", "kind": "marker_map",
             "bindings": {"point": "loc"}, "options": {"cluster_radius_px": 40}},
            {"id": "state_symbols", "kind": "prop_symbol_map",
             "bindings": {"region": "state"},
             "options": {"geometry": "states", "reduce": "count"}},
            {"id": "result_donut", "kind": "donut",
             "bindings": {"column": "result"}, "options": {"palette": "result"}},
            {"id": "sex_donut", "kind": "donut", "bindings": {"column": "sex"},
             "options": {}},
            {"id": "part_row", "kind": "row_chart", "bindings": {"column": "part"},
             "options": {}},
            {"id": "date_slider", "kind": "date_slider",
             "bindings": {"column": "collect_date"}, "options": {"granularity": "year"}},
            {"id": "weight_box", "kind": "boxplot",
             "bindings": {"value": "weight_g", "by": "sex"}, "options": {}},
            {"id": "weight_vs_length", "kind": "scatter",
             "bindings": {"x": "length_mm", "y": "weight_g"},
             "options": {"x_choices": ["length_mm", "weight_g"],
                         "y_choices": ["weight_g", "length_mm"]}},
            {"id": "species_stack", "kind": "stacked_bar",
             "bindings": {"primary": "species", "secondary": "result"},
             "options": {"palette": "result"}},
            {"id": "weight_series", "kind": "series_chart",
             "bindings": {"date": "collect_date", "category": "result",
                          "value": "weight_g"},
             "options": {"granularity": "year", "reduction": "mean"}},
            {"id": "species_menu", "kind": "select_menu",
             "bindings": {"column": "species"}, "options": {}},
            {"id": "table", "kind": "data_table", "options": {"page_size": 20}},
        ],
    }
    path = root / "app.config.json"
    _write_json(path, manifest)
    return path


def _pathogen_date(day):
    import datetime
    return (datetime.date(2000, 1, 1) + datetime.timedelta(days=day)).isoformat()


GENERATORS = {"tracts": tract_bundle, "crashes": crash_bundle, "pathogen": pathogen_bundle}
