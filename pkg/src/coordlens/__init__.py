"""CoordLens: a coordinated-view geovisualization engine.

The package links a multidimensional crossfilter core to geospatial
operations (spatial predicates, forward projections, classification,
clustering, heat grids) and chart statistics, and exposes everything to
hosts through a command/event session API speaking newline-delimited
JSON.

Modules:
    table        columnar record tables with typed columns
    crossfilter  dimensions, filters, groups with own-filter exclusion
    geo          geometries, point-in-polygon, haversine predicates
    projections  forward map projections (Mercator, equirectangular,
                 Albers conic, stereographic) and web-tile pixel math
    classify     equal-interval / quantile / Jenks class breaks
    cluster      greedy marker clustering and spiderfy layouts
    heatgrid     kernel-smoothed point-density rasters
    stats        histogram, boxplot, regression, stacked and time series
    bundle       app bundles: CSV + GeoJSON loading, joins, validation
    session      the command/event surface hosts drive
    wire         the deterministic JSON-lines boundary encoding
    synth        seeded synthetic example bundles
    cli          the `coordlens` command-line tool
"""

from .bundle import AppBundle, load_bundle, load_csv, load_geometries, validate_bundle
from .classify import ClassBreaks, assign_class, classify
from .cluster import cluster, spiderfy
from .crossfilter import (
    Crossfilter,
    FixedWidth,
    GroupResult,
    Identity,
    KeyFilter,
    RangeFilter,
    SetFilter,
    SpatialFilter,
    TagAnyFilter,
    TimeBucket,
)
from .geo import (
    BBox,
    Circle,
    GeoPoint,
    MultiPolygon,
    Polygon,
    haversine_m,
    point_in_polygon,
    spatial_predicate,
)
from .heatgrid import HeatGrid, heat_grid
from .projections import (
    AlbersConic,
    Equirectangular,
    SphericalMercator,
    Stereographic,
    project_forward,
)
from .session import Session, create_session, restore
from .stats import (
    BoxplotStats,
    HistogramSpec,
    RegressionFit,
    boxplot_stats,
    histogram,
    linear_regression,
    series_aggregate,
    stacked_aggregate,
    time_bucket,
)
from .table import RecordTable, build_table

__version__ = "0.1.0"

__all__ = [
    "AlbersConic", "AppBundle", "BBox", "BoxplotStats", "Circle", "ClassBreaks",
    "Crossfilter", "Equirectangular", "FixedWidth", "GeoPoint", "GroupResult",
    "HeatGrid", "HistogramSpec", "Identity", "KeyFilter", "MultiPolygon",
    "Polygon", "RangeFilter", "RecordTable", "RegressionFit", "Session",
    "SetFilter", "SpatialFilter", "SphericalMercator", "Stereographic",
    "TagAnyFilter", "TimeBucket", "assign_class", "boxplot_stats", "build_table",
    "classify", "cluster", "create_session", "haversine_m", "heat_grid",
    "histogram", "linear_regression", "load_bundle", "load_csv",
    "load_geometries", "point_in_polygon", "project_forward", "restore",
    "series_aggregate", "spatial_predicate", "spiderfy", "stacked_aggregate",
    "time_bucket", "validate_bundle",
]
