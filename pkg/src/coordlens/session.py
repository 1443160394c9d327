"""Sessions: one command queue, coordinated notifications for every view.

A session binds a validated bundle to a crossfilter engine, one dimension
per bound (column, kind) pair shared across views, and a payload builder
per view.  State-changing commands bump the revision by exactly one and
emit a StatusUpdate plus a ViewUpdate for every registered view whose
payload changed; query commands answer at the current revision without
touching state.  All messages are plain dicts in the wire schema.
"""

from __future__ import annotations


from . import stats
from .bundle import validate_bundle
from .classify import assign_class, classify
from .cluster import cluster, spiderfy
from .crossfilter import (
    Crossfilter,
    FixedWidth,
    Identity,
    KeyFilter,
    SetFilter,
    TimeBucket,
)
from .errors import (
    BundleInvalid,
    CoordLensError,
    KindMismatch,
    NotApplicable,
    NotEnoughDistinct,
    SnapshotMismatch,
    UnknownColumn,
    UnknownView,
)
from .projections import projection_from_dict, projection_to_dict
from .wire import dumps_line, filter_from_dict, filter_to_dict, loads_line

STATE_COMMANDS = ("set_filter", "clear_filter", "clear_all", "spatial_select",
                  "clear_spatial", "row_click", "set_variable", "set_projection",
                  "set_bin_width", "set_axes")
QUERY_COMMANDS = ("query_view", "query_table", "query_heatmap", "query_status")

DEFAULT_POINT_LIMIT = 5000
DEFAULT_CLUSTER_RADIUS_PX = 40
DEFAULT_CLASS_COUNT = 5
DEFAULT_CLASS_METHOD = "quantile"


class Session:
    def __init__(self, bundle):
        report = validate_bundle(bundle)
        if not report.ok():
            raise BundleInvalid(report)
        self.bundle = bundle
        self.engine = Crossfilter(bundle.table)
        self.revision = 0
        self.command_log = []
        self.view_state = {}
        self._dims = {}  # (column, kind) -> Dimension
        self._groups = {}  # view_id -> Group
        self._own_dim = {}  # view_id -> Dimension or None
        self._payload_cache = {}
        self._static_cache = {}  # filter-independent payload pieces
        for view in bundle.views:
            self._register(view)

    # -- registration ------------------------------------------------------

    def _dim(self, column, kind):
        key = (column, kind)
        if key not in self._dims:
            self._dims[key] = self.engine.create_dimension(column, kind,
                                                           dim_id=f"{kind}:{column}")
        return self._dims[key]

    def _register(self, view):
        opts = view.options
        state = {}
        own = None
        kind = view.kind

        if kind in ("histogram", "range_slider"):
            own = self._dim(view.bindings["column"], "scalar")
            if kind == "histogram":
                state["width"] = float(opts.get("bin_width")
                                       or (opts.get("bin_widths") or [1.0])[0])
                state["origin"] = float(opts.get("origin", 0.0))
                self._groups[view.id] = self.engine.create_group(
                    own, FixedWidth(state["origin"], state["width"]), "count",
                    group_id=f"group:{view.id}")
        elif kind in ("date_slider", "series_chart"):
            own = self._dim(view.bindings["date" if kind == "series_chart" else "column"],
                            "scalar")
            state["granularity"] = opts.get("granularity", "month")
            if kind == "date_slider":
                self._groups[view.id] = self.engine.create_group(
                    own, TimeBucket(state["granularity"]), "count",
                    group_id=f"group:{view.id}")
        elif kind in ("select_menu", "donut", "row_chart", "bar_chart"):
            column = view.bindings["column"]
            dim_kind = "tag" if self.bundle.table.kind_of(column) == "tag-list" else "categorical"
            own = self._dim(column, dim_kind)
            reduce = opts.get("reduce", "count")
            reduction = "count" if reduce == "count" else ("sum", reduce["sum"])
            self._groups[view.id] = self.engine.create_group(
                own, Identity(), reduction, group_id=f"group:{view.id}")
        elif kind == "stacked_bar":
            own = self._dim(view.bindings["primary"], "categorical")
        elif kind == "scatter":
            own = self.engine.key_dimension
            state["x"] = view.bindings["x"]
            state["y"] = view.bindings["y"]
        elif kind == "boxplot":
            own = self.engine.key_dimension
        elif kind in ("choropleth_map", "small_multiples"):
            own = self._dim(view.bindings["region"], "categorical")
            state["variable"] = opts["variables"][0]
            if kind == "small_multiples":
                state["projection"] = _normalize_projection((opts.get("projections") or
                                                             ["spherical_mercator"])[0])
        elif kind == "prop_symbol_map":
            own = self._dim(view.bindings["region"], "categorical")
            reduce = opts.get("reduce", "count")
            reduction = "count" if reduce == "count" else ("sum", reduce["sum"])
            self._groups[view.id] = self.engine.create_group(
                own, Identity(), reduction, group_id=f"group:{view.id}")
        elif kind in ("marker_map", "heatmap_layer"):
            own = self._dim(view.bindings["point"], "point")
            if kind == "heatmap_layer":
                state["mode"] = opts.get("mode", "global")
        elif kind == "data_table":
            state.update({"sort": None, "search": "", "page": [0, int(opts.get("page_size", 25))]})
        elif kind == "status_bar":
            pass
        else:
            raise BundleInvalid(_adhoc_report(f"view {view.id!r}: unknown kind {kind!r}"))

        self._own_dim[view.id] = own
        self.view_state[view.id] = state

    # -- public API --------------------------------------------------------

    def initial_notifications(self):
        """The full revision-0 notification set emitted at session creation."""
        out = [self._status()]
        for view in self.bundle.views:
            payload = self._payload(view)
            if payload is not None:
                self._payload_cache[view.id] = payload
                out.append(self._view_update(view.id, payload))
        return out

    def dispatch(self, command):
        """Apply one wire-schema command dict; returns notification dicts."""
        try:
            cmd = command.get("cmd")
            if cmd in STATE_COMMANDS:
                return self._dispatch_state(cmd, command)
            if cmd in QUERY_COMMANDS:
                return self._dispatch_query(cmd, command)
            raise NotApplicable(f"unknown command: {cmd!r}")
        except CoordLensError as e:
            return [{"event": "error", "revision": self.revision,
                     "code": e.code, "message": str(e)}]

    def _dispatch_state(self, cmd, command):
        getattr(self, f"_cmd_{cmd}")(command)
        self.revision += 1
        self.command_log.append(command)
        out = [self._status()]
        for view in self.bundle.views:
            payload = self._payload(view)
            if payload is None:
                continue
            if self._payload_cache.get(view.id) != payload:
                self._payload_cache[view.id] = payload
                out.append(self._view_update(view.id, payload))
        return out

    def _dispatch_query(self, cmd, command):
        if cmd == "query_status":
            return [self._status()]
        if cmd == "query_table":
            view = self._table_view()
            state = self.view_state[view.id]
            if "sort" in command:
                state["sort"] = command["sort"]
            if "search" in command:
                state["search"] = command["search"] or ""
            if "page" in command:
                state["page"] = list(command["page"])
            payload = self._payload(view)
            self._payload_cache[view.id] = payload
            return [self._view_update(view.id, payload)]
        if cmd == "query_heatmap":
            view = self._resolve(command.get("map"), kinds=("heatmap_layer",))
            mode = command.get("mode")
            if mode is not None:
                if mode not in ("global", "local"):
                    raise KindMismatch(f"unknown heatmap mode: {mode!r}")
                self.view_state[view.id]["mode"] = mode
            payload = self._payload(view)
            self._payload_cache[view.id] = payload
            return [self._view_update(view.id, payload)]
        # query_view
        view = self._resolve(command.get("view"))
        payload = self._payload(view, options=command.get("options") or {})
        if not command.get("options"):
            self._payload_cache[view.id] = payload
        if payload is None:
            payload = {"kind": view.kind}
        return [self._view_update(view.id, payload)]

    # -- commands ----------------------------------------------------------

    def _resolve(self, view_id, kinds=None):
        view = self.bundle.view(view_id) if view_id is not None else None
        if view is None:
            raise UnknownView(f"unknown view: {view_id!r}")
        if kinds is not None and view.kind not in kinds:
            raise KindMismatch(f"view {view_id!r} is a {view.kind}, expected one of {kinds}")
        return view

    def _table_view(self):
        for view in self.bundle.views:
            if view.kind == "data_table":
                return view
        raise UnknownView("bundle declares no data_table view")

    def _cmd_set_filter(self, command):
        view = self._resolve(command.get("view"))
        dim = self._own_dim.get(view.id)
        if dim is None:
            raise KindMismatch(f"view {view.id!r} ({view.kind}) is not filterable")
        self.engine.set_filter(dim, filter_from_dict(command.get("filter")))

    def _cmd_clear_filter(self, command):
        view = self._resolve(command.get("view"))
        dim = self._own_dim.get(view.id)
        if dim is None:
            raise KindMismatch(f"view {view.id!r} ({view.kind}) is not filterable")
        self.engine.clear_filter(dim)

    def _cmd_clear_all(self, command):
        self.engine.clear_all_filters()

    def _cmd_spatial_select(self, command):
        view = self._resolve(command.get("map"), kinds=("marker_map", "heatmap_layer"))
        spec = filter_from_dict({"type": "spatial", "geometry": command.get("geometry")})
        self.engine.set_filter(self._own_dim[view.id], spec)

    def _cmd_clear_spatial(self, command):
        view = self._resolve(command.get("map"), kinds=("marker_map", "heatmap_layer"))
        self.engine.clear_filter(self._own_dim[view.id])

    def _cmd_row_click(self, command):
        self.engine.row_click_filter(command.get("key"))

    def _cmd_set_variable(self, command):
        view = self._resolve(command.get("map"), kinds=("choropleth_map", "small_multiples"))
        column = command.get("column")
        if column not in (view.options.get("variables") or []):
            raise UnknownColumn(f"{column!r} is not a variable of view {view.id!r}")
        self.view_state[view.id]["variable"] = column

    def _cmd_set_projection(self, command):
        view = self._resolve(command.get("view"), kinds=("small_multiples",))
        proj = command.get("projection")
        if isinstance(proj, str):
            proj = {"kind": proj}
        declared = [_normalize_projection(p)["kind"]
                    for p in view.options.get("projections") or []]
        spec = projection_to_dict(projection_from_dict(proj))
        if spec["kind"] not in declared:
            raise KindMismatch(
                f"projection {spec['kind']!r} is not offered by view {view.id!r}")
        self.view_state[view.id]["projection"] = spec

    def _cmd_set_bin_width(self, command):
        view = self._resolve(command.get("view"), kinds=("histogram",))
        width = float(command.get("width"))
        if width <= 0:
            raise KindMismatch("bin width must be > 0")
        state = self.view_state[view.id]
        state["width"] = width
        dim = self._own_dim[view.id]
        del self.engine.groups[self._groups[view.id].id]
        self._groups[view.id] = self.engine.create_group(
            dim, FixedWidth(state["origin"], width), "count", group_id=f"group:{view.id}")

    def _cmd_set_axes(self, command):
        view = self._resolve(command.get("view"), kinds=("scatter",))
        for axis in ("x", "y"):
            column = command.get(axis)
            if column is None:
                continue
            if self.bundle.table.kind_of(column) != "number":  # raises UnknownColumn
                raise KindMismatch(f"scatter axis {axis} needs a number column, got {column!r}")
            self.view_state[view.id][axis] = column

    # -- notifications -----------------------------------------------------

    def _status(self):
        selected, total = self.engine.selected_count()
        return {"event": "status", "revision": self.revision,
                "selected": selected, "total": total}

    def _view_update(self, view_id, payload):
        return {"event": "view", "revision": self.revision,
                "view": view_id, "payload": payload}

    # -- payloads ----------------------------------------------------------

    def _payload(self, view, options=None):
        builder = getattr(self, f"_payload_{view.kind}", None)
        if builder is None:
            return None
        return builder(view, options or {})

    def _filter_dict(self, view):
        dim = self._own_dim.get(view.id)
        return filter_to_dict(dim.filter) if dim is not None else None

    def _payload_histogram(self, view, options):
        state = self.view_state[view.id]
        result = self.engine.read_group(self._groups[view.id])
        return {"kind": "histogram", "column": view.bindings["column"],
                "origin": state["origin"], "width": state["width"],
                "bins": [[k, v] for k, v in result.bins],
                "filter": self._filter_dict(view)}

    def _payload_range_slider(self, view, options):
        column = view.bindings["column"]
        col = self.bundle.table.column(column)
        domain = _column_domain(col)
        return {"kind": "range_slider", "column": column, "domain": domain,
                "filter": self._filter_dict(view)}

    def _payload_date_slider(self, view, options):
        column = view.bindings["column"]
        state = self.view_state[view.id]
        result = self.engine.read_group(self._groups[view.id])
        domain = _column_domain(self.bundle.table.column(column))
        return {"kind": "date_slider", "column": column,
                "granularity": state["granularity"], "domain": domain,
                "buckets": [[k, v] for k, v in result.bins],
                "filter": self._filter_dict(view)}

    def _payload_select_menu(self, view, options):
        return self._identity_payload(view, "select_menu")

    def _payload_donut(self, view, options):
        return self._identity_payload(view, "donut")

    def _payload_row_chart(self, view, options):
        return self._identity_payload(view, "row_chart")

    def _payload_bar_chart(self, view, options):
        return self._identity_payload(view, "bar_chart")

    def _identity_payload(self, view, kind):
        result = self.engine.read_group(self._groups[view.id])
        return {"kind": kind, "column": view.bindings["column"],
                "dim": self._own_dim[view.id].kind,
                "bins": [[k, v] for k, v in result.bins],
                "palette": view.options.get("palette"),
                "filter": self._filter_dict(view)}

    def _payload_stacked_bar(self, view, options):
        primary = view.bindings["primary"]
        secondary = view.bindings["secondary"]
        dim = self._own_dim[view.id]
        mask = self.engine.selection_mask(exclude=(dim,))
        table = self.bundle.table
        prim, sec = [], []
        for i in range(table.size):
            if mask[i]:
                p = table.value_at(i, primary)
                s = table.value_at(i, secondary)
                prim.append("(missing)" if p is None else p)
                sec.append("(missing)" if s is None else s)
        matrix = stats.stacked_aggregate(prim, sec)
        return {"kind": "stacked_bar", "primary": primary, "secondary": secondary,
                "matrix": matrix, "palette": view.options.get("palette"),
                "filter": self._filter_dict(view)}

    def _payload_scatter(self, view, options):
        state = self.view_state[view.id]
        xcol, ycol = state["x"], state["y"]
        dim = self.engine.key_dimension
        xs = dict(self.engine.values_for(xcol, exclude=(dim,)))
        ys = dict(self.engine.values_for(ycol, exclude=(dim,)))
        points = [[k, xs[k], ys[k]] for k in self.bundle.table.keys if k in xs and k in ys]
        fit = None
        try:
            f = stats.linear_regression([(p[1], p[2]) for p in points])
            fit = {"slope": f.slope, "intercept": f.intercept,
                   "r_squared": f.r_squared, "n": f.n}
        except CoordLensError:
            pass
        selected = sorted(dim.filter.keys) if isinstance(dim.filter, KeyFilter) else None
        return {"kind": "scatter", "x": xcol, "y": ycol, "points": points,
                "fit": fit, "selected": selected}

    def _payload_boxplot(self, view, options):
        value_col = view.bindings["value"]
        by_col = view.bindings.get("by")
        dim = self.engine.key_dimension
        pairs = self.engine.values_for(value_col, exclude=(dim,))
        table = self.bundle.table
        groups = {}
        if by_col:
            for key, value in pairs:
                cat = table.value_at(table.key_index[key], by_col)
                groups.setdefault("(missing)" if cat is None else cat, []).append((key, value))
        else:
            groups[None] = pairs
        out = []
        for cat in sorted(groups, key=lambda c: (c is None, c)):
            members = groups[cat]
            try:
                s = stats.boxplot_stats([v for _, v in members])
            except CoordLensError:
                continue
            outliers = [[k, v] for k, v in members
                        if v < s.min or v > s.max_whisker]
            out.append({"category": cat, "min": s.min, "q1": s.q1, "median": s.median,
                        "q3": s.q3, "max_whisker": s.max_whisker, "outliers": outliers})
        return {"kind": "boxplot", "value": value_col, "by": by_col, "groups": out}

    def _payload_series_chart(self, view, options):
        date_col = view.bindings["date"]
        cat_col = view.bindings["category"]
        value_col = view.bindings.get("value")
        state = self.view_state[view.id]
        reduction = view.options.get("reduction", "mean")
        dim = self._own_dim[view.id]
        mask = self.engine.selection_mask(exclude=(dim,))
        table = self.bundle.table
        buckets, cats, vals = [], [], []
        for i in range(table.size):
            if not mask[i]:
                continue
            d = table.value_at(i, date_col)
            c = table.value_at(i, cat_col)
            if d is None or c is None:
                continue
            buckets.append(stats.time_bucket([d], state["granularity"])[0])
            cats.append(c)
            vals.append(table.value_at(i, value_col) if value_col else None)
        series = stats.series_aggregate(buckets, cats, vals, reduction)
        return {"kind": "series_chart", "date": date_col, "category": cat_col,
                "value": value_col, "reduction": reduction,
                "granularity": state["granularity"],
                "series": {c: [[b, v] for b, v in pts] for c, pts in series.items()},
                "filter": self._filter_dict(view)}

    def _classified(self, view, variable):
        """Breaks over all non-null values of a variable (stable legends)."""
        cache_key = (view.id, variable)
        if cache_key not in self._static_cache:
            table = self.bundle.table
            col = table.column(variable)
            values = [float(v) for v in col.values if not _isnan(v)]
            method = view.options.get("method", DEFAULT_CLASS_METHOD)
            k = int(view.options.get("k", DEFAULT_CLASS_COUNT))
            try:
                breaks = classify(values, method, k)
            except NotEnoughDistinct:
                breaks = None
            self._static_cache[cache_key] = (method, k, breaks)
        return self._static_cache[cache_key]

    def _region_classes(self, view, variable, breaks):
        """Per-feature class assignment under own-filter exclusion."""
        table = self.bundle.table
        dim = self._own_dim[view.id]
        mask = self.engine.selection_mask(exclude=(dim,))
        gid = view.options.get("geometry")
        classes = {}
        values = {}
        for feature in self.bundle.joined.get(gid, []):
            row = table.key_index.get(feature.key)
            if row is None or not mask[row]:
                classes[feature.key] = None
                values[feature.key] = None
                continue
            v = table.value_at(row, variable)
            values[feature.key] = v
            classes[feature.key] = assign_class(v, breaks) if breaks and v is not None else None
        return classes, values

    def _selected_regions(self, view):
        dim = self._own_dim[view.id]
        return sorted(dim.filter.values) if isinstance(dim.filter, SetFilter) else None

    def _payload_choropleth_map(self, view, options):
        variable = self.view_state[view.id]["variable"]
        method, k, breaks = self._classified(view, variable)
        classes, values = self._region_classes(view, variable, breaks)
        return {"kind": "choropleth", "region": view.bindings["region"],
                "geometry": view.options.get("geometry"), "variable": variable,
                "method": method, "k": k,
                "breaks": list(breaks.breaks) if breaks else None,
                "palette": view.options.get("palette"),
                "classes": classes, "values": values,
                "selected": self._selected_regions(view)}

    def _payload_small_multiples(self, view, options):
        state = self.view_state[view.id]
        maps = {}
        for variable in view.options.get("variables", []):
            method, k, breaks = self._classified(view, variable)
            classes, _ = self._region_classes(view, variable, breaks)
            maps[variable] = {"method": method, "k": k,
                              "breaks": list(breaks.breaks) if breaks else None,
                              "classes": classes}
        return {"kind": "small_multiples", "region": view.bindings["region"],
                "geometry": view.options.get("geometry"),
                "projection": state["projection"],
                "palette": view.options.get("palette"),
                "maps": maps, "selected": self._selected_regions(view)}

    def _payload_prop_symbol_map(self, view, options):
        result = self.engine.read_group(self._groups[view.id])
        return {"kind": "prop_symbol", "region": view.bindings["region"],
                "geometry": view.options.get("geometry"),
                "bins": [[k, v] for k, v in result.bins],
                "palette": view.options.get("palette"),
                "selected": self._selected_regions(view)}

    def _payload_marker_map(self, view, options):
        column = view.bindings["point"]
        col = self.bundle.table.column(column)
        mask = self.engine.selection_mask() & ~col.null_mask()
        rows = mask.nonzero()[0]
        limit = int(view.options.get("point_limit", DEFAULT_POINT_LIMIT))
        keys = self.bundle.table.keys
        points = [[keys[i], float(col.lon[i]), float(col.lat[i])] for i in rows[:limit]]
        payload = {"kind": "markers", "point": column,
                   "point_count": int(rows.size), "capped": bool(rows.size > limit),
                   "points": points, "filter": self._filter_dict(view)}
        zoom = options.get("zoom")
        if zoom is not None:
            from .geo import GeoPoint
            radius = float(options.get("radius_px", view.options.get(
                "cluster_radius_px", DEFAULT_CLUSTER_RADIUS_PX)))
            pairs = [(keys[i], GeoPoint(float(col.lon[i]), float(col.lat[i]))) for i in rows]
            out = []
            for c in cluster(pairs, int(zoom), radius):
                entry = {"lon": c.centroid.lon, "lat": c.centroid.lat,
                         "members": list(c.members)}
                if len(c.members) > 1:
                    entry["spiderfy"] = [[dx, dy] for dx, dy in spiderfy(len(c.members))]
                out.append(entry)
            payload["zoom"] = int(zoom)
            payload["clusters"] = out
        return payload

    def _payload_heatmap_layer(self, view, options):
        from .geo import GeoPoint
        column = view.bindings["point"]
        state = self.view_state[view.id]
        mode = options.get("mode", state["mode"])
        cell = float(view.options.get("cell_size_m", 1000.0))
        radius = float(view.options.get("kernel_radius_m", 3000.0))
        weight_col = view.options.get("weight")
        col = self.bundle.table.column(column)

        cache_key = (view.id, "global-grid")
        if mode == "global" and cache_key in self._static_cache:
            grid = self._static_cache[cache_key]
        else:
            if mode == "global":
                mask = ~col.null_mask()
            else:
                mask = self.engine.selection_mask() & ~col.null_mask()
            weights = None
            if weight_col:
                wc = self.bundle.table.column(weight_col)
            pts = []
            for i in mask.nonzero()[0]:
                w = 1.0
                if weight_col:
                    w = wc.values[i]
                    if _isnan(w):
                        continue
                pts.append((GeoPoint(float(col.lon[i]), float(col.lat[i])), float(w)))
            from .heatgrid import heat_grid
            grid = heat_grid(pts, cell, radius, mode=mode)
            if mode == "global":
                self._static_cache[cache_key] = grid
        return {"kind": "heatmap", "point": column, "mode": mode,
                "origin": [grid.origin[0], grid.origin[1]],
                "cell_size_m": grid.cell_size_m,
                "width": grid.width, "height": grid.height,
                "intensities": [[float(v) for v in row] for row in grid.intensities],
                "filter": self._filter_dict(view)}

    def _payload_data_table(self, view, options):
        state = self.view_state[view.id]
        sort = tuple(state["sort"]) if state["sort"] else None
        rows, total = self.engine.records_view(sort=sort, search=state["search"],
                                               page=tuple(state["page"]))
        return {"kind": "table", "rows": rows, "total": total,
                "sort": state["sort"], "search": state["search"],
                "page": list(state["page"])}

    # -- snapshot / restore --------------------------------------------------

    def snapshot(self) -> str:
        filters = []
        for dim_id in sorted(self.engine.dimensions):
            dim = self.engine.dimensions[dim_id]
            if dim.filter is not None:
                filters.append({"dim": dim_id, "filter": filter_to_dict(dim.filter)})
        return dumps_line({
            "bundle_hash": self.bundle.content_hash,
            "revision": self.revision,
            "filters": filters,
            "view_state": self.view_state,
        })


def _adhoc_report(message):
    from .bundle import ValidationReport
    return ValidationReport(errors=[message])


def _normalize_projection(p):
    if isinstance(p, str):
        p = {"kind": p}
    return projection_to_dict(projection_from_dict(p))


def _isnan(v):
    return v != v


def _column_domain(col):
    import numpy as np

    if col.kind == "number":
        finite = col.values[~np.isnan(col.values)]
        if finite.size == 0:
            return None
        return [float(finite.min()), float(finite.max())]
    if col.kind == "date":
        ok = col.values[~np.isnat(col.values)]
        if ok.size == 0:
            return None
        return [str(ok.min()), str(ok.max())]
    return None


def create_session(bundle):
    """Build a session; returns (session, initial notifications)."""
    session = Session(bundle)
    return session, session.initial_notifications()


def restore(bundle, snapshot_line: str) -> Session:
    """Rebuild a session whose queries are byte-identical to the original's."""
    snap = loads_line(snapshot_line) if isinstance(snapshot_line, str) else snapshot_line
    if snap.get("bundle_hash") != bundle.content_hash:
        raise SnapshotMismatch("snapshot was taken against a different bundle")
    session = Session(bundle)
    for entry in snap.get("filters", []):
        dim = session.engine.dimensions.get(entry["dim"])
        if dim is None:
            raise SnapshotMismatch(f"snapshot references unknown dimension {entry['dim']!r}")
        session.engine.set_filter(dim, filter_from_dict(entry["filter"]))
    for view_id, state in snap.get("view_state", {}).items():
        if view_id not in session.view_state:
            raise SnapshotMismatch(f"snapshot references unknown view {view_id!r}")
        session.view_state[view_id].update(state)
    session.revision = int(snap.get("revision", 0))
    session.initial_notifications()  # repopulate the payload cache
    return session
