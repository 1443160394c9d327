"""Developer CLI: validate bundles, run filter scripts, benchmark, export artifacts.

Exit codes follow one rule everywhere: 0 success, 1 domain failure
(validation errors, failed expectations, unknown views), 2 environment
failure (unreadable paths, occupied ports).  All data output goes to
stdout as JSON lines or CSV; logs go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import statistics
import sys
import time
from pathlib import Path

from .bundle import load_bundle, validate_bundle
from .classify import assign_class, classify
from .errors import CoordLensError, NotEnoughDistinct
from .session import create_session
from .wire import dumps_line

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_ENV = 2


def main(argv=None):
    parser = argparse.ArgumentParser(prog="coordlens",
                                     description="coordinated-view geovisualization engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a bundle and print its report")
    p.add_argument("bundle")

    p = sub.add_parser("query", help="run a filter script against a bundle session")
    p.add_argument("bundle")
    p.add_argument("script", nargs="?", help="JSON-lines command script (default: stdin)")

    p = sub.add_parser("bench", help="time random filter commands on a synthetic session")
    p.add_argument("bundle", nargs="?", help="optional bundle to bench instead of synthetic data")
    p.add_argument("--records", type=int, default=10000)
    p.add_argument("--ops", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("classify", help="export choropleth breaks and per-feature classes")
    p.add_argument("bundle")
    p.add_argument("map_id")
    p.add_argument("--method", choices=("equal_interval", "quantile", "jenks"))
    p.add_argument("--k", type=int)
    p.add_argument("--variable")

    p = sub.add_parser("heatgrid", help="export a heat grid as CSV")
    p.add_argument("bundle")
    p.add_argument("map_id")
    p.add_argument("--cell", type=float, help="cell size in meters")
    p.add_argument("--radius", type=float, help="kernel radius in meters")
    p.add_argument("--mode", choices=("global", "local"), default="global")

    p = sub.add_parser("serve", help="serve a built app directory over HTTP")
    p.add_argument("app_dir")
    p.add_argument("--port", type=int, default=83670)

    p = sub.add_parser("synth", help="write a synthetic example bundle")
    p.add_argument("kind", choices=("tracts", "crashes", "pathogen"))
    p.add_argument("out_dir")
    p.add_argument("--seed", type=int)
    p.add_argument("--records", type=int)

    args = parser.parse_args(argv)
    handler = globals()[f"cmd_{args.command}"]
    try:
        code = handler(args)
        sys.stdout.flush()
        return code
    except BrokenPipeError:
        # downstream pipe closed early (e.g. | head); suppress shutdown noise
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


def _load(bundle_path):
    path = Path(bundle_path)
    manifest = path / "app.config.json" if path.is_dir() else path
    if not manifest.is_file():
        print(f"coordlens: cannot read {manifest}", file=sys.stderr)
        return None
    try:
        return load_bundle(manifest)
    except (OSError, json.JSONDecodeError) as e:
        print(f"coordlens: cannot load {manifest}: {e}", file=sys.stderr)
        return None


def cmd_validate(args):
    bundle = _load(args.bundle)
    if bundle is None:
        return EXIT_ENV
    report = validate_bundle(bundle)
    for line in report.lines():
        print(line)
    print(f"{len(report.errors)} errors, {len(report.warnings)} warnings")
    return EXIT_OK if report.ok() else EXIT_DOMAIN


def cmd_query(args):
    bundle = _load(args.bundle)
    if bundle is None:
        return EXIT_ENV
    if args.script is None:
        script_lines = sys.stdin.read().splitlines()
    else:
        script = Path(args.script)
        if not script.is_file():
            print(f"coordlens: cannot read {script}", file=sys.stderr)
            return EXIT_ENV
        script_lines = script.read_text(encoding="utf-8").splitlines()

    try:
        session, notifications = create_session(bundle)
    except CoordLensError as e:
        print(dumps_line({"event": "error", "code": e.code, "message": str(e)}))
        return EXIT_DOMAIN

    failed = False
    last_status = notifications[0]
    for note in notifications:
        print(dumps_line(note))

    for raw in script_lines:
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        try:
            msg = json.loads(raw)
        except json.JSONDecodeError as e:
            print(dumps_line({"event": "error", "code": "BadCommand", "message": str(e)}))
            failed = True
            continue
        if "expect" in msg:
            want = msg["expect"]
            got = {k: last_status.get(k) for k in want}
            ok = got == want
            print(dumps_line({"event": "expect", "ok": ok, "want": want, "got": got}))
            failed = failed or not ok
            continue
        for note in session.dispatch(msg):
            print(dumps_line(note))
            if note.get("event") == "status":
                last_status = note
            if note.get("event") == "error":
                failed = True
    return EXIT_DOMAIN if failed else EXIT_OK


def _bench_session(records, seed):
    """In-memory crash-schema session with 8 registered groups."""
    from .bundle import AppBundle, ViewSpec
    from .synth import CRASH_SCHEMA, crash_rows
    from .table import build_table

    rows = crash_rows(records, seed)
    header = ["crash_id", "crash_date", "longitude", "latitude", "severity", "city",
              "alcohol_involved", "drug_involved", "pedestrian_involved",
              "bicycle_involved", "vehicles"]
    dict_rows = []
    for r in rows:
        d = dict(zip(header, r))
        d["longitude"] = float(d["longitude"])
        d["latitude"] = float(d["latitude"])
        d["loc"] = (d["longitude"], d["latitude"])
        dict_rows.append(d)
    columns = list(CRASH_SCHEMA.items()) + [("loc", "point")]
    table = build_table(columns, dict_rows, "crash_id")

    views = [ViewSpec("status", "status_bar", {}, {}),
             ViewSpec("date_slider", "date_slider", {"column": "crash_date"},
                      {"granularity": "month"}),
             ViewSpec("vehicles_hist", "histogram", {"column": "vehicles"},
                      {"bin_width": 1, "origin": 0})]
    for col in ("severity", "city", "alcohol_involved", "drug_involved",
                "pedestrian_involved", "bicycle_involved"):
        views.append(ViewSpec(f"{col}_row", "row_chart", {"column": col}, {}))

    bundle = AppBundle(root=Path("."), manifest={}, layout="single_map", views=views,
                       palettes={}, table=table, features={}, joined={},
                       load_errors=[], load_warnings=[], content_hash=f"bench-{seed}")
    session, _ = create_session(bundle)
    return session


def _bench_commands(ops, seed):
    import random

    rng = random.Random(seed)
    cats = {"severity_row": ["Injury", "Fatal"],
            "city_row": ["Albuquerque", "Rio Rancho", "Los Ranchos", "Tijeras"],
            "alcohol_involved_row": ["Yes", "No"],
            "drug_involved_row": ["Yes", "No"],
            "pedestrian_involved_row": ["Yes", "No"],
            "bicycle_involved_row": ["Yes", "No"]}
    commands = []
    for _ in range(ops):
        roll = rng.random()
        if roll < 0.45:
            a = rng.randint(0, 5113 - 365)
            b = a + rng.randint(30, 365 * 3)
            from .synth import _date_from_epoch_days
            commands.append({"cmd": "set_filter", "view": "date_slider",
                             "filter": {"type": "range",
                                        "lo": _date_from_epoch_days(a),
                                        "hi": _date_from_epoch_days(b)}})
        elif roll < 0.6:
            lo = rng.randint(1, 3)
            commands.append({"cmd": "set_filter", "view": "vehicles_hist",
                             "filter": {"type": "range", "lo": lo, "hi": lo + rng.randint(1, 2)}})
        elif roll < 0.9:
            view = rng.choice(sorted(cats))
            values = rng.sample(cats[view], rng.randint(1, len(cats[view]) - 1)
                                if len(cats[view]) > 1 else 1)
            commands.append({"cmd": "set_filter", "view": view,
                             "filter": {"type": "set", "values": sorted(values)}})
        elif roll < 0.97:
            view = rng.choice(sorted(cats) + ["date_slider", "vehicles_hist"])
            commands.append({"cmd": "clear_filter", "view": view})
        else:
            commands.append({"cmd": "clear_all"})
    return commands


def cmd_bench(args):
    seed = int(os.environ.get("COORDLENS_SEED", args.seed))
    if args.bundle:
        bundle = _load(args.bundle)
        if bundle is None:
            return EXIT_ENV
        session, _ = create_session(bundle)
        records = bundle.table.size
    else:
        session = _bench_session(args.records, seed)
        records = args.records

    commands = _bench_commands(args.ops, seed)
    log_hash = hashlib.sha256(
        "\n".join(dumps_line(c) for c in commands).encode()).hexdigest()

    timings = []
    range_timings = []
    for command in commands:
        t0 = time.perf_counter()
        session.dispatch(command)
        dt = (time.perf_counter() - t0) * 1000.0
        timings.append(dt)
        if command["cmd"] == "set_filter" and command["filter"]["type"] == "range":
            range_timings.append(dt)

    def stats_of(xs):
        if not xs:
            return None
        xs = sorted(xs)
        return {"count": len(xs),
                "median_ms": round(statistics.median(xs), 3),
                "p95_ms": round(xs[min(len(xs) - 1, int(0.95 * len(xs)))], 3),
                "max_ms": round(xs[-1], 3)}

    print(json.dumps({
        "records": records,
        "ops": args.ops,
        "seed": seed,
        "groups": len(session.engine.groups),
        "command_log_sha256": log_hash,
        "all_commands": stats_of(timings),
        "range_filter": stats_of(range_timings),
    }, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_classify(args):
    bundle = _load(args.bundle)
    if bundle is None:
        return EXIT_ENV
    view = bundle.view(args.map_id)
    if view is None or view.kind not in ("choropleth_map", "small_multiples"):
        print(f"coordlens: {args.map_id!r} is not a classified map view", file=sys.stderr)
        return EXIT_DOMAIN
    variable = args.variable or view.options["variables"][0]
    if variable not in (view.options.get("variables") or []):
        print(f"coordlens: {variable!r} is not a variable of {args.map_id!r}", file=sys.stderr)
        return EXIT_DOMAIN
    method = args.method or view.options.get("method", "quantile")
    k = args.k or int(view.options.get("k", 5))

    col = bundle.table.column(variable)
    values = [float(v) for v in col.values if v == v]
    try:
        breaks = classify(values, method, k)
    except (NotEnoughDistinct, ValueError) as e:
        print(f"coordlens: {e}", file=sys.stderr)
        return EXIT_DOMAIN

    gid = view.options.get("geometry")
    classes = {}
    features = bundle.joined.get(gid) or bundle.features.get(gid) or []
    for feature in features:
        row = bundle.table.key_index.get(feature.key)
        v = bundle.table.value_at(row, variable) if row is not None else None
        classes[str(feature.key)] = assign_class(v, breaks) if v is not None else None
    print(dumps_line({"map": args.map_id, "variable": variable, "method": method,
                      "k": k, "breaks": list(breaks.breaks), "classes": classes}))
    return EXIT_OK


def cmd_heatgrid(args):
    bundle = _load(args.bundle)
    if bundle is None:
        return EXIT_ENV
    view = bundle.view(args.map_id)
    if view is None or view.kind != "heatmap_layer":
        print(f"coordlens: {args.map_id!r} is not a heatmap layer", file=sys.stderr)
        return EXIT_DOMAIN
    if args.cell:
        view.options["cell_size_m"] = args.cell
    if args.radius:
        view.options["kernel_radius_m"] = args.radius
    try:
        session, _ = create_session(bundle)
    except CoordLensError as e:
        print(f"coordlens: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    notes = session.dispatch({"cmd": "query_heatmap", "map": args.map_id,
                              "mode": args.mode})
    payload = notes[0].get("payload")
    if payload is None:
        print(f"coordlens: {notes[0].get('message')}", file=sys.stderr)
        return EXIT_DOMAIN
    print("origin_x,origin_y,cell_size_m,width,height,mode")
    print(f"{payload['origin'][0]:.9g},{payload['origin'][1]:.9g},"
          f"{payload['cell_size_m']:.9g},{payload['width']},{payload['height']},"
          f"{payload['mode']}")
    for row in payload["intensities"]:
        print(",".join(f"{v:.9g}" for v in row))
    return EXIT_OK


def cmd_serve(args):
    import functools
    import http.server

    app_dir = Path(args.app_dir)
    if not app_dir.is_dir():
        print(f"coordlens: not a directory: {app_dir}", file=sys.stderr)
        return EXIT_ENV
    handler = functools.partial(http.server.SimpleHTTPRequestHandler,
                                directory=str(app_dir))
    try:
        server = http.server.ThreadingHTTPServer(("127.0.0.1", args.port), handler)
    except OSError as e:
        print(f"coordlens: cannot bind port {args.port}: {e}", file=sys.stderr)
        return EXIT_ENV
    print(f"serving {app_dir} at http://127.0.0.1:{args.port}/", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def cmd_synth(args):
    from . import synth

    generator = synth.GENERATORS[args.kind]
    kwargs = {}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.records is not None and args.kind == "crashes":
        kwargs["n"] = args.records
    path = generator(Path(args.out_dir), **kwargs)
    print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
