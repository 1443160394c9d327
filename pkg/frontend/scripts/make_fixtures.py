#!/usr/bin/env python3
"""Regenerate the engine fixtures the UI tests replay.

Writes a compact 48-tract bundle under fixtures/bundle/, then drives the
exact command sequence the scripted UI session emits and records every
notification per step. Also dumps projection goldens so the client-side
SVG projection math can be checked against the engine's.

Run from frontend/: python3 scripts/make_fixtures.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

from coordlens.bundle import load_bundle
from coordlens.geo import GeoPoint
from coordlens.projections import (
    AlbersConic,
    Equirectangular,
    SphericalMercator,
    Stereographic,
    project_forward,
    projection_to_dict,
)
from coordlens.session import create_session
from coordlens.synth import tract_bundle
from coordlens.wire import canon

FRONTEND = Path(__file__).resolve().parent.parent
FIXTURES = FRONTEND / "fixtures"

# The UI test drives these gestures; the commands here are what the
# gesture layer must emit, verified one-for-one during the test.
# reset-all comes before any render-state change (variable, projection,
# heatmap mode, table state) so the post-reset payloads must equal the
# initial ones byte-for-byte.
COMMANDS = [
    {"cmd": "set_filter", "view": "poverty_hist",
     "filter": {"type": "range", "lo": 10, "hi": 30}},
    {"cmd": "set_filter", "view": "map_svi",
     "filter": {"type": "set", "values": ["35001000003"]}},
    {"cmd": "set_filter", "view": "map_svi",
     "filter": {"type": "set", "values": ["35001000003", "35001000007"]}},
    {"cmd": "row_click", "key": "35001000001"},
    {"cmd": "row_click", "key": "35001000001"},
    {"cmd": "spatial_select", "map": "centroid_map",
     "geometry": {"type": "bbox", "west": -107.5, "south": 32.0,
                  "east": -104.5, "north": 36.0}},
    {"cmd": "clear_all"},
    {"cmd": "set_variable", "map": "map_climate", "column": "poverty_rate"},
    {"cmd": "set_projection", "view": "multiples",
     "projection": {"kind": "albers_conic"}},
    {"cmd": "query_heatmap", "map": "density", "mode": "local"},
    {"cmd": "query_table", "sort": ["poverty_rate", "desc"], "search": "",
     "page": [0, 10]},
]


def main():
    bundle_dir = FIXTURES / "bundle"
    if bundle_dir.exists():
        shutil.rmtree(bundle_dir)
    manifest = tract_bundle(bundle_dir, n=48)
    bundle = load_bundle(manifest)

    session, initial = create_session(bundle)
    steps = []
    for command in COMMANDS:
        notifications = session.dispatch(command)
        steps.append({"command": command, "notifications": canon(notifications)})

    doc = {"initial": canon(initial), "steps": steps}
    (FIXTURES / "session.json").write_text(
        json.dumps(doc, sort_keys=True, separators=(",", ":")), encoding="utf-8")

    # Cross-check: the same command log replayed headlessly through the
    # CLI must emit exactly the notifications recorded above.
    with tempfile.NamedTemporaryFile("w", suffix=".jsonl", delete=False) as fh:
        fh.write("\n".join(json.dumps(c) for c in COMMANDS) + "\n")
        script_path = fh.name
    out = subprocess.run([sys.executable, "-m", "coordlens.cli", "query",
                          str(bundle_dir), script_path],
                         capture_output=True, text=True, check=True)
    replayed = [json.loads(line) for line in out.stdout.splitlines()]
    recorded = list(doc["initial"]) + [n for s in steps for n in s["notifications"]]
    assert replayed == recorded, "CLI replay diverged from recorded session"
    Path(script_path).unlink()

    goldens = []
    samples = [(-106.65, 35.08), (0.0, 0.0), (-96.0, 37.5), (20.0, 60.0), (-150.0, -45.0)]
    for spec in (SphericalMercator(), Equirectangular(standard_parallel=10),
                 AlbersConic(), Stereographic(origin_lat=90, origin_lon=0)):
        for lon, lat in samples:
            x, y = project_forward(spec, GeoPoint(lon, lat))
            goldens.append({"projection": projection_to_dict(spec),
                            "lon": lon, "lat": lat, "x": x, "y": y})
    (FIXTURES / "projection_golden.json").write_text(
        json.dumps(canon(goldens), sort_keys=True, separators=(",", ":")),
        encoding="utf-8")

    print(f"wrote {FIXTURES / 'session.json'} ({len(steps)} steps) "
          f"and projection goldens")
    return 0


if __name__ == "__main__":
    sys.exit(main())
