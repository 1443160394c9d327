"""Driving a full session: commands in, coordinated notifications out.

Generates the synthetic sample-tracking bundle, opens a session on it,
and pushes the same commands a UI would send: chart clicks, a spatial
selection, a table row click, dropdown switches, and reset-all.  Every
state change yields one status update plus a view update per affected
view, all stamped with the new revision.
"""

import tempfile
from pathlib import Path

from coordlens import create_session, load_bundle, restore
from coordlens.synth import pathogen_bundle
from coordlens.wire import dumps_line

workdir = Path(tempfile.mkdtemp(prefix="coordlens-demo-"))
manifest = pathogen_bundle(workdir / "pathogen")
print("bundle written to", manifest.parent)

bundle = load_bundle(manifest)
session, notes = create_session(bundle)
print(f"\nsession open: {notes[0]['selected']} selected out of {notes[0]['total']} records")
print(f"initial payloads for {len(notes) - 1} views")


def send(command):
    out = session.dispatch(command)
    status = out[0]
    if status["event"] == "error":
        print(f"  !! {status['code']}: {status['message']}")
        return out
    updated = [n["view"] for n in out[1:]]
    print(f"  rev {status['revision']}: {status['selected']} selected; "
          f"{len(updated)} views re-rendered")
    return out


print("\nclick the Positive slice of the result donut:")
send({"cmd": "set_filter", "view": "result_donut",
      "filter": {"type": "set", "values": ["Positive"]}})

print("brush the collection years 2005-2015:")
send({"cmd": "set_filter", "view": "date_slider",
      "filter": {"type": "range", "lo": "2005-01-01", "hi": "2015-01-01"}})

print("draw a 120 km circle on the marker map:")
send({"cmd": "spatial_select", "map": "sample_map",
      "geometry": {"type": "circle", "center": [-79.5, 9.0], "radius_m": 120000}})

print("filter body parts to records containing liver:")
send({"cmd": "set_filter", "view": "part_row",
      "filter": {"type": "tag_any", "values": ["liver"]}})

print("click a data-table row (single-record focus):")
send({"cmd": "row_click", "key": "MSB00042"})
print("click it again to release:")
send({"cmd": "row_click", "key": "MSB00042"})

print("ask the marker map for clusters at zoom 8:")
out = session.dispatch({"cmd": "query_view", "view": "sample_map",
                        "options": {"zoom": 8}})
clusters = out[0]["payload"]["clusters"]
print(f"  {len(clusters)} clusters; largest holds "
      f"{max(len(c['members']) for c in clusters)} records")

print("\nsnapshot, then restore a twin session from it:")
snap = session.snapshot()
twin = restore(load_bundle(manifest), snap)
a = session.dispatch({"cmd": "query_status"})[0]
b = twin.dispatch({"cmd": "query_status"})[0]
print("  twin answers byte-identically:", dumps_line(a) == dumps_line(b))

print("\nreset all:")
send({"cmd": "clear_all"})

print("\nwire form of the last notification:")
print(" ", dumps_line(session.dispatch({"cmd": "query_status"})[0]))
