"""Authoring app bundles: data sources, geometry joins, and validation.

Builds the 612-tract bundle (two CSVs merged on the tract id, one
GeoJSON layer, three dropdown-driven choropleth maps plus charts), then
shows what the validator reports for a healthy and a broken manifest.
"""

import json
import tempfile
from pathlib import Path

from coordlens import load_bundle, validate_bundle
from coordlens.synth import tract_bundle

workdir = Path(tempfile.mkdtemp(prefix="coordlens-demo-"))
manifest_path = tract_bundle(workdir / "tracts")
bundle = load_bundle(manifest_path)

print("bundle:", bundle.manifest["name"])
print("layout:", bundle.layout)
print("table:", bundle.table.size, "rows,",
      len(bundle.table.column_specs), "columns merged from",
      len(bundle.manifest["data"]), "CSVs")
print("features:", {gid: len(f) for gid, f in bundle.features.items()})
joined = bundle.joined["tracts"]
print("join: all", sum(f.matched for f in joined), "features matched")

report = validate_bundle(bundle)
print("\nvalidation:", len(report.errors), "errors,", len(report.warnings), "warnings")

print("\nviews:")
for v in bundle.views:
    extras = ""
    if "variables" in v.options:
        extras = f" variables={v.options['variables']}"
    print(f"  {v.id:>16} {v.kind}{extras}")

# Break the manifest on purpose: a choropleth with no variables and a
# binding to a column that does not exist.
doc = json.loads(manifest_path.read_text(encoding="utf-8"))
doc["views"][1]["options"]["variables"] = []
doc["views"][7]["bindings"]["column"] = "not_a_column"
broken_dir = workdir / "broken"
broken_dir.mkdir()
(broken_dir / "data").symlink_to(manifest_path.parent / "data")
(broken_dir / "geo").symlink_to(manifest_path.parent / "geo")
(broken_dir / "app.config.json").write_text(json.dumps(doc), encoding="utf-8")

broken_report = validate_bundle(load_bundle(broken_dir))
print("\nbroken manifest reports:")
for line in broken_report.lines():
    print(" ", line)
