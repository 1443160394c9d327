import http.client
import json
import socket
import subprocess
import sys
import time
from pathlib import Path

import pytest

from _oracles import exhaustive_jenks

CLI = [sys.executable, "-m", "coordlens.cli"]


def run_cli(*args, stdin=None):
    return subprocess.run(CLI + list(args), capture_output=True, text=True, input=stdin)


@pytest.fixture(scope="module")
def mini_bundle(tmp_path_factory):
    """Six regions with hand-picked values for exhaustive-oracle checks."""
    root = tmp_path_factory.mktemp("mini")
    (root / "data").mkdir()
    (root / "geo").mkdir()
    rows = ["id,score,lon,lat"]
    values = [1, 2, 3, 10, 11, 12]
    features = []
    for i, v in enumerate(values):
        rows.append(f"R{i},{v},{float(i)},{0.5}")
        features.append({
            "type": "Feature", "properties": {"id": f"R{i}"},
            "geometry": {"type": "Polygon", "coordinates": [[
                [i, 0], [i + 1, 0], [i + 1, 1], [i, 1], [i, 0]]]}})
    (root / "data" / "regions.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    (root / "geo" / "regions.geojson").write_text(json.dumps(
        {"type": "FeatureCollection", "features": features}), encoding="utf-8")
    manifest = {
        "layout": "single_map",
        "data": [{"path": "data/regions.csv", "key": "id",
                  "schema": {"id": "text", "score": "number",
                             "lon": "number", "lat": "number"},
                  "points": {"loc": ["lon", "lat"]}}],
        "geometry": [{"id": "regions", "path": "geo/regions.geojson",
                      "key_property": "id"}],
        "joins": [{"geometry": "regions", "key": "id"}],
        "views": [
            {"id": "status", "kind": "status_bar"},
            {"id": "map", "kind": "choropleth_map", "bindings": {"region": "id"},
             "options": {"geometry": "regions", "variables": ["score"],
                         "method": "jenks", "k": 2}},
            {"id": "heat", "kind": "heatmap_layer", "bindings": {"point": "loc"},
             "options": {"cell_size_m": 20000, "kernel_radius_m": 60000}},
            {"id": "table", "kind": "data_table", "options": {}},
        ],
    }
    (root / "app.config.json").write_text(json.dumps(manifest), encoding="utf-8")
    return root


class TestValidate:
    def test_valid_bundle_exits_zero(self, pathogen_bundle_path):
        out = run_cli("validate", str(pathogen_bundle_path.parent))
        assert out.returncode == 0
        assert "0 errors" in out.stdout

    def test_broken_bundle_exits_one(self, tmp_path):
        (tmp_path / "d.csv").write_text("id\nr1\n", encoding="utf-8")
        manifest = {"layout": "single_map",
                    "data": [{"path": "d.csv", "key": "id", "schema": {"id": "text"}}],
                    "views": [{"id": "m", "kind": "choropleth_map",
                               "bindings": {"region": "id"},
                               "options": {"geometry": "g", "variables": []}}]}
        (tmp_path / "app.config.json").write_text(json.dumps(manifest), encoding="utf-8")
        out = run_cli("validate", str(tmp_path))
        assert out.returncode == 1
        assert "error" in out.stdout

    def test_missing_path_exits_two(self):
        out = run_cli("validate", "/definitely/not/here")
        assert out.returncode == 2


class TestQuery:
    def test_empty_script_emits_initial_set(self, mini_bundle):
        out = run_cli("query", str(mini_bundle), stdin="")
        assert out.returncode == 0
        first = json.loads(out.stdout.splitlines()[0])
        assert first == {"event": "status", "revision": 0, "selected": 6, "total": 6}

    def test_expect_pass_and_fail(self, mini_bundle, tmp_path):
        script = tmp_path / "s.jsonl"
        script.write_text('{"expect":{"selected":6}}\n', encoding="utf-8")
        assert run_cli("query", str(mini_bundle), str(script)).returncode == 0
        script.write_text('{"expect":{"selected":5}}\n', encoding="utf-8")
        out = run_cli("query", str(mini_bundle), str(script))
        assert out.returncode == 1
        assert '"ok":false' in out.stdout

    def test_unknown_view_is_error_line_and_exit_one(self, mini_bundle, tmp_path):
        script = tmp_path / "s.jsonl"
        script.write_text('{"cmd":"set_filter","view":"ghost","filter":null}\n',
                          encoding="utf-8")
        out = run_cli("query", str(mini_bundle), str(script))
        assert out.returncode == 1
        assert '"code":"UnknownView"' in out.stdout

    def test_byte_identical_across_runs(self, mini_bundle, tmp_path):
        script = tmp_path / "s.jsonl"
        script.write_text(
            '{"cmd":"set_filter","view":"map","filter":{"type":"set","values":["R0","R3"]}}\n'
            '{"expect":{"selected":2}}\n'
            '{"cmd":"query_table","sort":["score","desc"],"page":[0,3]}\n',
            encoding="utf-8")
        a = run_cli("query", str(mini_bundle), str(script))
        b = run_cli("query", str(mini_bundle), str(script))
        assert a.returncode == 0
        assert a.stdout == b.stdout


class TestClassify:
    def test_jenks_matches_exhaustive_oracle(self, mini_bundle):
        out = run_cli("classify", str(mini_bundle), "map", "--method", "jenks", "--k", "2")
        assert out.returncode == 0
        doc = json.loads(out.stdout)
        want, _ = exhaustive_jenks([1, 2, 3, 10, 11, 12], 2)
        assert tuple(doc["breaks"]) == want
        assert doc["classes"] == {"R0": 0, "R1": 0, "R2": 0, "R3": 1, "R4": 1, "R5": 1}

    def test_unknown_map_exits_one(self, mini_bundle):
        assert run_cli("classify", str(mini_bundle), "ghost").returncode == 1

    def test_not_enough_distinct_exits_one(self, tmp_path):
        (tmp_path / "d.csv").write_text("id,v\nr1,5\nr2,5\nr3,5\n", encoding="utf-8")
        manifest = {"layout": "single_map",
                    "data": [{"path": "d.csv", "key": "id",
                              "schema": {"id": "text", "v": "number"}}],
                    "geometry": [],
                    "views": [{"id": "m", "kind": "choropleth_map",
                               "bindings": {"region": "id"},
                               "options": {"geometry": None, "variables": ["v"]}}]}
        (tmp_path / "app.config.json").write_text(json.dumps(manifest), encoding="utf-8")
        out = run_cli("classify", str(tmp_path), "m", "--method", "jenks", "--k", "2")
        assert out.returncode == 1


class TestHeatgrid:
    def test_grid_sum_equals_point_count(self, mini_bundle):
        out = run_cli("heatgrid", str(mini_bundle), "heat")
        assert out.returncode == 0
        lines = out.stdout.splitlines()
        total = sum(float(v) for line in lines[2:] for v in line.split(","))
        assert abs(total - 6.0) < 1e-6

    def test_cell_and_radius_flags(self, mini_bundle):
        out = run_cli("heatgrid", str(mini_bundle), "heat",
                      "--cell", "50000", "--radius", "100000")
        assert out.returncode == 0
        meta = out.stdout.splitlines()[1].split(",")
        assert float(meta[2]) == 50000

    def test_unknown_map_exits_one(self, mini_bundle):
        assert run_cli("heatgrid", str(mini_bundle), "ghost").returncode == 1


class TestBench:
    def test_reports_samples(self):
        out = run_cli("bench", "--records", "500", "--ops", "20", "--seed", "3")
        assert out.returncode == 0
        doc = json.loads(out.stdout)
        assert doc["all_commands"]["count"] == 20
        assert doc["groups"] == 8

    def test_seed_reproducible_command_log(self):
        a = json.loads(run_cli("bench", "--records", "300", "--ops", "15",
                               "--seed", "9").stdout)
        b = json.loads(run_cli("bench", "--records", "300", "--ops", "15",
                               "--seed", "9").stdout)
        assert a["command_log_sha256"] == b["command_log_sha256"]

    def test_env_seed_overrides(self):
        import os
        env = dict(os.environ, COORDLENS_SEED="9")
        out = subprocess.run(CLI + ["bench", "--records", "300", "--ops", "15",
                                    "--seed", "1"],
                             capture_output=True, text=True, env=env)
        doc = json.loads(out.stdout)
        assert doc["seed"] == 9


def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class TestServe:
    def test_serves_bundle_files(self, mini_bundle):
        port = _free_port()
        proc = subprocess.Popen(CLI + ["serve", str(mini_bundle), "--port", str(port)],
                                stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        try:
            deadline = time.time() + 10
            while time.time() < deadline:
                try:
                    conn = http.client.HTTPConnection("127.0.0.1", port, timeout=1)
                    conn.request("GET", "/app.config.json")
                    resp = conn.getresponse()
                    break
                except OSError:
                    time.sleep(0.05)
            else:
                pytest.fail("server did not come up")
            assert resp.status == 200
            assert resp.getheader("Content-Type").startswith("application/json")
            body = resp.read()
            assert body == (Path(mini_bundle) / "app.config.json").read_bytes()

            conn = http.client.HTTPConnection("127.0.0.1", port, timeout=2)
            conn.request("GET", "/missing.txt")
            assert conn.getresponse().status == 404

            second = run_cli("serve", str(mini_bundle), "--port", str(port))
            assert second.returncode == 2
        finally:
            proc.terminate()
            proc.wait(timeout=5)

    def test_missing_dir_exits_two(self):
        assert run_cli("serve", "/no/such/dir").returncode == 2
