import json
import os
import socket
import subprocess
import sys
import time

import pytest

from conftest import FIXTURES

CLI = [sys.executable, "-m", "divmeter.cli"]


def run_cli(args, env_extra=None, cwd=None):
    env = dict(os.environ)
    env.setdefault("DIVMETER_VAULT_KEY", "test-vault-key")
    env.update(env_extra or {})
    return subprocess.run(CLI + args, capture_output=True, text=True, env=env, cwd=cwd)


def ingest_toyconf(store_dir, extra=None, env_extra=None):
    args = [
        "ingest",
        "--conference", "toyconf",
        "--year", "2021",
        "--dblp", str(FIXTURES / "toyconf_dblp.xml"),
        "--annotations", str(FIXTURES / "toyconf_annotations.csv"),
        "--affiliations", str(FIXTURES / "toyconf_affiliations.csv"),
        "--registry", str(FIXTURES / "toyconf_registry.csv"),
        "--lexicon", str(FIXTURES / "toyconf_lexicon.csv"),
        "--store", str(store_dir),
    ]
    return run_cli(args + (extra or []), env_extra=env_extra)


class TestIngest:
    def test_fixture_ingest_succeeds(self, tmp_path):
        result = ingest_toyconf(tmp_path / "store")
        assert result.returncode == 0, result.stderr
        assert "author" in result.stdout
        assert "gender=80%" in result.stdout

    def test_missing_registry_is_usage_error(self, tmp_path):
        result = run_cli(
            ["ingest", "--conference", "x", "--year", "2020",
             "--annotations", str(FIXTURES / "toyconf_annotations.csv"),
             "--store", str(tmp_path / "store")]
        )
        assert result.returncode == 1
        assert "registry" in result.stderr

    def test_no_input_files_is_usage_error(self, tmp_path):
        result = run_cli(
            ["ingest", "--conference", "x", "--year", "2020",
             "--registry", str(FIXTURES / "toyconf_registry.csv"),
             "--store", str(tmp_path / "store")]
        )
        assert result.returncode == 1

    def test_malformed_xml_is_parse_fatal(self, tmp_path):
        bad = tmp_path / "bad.xml"
        bad.write_text("<dblp><inproceedings>")
        result = run_cli(
            ["ingest", "--conference", "x", "--year", "2020",
             "--dblp", str(bad),
             "--registry", str(FIXTURES / "toyconf_registry.csv"),
             "--store", str(tmp_path / "store")]
        )
        assert result.returncode == 2
        assert "line" in result.stderr

    def test_locked_vault(self, tmp_path):
        env = dict(os.environ)
        env.pop("DIVMETER_VAULT_KEY", None)
        result = subprocess.run(
            CLI + ["ingest", "--conference", "toyconf", "--year", "2021",
                   "--annotations", str(FIXTURES / "toyconf_annotations.csv"),
                   "--registry", str(FIXTURES / "toyconf_registry.csv"),
                   "--store", str(tmp_path / "store")],
            capture_output=True, text=True, env=env,
        )
        assert result.returncode == 3

    def test_conflicting_manual_labels(self, tmp_path):
        ann = tmp_path / "conflict.csv"
        ann.write_text(
            "conference,year,role,name,affiliation,affiliation2,gender,business,country\n"
            "x,2020,author,Pat Doe,,,woman,,\n"
            "x,2020,keynote,Pat Doe,,,man,,\n"
        )
        result = run_cli(
            ["ingest", "--conference", "x", "--year", "2020",
             "--annotations", str(ann),
             "--registry", str(FIXTURES / "toyconf_registry.csv"),
             "--store", str(tmp_path / "store")]
        )
        assert result.returncode == 4

    def test_skipped_rows_still_exit_zero(self, tmp_path):
        ann = tmp_path / "noisy.csv"
        ann.write_text(
            "conference,year,role,name,affiliation,affiliation2,gender,business,country\n"
            "x,2020,author,Pat Doe,,,woman,,\n"
            "x,2020,emperor,Bad Row,,,,,\n"
        )
        result = run_cli(
            ["ingest", "--conference", "x", "--year", "2020",
             "--annotations", str(ann),
             "--registry", str(FIXTURES / "toyconf_registry.csv"),
             "--store", str(tmp_path / "store")]
        )
        assert result.returncode == 0
        assert "skipped row" in result.stdout


class TestReport:
    def test_json_matches_frozen_fixture(self, tmp_path):
        store = tmp_path / "store"
        assert ingest_toyconf(store).returncode == 0
        result = run_cli(
            ["report", "--conference", "toyconf", "--year", "2021",
             "--store", str(store), "--json"]
        )
        assert result.returncode == 0
        expected = (FIXTURES / "toyconf_report.json").read_text().strip()
        assert result.stdout.strip() == expected

    def test_human_readable(self, tmp_path):
        store = tmp_path / "store"
        ingest_toyconf(store)
        result = run_cli(
            ["report", "--conference", "toyconf", "--year", "2021", "--store", str(store)]
        )
        assert result.returncode == 0
        assert "CDI" in result.stdout

    def test_unknown_edition_exit_5(self, tmp_path):
        store = tmp_path / "store"
        ingest_toyconf(store)
        result = run_cli(
            ["report", "--conference", "toyconf", "--year", "1999", "--store", str(store)]
        )
        assert result.returncode == 5


class TestExport:
    def test_export_snapshot(self, tmp_path):
        store = tmp_path / "store"
        ingest_toyconf(store)
        out = tmp_path / "snapshot.json"
        result = run_cli(["export", "--store", str(store), "--out", str(out)])
        assert result.returncode == 0
        snapshot = json.loads(out.read_text())
        assert "toyconf-2021" in snapshot["editions"]
        text = out.read_text().casefold()
        for fragment in ("alice smith", "grace hopper", "kate bell"):
            assert fragment not in text

    def test_export_empty_store(self, tmp_path):
        result = run_cli(
            ["export", "--store", str(tmp_path / "store"), "--out", str(tmp_path / "s.json")]
        )
        assert result.returncode == 0
        assert json.loads((tmp_path / "s.json").read_text())["editions"] == {}


def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class TestServe:
    def test_serve_and_fetch(self, tmp_path):
        store = tmp_path / "store"
        ingest_toyconf(store)
        port = _free_port()
        env = dict(os.environ, DIVMETER_VAULT_KEY="test-vault-key")
        proc = subprocess.Popen(
            CLI + ["serve", "--listen", f"127.0.0.1:{port}", "--store", str(store)],
            env=env, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
        )
        try:
            import urllib.request

            deadline = time.time() + 10
            body = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(
                        f"http://127.0.0.1:{port}/api/conferences", timeout=1
                    ) as response:
                        body = json.loads(response.read())
                        break
                except Exception:
                    time.sleep(0.15)
            assert body is not None, "server never came up"
            assert body[0]["slug"] == "toyconf"
        finally:
            proc.terminate()
            proc.wait(timeout=10)

    def test_bind_conflict_exit_6(self, tmp_path):
        port = _free_port()
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", port))
        blocker.listen(1)
        try:
            result = run_cli(
                ["serve", "--listen", f"127.0.0.1:{port}", "--store", str(tmp_path / "s")]
            )
            assert result.returncode == 6
        finally:
            blocker.close()
