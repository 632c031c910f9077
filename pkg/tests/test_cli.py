import json
import os
import signal
import socket
import subprocess
import sys
import time
import urllib.request
from pathlib import Path

import pytest

from postural.cli import main
from postural.store.container import unwrap


def run_cli(*argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    return code or 0


@pytest.fixture
def records_db(tmp_path, fixtures_dir):
    out = tmp_path / "records.db"
    assert run_cli("ingest", "--feed",
                   str(fixtures_dir / "feeds" / "fixture-nvd11.json"),
                   "--out", str(out)) == 0
    return out


class TestIngest:
    def test_single_feed_summary(self, tmp_path, fixtures_dir, capsys):
        out = tmp_path / "records.db"
        code = run_cli("ingest", "--feed",
                       str(fixtures_dir / "feeds" / "single_entry_11.json"),
                       "--out", str(out))
        assert code == 0
        assert "parsed 1 record" in capsys.readouterr().out
        assert out.exists()

    def test_gzip_feed_matches_plain(self, tmp_path, fixtures_dir):
        plain, packed = tmp_path / "a.db", tmp_path / "b.db"
        run_cli("ingest", "--feed", str(fixtures_dir / "feeds" / "fixture-nvd11.json"),
                "--out", str(plain))
        run_cli("ingest", "--feed", str(fixtures_dir / "feeds" / "fixture-nvd11.json.gz"),
                "--out", str(packed))
        assert plain.read_bytes() == packed.read_bytes()

    def test_missing_feed_exits_2(self, tmp_path):
        assert run_cli("ingest", "--feed", "/no/such.json",
                       "--out", str(tmp_path / "r.db")) == 2

    def test_malformed_feed_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"CVE_Items": [')
        code = run_cli("ingest", "--feed", str(bad), "--out", str(tmp_path / "r.db"))
        assert code == 2
        assert "byte" in capsys.readouterr().err

    def test_usage_error_exits_64(self):
        assert run_cli("ingest", "--out", "somewhere.db") == 64


class TestTrainEmbeddings:
    def test_deterministic_model_files(self, tmp_path, fixtures_dir, records_db):
        args = ("train-embeddings", "--records", str(records_db),
                "--corpus", str(fixtures_dir / "corpus"),
                "--dim", "8", "--window", "2", "--epochs", "2", "--seed", "7")
        m1, m2 = tmp_path / "m1.pvec", tmp_path / "m2.pvec"
        assert run_cli(*args, "--out", str(m1)) == 0
        assert run_cli(*args, "--out", str(m2)) == 0
        assert m1.read_bytes() == m2.read_bytes()

    def test_loss_printed_and_decreasing(self, tmp_path, fixtures_dir, records_db, capsys):
        out = tmp_path / "m.pvec"
        code = run_cli("train-embeddings", "--records", str(records_db),
                       "--corpus", str(fixtures_dir / "corpus"),
                       "--dim", "16", "--window", "2", "--epochs", "10",
                       "--seed", "3", "--out", str(out))
        assert code == 0
        lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("epoch")]
        assert len(lines) == 10
        losses = [float(l.rsplit(" ", 1)[1]) for l in lines]
        assert losses[-1] < losses[0]

    def test_dim_zero_is_usage_error(self, tmp_path, records_db):
        assert run_cli("train-embeddings", "--records", str(records_db),
                       "--dim", "0", "--out", str(tmp_path / "m.pvec")) == 64

    def test_tiny_corpus_exits_3(self, tmp_path, fixtures_dir):
        db = tmp_path / "one.db"
        run_cli("ingest", "--feed", str(fixtures_dir / "feeds" / "single_entry_11.json"),
                "--out", str(db))
        assert run_cli("train-embeddings", "--records", str(db),
                       "--min-count", "50", "--out", str(tmp_path / "m.pvec")) == 3


class TestAnalyze:
    def test_writes_documents_and_report(self, tmp_path, fixtures_dir, records_db):
        out = tmp_path / "analysis"
        code = run_cli("analyze",
                       "--topology", str(fixtures_dir / "topology" / "fixture-topology.json"),
                       "--records", str(records_db),
                       "--model", str(fixtures_dir / "models" / "fixture.pvec"),
                       "--out", str(out))
        assert code == 0
        assert (out / "cumulative.graph").exists()
        assert (out / "cumulative.analytics").exists()
        assert (out / "network.graph").exists()
        report = (out / "report.txt").read_text()
        assert "key vulnerabilities:" in report
        assert "vertex cover" in report

    def test_single_layer_selection(self, tmp_path, fixtures_dir, records_db):
        out = tmp_path / "analysis"
        code = run_cli("analyze",
                       "--topology", str(fixtures_dir / "topology" / "fixture-topology.json"),
                       "--records", str(records_db),
                       "--model", str(fixtures_dir / "models" / "fixture.pvec"),
                       "--layer", "Network", "--out", str(out))
        assert code == 0
        assert (out / "network.graph").exists()
        assert not (out / "crypto.graph").exists()

    def test_unmatched_topology_exits_4(self, tmp_path, fixtures_dir, records_db):
        lonely = tmp_path / "lonely.json"
        lonely.write_text(json.dumps({
            "schema": "topology-v1",
            "devices": [{"device_id": "x", "product": "unknown", "version": "1"}],
            "links": [],
        }))
        assert run_cli("analyze", "--topology", str(lonely),
                       "--records", str(records_db),
                       "--model", str(fixtures_dir / "models" / "fixture.pvec"),
                       "--out", str(tmp_path / "nope")) == 4

    def test_bad_threshold_is_usage_error(self, tmp_path, fixtures_dir, records_db):
        assert run_cli("analyze",
                       "--topology", str(fixtures_dir / "topology" / "fixture-topology.json"),
                       "--records", str(records_db),
                       "--model", str(fixtures_dir / "models" / "fixture.pvec"),
                       "--threshold", "1.5", "--out", str(tmp_path / "x")) == 64


class TestReport:
    @pytest.fixture
    def analysis_dir(self, tmp_path, fixtures_dir, records_db):
        out = tmp_path / "analysis"
        run_cli("analyze",
                "--topology", str(fixtures_dir / "topology" / "fixture-topology.json"),
                "--records", str(records_db),
                "--model", str(fixtures_dir / "models" / "fixture.pvec"),
                "--out", str(out))
        return out

    def test_text_format_lists_top_vulnerabilities(self, analysis_dir, capsys):
        assert run_cli("report", "--graph", str(analysis_dir / "cumulative.graph")) == 0
        out = capsys.readouterr().out
        assert "key vulnerabilities:" in out
        assert "1." in out

    def test_doc_format_emits_analytics_document(self, analysis_dir, capsys):
        assert run_cli("report", "--graph", str(analysis_dir / "cumulative.graph"),
                       "--format", "doc") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == "analytics-v1"

    def test_unknown_format_is_usage_error(self, analysis_dir):
        assert run_cli("report", "--graph", str(analysis_dir / "cumulative.graph"),
                       "--format", "pdf") == 64

    def test_computes_analytics_on_the_fly(self, analysis_dir, tmp_path, capsys):
        # strip the sibling analytics document; report must recompute
        lone = tmp_path / "lone.graph"
        lone.write_bytes((analysis_dir / "cumulative.graph").read_bytes())
        assert run_cli("report", "--graph", str(lone)) == 0
        assert "timings:" in capsys.readouterr().out


def wait_for(url, timeout=10.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        try:
            with urllib.request.urlopen(url, timeout=1) as response:
                return response.status
        except Exception:
            time.sleep(0.1)
    raise TimeoutError(url)


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class TestServe:
    def spawn(self, store, port):
        return subprocess.Popen(
            [sys.executable, "-m", "postural.cli", "serve",
             "--store", str(store), "--listen", f"127.0.0.1:{port}"],
            stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
            cwd=str(Path(__file__).parent.parent),
        )

    def test_health_reachable_then_clean_sigterm(self, tmp_path):
        port = free_port()
        proc = self.spawn(tmp_path / "store", port)
        try:
            assert wait_for(f"http://127.0.0.1:{port}/v1/health") == 200
            proc.send_signal(signal.SIGTERM)
            # uvicorn drains, then re-raises the signal for POSIX exit semantics
            assert proc.wait(timeout=10) in (0, -signal.SIGTERM)
        finally:
            if proc.poll() is None:
                proc.kill()

    def test_second_bind_exits_5(self, tmp_path):
        port = free_port()
        first = self.spawn(tmp_path / "store", port)
        try:
            wait_for(f"http://127.0.0.1:{port}/v1/health")
            second = self.spawn(tmp_path / "store2", port)
            assert second.wait(timeout=10) == 5
        finally:
            first.send_signal(signal.SIGTERM)
            first.wait(timeout=10)

    def test_env_var_supplies_store(self, tmp_path):
        port = free_port()
        env = dict(os.environ, POSTURAL_STORE=str(tmp_path / "envstore"))
        proc = subprocess.Popen(
            [sys.executable, "-m", "postural.cli", "serve",
             "--listen", f"127.0.0.1:{port}"],
            env=env, stdout=subprocess.PIPE, stderr=subprocess.STDOUT,
        )
        try:
            assert wait_for(f"http://127.0.0.1:{port}/v1/health") == 200
        finally:
            proc.send_signal(signal.SIGTERM)
            proc.wait(timeout=10)
