import json
import socket
import subprocess
import sys
import time
from pathlib import Path

import httpx
import pytest
from click.testing import CliRunner

from tilt.cli import main, run
from tilt.model.hashing import compute_hash, verify_hash
from tilt.model.parse import parse, serialize
from tilt.validation.engine import validate as validate_doc

from docgen import make_doc

GOLDEN = Path(__file__).parent / "data" / "golden.json"


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def broken_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_bytes(b'{"meta": [}')
    return path


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_bytes(serialize(doc))
    return path


class TestValidate:
    def test_clean_document_passes(self, runner):
        result = runner.invoke(main, ["validate", str(GOLDEN)])
        assert result.exit_code == 0
        assert result.stdout == "valid\n"

    def test_violations_exit_one_and_name_the_rule(self, runner, tmp_path):
        tree = json.loads(GOLDEN.read_bytes())
        tree["controller"]["country"] = "Germany"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(tree), encoding="utf-8")

        result = runner.invoke(main, ["validate", str(bad)])
        assert result.exit_code == 1
        assert "COUNTRY_FORMAT controller.country:" in result.stdout
        assert "1 violation(s)" in result.stderr

    def test_json_report(self, runner, tmp_path):
        tree = json.loads(GOLDEN.read_bytes())
        tree["meta"]["status"] = "limbo"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(tree), encoding="utf-8")

        result = runner.invoke(main, ["validate", "--json", str(bad)])
        assert result.exit_code == 1
        report = json.loads(result.stdout)
        assert report["valid"] is False
        assert report["violations"][0]["code"] == "META_STATUS_ENUM"

    def test_unparseable_file_exits_one(self, runner, broken_file):
        result = runner.invoke(main, ["validate", str(broken_file)])
        assert result.exit_code == 1
        assert "broken.json" in result.stderr

    def test_missing_file_is_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["validate", str(tmp_path / "ghost.json")])
        assert result.exit_code == 2

    def test_unknown_flag_is_usage_error(self, runner):
        result = runner.invoke(main, ["validate", "--frobnicate", str(GOLDEN)])
        assert result.exit_code == 2

    def test_vocab_requires_field(self, runner, tmp_path):
        vocab = tmp_path / "vocab.json"
        vocab.write_text('{"name": "Purposes", "allowed": ["Marketing"]}', encoding="utf-8")
        result = runner.invoke(main, ["validate", "--vocab", str(vocab), str(GOLDEN)])
        assert result.exit_code == 2
        assert "--vocab-field" in result.stderr

    def test_vocabulary_checks_apply(self, runner, tmp_path):
        field = "dataDisclosed[*].purposes[*].purpose"
        allowed = tmp_path / "allowed.json"
        allowed.write_text('{"name": "Purposes", "allowed": ["Marketing"]}', encoding="utf-8")
        banned = tmp_path / "banned.json"
        banned.write_text('{"name": "Purposes", "prohibited": ["Marketing"]}', encoding="utf-8")

        ok = runner.invoke(main, ["validate", "--vocab", str(allowed), "--vocab-field", field, str(GOLDEN)])
        assert ok.exit_code == 0

        hit = runner.invoke(main, ["validate", "--vocab", str(banned), "--vocab-field", field, str(GOLDEN)])
        assert hit.exit_code == 1
        assert "VOCAB_PROHIBITED" in hit.stdout

    def test_vocab_mode_controls_unknown_terms(self, runner, tmp_path):
        field = "dataDisclosed[*].purposes[*].purpose"
        vocab = tmp_path / "vocab.json"
        vocab.write_text('{"name": "Purposes", "allowed": ["Research"]}', encoding="utf-8")

        strict = runner.invoke(main, ["validate", "--vocab", str(vocab), "--vocab-field", field,
                                      "--vocab-mode", "strict", str(GOLDEN)])
        assert strict.exit_code == 1

        permissive = runner.invoke(main, ["validate", "--vocab", str(vocab), "--vocab-field", field,
                                          "--vocab-mode", "permissive", str(GOLDEN)])
        assert permissive.exit_code == 0

    def test_malformed_vocabulary_exits_one(self, runner, tmp_path):
        vocab = tmp_path / "vocab.json"
        vocab.write_text('{"allowed": "not a list"}', encoding="utf-8")
        result = runner.invoke(main, ["validate", "--vocab", str(vocab),
                                      "--vocab-field", "meta.name", str(GOLDEN)])
        assert result.exit_code == 1


class TestNew:
    ARGS = ["new", "--name", "Acme GmbH", "--country", "DE", "--language", "de"]

    def test_scaffold_is_valid(self, runner):
        result = runner.invoke(main, self.ARGS)
        assert result.exit_code == 0
        doc = parse(result.stdout.encode("utf-8"))
        assert doc.controller.name == "Acme GmbH"
        assert validate_doc(doc).valid

    def test_scaffold_to_file(self, runner, tmp_path):
        out = tmp_path / "doc.json"
        result = runner.invoke(main, self.ARGS + ["-o", str(out)])
        assert result.exit_code == 0
        assert f"wrote {out}" in result.stderr
        assert validate_doc(parse(out.read_bytes())).valid

    def test_bad_country_exits_one(self, runner):
        result = runner.invoke(main, ["new", "--name", "Acme", "--country", "Germany",
                                      "--language", "de"])
        assert result.exit_code == 1
        assert "country" in result.stderr

    def test_missing_option_is_usage_error(self, runner):
        result = runner.invoke(main, ["new", "--country", "DE", "--language", "de"])
        assert result.exit_code == 2


class TestHash:
    def test_prints_content_hash(self, runner):
        result = runner.invoke(main, ["hash", str(GOLDEN)])
        assert result.exit_code == 0
        assert result.stdout.strip() == compute_hash(parse(GOLDEN.read_bytes()))

    def test_write_back_repairs_stored_hash(self, runner, tmp_path):
        tree = json.loads(GOLDEN.read_bytes())
        tree["meta"]["hash"] = "0" * 64
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(tree), encoding="utf-8")

        result = runner.invoke(main, ["hash", "--write", str(path)])
        assert result.exit_code == 0
        doc = parse(path.read_bytes())
        assert verify_hash(doc)
        assert result.stdout.strip() == doc.meta.hash

    def test_unparseable_file_exits_one(self, runner, broken_file):
        assert runner.invoke(main, ["hash", str(broken_file)]).exit_code == 1

    def test_missing_argument_is_usage_error(self, runner):
        assert runner.invoke(main, ["hash"]).exit_code == 2


class TestDiff:
    def test_no_differences(self, runner):
        result = runner.invoke(main, ["diff", str(GOLDEN), str(GOLDEN)])
        assert result.exit_code == 0
        assert result.stdout == "no differences\n"

    def test_reports_changes(self, runner, tmp_path):
        new = write_doc(tmp_path, "new.json", make_doc("doc-1", "Org A"))
        result = runner.invoke(main, ["diff", str(GOLDEN), str(new)])
        assert result.exit_code == 0
        assert "changed meta.id:" in result.stdout
        assert "changed controller.name:" in result.stdout

    def test_json_changeset(self, runner, tmp_path):
        new = write_doc(tmp_path, "new.json", make_doc("doc-1", "Org A"))
        result = runner.invoke(main, ["diff", "--json", str(GOLDEN), str(new)])
        changes = json.loads(result.stdout)
        assert {"added", "removed", "changed"} <= set(changes)

    def test_unparseable_input_exits_one(self, runner, broken_file):
        assert runner.invoke(main, ["diff", str(GOLDEN), str(broken_file)]).exit_code == 1

    def test_missing_argument_is_usage_error(self, runner):
        assert runner.invoke(main, ["diff", str(GOLDEN)]).exit_code == 2


class TestReport:
    def test_text_summary(self, runner):
        result = runner.invoke(main, ["report", str(GOLDEN)])
        assert result.exit_code == 0
        assert "third country transfers: 1" in result.stdout
        assert "automated decision making: yes" in result.stdout

    def test_json_summary(self, runner):
        result = runner.invoke(main, ["report", "--format", "json", str(GOLDEN)])
        summary = json.loads(result.stdout)
        assert summary["controller"]["name"] == "GreenCompany AG"
        assert summary["thirdCountryTransfers"]["countries"] == ["US"]

    def test_unparseable_file_exits_one(self, runner, broken_file):
        assert runner.invoke(main, ["report", str(broken_file)]).exit_code == 1

    def test_unknown_format_is_usage_error(self, runner):
        result = runner.invoke(main, ["report", "--format", "yaml", str(GOLDEN)])
        assert result.exit_code == 2


class TestGraph:
    @pytest.fixture()
    def corpus_dir(self, tmp_path):
        docs = tmp_path / "docs"
        docs.mkdir()
        write_doc(docs, "a.json", make_doc("doc-1", "Org A", recipients=(("Org B", "DE"),)))
        write_doc(docs, "b.json", make_doc("doc-2", "Org B"))
        return docs

    def test_writes_dot_export(self, runner, corpus_dir, tmp_path):
        out = tmp_path / "graph.dot"
        result = runner.invoke(main, ["graph", str(corpus_dir), "--out", str(out)])
        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8").startswith("digraph tilt {")
        assert f"wrote {out}" in result.stderr

    def test_writes_json_export(self, runner, corpus_dir, tmp_path):
        out = tmp_path / "graph.json"
        result = runner.invoke(main, ["graph", str(corpus_dir), "--out", str(out),
                                      "--format", "json"])
        assert result.exit_code == 0
        graph = json.loads(out.read_text(encoding="utf-8"))
        assert {"nodes", "edges"} <= set(graph)

    def test_classify_prints_component_classes(self, runner, corpus_dir, tmp_path):
        out = tmp_path / "graph.dot"
        result = runner.invoke(main, ["graph", str(corpus_dir), "--out", str(out), "--classify"])
        assert result.exit_code == 0
        assert "Org A: linked" in result.stdout
        assert "Org B: linked" in result.stdout

    def test_unparseable_member_exits_one(self, runner, corpus_dir, tmp_path):
        (corpus_dir / "broken.json").write_bytes(b"nonsense")
        out = tmp_path / "graph.dot"
        result = runner.invoke(main, ["graph", str(corpus_dir), "--out", str(out)])
        assert result.exit_code == 1

    def test_missing_out_is_usage_error(self, runner, corpus_dir):
        assert runner.invoke(main, ["graph", str(corpus_dir)]).exit_code == 2

    def test_missing_directory_is_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["graph", str(tmp_path / "nowhere"), "--out", "g.dot"])
        assert result.exit_code == 2


class TestServe:
    def test_bad_addr_exits_one(self, runner, tmp_path):
        result = runner.invoke(main, ["serve", "--addr", "nope", "--data", str(tmp_path)])
        assert result.exit_code == 1
        assert "host:port" in result.stderr

    def test_addr_comes_from_environment(self, runner, tmp_path):
        result = runner.invoke(main, ["serve", "--data", str(tmp_path)],
                               env={"TILT_HUB_ADDR": "no-port-here"})
        assert result.exit_code == 1
        assert "no-port-here" in result.stderr

    def test_flag_overrides_environment(self, runner, tmp_path):
        result = runner.invoke(main, ["serve", "--addr", "flag:value", "--data", str(tmp_path)],
                               env={"TILT_HUB_ADDR": "env:value"})
        assert result.exit_code == 1
        assert "flag:value" in result.stderr

    def test_unknown_flag_is_usage_error(self, runner):
        assert runner.invoke(main, ["serve", "--frobnicate"]).exit_code == 2

    def test_server_answers_over_http(self, tmp_path):
        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            port = probe.getsockname()[1]
        base = f"http://127.0.0.1:{port}"
        proc = subprocess.Popen(
            [sys.executable, "-c", "from tilt.cli import main; main()",
             "serve", "--addr", f"127.0.0.1:{port}", "--data", str(tmp_path)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            deadline = time.monotonic() + 20
            while True:
                assert proc.poll() is None, "server exited before answering"
                try:
                    health = httpx.get(f"{base}/health", timeout=1.0)
                    if health.status_code == 200:
                        break
                except httpx.HTTPError:
                    pass
                assert time.monotonic() < deadline, "server never came up"
                time.sleep(0.1)
            assert health.json() == {"status": "ok"}

            created = httpx.post(
                f"{base}/documents",
                content=serialize(make_doc("doc-1", "Org A")),
                headers={"content-type": "application/json"},
                timeout=5.0,
            )
            assert created.status_code == 201
            fetched = httpx.get(f"{base}/documents/doc-1", timeout=5.0)
            assert fetched.status_code == 200
            assert json.loads(fetched.content)["controller"]["name"] == "Org A"
        finally:
            proc.terminate()
            proc.wait(timeout=10)


class TestEntryPoints:
    def test_version_flag(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "tilt" in result.stdout

    def test_unknown_subcommand_is_usage_error(self, runner):
        assert runner.invoke(main, ["frobnicate"]).exit_code == 2

    def test_run_returns_exit_codes(self, capsys):
        assert run(["validate", str(GOLDEN)]) == 0
        assert run(["frobnicate"]) == 2
        capsys.readouterr()
