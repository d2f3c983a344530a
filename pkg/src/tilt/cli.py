"""Command-line interface.

Exit codes follow the usual convention: 0 on success, 1 when the input
was understood but bad (parse failures, validation violations, malformed
field values), 2 for usage errors (unknown flags, missing arguments).
Results go to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Sequence

import click

from .errors import FormatError, NotFound, ParseError, TiltError, VocabError
from .graph import build_graph, classify_controllers, export
from .model.diff import diff
from .model.hashing import compute_hash, with_hash
from .model.parse import canonical_dumps, parse, serialize
from .model.scaffold import new_document
from .summary import render_json, render_text, summarize
from .validation.engine import validate as run_validation
from .validation.rules import default_rules
from .vocab import VocabularyBinding, attach_vocabulary, load_vocabulary


def _fail(message: str) -> None:
    click.echo(message, err=True)
    sys.exit(1)


def _load_document(path: Path):
    try:
        return parse(path.read_bytes())
    except ParseError as exc:
        _fail(f"{path}: {exc}")


@click.group()
@click.version_option(package_name="tilt-toolkit", prog_name="tilt")
def main() -> None:
    """Work with transparency information documents."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--vocab", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Vocabulary file to check terms against.")
@click.option("--vocab-field", help="Document path whose values the vocabulary governs.")
@click.option("--vocab-mode", type=click.Choice(["strict", "permissive"]), default="strict",
              show_default=True, help="Whether unknown terms count as violations.")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def validate(file: Path, vocab: Path | None, vocab_field: str | None,
             vocab_mode: str, as_json: bool) -> None:
    """Validate FILE and report every violation."""
    if vocab is not None and not vocab_field:
        raise click.UsageError("--vocab requires --vocab-field")
    doc = _load_document(file)
    ruleset = list(default_rules())
    if vocab is not None:
        try:
            vocabulary = load_vocabulary(vocab.read_text(encoding="utf-8"))
            binding = VocabularyBinding(fieldPath=vocab_field, vocabulary=vocabulary)
            ruleset = attach_vocabulary(ruleset, binding, mode=vocab_mode)
        except (VocabError, TiltError) as exc:
            _fail(f"{vocab}: {exc}")
    report = run_validation(doc, ruleset)
    if as_json:
        click.echo(json.dumps(report.to_obj(), ensure_ascii=False, indent=2))
    elif report.valid:
        click.echo("valid")
    else:
        for violation in report.violations:
            click.echo(f"{violation.code} {violation.path}: {violation.message}")
        click.echo(f"{len(report.violations)} violation(s)", err=True)
    sys.exit(0 if report.valid else 1)


@main.command()
@click.option("--name", required=True, help="Name of the data controller.")
@click.option("--country", required=True, help="Controller country code (ISO 3166-1 alpha-2).")
@click.option("--language", required=True, help="Document language code (ISO 639-1).")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path),
              help="Write the document here instead of stdout.")
def new(name: str, country: str, language: str, output: Path | None) -> None:
    """Scaffold a minimal valid document."""
    try:
        doc = new_document(name=name, country=country, language=language)
    except FormatError as exc:
        _fail(str(exc))
    body = serialize(doc)
    if output is None:
        click.echo(body.decode("utf-8"))
    else:
        output.write_bytes(body + b"\n")
        click.echo(f"wrote {output}", err=True)


@main.command(name="hash")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--write", "write_back", is_flag=True,
              help="Store the digest in the document's meta.hash field.")
def hash_(file: Path, write_back: bool) -> None:
    """Print the canonical content hash of FILE."""
    doc = _load_document(file)
    digest = compute_hash(doc)
    if write_back:
        file.write_bytes(serialize(with_hash(doc)) + b"\n")
    click.echo(digest)


@main.command(name="diff")
@click.argument("old", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("new", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Emit the change set as JSON.")
def diff_cmd(old: Path, new: Path, as_json: bool) -> None:
    """Show the structural difference between OLD and NEW."""
    changes = diff(_load_document(old), _load_document(new))
    if as_json:
        click.echo(json.dumps(changes.to_obj(), ensure_ascii=False, indent=2))
        return
    if changes.empty:
        click.echo("no differences")
        return
    for path, value in changes.added:
        click.echo(f"added   {path} = {canonical_dumps(value)}")
    for path, value in changes.removed:
        click.echo(f"removed {path} (was {canonical_dumps(value)})")
    for path, before, after in changes.changed:
        click.echo(f"changed {path}: {canonical_dumps(before)} -> {canonical_dumps(after)}")


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True, help="Output format.")
def report(file: Path, fmt: str) -> None:
    """Summarize FILE: categories, recipients, transfers, contacts."""
    doc = _load_document(file)
    summary = summarize(doc)
    rendered = render_json(summary) if fmt == "json" else render_text(summary)
    click.echo(rendered, nl=False)


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help="File to write the exported graph to.")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot",
              show_default=True, help="Export format.")
@click.option("--classify", is_flag=True,
              help="Print isolated/linked/networked classes for each controller.")
def graph(directory: Path, out: Path, fmt: str, classify: bool) -> None:
    """Build the data-sharing graph of every document in DIRECTORY."""
    documents = []
    for path in sorted(directory.glob("*.json")):
        documents.append(_load_document(path))
    sharing = build_graph(documents)
    out.write_bytes(export(sharing, format=fmt))
    click.echo(f"wrote {out} ({len(sharing.nodes)} nodes, {len(sharing.edges)} edges)", err=True)
    if classify:
        classes = classify_controllers(sharing)
        for node in sorted(sharing.controllers(), key=lambda n: (n.label, n.id)):
            click.echo(f"{node.label}: {classes[node.id]}")


@main.command()
@click.option("--addr", envvar="TILT_HUB_ADDR", default="127.0.0.1:8383", show_default=True,
              help="host:port to listen on (env: TILT_HUB_ADDR).")
@click.option("--data", envvar="TILT_HUB_DATA", default="./tilt-hub-data", show_default=True,
              type=click.Path(file_okay=False, path_type=Path),
              help="Directory for logs and subscriptions (env: TILT_HUB_DATA).")
def serve(addr: str, data: Path) -> None:
    """Run the document hub HTTP server."""
    import uvicorn

    from .hub.api import build_hub

    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        _fail(f"--addr must look like host:port, got {addr!r}")
    app, _store, _notifier = build_hub(data)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")


def run(argv: Sequence[str] | None = None) -> int:
    """Invoke the CLI programmatically and return its exit status."""
    try:
        main.main(args=list(argv) if argv is not None else None, prog_name="tilt")
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    return 0


if __name__ == "__main__":
    main()
