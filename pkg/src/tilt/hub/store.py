"""Append-only versioned document store with validation on write.

Every document id maps to one JSONL log file whose lines are the stored
versions in order.  Writes validate first, then assign the next version
number, recompute the content hash, and append.  A ``ChangeEvent``
describing the structural difference to the previous version is handed
to the ``on_event`` callback while the per-document lock is still held,
so event order matches version order.
"""

from __future__ import annotations

import hashlib
import json
import threading
import unicodedata
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Sequence

from ..errors import BadFilter, NotFound, PathError, StoreError, ValidationFailed
from ..model.diff import ChangeSet, diff_trees
from ..model.hashing import with_hash
from ..model.parse import canonical_dumps, parse, serialize, to_tree
from ..model.types import TiltDocument
from ..paths import ANY_PREFIX, parse_path, resolve
from ..validation.engine import validate
from ..validation.rules import Rule


@dataclass(frozen=True)
class StoredVersion:
    """One immutable version of a document as kept in the log."""

    documentId: str
    version: int
    storedAt: str
    hash: str
    body: bytes

    def metadata(self) -> dict:
        return {
            "documentId": self.documentId,
            "version": self.version,
            "storedAt": self.storedAt,
            "hash": self.hash,
        }


@dataclass(frozen=True)
class ChangeEvent:
    """Emitted after every successful write.

    ``fromVersion`` is ``None`` for the first version of a document, in
    which case ``changes`` describes the document against an empty tree.
    Version and hash fields under ``meta`` are masked out of the diff:
    they change on every write and would only add noise.
    """

    documentId: str
    fromVersion: int | None
    toVersion: int
    changes: ChangeSet
    emittedAt: str

    def to_obj(self) -> dict:
        return {
            "documentId": self.documentId,
            "fromVersion": self.fromVersion,
            "toVersion": self.toVersion,
            "changes": self.changes.to_obj(),
            "emittedAt": self.emittedAt,
        }


def _masked(tree: dict) -> dict:
    """Neutralize the bookkeeping fields the store rewrites itself."""
    meta = dict(tree.get("meta", {}))
    meta["version"] = 0
    meta["hash"] = ""
    out = dict(tree)
    out["meta"] = meta
    return out


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class Store:
    """Versioned document store backed by per-document JSONL logs."""

    def __init__(
        self,
        data_dir: str | Path,
        *,
        ruleset: Sequence[Rule] | None = None,
        on_event: Callable[[ChangeEvent], None] | None = None,
    ) -> None:
        self._dir = Path(data_dir) / "documents"
        self._dir.mkdir(parents=True, exist_ok=True)
        self._ruleset = ruleset
        self._on_event = on_event
        self._mutex = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._index: dict[str, list[StoredVersion]] = {}
        self._load()

    # -- persistence ----------------------------------------------------

    def _file_for(self, document_id: str) -> Path:
        digest = hashlib.sha256(document_id.encode("utf-8")).hexdigest()
        return self._dir / f"{digest}.jsonl"

    def _load(self) -> None:
        for path in sorted(self._dir.glob("*.jsonl")):
            records = self._read_log(path)
            if not records:
                continue
            document_id = records[0].documentId
            versions = [r.version for r in records]
            if versions != list(range(1, len(records) + 1)):
                raise StoreError(f"{path.name}: version sequence {versions} is not contiguous")
            self._index[document_id] = records

    def _read_log(self, path: Path) -> list[StoredVersion]:
        records: list[StoredVersion] = []
        lines = path.read_text(encoding="utf-8").splitlines()
        for lineno, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                record = StoredVersion(
                    documentId=obj["documentId"],
                    version=obj["version"],
                    storedAt=obj["storedAt"],
                    hash=obj["hash"],
                    body=obj["body"].encode("utf-8"),
                )
            except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as exc:
                if lineno == len(lines) - 1:
                    # A torn final line means the process died mid-append;
                    # everything before it is intact and stays readable.
                    break
                raise StoreError(f"{path.name}:{lineno + 1}: unreadable log record") from exc
            records.append(record)
        return records

    def _append(self, record: StoredVersion) -> None:
        line = json.dumps(
            {
                "documentId": record.documentId,
                "version": record.version,
                "storedAt": record.storedAt,
                "hash": record.hash,
                "body": record.body.decode("utf-8"),
            },
            ensure_ascii=False,
        )
        with self._file_for(record.documentId).open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")
            handle.flush()

    # -- locking --------------------------------------------------------

    def _lock_for(self, document_id: str) -> threading.Lock:
        with self._mutex:
            return self._locks.setdefault(document_id, threading.Lock())

    # -- operations -----------------------------------------------------

    def upsert_document(self, body: bytes | str | TiltDocument) -> StoredVersion:
        """Validate, version, and append one document; emit a ChangeEvent."""
        doc = body if isinstance(body, TiltDocument) else parse(body)
        report = validate(doc, self._ruleset)
        if not report.valid:
            raise ValidationFailed(report)

        document_id = doc.meta.id
        with self._lock_for(document_id):
            history = self._index.get(document_id, [])
            previous = history[-1] if history else None
            version = (previous.version if previous else 0) + 1
            stored_doc = with_hash(replace(doc, meta=replace(doc.meta, version=version)))
            record = StoredVersion(
                documentId=document_id,
                version=version,
                storedAt=_now(),
                hash=stored_doc.meta.hash,
                body=serialize(stored_doc),
            )
            self._append(record)
            with self._mutex:
                self._index.setdefault(document_id, []).append(record)

            old_tree = _masked(json.loads(previous.body)) if previous else {}
            new_tree = _masked(to_tree(stored_doc))
            event = ChangeEvent(
                documentId=document_id,
                fromVersion=previous.version if previous else None,
                toVersion=version,
                changes=diff_trees(old_tree, new_tree),
                emittedAt=record.storedAt,
            )
            if self._on_event is not None:
                self._on_event(event)
        return record

    def get_document(self, document_id: str, version: int | None = None) -> StoredVersion:
        with self._mutex:
            history = list(self._index.get(document_id, []))
        if not history:
            raise NotFound(f"no document with id {document_id!r}")
        if version is None:
            return history[-1]
        for record in history:
            if record.version == version:
                return record
        raise NotFound(f"document {document_id!r} has no version {version}")

    def list_versions(self, document_id: str) -> list[dict]:
        with self._mutex:
            history = list(self._index.get(document_id, []))
        if not history:
            raise NotFound(f"no document with id {document_id!r}")
        return [
            {"version": r.version, "storedAt": r.storedAt, "hash": r.hash}
            for r in history
        ]

    def document_ids(self) -> list[str]:
        with self._mutex:
            return sorted(self._index)

    def query(self, filters: Iterable[tuple[str, str]]) -> list[dict]:
        """Match the latest version of every document against path filters.

        Each filter is a ``(path, value)`` pair; a document matches when
        every path resolves to the value (for list values: to any element
        equal to it).  Non-string values compare by canonical encoding.
        """
        compiled = []
        for path_text, expected in filters:
            try:
                path = parse_path(path_text)
            except PathError as exc:
                raise BadFilter(str(exc)) from exc
            if ANY_PREFIX in path:
                raise BadFilter("query filters must use concrete paths, not '**'")
            compiled.append((path, unicodedata.normalize("NFC", expected)))

        rows = []
        for document_id in self.document_ids():
            record = self.get_document(document_id)
            tree = json.loads(record.body)
            if all(self._matches(tree, path, expected) for path, expected in compiled):
                rows.append({"documentId": document_id, "version": record.version})
        return rows

    @staticmethod
    def _matches(tree: dict, path: tuple, expected: str) -> bool:
        try:
            found = resolve(tree, path)
        except PathError as exc:
            raise BadFilter(str(exc)) from exc
        return any(_value_matches(value, expected) for _, value in found)


def _value_matches(node: object, expected: str) -> bool:
    if isinstance(node, str):
        return node == expected
    if isinstance(node, list):
        return any(_value_matches(item, expected) for item in node)
    return canonical_dumps(node) == expected
