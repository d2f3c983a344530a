"""Content hashing over the canonical serialization."""

import hashlib
from dataclasses import replace

from .parse import serialize
from .types import TiltDocument


def compute_hash(doc: TiltDocument) -> str:
    """SHA-256 of the canonical serialization with meta.hash blanked.

    Blanking makes the digest independent of any previously recorded
    hash, so computing it is idempotent.
    """
    blanked = replace(doc, meta=replace(doc.meta, hash=""))
    return hashlib.sha256(serialize(blanked)).hexdigest()


def verify_hash(doc: TiltDocument) -> bool:
    return doc.meta.hash == compute_hash(doc)


def with_hash(doc: TiltDocument) -> TiltDocument:
    """Copy of the document with meta.hash set to its computed value."""
    return replace(doc, meta=replace(doc.meta, hash=compute_hash(doc)))
