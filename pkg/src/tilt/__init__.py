"""Toolkit for transparency information documents.

The package splits into focused layers: ``tilt.model`` holds the typed
document model with canonical serialization, hashing, and diffing;
``tilt.validation`` checks documents against a rule catalog;
``tilt.vocab`` constrains free-text terms with hierarchical
vocabularies; ``tilt.hub`` is a small versioned document server with
webhooks; ``tilt.graph`` builds data-sharing graphs across documents;
``tilt.cli`` ties it all together for the command line.
"""

from .errors import (
    BadFilter,
    BadUrl,
    FieldTypeError,
    FormatError,
    MissingBlockError,
    NotFound,
    ParseError,
    PathError,
    RulesetError,
    StoreError,
    TiltError,
    ValidationFailed,
    VocabError,
)
from .model import (
    ChangeSet,
    TiltDocument,
    apply_changeset,
    compute_hash,
    diff,
    from_tree,
    new_document,
    parse,
    serialize,
    to_tree,
    verify_hash,
)
from .validation import ValidationReport, Violation, default_rules, validate

__version__ = "0.1.0"

__all__ = [
    "BadFilter",
    "BadUrl",
    "ChangeSet",
    "FieldTypeError",
    "FormatError",
    "MissingBlockError",
    "NotFound",
    "ParseError",
    "PathError",
    "RulesetError",
    "StoreError",
    "TiltDocument",
    "TiltError",
    "ValidationFailed",
    "ValidationReport",
    "Violation",
    "VocabError",
    "apply_changeset",
    "compute_hash",
    "default_rules",
    "diff",
    "from_tree",
    "new_document",
    "parse",
    "serialize",
    "to_tree",
    "validate",
    "verify_hash",
    "__version__",
]
