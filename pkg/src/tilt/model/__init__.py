"""Typed document model, canonical serialization and structural diff."""

from .types import (
    RESERVED_BLOCKS,
    AccessAndDataPortability,
    FlaggedStatement,
    AutomatedDecisionMaking,
    ChangeOfPurpose,
    Controller,
    DataDisclosedEntry,
    DataProtectionOfficer,
    Fee,
    LegalBasis,
    LegitimateInterest,
    Meta,
    NonDisclosure,
    Purpose,
    Recipient,
    Representative,
    RightBlock,
    RightToComplain,
    SourceEntry,
    SourceItem,
    StorageSpec,
    SupervisoryAuthority,
    ThirdCountryTransfer,
    TiltDocument,
)
from .parse import from_tree, parse, serialize, to_tree
from .hashing import compute_hash, verify_hash
from .diff import ChangeSet, apply_changeset, diff, diff_trees
from .scaffold import new_document

__all__ = [
    "RESERVED_BLOCKS",
    "AccessAndDataPortability",
    "FlaggedStatement",
    "AutomatedDecisionMaking",
    "ChangeOfPurpose",
    "ChangeSet",
    "Controller",
    "DataDisclosedEntry",
    "DataProtectionOfficer",
    "Fee",
    "LegalBasis",
    "LegitimateInterest",
    "Meta",
    "NonDisclosure",
    "Purpose",
    "Recipient",
    "Representative",
    "RightBlock",
    "RightToComplain",
    "SourceEntry",
    "SourceItem",
    "StorageSpec",
    "SupervisoryAuthority",
    "ThirdCountryTransfer",
    "TiltDocument",
    "apply_changeset",
    "compute_hash",
    "diff",
    "diff_trees",
    "from_tree",
    "new_document",
    "parse",
    "serialize",
    "to_tree",
    "verify_hash",
]
