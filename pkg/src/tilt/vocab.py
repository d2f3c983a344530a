"""Hierarchical allow/deny vocabularies for free-text fields.

A vocabulary holds separator-joined term paths ("Research/Clinical
research"). A checked term is Prohibited when it equals or descends
from any prohibited path, Allowed when it equals or descends from any
allowed path, Unknown otherwise. Deny overrides allow at any depth.
"""

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import VocabError
from .validation.rules import Rule


class Decision(Enum):
    ALLOWED = "Allowed"
    PROHIBITED = "Prohibited"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Vocabulary:
    name: str
    separator: str
    allowed: tuple[tuple[str, ...], ...]
    prohibited: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class VocabularyBinding:
    fieldPath: str
    vocabulary: Vocabulary


def _split_term(term: str, separator: str, origin: str) -> tuple[str, ...]:
    segments = tuple(segment.strip() for segment in term.split(separator))
    if not segments or any(not segment for segment in segments):
        raise VocabError(f"{origin}: empty term or empty segment in {term!r}")
    return segments


def _term_list(definition: dict, key: str, separator: str) -> tuple[tuple[str, ...], ...]:
    raw = definition.get(key, [])
    if not isinstance(raw, list) or not all(isinstance(t, str) for t in raw):
        raise VocabError(f"{key} must be a list of strings")
    return tuple(_split_term(term, separator, key) for term in raw)


def load_vocabulary(definition) -> Vocabulary:
    """Build a Vocabulary from a JSON object (or its text/bytes form)."""
    if isinstance(definition, (str, bytes)):
        try:
            definition = json.loads(definition)
        except json.JSONDecodeError as exc:
            raise VocabError(f"vocabulary is not valid JSON: {exc.msg}") from exc
    if not isinstance(definition, dict):
        raise VocabError("vocabulary definition must be an object")
    name = definition.get("name")
    if not isinstance(name, str) or not name:
        raise VocabError("vocabulary needs a non-empty name")
    separator = definition.get("separator", "/")
    if not isinstance(separator, str) or len(separator) != 1:
        raise VocabError("separator must be a single character")
    allowed = _term_list(definition, "allowed", separator)
    prohibited = _term_list(definition, "prohibited", separator)
    both = set(allowed) & set(prohibited)
    if both:
        overlap = ", ".join(separator.join(t) for t in sorted(both))
        raise VocabError(f"terms present in both lists: {overlap}")
    return Vocabulary(name=name, separator=separator, allowed=allowed, prohibited=prohibited)


def check_term(vocab: Vocabulary, term: str) -> Decision:
    """Classify one term path against the vocabulary."""
    segments = tuple(s.strip() for s in term.split(vocab.separator))
    if any(not s for s in segments):
        return Decision.UNKNOWN
    prefixes = {segments[:i] for i in range(1, len(segments) + 1)}
    if prefixes & set(vocab.prohibited):
        return Decision.PROHIBITED
    if prefixes & set(vocab.allowed):
        return Decision.ALLOWED
    return Decision.UNKNOWN


def attach_vocabulary(
    ruleset: Sequence[Rule], binding: VocabularyBinding, mode: str = "strict"
) -> tuple[Rule, ...]:
    """Extend a ruleset with one composite rule enforcing the binding.

    Strict mode flags Prohibited and Unknown values; permissive mode
    flags only Prohibited ones.
    """
    if mode not in ("strict", "permissive"):
        raise VocabError(f"mode must be strict or permissive, got {mode!r}")
    vocab = binding.vocabulary

    def check(value, path):
        if not isinstance(value, str) or not value:
            return []
        decision = check_term(vocab, value)
        if decision is Decision.PROHIBITED:
            return [("VOCAB_PROHIBITED", path,
                     f"term {value!r} is prohibited by vocabulary {vocab.name!r}")]
        if decision is Decision.UNKNOWN and mode == "strict":
            return [("VOCAB_UNKNOWN", path,
                     f"term {value!r} is not covered by vocabulary {vocab.name!r}")]
        return []

    slug = re.sub(r"\W+", "_", vocab.name).strip("_").upper() or "TERMS"
    rule = Rule(code=f"VOCAB_{slug}", path=binding.fieldPath, kind="composite", payload=check)
    return tuple(ruleset) + (rule,)
