"""Rule-based document validation."""

from .engine import ValidationReport, Violation, check_conditionals, compile_ruleset, validate
from .formats import check_reference, is_duration, is_http_url, parse_timestamp
from .rules import Rule, default_rules

__all__ = [
    "Rule",
    "ValidationReport",
    "Violation",
    "check_conditionals",
    "check_reference",
    "compile_ruleset",
    "default_rules",
    "is_duration",
    "is_http_url",
    "parse_timestamp",
    "validate",
]
