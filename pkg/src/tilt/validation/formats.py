"""Field format checks used by the default ruleset."""

import re
from datetime import datetime, timezone
from urllib.parse import urlparse

# Legal provision references: an uppercase code followed by hyphenated
# lowercase/digit qualifiers, e.g. GDPR-6-1-a. The equivalent alternation
# form ^[A-Z]*([-]?[0-9]*|[a-z]*)*$ backtracks exponentially on failing
# inputs, so the linear form below is used: every alternation pass emits
# only characters from [a-z0-9-], and any one such character is itself a
# valid pass, hence the two patterns accept exactly the same strings.
LEGAL_BASIS_PATTERN = r"[A-Z]*[a-z0-9-]*"

COUNTRY_PATTERN = r"[A-Z]{2}"
LANGUAGE_PATTERN = r"[a-z]{2}"
CURRENCY_PATTERN = r"[A-Z]{3}"
HASH_PATTERN = r"[0-9a-f]{64}"
# pragmatic email shape: one @, non-empty local part, dotted domain
EMAIL_PATTERN = r"[^@\s]+@[^@\s]+\.[^@\s]+"
# digits, spaces, +, -, parentheses; at least six digits overall
PHONE_PATTERN = r"(?=(?:\D*\d){6})[0-9+() -]+"

_LEGAL_BASIS = re.compile(LEGAL_BASIS_PATTERN)
_DURATION = re.compile(
    r"P(?!$)(\d+Y)?(\d+M)?(\d+W)?(\d+D)?(T(?=\d)(\d+H)?(\d+M)?(\d+(?:\.\d+)?S)?)?"
)
_COMPACT_OFFSET = re.compile(r"([+-]\d{2})(\d{2})$")


def check_reference(value: str) -> bool:
    """True iff value is a non-empty coded provision reference."""
    return bool(value) and _LEGAL_BASIS.fullmatch(value) is not None


def is_http_url(value: str) -> bool:
    try:
        parts = urlparse(value)
    except ValueError:
        return False
    return parts.scheme in ("http", "https") and bool(parts.netloc)


def is_duration(value: str) -> bool:
    """ISO 8601 duration such as P3Y6M4DT12H30M17S."""
    return _DURATION.fullmatch(value) is not None


def parse_timestamp(value: str) -> datetime | None:
    """ISO 8601 timestamp as an instant; None when unparseable.

    Accepts a trailing Z and compact +HHMM offsets on top of what
    fromisoformat supports. Offset-free values are read as UTC.
    """
    if not value or "T" not in value:
        # A bare date is valid ISO 8601 but not a timestamp.
        return None
    text = value
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    else:
        text = _COMPACT_OFFSET.sub(r"\1:\2", text)
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        return None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed
