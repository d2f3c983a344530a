"""Rule evaluation over a document tree.

The engine compiles a ruleset (raising RulesetError before touching the
document), evaluates every rule at every matching path, and reports all
violations in deterministic order: document position, then rule code.
"""

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .. import paths as p
from ..errors import PathError, RulesetError
from ..model.parse import to_tree
from ..model.types import RESERVED_BLOCKS, TiltDocument
from .formats import check_reference, is_duration, is_http_url, parse_timestamp
from .rules import STORAGE_KINDS, Rule, default_rules


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str

    def to_obj(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_obj(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_obj() for v in self.violations]}

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)


# ---------------------------------------------- cross-field conditions

def _nonempty(value) -> bool:
    return isinstance(value, str) and bool(value)


def _check_timestamp(value, path):
    if isinstance(value, str) and parse_timestamp(value) is None:
        return [(path, f"not an ISO 8601 timestamp: {value!r}")]
    return []


def _check_duration(value, path):
    if isinstance(value, str) and not is_duration(value):
        return [(path, f"not an ISO 8601 duration: {value!r}")]
    return []


def _check_http_url(value, path):
    if isinstance(value, str) and not is_http_url(value):
        return [(path, f"not an absolute HTTP(S) URL: {value!r}")]
    return []


def _check_legal_basis(value, path):
    if isinstance(value, str) and not check_reference(value):
        return [(path, f"not a coded provision reference: {value!r}")]
    return []


def _check_version_min(value, path):
    if type(value) is int and value < 1:
        return [(path, f"version must be at least 1, got {value}")]
    return []


def _check_dates_order(value, path):
    if not isinstance(value, dict):
        return []
    created = value.get("created")
    modified = value.get("modified")
    if not (isinstance(created, str) and isinstance(modified, str)):
        return []
    t0, t1 = parse_timestamp(created), parse_timestamp(modified)
    if t0 is not None and t1 is not None and t0 > t1:
        return [(path + ("modified",), "modified precedes created")]
    return []


def _check_nonempty_list(value, path):
    if isinstance(value, list) and not value:
        return [(path, "at least one entry is required")]
    return []


def _check_entry_ids_unique(value, path):
    if not isinstance(value, list):
        return []
    seen: dict[str, int] = {}
    out = []
    for i, entry in enumerate(value):
        if not isinstance(entry, dict):
            continue
        entry_id = entry.get("id")
        if not _nonempty(entry_id):
            continue
        if entry_id in seen:
            out.append((
                path + (i, "id"),
                f"duplicate entry id {entry_id!r}, first used at index {seen[entry_id]}",
            ))
        else:
            seen[entry_id] = i
    return out


def _check_li_reasoning(value, path):
    if isinstance(value, dict) and value.get("exists") is True \
            and not _nonempty(value.get("reasoning")):
        return [(path + ("reasoning",), "reasoning is obligatory when an interest exists")]
    return []


def _check_recipient_country(value, path):
    if isinstance(value, dict) and _nonempty(value.get("name")) \
            and not _nonempty(value.get("country")):
        return [(path + ("country",), "named recipients must state a country")]
    return []


_STORAGE_FIELD_FOR_KIND = {
    "temporal": "ttl",
    "purposeConditional": "purposeCondition",
    "legalBasisConditional": "legalBasisCondition",
}


def _check_storage_fields(value, path):
    if not isinstance(value, dict):
        return []
    kind = value.get("kind")
    if kind not in _STORAGE_FIELD_FOR_KIND:
        return []
    wanted = _STORAGE_FIELD_FOR_KIND[kind]
    populated = [f for f in _STORAGE_FIELD_FOR_KIND.values() if _nonempty(value.get(f))]
    if kind != "temporal" and _nonempty(value.get("start")):
        populated.append("start")
    if populated != [wanted]:
        found = ", ".join(populated) if populated else "none"
        return [(
            path,
            f"kind {kind!r} requires exactly the field {wanted!r}, found: {found}",
        )]
    return []


def _check_storage_anyof(value, path):
    if isinstance(value, list) and value \
            and not any(isinstance(e, dict) and e.get("kind") in STORAGE_KINDS for e in value):
        return [(path, "no storage option of a known kind")]
    return []


def _check_fee_amount(value, path):
    if isinstance(value, dict):
        amount = value.get("amount")
        if type(amount) in (int, float) and amount < 0:
            return [(path + ("amount",), "fee amount must not be negative")]
    return []


def _check_authority_name(value, path):
    if isinstance(value, dict) and value.get("available") is True:
        authority = value.get("supervisoryAuthority")
        name = authority.get("name") if isinstance(authority, dict) else None
        if not _nonempty(name):
            return [(
                path + ("supervisoryAuthority", "name"),
                "supervisory authority name is obligatory when the right is available",
            )]
    return []


def _check_adm_logic(value, path):
    if isinstance(value, dict) and value.get("inUse") is True \
            and not _nonempty(value.get("logicInvolved")):
        return [(path + ("logicInvolved",),
                 "logic description is obligatory when automated decisions are in use")]
    return []


def _check_adm_scope(value, path):
    if isinstance(value, dict) and value.get("inUse") is True \
            and not _nonempty(value.get("scopeAndIntendedEffects")):
        return [(path + ("scopeAndIntendedEffects",),
                 "scope and effects are obligatory when automated decisions are in use")]
    return []


_CONDITIONS: dict[str, Callable] = {
    "timestamp": _check_timestamp,
    "duration": _check_duration,
    "http_url": _check_http_url,
    "legal_basis": _check_legal_basis,
    "version_min": _check_version_min,
    "dates_order": _check_dates_order,
    "nonempty_list": _check_nonempty_list,
    "entry_ids_unique": _check_entry_ids_unique,
    "li_reasoning": _check_li_reasoning,
    "recipient_country": _check_recipient_country,
    "storage_fields": _check_storage_fields,
    "storage_anyof": _check_storage_anyof,
    "fee_amount": _check_fee_amount,
    "authority_name": _check_authority_name,
    "adm_logic": _check_adm_logic,
    "adm_scope": _check_adm_scope,
}

# the conditions that relate multiple fields, exposed via check_conditionals
_CROSS_FIELD = (
    "adm_logic", "adm_scope", "storage_fields", "storage_anyof",
    "li_reasoning", "recipient_country", "authority_name", "dates_order",
)


# ------------------------------------------------------------ compiler

@dataclass(frozen=True)
class _CompiledRule:
    rule: Rule
    path: p.Path
    regex: re.Pattern | None = None
    enum: frozenset | None = None
    condition: Callable | None = None


def compile_ruleset(rules: Sequence[Rule]) -> tuple[_CompiledRule, ...]:
    """Check and prepare a ruleset; raises RulesetError on any defect."""
    seen: set[str] = set()
    compiled = []
    for rule in rules:
        if rule.code in seen:
            raise RulesetError(f"duplicate rule code {rule.code!r}")
        seen.add(rule.code)
        try:
            parsed = p.parse_path(rule.path)
        except PathError as exc:
            raise RulesetError(f"rule {rule.code}: {exc}") from exc
        if not parsed:
            raise RulesetError(f"rule {rule.code}: empty path")
        regex = enum = condition = None
        if rule.kind == "pattern":
            try:
                regex = re.compile(rule.payload)
            except (re.error, TypeError) as exc:
                raise RulesetError(f"rule {rule.code}: bad pattern: {exc}") from exc
        elif rule.kind == "enum":
            values = tuple(rule.payload or ())
            if not values or not all(isinstance(v, str) for v in values):
                raise RulesetError(f"rule {rule.code}: enum payload must be strings")
            enum = frozenset(values)
        elif rule.kind == "conditional":
            condition = _CONDITIONS.get(rule.payload)
            if condition is None:
                raise RulesetError(f"rule {rule.code}: unknown condition {rule.payload!r}")
        elif rule.kind == "composite":
            if not callable(rule.payload):
                raise RulesetError(f"rule {rule.code}: composite payload must be callable")
        elif rule.kind != "required":
            raise RulesetError(f"rule {rule.code}: unknown kind {rule.kind!r}")
        compiled.append(_CompiledRule(rule, parsed, regex, enum, condition))
    return tuple(compiled)


# ----------------------------------------------------------- evaluator

def _walk_blocks(tree: dict):
    # `**` rules see only the fourteen building blocks, never extensions
    for name in RESERVED_BLOCKS:
        if name in tree:
            yield from p.walk(tree[name], (name,))


def _targets(tree: dict, compiled: _CompiledRule):
    if compiled.path[0] is p.ANY_PREFIX:
        suffix = compiled.path[1:]
        for path, value in _walk_blocks(tree):
            if p.suffix_match(suffix, path):
                yield path, value
    else:
        yield from p.resolve(tree, compiled.path)


def _evaluate(tree: dict, compiled: Sequence[_CompiledRule]):
    found: list[tuple[tuple, str, str]] = []
    for c in compiled:
        rule = c.rule
        for path, value in _targets(tree, c):
            if rule.kind == "pattern":
                if isinstance(value, str) and c.regex.fullmatch(value) is None:
                    found.append((path, rule.code,
                                  rule.message or f"value {value!r} has the wrong format"))
            elif rule.kind == "enum":
                if isinstance(value, str) and value not in c.enum:
                    allowed = ", ".join(sorted(c.enum))
                    found.append((path, rule.code,
                                  f"must be one of: {allowed}; got {value!r}"))
            elif rule.kind == "required":
                if not _nonempty(value):
                    found.append((path, rule.code,
                                  rule.message or "a non-empty string is required"))
            elif rule.kind == "conditional":
                for v_path, message in c.condition(value, path):
                    found.append((v_path, rule.code, message))
            elif rule.kind == "composite":
                for v_code, v_path, message in rule.payload(value, path):
                    found.append((v_path, v_code, message))
    found.sort(key=lambda item: (p.sort_key(item[0]), item[1]))
    return tuple(
        Violation(code=code, path=p.format_path(path), message=message)
        for path, code, message in found
    )


def validate(doc: TiltDocument, ruleset: Sequence[Rule] | None = None) -> ValidationReport:
    """Evaluate a ruleset (default: the full catalog) over a document."""
    rules = default_rules() if ruleset is None else tuple(ruleset)
    compiled = compile_ruleset(rules)
    return ValidationReport(violations=_evaluate(to_tree(doc), compiled))


def check_conditionals(doc: TiltDocument) -> list[Violation]:
    """Only the cross-field conditional rules of the default catalog."""
    rules = tuple(
        r for r in default_rules()
        if r.kind == "conditional" and r.payload in _CROSS_FIELD
    )
    return list(_evaluate(to_tree(doc), compile_ruleset(rules)))
