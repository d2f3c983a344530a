"""The default rule catalog.

Rule codes are stable public API: downstream tooling may filter reports
by code. A rule addresses one path pattern; patterns starting with `**`
apply to every matching field anywhere inside the fourteen building
blocks (extensions are operator territory and exempt from core rules).
"""

from dataclasses import dataclass
from typing import Any

from .formats import (
    COUNTRY_PATTERN,
    CURRENCY_PATTERN,
    EMAIL_PATTERN,
    HASH_PATTERN,
    LANGUAGE_PATTERN,
    PHONE_PATTERN,
)

STORAGE_KINDS = ("temporal", "purposeConditional", "legalBasisConditional")
AGGREGATION_FUNCTIONS = ("min", "max", "sum", "avg")
STATUS_VALUES = ("active", "inactive")


@dataclass(frozen=True)
class Rule:
    """One validation rule.

    kind selects the evaluation strategy: `pattern` (payload: regex
    source, full match), `enum` (payload: allowed strings), `required`
    (non-empty string), `conditional` (payload: name of a built-in
    cross-field check), `composite` (payload: callable returning
    (code, path, message) triples).
    """

    code: str
    path: str
    kind: str
    payload: Any = None
    message: str = ""


def default_rules() -> tuple[Rule, ...]:
    return (
        Rule("META_ID_REQUIRED", "meta.id", "required",
             message="document id is obligatory"),
        Rule("META_CREATED_FORMAT", "meta.created", "conditional", "timestamp"),
        Rule("META_MODIFIED_FORMAT", "meta.modified", "conditional", "timestamp"),
        Rule("META_DATES_ORDER", "meta", "conditional", "dates_order"),
        Rule("META_VERSION_MIN", "meta.version", "conditional", "version_min"),
        Rule("META_LANGUAGE_FORMAT", "meta.language", "pattern", LANGUAGE_PATTERN,
             "two-letter lowercase language code required"),
        Rule("META_STATUS_ENUM", "meta.status", "enum", STATUS_VALUES),
        Rule("META_HASH", "meta.hash", "pattern", HASH_PATTERN,
             "64-character lowercase hex digest required"),
        Rule("CONTROLLER_NAME_REQUIRED", "controller.name", "required",
             message="controller name is obligatory"),
        Rule("DPO_ADDRESS_REQUIRED", "dataProtectionOfficer.address", "required",
             message="data protection officer address is obligatory"),
        Rule("COUNTRY_FORMAT", "**.country", "pattern", COUNTRY_PATTERN,
             "two-letter uppercase country code required"),
        Rule("EMAIL_FORMAT", "**.email", "pattern", EMAIL_PATTERN,
             "not a plausible email address"),
        Rule("PHONE_FORMAT", "**.phone", "pattern", PHONE_PATTERN,
             "not a plausible phone number"),
        Rule("URL_FORMAT", "**.url", "conditional", "http_url"),
        Rule("ENTRY_ID_REQUIRED", "dataDisclosed[*].id", "required",
             message="entry id is obligatory"),
        Rule("ENTRY_ID_UNIQUE", "dataDisclosed", "conditional", "entry_ids_unique"),
        Rule("ENTRY_CATEGORY_REQUIRED", "dataDisclosed[*].category", "required",
             message="data category is obligatory"),
        Rule("PURPOSES_REQUIRED", "dataDisclosed[*].purposes", "conditional",
             "nonempty_list"),
        Rule("PURPOSE_TEXT_REQUIRED", "dataDisclosed[*].purposes[*].purpose", "required",
             message="purpose text is obligatory"),
        Rule("PURPOSE_DESCRIPTION_REQUIRED", "dataDisclosed[*].purposes[*].description",
             "required", message="purpose description is obligatory"),
        Rule("LEGAL_BASES_REQUIRED", "dataDisclosed[*].legalBases", "conditional",
             "nonempty_list"),
        Rule("LEGAL_BASIS_FORMAT", "dataDisclosed[*].legalBases[*].reference",
             "conditional", "legal_basis"),
        Rule("LI_REASONING_REQUIRED", "dataDisclosed[*].legitimateInterests[*]",
             "conditional", "li_reasoning"),
        Rule("RECIPIENT_CATEGORY_REQUIRED", "dataDisclosed[*].recipients[*].category",
             "required", message="recipient category is obligatory"),
        Rule("RECIPIENT_COUNTRY_REQUIRED", "dataDisclosed[*].recipients[*]",
             "conditional", "recipient_country"),
        Rule("STORAGE_KIND_ENUM", "dataDisclosed[*].storage[*].kind", "enum",
             STORAGE_KINDS),
        Rule("STORAGE_KIND_MISMATCH", "dataDisclosed[*].storage[*]", "conditional",
             "storage_fields"),
        Rule("STORAGE_OPTION_REQUIRED", "dataDisclosed[*].storage", "conditional",
             "storage_anyof"),
        Rule("STORAGE_TTL_FORMAT", "dataDisclosed[*].storage[*].ttl", "conditional",
             "duration"),
        Rule("STORAGE_START_FORMAT", "dataDisclosed[*].storage[*].start", "conditional",
             "timestamp"),
        Rule("STORAGE_LEGAL_BASIS_FORMAT",
             "dataDisclosed[*].storage[*].legalBasisCondition", "conditional",
             "legal_basis"),
        Rule("STORAGE_AGGREGATION_ENUM",
             "dataDisclosed[*].storage[*].aggregationFunction", "enum",
             AGGREGATION_FUNCTIONS),
        Rule("NON_DISCLOSURE_CONSEQUENCES", "dataDisclosed[*].nonDisclosure.consequences",
             "required", message="non-disclosure consequences are obligatory"),
        Rule("FEE_AMOUNT_NEGATIVE", "accessAndDataPortability.administrativeFee",
             "conditional", "fee_amount"),
        Rule("CURRENCY_FORMAT", "accessAndDataPortability.administrativeFee.currency",
             "pattern", CURRENCY_PATTERN, "three-letter uppercase currency code required"),
        Rule("SOURCE_CATEGORY_REQUIRED", "sources[*].category", "required",
             message="source category is obligatory"),
        Rule("AUTHORITY_NAME_REQUIRED", "rightToComplain", "conditional",
             "authority_name"),
        Rule("ADM_LOGIC_REQUIRED", "automatedDecisionMaking", "conditional", "adm_logic"),
        Rule("ADM_SCOPE_REQUIRED", "automatedDecisionMaking", "conditional", "adm_scope"),
        Rule("CHANGE_AT_FORMAT", "changesOfPurpose[*].changedAt", "conditional",
             "timestamp"),
        Rule("CHANGE_URL_FORMAT", "changesOfPurpose[*].urlOfNewVersion", "conditional",
             "http_url"),
    )
