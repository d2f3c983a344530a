"""Parsing and canonical serialization.

Parsing is strict about shape and lenient about content: malformed JSON,
values of the wrong primitive kind and missing building blocks raise
ParseError subclasses, while absent scalar fields get kind-correct
defaults ("", false, none, empty list) for the validator to judge.
JSON null is treated exactly like an absent field, and optional string
fields normalize "" to absent.

The canonical serialization is the single encoding used for hashing,
storage and equality: UTF-8, keys sorted by code point, no whitespace,
non-ASCII kept verbatim, all strings NFC-normalized.
"""

import copy
import json
import unicodedata

from ..errors import FieldTypeError, MissingBlockError, ParseError
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


def _nfc(value: str) -> str:
    return unicodedata.normalize("NFC", value)


def _nfc_tree(node):
    if isinstance(node, str):
        return _nfc(node)
    if isinstance(node, list):
        return [_nfc_tree(item) for item in node]
    if isinstance(node, dict):
        return {_nfc(k): _nfc_tree(v) for k, v in node.items()}
    return node


# ---------------------------------------------------------------- kinds

def _kind_error(path: str, expected: str, value) -> FieldTypeError:
    found = {
        dict: "object", list: "array", str: "string",
        bool: "boolean", int: "number", float: "number",
    }.get(type(value), "null" if value is None else type(value).__name__)
    return FieldTypeError(f"{path}: expected {expected}, found {found}", path=path)


def _obj(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise _kind_error(path, "object", value)
    return value


def _arr(value, path: str) -> list:
    if not isinstance(value, list):
        raise _kind_error(path, "array", value)
    return value


def _req_str(obj: dict, key: str, path: str) -> str:
    value = obj.get(key)
    if value is None:
        return ""
    if not isinstance(value, str):
        raise _kind_error(f"{path}.{key}", "string", value)
    return _nfc(value)


def _opt_str(obj: dict, key: str, path: str) -> str | None:
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise _kind_error(f"{path}.{key}", "string", value)
    return _nfc(value) or None


def _req_bool(obj: dict, key: str, path: str) -> bool:
    value = obj.get(key)
    if value is None:
        return False
    if type(value) is not bool:
        raise _kind_error(f"{path}.{key}", "boolean", value)
    return value


def _req_int(obj: dict, key: str, path: str) -> int:
    value = obj.get(key)
    if value is None:
        return 0
    if type(value) is not int:
        raise _kind_error(f"{path}.{key}", "integer", value)
    return value


def _req_number(obj: dict, key: str, path: str) -> float:
    value = obj.get(key)
    if value is None:
        return 0.0
    if type(value) not in (int, float):
        raise _kind_error(f"{path}.{key}", "number", value)
    return float(value)


def _str_items(obj: dict, key: str, path: str) -> tuple[str, ...]:
    value = obj.get(key)
    if value is None:
        return ()
    items = _arr(value, f"{path}.{key}")
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, str):
            raise _kind_error(f"{path}.{key}[{i}]", "string", item)
        out.append(_nfc(item))
    return tuple(out)


def _obj_items(obj: dict, key: str, path: str) -> list[tuple[dict, str]]:
    value = obj.get(key)
    if value is None:
        return []
    items = _arr(value, f"{path}.{key}")
    out = []
    for i, item in enumerate(items):
        item_path = f"{path}.{key}[{i}]"
        out.append((_obj(item, item_path), item_path))
    return out


def _sub(obj: dict, key: str, path: str) -> tuple[dict, str]:
    value = obj.get(key)
    sub_path = f"{path}.{key}"
    if value is None:
        return {}, sub_path
    return _obj(value, sub_path), sub_path


# ------------------------------------------------------------- builders

def _build_meta(obj: dict, path: str) -> Meta:
    return Meta(
        id=_req_str(obj, "id", path),
        name=_req_str(obj, "name", path),
        created=_req_str(obj, "created", path),
        modified=_req_str(obj, "modified", path),
        version=_req_int(obj, "version", path),
        language=_req_str(obj, "language", path),
        status=_req_str(obj, "status", path),
        url=_req_str(obj, "url", path),
        hash=_req_str(obj, "hash", path),
    )


def _build_controller(obj: dict, path: str) -> Controller:
    rep_obj, rep_path = _sub(obj, "representative", path)
    return Controller(
        name=_req_str(obj, "name", path),
        division=_opt_str(obj, "division", path),
        address=_req_str(obj, "address", path),
        country=_req_str(obj, "country", path),
        representative=Representative(
            name=_req_str(rep_obj, "name", rep_path),
            email=_req_str(rep_obj, "email", rep_path),
            phone=_opt_str(rep_obj, "phone", rep_path),
        ),
    )


def _build_dpo(obj: dict, path: str) -> DataProtectionOfficer:
    return DataProtectionOfficer(
        name=_opt_str(obj, "name", path),
        address=_req_str(obj, "address", path),
        country=_req_str(obj, "country", path),
        email=_req_str(obj, "email", path),
        phone=_opt_str(obj, "phone", path),
    )


def _build_entry(obj: dict, path: str) -> DataDisclosedEntry:
    nd_obj, nd_path = _sub(obj, "nonDisclosure", path)
    return DataDisclosedEntry(
        id=_req_str(obj, "id", path),
        category=_req_str(obj, "category", path),
        purposes=tuple(
            Purpose(
                purpose=_req_str(o, "purpose", p),
                description=_req_str(o, "description", p),
            )
            for o, p in _obj_items(obj, "purposes", path)
        ),
        legalBases=tuple(
            LegalBasis(
                reference=_req_str(o, "reference", p),
                description=_opt_str(o, "description", p),
            )
            for o, p in _obj_items(obj, "legalBases", path)
        ),
        legitimateInterests=tuple(
            LegitimateInterest(
                exists=_req_bool(o, "exists", p),
                reasoning=_opt_str(o, "reasoning", p),
            )
            for o, p in _obj_items(obj, "legitimateInterests", path)
        ),
        recipients=tuple(
            Recipient(
                name=_opt_str(o, "name", p),
                division=_opt_str(o, "division", p),
                address=_opt_str(o, "address", p),
                country=_opt_str(o, "country", p),
                category=_req_str(o, "category", p),
            )
            for o, p in _obj_items(obj, "recipients", path)
        ),
        storage=tuple(
            StorageSpec(
                kind=_req_str(o, "kind", p),
                ttl=_opt_str(o, "ttl", p),
                start=_opt_str(o, "start", p),
                purposeCondition=_opt_str(o, "purposeCondition", p),
                legalBasisCondition=_opt_str(o, "legalBasisCondition", p),
                aggregationFunction=_req_str(o, "aggregationFunction", p),
            )
            for o, p in _obj_items(obj, "storage", path)
        ),
        nonDisclosure=NonDisclosure(
            legalRequirement=_req_bool(nd_obj, "legalRequirement", nd_path),
            contractualRegulation=_req_bool(nd_obj, "contractualRegulation", nd_path),
            obligationToProvide=_req_bool(nd_obj, "obligationToProvide", nd_path),
            consequences=_req_str(nd_obj, "consequences", nd_path),
        ),
    )


def _build_flagged(obj: dict, key: str, path: str) -> FlaggedStatement:
    sub_obj, sub_path = _sub(obj, key, path)
    return FlaggedStatement(
        value=_req_bool(sub_obj, "value", sub_path),
        description=_opt_str(sub_obj, "description", sub_path),
    )


def _build_transfer(obj: dict, path: str) -> ThirdCountryTransfer:
    return ThirdCountryTransfer(
        country=_req_str(obj, "country", path),
        adequacyDecision=_build_flagged(obj, "adequacyDecision", path),
        appropriateGuarantees=_build_flagged(obj, "appropriateGuarantees", path),
        presentableRights=_build_flagged(obj, "presentableRights", path),
        standardDataProtectionClause=_build_flagged(obj, "standardDataProtectionClause", path),
    )


def _build_access(obj: dict, path: str) -> AccessAndDataPortability:
    fee_obj, fee_path = _sub(obj, "administrativeFee", path)
    return AccessAndDataPortability(
        available=_req_bool(obj, "available", path),
        description=_opt_str(obj, "description", path),
        url=_opt_str(obj, "url", path),
        email=_opt_str(obj, "email", path),
        identificationEvidences=_str_items(obj, "identificationEvidences", path),
        administrativeFee=Fee(
            amount=_req_number(fee_obj, "amount", fee_path),
            currency=_req_str(fee_obj, "currency", fee_path),
        ),
        dataFormats=_str_items(obj, "dataFormats", path),
    )


def _build_source_group(obj: dict, path: str) -> SourceEntry:
    return SourceEntry(
        category=_req_str(obj, "category", path),
        sources=tuple(
            SourceItem(
                description=_req_str(o, "description", p),
                url=_opt_str(o, "url", p),
                publiclyAvailable=_req_bool(o, "publiclyAvailable", p),
            )
            for o, p in _obj_items(obj, "sources", path)
        ),
    )


def _right_fields(obj: dict, path: str) -> dict:
    return dict(
        available=_req_bool(obj, "available", path),
        description=_opt_str(obj, "description", path),
        url=_opt_str(obj, "url", path),
        email=_opt_str(obj, "email", path),
        identificationEvidences=_str_items(obj, "identificationEvidences", path),
    )


def _build_complain(obj: dict, path: str) -> RightToComplain:
    authority = obj.get("supervisoryAuthority")
    built = None
    if authority is not None:
        auth_obj = _obj(authority, f"{path}.supervisoryAuthority")
        auth_path = f"{path}.supervisoryAuthority"
        built = SupervisoryAuthority(
            name=_req_str(auth_obj, "name", auth_path),
            address=_opt_str(auth_obj, "address", auth_path),
            country=_opt_str(auth_obj, "country", auth_path),
            email=_opt_str(auth_obj, "email", auth_path),
            phone=_opt_str(auth_obj, "phone", auth_path),
        )
    return RightToComplain(supervisoryAuthority=built, **_right_fields(obj, path))


def _build_adm(obj: dict, path: str) -> AutomatedDecisionMaking:
    return AutomatedDecisionMaking(
        inUse=_req_bool(obj, "inUse", path),
        logicInvolved=_opt_str(obj, "logicInvolved", path),
        scopeAndIntendedEffects=_opt_str(obj, "scopeAndIntendedEffects", path),
    )


def _build_change(obj: dict, path: str) -> ChangeOfPurpose:
    return ChangeOfPurpose(
        affectedCategories=_str_items(obj, "affectedCategories", path),
        changedAt=_req_str(obj, "changedAt", path),
        urlOfNewVersion=_req_str(obj, "urlOfNewVersion", path),
    )


def from_tree(tree) -> TiltDocument:
    """Build a document from a decoded JSON tree."""
    root = _obj(tree, "$")
    missing = [name for name in RESERVED_BLOCKS if root.get(name) is None]
    if missing:
        raise MissingBlockError(
            f"missing building block{'s' if len(missing) > 1 else ''}: {', '.join(missing)}",
            path=missing[0],
        )

    def block_obj(name: str) -> dict:
        return _obj(root[name], name)

    def block_items(name: str) -> list[tuple[dict, str]]:
        items = _arr(root[name], name)
        return [(_obj(item, f"{name}[{i}]"), f"{name}[{i}]") for i, item in enumerate(items)]

    extensions = {
        _nfc(key): _nfc_tree(copy.deepcopy(value))
        for key, value in root.items()
        if key not in RESERVED_BLOCKS
    }
    return TiltDocument(
        meta=_build_meta(block_obj("meta"), "meta"),
        controller=_build_controller(block_obj("controller"), "controller"),
        dataProtectionOfficer=_build_dpo(
            block_obj("dataProtectionOfficer"), "dataProtectionOfficer"
        ),
        dataDisclosed=tuple(_build_entry(o, p) for o, p in block_items("dataDisclosed")),
        thirdCountryTransfers=tuple(
            _build_transfer(o, p) for o, p in block_items("thirdCountryTransfers")
        ),
        accessAndDataPortability=_build_access(
            block_obj("accessAndDataPortability"), "accessAndDataPortability"
        ),
        sources=tuple(_build_source_group(o, p) for o, p in block_items("sources")),
        rightToInformation=RightBlock(**_right_fields(
            block_obj("rightToInformation"), "rightToInformation"
        )),
        rightToRectificationOrDeletion=RightBlock(**_right_fields(
            block_obj("rightToRectificationOrDeletion"), "rightToRectificationOrDeletion"
        )),
        rightToDataPortability=RightBlock(**_right_fields(
            block_obj("rightToDataPortability"), "rightToDataPortability"
        )),
        rightToWithdrawConsent=RightBlock(**_right_fields(
            block_obj("rightToWithdrawConsent"), "rightToWithdrawConsent"
        )),
        rightToComplain=_build_complain(block_obj("rightToComplain"), "rightToComplain"),
        automatedDecisionMaking=_build_adm(
            block_obj("automatedDecisionMaking"), "automatedDecisionMaking"
        ),
        changesOfPurpose=tuple(
            _build_change(o, p) for o, p in block_items("changesOfPurpose")
        ),
        extensions=extensions,
    )


def parse(data: bytes | str) -> TiltDocument:
    """Parse a JSON document.

    Raises ParseError with the byte offset for malformed JSON, and
    FieldTypeError / MissingBlockError with the dotted path for shape
    problems. Content rules are deliberately not checked here.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8 at byte {exc.start}", offset=exc.start) from exc
    else:
        text = data
    try:
        tree = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"{exc.msg} at byte {offset}", offset=offset) from exc
    except _ConstantError as exc:
        raise ParseError(str(exc)) from exc
    return from_tree(tree)


class _ConstantError(ValueError):
    pass


def _reject_constant(token: str):
    raise _ConstantError(f"non-finite number {token} is not allowed")


# ------------------------------------------------------------ serialize

def _drop_none(obj: dict) -> dict:
    return {k: v for k, v in obj.items() if v is not None}


def _meta_tree(m: Meta) -> dict:
    return {
        "id": m.id, "name": m.name, "created": m.created, "modified": m.modified,
        "version": m.version, "language": m.language, "status": m.status,
        "url": m.url, "hash": m.hash,
    }


def _flagged_tree(a: FlaggedStatement) -> dict:
    return _drop_none({"value": a.value, "description": a.description})


def _right_tree(r: RightBlock) -> dict:
    return _drop_none({
        "available": r.available,
        "description": r.description,
        "url": r.url,
        "email": r.email,
        "identificationEvidences": list(r.identificationEvidences),
    })


def _entry_tree(e: DataDisclosedEntry) -> dict:
    return {
        "id": e.id,
        "category": e.category,
        "purposes": [
            {"purpose": p.purpose, "description": p.description} for p in e.purposes
        ],
        "legalBases": [
            _drop_none({"reference": b.reference, "description": b.description})
            for b in e.legalBases
        ],
        "legitimateInterests": [
            _drop_none({"exists": li.exists, "reasoning": li.reasoning})
            for li in e.legitimateInterests
        ],
        "recipients": [
            _drop_none({
                "name": r.name, "division": r.division, "address": r.address,
                "country": r.country, "category": r.category,
            })
            for r in e.recipients
        ],
        "storage": [
            _drop_none({
                "kind": s.kind, "ttl": s.ttl, "start": s.start,
                "purposeCondition": s.purposeCondition,
                "legalBasisCondition": s.legalBasisCondition,
                "aggregationFunction": s.aggregationFunction,
            })
            for s in e.storage
        ],
        "nonDisclosure": {
            "legalRequirement": e.nonDisclosure.legalRequirement,
            "contractualRegulation": e.nonDisclosure.contractualRegulation,
            "obligationToProvide": e.nonDisclosure.obligationToProvide,
            "consequences": e.nonDisclosure.consequences,
        },
    }


def to_tree(doc: TiltDocument) -> dict:
    """Project a document onto a plain JSON tree (absent optionals omitted)."""
    c = doc.controller
    dpo = doc.dataProtectionOfficer
    access = doc.accessAndDataPortability
    complain_tree = _right_tree(doc.rightToComplain)
    if doc.rightToComplain.supervisoryAuthority is not None:
        sa = doc.rightToComplain.supervisoryAuthority
        complain_tree["supervisoryAuthority"] = _drop_none({
            "name": sa.name, "address": sa.address, "country": sa.country,
            "email": sa.email, "phone": sa.phone,
        })
    tree = {
        "meta": _meta_tree(doc.meta),
        "controller": _drop_none({
            "name": c.name, "division": c.division, "address": c.address,
            "country": c.country,
            "representative": _drop_none({
                "name": c.representative.name, "email": c.representative.email,
                "phone": c.representative.phone,
            }),
        }),
        "dataProtectionOfficer": _drop_none({
            "name": dpo.name, "address": dpo.address, "country": dpo.country,
            "email": dpo.email, "phone": dpo.phone,
        }),
        "dataDisclosed": [_entry_tree(e) for e in doc.dataDisclosed],
        "thirdCountryTransfers": [
            {
                "country": t.country,
                "adequacyDecision": _flagged_tree(t.adequacyDecision),
                "appropriateGuarantees": _flagged_tree(t.appropriateGuarantees),
                "presentableRights": _flagged_tree(t.presentableRights),
                "standardDataProtectionClause": _flagged_tree(t.standardDataProtectionClause),
            }
            for t in doc.thirdCountryTransfers
        ],
        "accessAndDataPortability": _drop_none({
            "available": access.available,
            "description": access.description,
            "url": access.url,
            "email": access.email,
            "identificationEvidences": list(access.identificationEvidences),
            "administrativeFee": {
                "amount": float(access.administrativeFee.amount),
                "currency": access.administrativeFee.currency,
            },
            "dataFormats": list(access.dataFormats),
        }),
        "sources": [
            {
                "category": g.category,
                "sources": [
                    _drop_none({
                        "description": s.description, "url": s.url,
                        "publiclyAvailable": s.publiclyAvailable,
                    })
                    for s in g.sources
                ],
            }
            for g in doc.sources
        ],
        "rightToInformation": _right_tree(doc.rightToInformation),
        "rightToRectificationOrDeletion": _right_tree(doc.rightToRectificationOrDeletion),
        "rightToDataPortability": _right_tree(doc.rightToDataPortability),
        "rightToWithdrawConsent": _right_tree(doc.rightToWithdrawConsent),
        "rightToComplain": complain_tree,
        "automatedDecisionMaking": _drop_none({
            "inUse": doc.automatedDecisionMaking.inUse,
            "logicInvolved": doc.automatedDecisionMaking.logicInvolved,
            "scopeAndIntendedEffects": doc.automatedDecisionMaking.scopeAndIntendedEffects,
        }),
        "changesOfPurpose": [
            {
                "affectedCategories": list(ch.affectedCategories),
                "changedAt": ch.changedAt,
                "urlOfNewVersion": ch.urlOfNewVersion,
            }
            for ch in doc.changesOfPurpose
        ],
    }
    for key, value in doc.extensions.items():
        tree[key] = copy.deepcopy(value)
    return _nfc_tree(tree)


def canonical_dumps(tree) -> str:
    """Encode a JSON tree in the canonical form used for hashing."""
    return json.dumps(
        _nfc_tree(tree),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def serialize(doc: TiltDocument) -> bytes:
    """Canonical UTF-8 bytes of a document."""
    return canonical_dumps(to_tree(doc)).encode("utf-8")
