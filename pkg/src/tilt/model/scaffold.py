"""Skeleton documents that validate clean out of the box."""

import re
import uuid
from dataclasses import replace
from datetime import datetime, timezone

from ..errors import FormatError
from .hashing import with_hash
from .types import (
    AccessAndDataPortability,
    AutomatedDecisionMaking,
    Controller,
    DataProtectionOfficer,
    Fee,
    Meta,
    Representative,
    RightBlock,
    RightToComplain,
    TiltDocument,
)

# RFC 2606 reserved domain, safe placeholder contacts for a fresh skeleton
_PLACEHOLDER_EMAIL = "contact@example.org"
_PLACEHOLDER_DPO_EMAIL = "dpo@example.org"
_PLACEHOLDER_URL = "https://example.org/privacy"
_PLACEHOLDER_ADDRESS = "address pending"


def new_document(name: str, country: str, language: str) -> TiltDocument:
    """Minimal valid document for a controller.

    Placeholder contact details satisfy the obligatory-field rules; the
    caller is expected to replace them before publishing.
    """
    if not name:
        raise FormatError("controller name must not be empty")
    if re.fullmatch(r"[A-Z]{2}", country) is None:
        raise FormatError(f"country must be a two-letter uppercase code, got {country!r}")
    if re.fullmatch(r"[a-z]{2}", language) is None:
        raise FormatError(f"language must be a two-letter lowercase code, got {language!r}")
    now = datetime.now(timezone.utc).isoformat()
    doc = TiltDocument(
        meta=Meta(
            id=str(uuid.uuid4()),
            name=name,
            created=now,
            modified=now,
            version=1,
            language=language,
            status="active",
            url=_PLACEHOLDER_URL,
            hash="",
        ),
        controller=Controller(
            name=name,
            address=_PLACEHOLDER_ADDRESS,
            country=country,
            representative=Representative(name=name, email=_PLACEHOLDER_EMAIL),
        ),
        dataProtectionOfficer=DataProtectionOfficer(
            address=_PLACEHOLDER_ADDRESS,
            country=country,
            email=_PLACEHOLDER_DPO_EMAIL,
        ),
        dataDisclosed=(),
        thirdCountryTransfers=(),
        accessAndDataPortability=AccessAndDataPortability(
            available=False,
            administrativeFee=Fee(amount=0.0, currency="EUR"),
        ),
        sources=(),
        rightToInformation=RightBlock(available=False),
        rightToRectificationOrDeletion=RightBlock(available=False),
        rightToDataPortability=RightBlock(available=False),
        rightToWithdrawConsent=RightBlock(available=False),
        rightToComplain=RightToComplain(available=False),
        automatedDecisionMaking=AutomatedDecisionMaking(inUse=False),
        changesOfPurpose=(),
    )
    return with_hash(doc)


def touch(doc: TiltDocument, *, bump_version: bool = False) -> TiltDocument:
    """Refresh meta.modified (and optionally the version), rehash."""
    meta = replace(
        doc.meta,
        modified=datetime.now(timezone.utc).isoformat(),
        version=doc.meta.version + (1 if bump_version else 0),
    )
    return with_hash(replace(doc, meta=meta))
