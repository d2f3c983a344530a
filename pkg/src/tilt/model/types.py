"""Typed building blocks of a transparency information document.

Field names mirror the wire format verbatim, so serialization is a
mechanical walk. All types are immutable; lists are stored as tuples.
Construction never checks content rules (formats, obligatory values):
that is the validator's job. The sole structural invariant enforced
here is that extension keys must not collide with the reserved
building-block names.
"""

from dataclasses import dataclass, field
from typing import Any

RESERVED_BLOCKS = (
    "meta",
    "controller",
    "dataProtectionOfficer",
    "dataDisclosed",
    "thirdCountryTransfers",
    "accessAndDataPortability",
    "sources",
    "rightToInformation",
    "rightToRectificationOrDeletion",
    "rightToDataPortability",
    "rightToWithdrawConsent",
    "rightToComplain",
    "automatedDecisionMaking",
    "changesOfPurpose",
)


@dataclass(frozen=True)
class Meta:
    """Document identity and lifecycle data."""

    id: str
    name: str
    created: str
    modified: str
    version: int
    language: str
    status: str
    url: str
    hash: str


@dataclass(frozen=True)
class Representative:
    name: str
    email: str
    phone: str | None = None


@dataclass(frozen=True)
class Controller:
    """The entity responsible for the processing described."""

    name: str
    address: str
    country: str
    representative: Representative
    division: str | None = None


@dataclass(frozen=True)
class DataProtectionOfficer:
    address: str
    country: str
    email: str
    name: str | None = None
    phone: str | None = None


@dataclass(frozen=True)
class Purpose:
    purpose: str
    description: str = ""


@dataclass(frozen=True)
class LegalBasis:
    reference: str
    description: str | None = None


@dataclass(frozen=True)
class LegitimateInterest:
    exists: bool
    reasoning: str | None = None


@dataclass(frozen=True)
class Recipient:
    """Receiver of disclosed data; named or given only by category."""

    category: str
    name: str | None = None
    division: str | None = None
    address: str | None = None
    country: str | None = None


@dataclass(frozen=True)
class StorageSpec:
    """One storage option; exactly the field matching `kind` is populated."""

    kind: str
    aggregationFunction: str
    ttl: str | None = None
    start: str | None = None
    purposeCondition: str | None = None
    legalBasisCondition: str | None = None


@dataclass(frozen=True)
class NonDisclosure:
    legalRequirement: bool
    contractualRegulation: bool
    obligationToProvide: bool
    consequences: str


@dataclass(frozen=True)
class DataDisclosedEntry:
    """One disclosed data category and everything attached to it."""

    id: str
    category: str
    purposes: tuple[Purpose, ...]
    legalBases: tuple[LegalBasis, ...]
    legitimateInterests: tuple[LegitimateInterest, ...]
    recipients: tuple[Recipient, ...]
    storage: tuple[StorageSpec, ...]
    nonDisclosure: NonDisclosure


@dataclass(frozen=True)
class FlaggedStatement:
    value: bool
    description: str | None = None


@dataclass(frozen=True)
class ThirdCountryTransfer:
    country: str
    adequacyDecision: FlaggedStatement
    appropriateGuarantees: FlaggedStatement
    presentableRights: FlaggedStatement
    standardDataProtectionClause: FlaggedStatement


@dataclass(frozen=True)
class Fee:
    amount: float
    currency: str


@dataclass(frozen=True)
class AccessAndDataPortability:
    available: bool
    administrativeFee: Fee
    identificationEvidences: tuple[str, ...] = ()
    dataFormats: tuple[str, ...] = ()
    description: str | None = None
    url: str | None = None
    email: str | None = None


@dataclass(frozen=True)
class SourceItem:
    description: str
    publiclyAvailable: bool
    url: str | None = None


@dataclass(frozen=True)
class SourceEntry:
    category: str
    sources: tuple[SourceItem, ...]


@dataclass(frozen=True)
class RightBlock:
    """How a data subject right can be exercised."""

    available: bool
    identificationEvidences: tuple[str, ...] = ()
    description: str | None = None
    url: str | None = None
    email: str | None = None


@dataclass(frozen=True)
class SupervisoryAuthority:
    name: str
    address: str | None = None
    country: str | None = None
    email: str | None = None
    phone: str | None = None


@dataclass(frozen=True)
class RightToComplain(RightBlock):
    supervisoryAuthority: SupervisoryAuthority | None = None


@dataclass(frozen=True)
class AutomatedDecisionMaking:
    inUse: bool
    logicInvolved: str | None = None
    scopeAndIntendedEffects: str | None = None


@dataclass(frozen=True)
class ChangeOfPurpose:
    affectedCategories: tuple[str, ...]
    changedAt: str
    urlOfNewVersion: str


@dataclass(frozen=True)
class TiltDocument:
    meta: Meta
    controller: Controller
    dataProtectionOfficer: DataProtectionOfficer
    dataDisclosed: tuple[DataDisclosedEntry, ...]
    thirdCountryTransfers: tuple[ThirdCountryTransfer, ...]
    accessAndDataPortability: AccessAndDataPortability
    sources: tuple[SourceEntry, ...]
    rightToInformation: RightBlock
    rightToRectificationOrDeletion: RightBlock
    rightToDataPortability: RightBlock
    rightToWithdrawConsent: RightBlock
    rightToComplain: RightToComplain
    automatedDecisionMaking: AutomatedDecisionMaking
    changesOfPurpose: tuple[ChangeOfPurpose, ...]
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        clash = set(self.extensions) & set(RESERVED_BLOCKS)
        if clash:
            raise ValueError(f"extension keys collide with building blocks: {sorted(clash)}")
