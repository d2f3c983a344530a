"""Compact document summaries for human review."""

from __future__ import annotations

import json

from .model.types import TiltDocument


def summarize(doc: TiltDocument) -> dict:
    """Reduce a document to the facts a reviewer checks first."""
    categories = [entry.category for entry in doc.dataDisclosed]
    transfer_countries = [t.country for t in doc.thirdCountryTransfers]
    return {
        "documentId": doc.meta.id,
        "name": doc.meta.name,
        "language": doc.meta.language,
        "status": doc.meta.status,
        "controller": {"name": doc.controller.name, "country": doc.controller.country},
        "dataCategories": categories,
        "recipientCount": sum(len(entry.recipients) for entry in doc.dataDisclosed),
        "thirdCountryTransfers": {
            "count": len(doc.thirdCountryTransfers),
            "countries": transfer_countries,
        },
        "automatedDecisionMaking": doc.automatedDecisionMaking.inUse,
        "dpoContact": doc.dataProtectionOfficer.email,
    }


def render_text(summary: dict) -> str:
    """Render the summary as stable, grep-friendly lines."""
    categories = summary["dataCategories"]
    transfers = summary["thirdCountryTransfers"]
    controller = summary["controller"]

    category_note = f" ({', '.join(categories)})" if categories else ""
    transfer_note = f" ({', '.join(transfers['countries'])})" if transfers["countries"] else ""
    adm = "yes" if summary["automatedDecisionMaking"] else "no"

    lines = [
        f"document: {summary['name']} [{summary['documentId']}]",
        f"status: {summary['status']} (language: {summary['language']})",
        f"controller: {controller['name']} ({controller['country']})",
        f"data categories: {len(categories)}{category_note}",
        f"recipients: {summary['recipientCount']}",
        f"third country transfers: {transfers['count']}{transfer_note}",
        f"automated decision making: {adm}",
        f"dpo contact: {summary['dpoContact']}",
    ]
    return "\n".join(lines) + "\n"


def render_json(summary: dict) -> str:
    return json.dumps(summary, ensure_ascii=False, indent=2) + "\n"
