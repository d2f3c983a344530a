"""Versioned document store with an HTTP API and webhook notification."""

from .store import ChangeEvent, Store, StoredVersion
from .webhooks import WebhookNotifier, WebhookSubscription
from .api import build_hub, create_app

__all__ = [
    "ChangeEvent",
    "Store",
    "StoredVersion",
    "WebhookNotifier",
    "WebhookSubscription",
    "build_hub",
    "create_app",
]
