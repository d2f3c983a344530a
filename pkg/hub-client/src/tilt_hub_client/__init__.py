"""Thin SDK for the tilt document hub.

Speaks the hub's HTTP API and nothing else: push documents (validated
remotely, with the full report surfaced on rejection), pull them back
by id and version, and run field queries.

    from tilt_hub_client import ClientConfig, push, pull, query

    config = ClientConfig("http://127.0.0.1:8383")
    push(config, document)
    document = pull(config, "f1424f86-...")
    hits = query(config, [("controller.country", "DE")])
"""

from .client import ClientConfig, pull, push, query
from .errors import (
    BadRequestError,
    ClientError,
    ConnectionError,
    HubError,
    NotFoundError,
    RemoteValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "BadRequestError",
    "ClientConfig",
    "ClientError",
    "ConnectionError",
    "HubError",
    "NotFoundError",
    "RemoteValidationError",
    "pull",
    "push",
    "query",
]
