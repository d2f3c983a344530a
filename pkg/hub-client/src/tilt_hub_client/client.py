"""Operations against a running document hub.

The hub is the single validation authority: this client serializes
documents to the wire format and maps responses to typed errors, but
never re-implements validation rules locally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from urllib.parse import urlsplit

import httpx

from .errors import (
    BadRequestError,
    ConnectionError,
    HubError,
    NotFoundError,
    RemoteValidationError,
)


@dataclass(frozen=True)
class ClientConfig:
    """Where and how to reach the hub.

    ``baseUrl`` must be an absolute http(s) URL; a trailing slash is
    tolerated. One in-flight request per config is the supported use.
    """

    baseUrl: str
    timeoutSeconds: float = 10.0

    def __post_init__(self):
        parts = urlsplit(self.baseUrl)
        if parts.scheme not in ("http", "https") or not parts.netloc:
            raise ValueError(f"baseUrl must be an absolute http(s) URL, got {self.baseUrl!r}")
        if self.timeoutSeconds <= 0:
            raise ValueError("timeoutSeconds must be positive")

    def endpoint(self, path: str) -> str:
        return self.baseUrl.rstrip("/") + path


def _encode(document: dict) -> bytes:
    """Serialize a document tree to wire bytes (UTF-8 JSON)."""
    return json.dumps(document, ensure_ascii=False, allow_nan=False).encode("utf-8")


def _request(config: ClientConfig, method: str, path: str, **kwargs) -> httpx.Response:
    try:
        response = httpx.request(
            method, config.endpoint(path), timeout=config.timeoutSeconds, **kwargs
        )
    except httpx.HTTPError as exc:
        raise ConnectionError(f"cannot reach hub at {config.baseUrl}: {exc}") from exc
    if response.is_success:
        return response
    raise _error_for(response)


def _error_for(response: httpx.Response) -> Exception:
    try:
        detail = response.json()
    except ValueError:
        detail = {}
    if response.status_code == 404:
        return NotFoundError(detail.get("error", "not found"))
    if response.status_code == 422:
        return RemoteValidationError(detail)
    if response.status_code == 400:
        return BadRequestError(detail.get("error", "bad request"))
    return HubError(response.status_code, detail.get("error", ""))


def push(config: ClientConfig, document: dict) -> dict:
    """Store one document; returns ``{documentId, version}`` as assigned.

    Raises :class:`RemoteValidationError` with the hub's report when the
    document is invalid, :class:`BadRequestError` when it is not even
    parseable, and :class:`ConnectionError` when the hub is unreachable.
    """
    response = _request(
        config, "POST", "/documents",
        content=_encode(document),
        headers={"content-type": "application/json"},
    )
    metadata = response.json()
    return {"documentId": metadata["documentId"], "version": metadata["version"]}


def pull(config: ClientConfig, document_id: str, version: int | None = None) -> dict:
    """Fetch a document tree: the latest version, or a specific one."""
    path = f"/documents/{document_id}"
    if version is not None:
        path = f"{path}/versions/{version}"
    response = _request(config, "GET", path)
    return response.json()


def query(config: ClientConfig, filters: list[tuple[str, str]] | None = None) -> list[dict]:
    """List documents whose fields match every (fieldPath, value) filter.

    An empty or absent filter list returns every document. Each row is
    ``{documentId, version}`` for the latest version.
    """
    params = []
    for field_path, value in filters or []:
        params.append(("path", field_path))
        params.append(("value", value))
    response = _request(config, "GET", "/documents", params=params)
    return response.json()
