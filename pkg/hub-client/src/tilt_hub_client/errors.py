"""Typed errors for hub interactions.

Every non-2xx response maps to exactly one error class; transport
failures raise :class:`ConnectionError`. Callers can therefore handle
hub interactions exhaustively without inspecting status codes.
"""

from __future__ import annotations


class ClientError(Exception):
    """Base class for every error this package raises."""


class ConnectionError(ClientError):  # noqa: A001 - mirrors the wire-level failure
    """The hub could not be reached or the transport failed mid-request."""


class NotFoundError(ClientError):
    """The requested document or version does not exist on the hub (404)."""


class RemoteValidationError(ClientError):
    """The hub rejected the document as invalid (422).

    Carries the hub's full validation report so callers can fix every
    problem in one round trip::

        {"valid": false, "violations": [{"code", "path", "message"}, ...]}
    """

    def __init__(self, report: dict):
        self.report = report
        violations = report.get("violations", [])
        codes = ", ".join(v.get("code", "?") for v in violations)
        super().__init__(f"hub rejected the document: {codes or 'invalid'}")

    def codes(self) -> list[str]:
        return [v.get("code", "?") for v in self.report.get("violations", [])]


class BadRequestError(ClientError):
    """The hub rejected the request itself (400): malformed document
    syntax, unpaired query parameters, or an invalid filter path."""


class HubError(ClientError):
    """Any other non-2xx response, status code attached."""

    def __init__(self, status_code: int, detail: str = ""):
        self.status_code = status_code
        super().__init__(f"hub answered {status_code}" + (f": {detail}" if detail else ""))
