"""Webhook subscriptions and asynchronous change-event delivery.

Subscriptions pair a target URL with an optional path-prefix filter.
An empty filter matches every update; otherwise the subscription fires
when any added, removed, or changed path in the event starts with the
filter, compared component-wise (``dataDisclosed`` is a prefix of
``dataDisclosed[3].category`` but not of ``dataDisclosedX``).

Deliveries run on a background worker: each notification is POSTed as
JSON and retried with exponential backoff before being dropped.
"""

from __future__ import annotations

import json
import logging
import queue
import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

import httpx

from ..errors import BadFilter, BadUrl, PathError
from ..paths import parse_path, prefix_match
from ..validation.formats import is_http_url
from .store import ChangeEvent

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WebhookSubscription:
    id: str
    url: str
    pathPrefixFilter: str

    def to_obj(self) -> dict:
        return {"id": self.id, "url": self.url, "filter": self.pathPrefixFilter}


class WebhookNotifier:
    """Keeps subscriptions on disk and delivers matching change events."""

    def __init__(
        self,
        data_dir: str | Path,
        *,
        attempts: int = 3,
        backoff_base: float = 1.0,
        timeout: float = 5.0,
    ) -> None:
        self._path = Path(data_dir) / "webhooks.json"
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._attempts = attempts
        self._backoff_base = backoff_base
        self._timeout = timeout
        self._mutex = threading.Lock()
        self._subs: dict[str, tuple[WebhookSubscription, tuple]] = {}
        self._queue: queue.Queue = queue.Queue()
        self._load()
        self._worker = threading.Thread(target=self._deliver_loop, daemon=True)
        self._worker.start()

    # -- subscription management ----------------------------------------

    def _load(self) -> None:
        if not self._path.exists():
            return
        obj = json.loads(self._path.read_text(encoding="utf-8"))
        for entry in obj.get("subscriptions", []):
            sub = WebhookSubscription(entry["id"], entry["url"], entry.get("filter", ""))
            self._subs[sub.id] = (sub, parse_path(sub.pathPrefixFilter))

    def _save(self) -> None:
        payload = {"subscriptions": [sub.to_obj() for sub, _ in self._subs.values()]}
        tmp = self._path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
        tmp.replace(self._path)

    def register(self, url: str, path_prefix_filter: str = "") -> WebhookSubscription:
        if not is_http_url(url):
            raise BadUrl(f"webhook target must be an absolute http(s) URL, got {url!r}")
        try:
            prefix = parse_path(path_prefix_filter)
        except PathError as exc:
            raise BadFilter(str(exc)) from exc
        sub = WebhookSubscription(uuid.uuid4().hex, url, path_prefix_filter)
        with self._mutex:
            self._subs[sub.id] = (sub, prefix)
            self._save()
        return sub

    def unregister(self, subscription_id: str) -> bool:
        with self._mutex:
            if subscription_id not in self._subs:
                return False
            del self._subs[subscription_id]
            self._save()
        return True

    def subscriptions(self) -> list[WebhookSubscription]:
        with self._mutex:
            return [sub for sub, _ in self._subs.values()]

    # -- publication ------------------------------------------------------

    def publish(self, event: ChangeEvent) -> None:
        """Queue the event for every matching subscription.

        The very first version of a document is never delivered: there is
        no previous version to have subscribed against, and a full-document
        diff would drown every filter.
        """
        if event.fromVersion is None:
            return
        touched = [
            parse_path(path)
            for path in (
                [p for p, _ in event.changes.added]
                + [p for p, _ in event.changes.removed]
                + [p for p, _, _ in event.changes.changed]
            )
        ]
        payload = event.to_obj()
        with self._mutex:
            targets = [
                sub.url
                for sub, prefix in self._subs.values()
                if not prefix or any(prefix_match(prefix, path) for path in touched)
            ]
        for url in targets:
            self._queue.put((url, payload, 1))

    # -- delivery ----------------------------------------------------------

    def _deliver_loop(self) -> None:
        while True:
            url, payload, attempt = self._queue.get()
            try:
                response = httpx.post(url, json=payload, timeout=self._timeout)
                delivered = 200 <= response.status_code < 300
            except httpx.HTTPError:
                delivered = False
            if not delivered and attempt < self._attempts:
                time.sleep(self._backoff_base * (2 ** (attempt - 1)))
                # Re-enqueue before task_done so flush() keeps waiting
                # for the retry instead of returning early.
                self._queue.put((url, payload, attempt + 1))
            elif not delivered:
                log.warning("webhook delivery to %s failed after %d attempts", url, attempt)
            self._queue.task_done()

    def flush(self) -> None:
        """Block until every queued delivery has finished or given up."""
        self._queue.join()
