"""Synthetic document builders shared across test modules.

Documents are derived from the golden fixture so they stay valid by
construction; callers override just the fields a scenario cares about.
"""

from __future__ import annotations

import copy
import json
import random
from pathlib import Path

from tilt.model.hashing import with_hash
from tilt.model.parse import from_tree, serialize
from tilt.model.types import TiltDocument

GOLDEN_PATH = Path(__file__).parent / "data" / "golden.json"
_GOLDEN_TREE = json.loads(GOLDEN_PATH.read_bytes())


def golden_tree() -> dict:
    return copy.deepcopy(_GOLDEN_TREE)


def doc_from_tree(tree: dict) -> TiltDocument:
    return with_hash(from_tree(tree))


def make_doc(
    doc_id: str,
    controller_name: str,
    *,
    country: str = "DE",
    recipients: tuple = (),
    categories: tuple = ("contact data",),
    url: str | None = None,
    change_url: str | None = None,
) -> TiltDocument:
    """A valid document for one controller disclosing to the recipients.

    ``recipients`` entries are either ``(name, country)`` pairs for named
    organizations or bare category strings for anonymous ones.
    """
    tree = golden_tree()
    tree["meta"]["id"] = doc_id
    tree["meta"]["name"] = f"{controller_name} privacy statement"
    tree["meta"]["url"] = url or f"https://example.org/{doc_id}"
    tree["controller"]["name"] = controller_name
    tree["controller"]["country"] = country
    entry = tree["dataDisclosed"][0]
    entries = []
    for index, category in enumerate(categories):
        item = copy.deepcopy(entry)
        item["id"] = f"{doc_id}-d{index}"
        item["category"] = category
        item["recipients"] = []
        for spec in recipients:
            if isinstance(spec, tuple):
                name, recipient_country = spec
                item["recipients"].append(
                    {"category": "partner", "name": name, "country": recipient_country}
                )
            else:
                item["recipients"].append({"category": spec})
        entries.append(item)
    tree["dataDisclosed"] = entries
    if change_url is None:
        tree["changesOfPurpose"] = []
    else:
        tree["changesOfPurpose"] = [
            {
                "affectedCategories": list(categories),
                "changedAt": "2020-06-04T15:04:13+0000",
                "urlOfNewVersion": change_url,
            }
        ]
    return doc_from_tree(tree)


def random_corpus(rng: random.Random, max_docs: int = 20) -> list[TiltDocument]:
    """A corpus of synthetic documents with overlapping disclosure targets."""
    n_controllers = rng.randint(1, max_docs)
    names = [f"Org {chr(65 + i)}" for i in range(n_controllers)]
    countries = [rng.choice(["DE", "FR", "AT", "NL"]) for _ in names]
    pool_recipients = [f"Vendor {i}" for i in range(rng.randint(0, 6))]
    docs = []
    for i, name in enumerate(names):
        recipients: list = []
        for _ in range(rng.randint(0, 3)):
            kind = rng.random()
            if kind < 0.4 and len(names) > 1:
                j = rng.randrange(len(names))
                if j != i:
                    recipients.append((names[j], countries[j]))
            elif kind < 0.8 and pool_recipients:
                recipients.append((rng.choice(pool_recipients), "US"))
            else:
                recipients.append(rng.choice(["analytics", "advertising", "logistics"]))
        docs.append(
            make_doc(
                f"doc-{i}",
                name,
                country=countries[i],
                recipients=tuple(recipients),
                categories=("contact data", "usage data")[: rng.randint(1, 2)],
            )
        )
    return docs


def serialized(doc: TiltDocument) -> bytes:
    return serialize(doc)


def mutate_tree(rng: random.Random, tree: dict) -> dict:
    """A structurally edited copy; edits mirror real document evolution."""
    out = copy.deepcopy(tree)
    for _ in range(rng.randint(1, 4)):
        choice = rng.randrange(9)
        if choice == 0:
            out["meta"]["name"] = f"Policy rev {rng.randrange(10_000)}"
        elif choice == 1:
            if rng.random() < 0.5:
                out["controller"].pop("division", None)
            else:
                out["controller"]["division"] = rng.choice(["Sales", "Research", "Ops"])
        elif choice == 2:
            out["thirdCountryTransfers"].append({
                "country": rng.choice(["US", "JP", "BR", "IN"]),
                "adequacyDecision": {"value": bool(rng.randrange(2))},
                "appropriateGuarantees": {"value": True, "description": "clauses"},
                "presentableRights": {"value": True},
                "standardDataProtectionClause": {"value": True},
            })
        elif choice == 3:
            if out["thirdCountryTransfers"]:
                out["thirdCountryTransfers"].pop(rng.randrange(len(out["thirdCountryTransfers"])))
        elif choice == 4:
            entry = copy.deepcopy(out["dataDisclosed"][rng.randrange(len(out["dataDisclosed"]))])
            entry["id"] = f"d{rng.randrange(100_000)}"
            entry["category"] = rng.choice(["usage data", "billing data", "location data"])
            out["dataDisclosed"].insert(rng.randrange(len(out["dataDisclosed"]) + 1), entry)
        elif choice == 5:
            if len(out["dataDisclosed"]) > 1:
                out["dataDisclosed"].pop(rng.randrange(len(out["dataDisclosed"])))
        elif choice == 6:
            out["accessAndDataPortability"]["administrativeFee"]["amount"] = (
                rng.choice([0.0, 2.5, 10, 7.25])
            )
        elif choice == 7:
            entry = out["dataDisclosed"][rng.randrange(len(out["dataDisclosed"]))]
            entry["purposes"][0]["description"] = f"purpose text {rng.randrange(1000)}"
        elif choice == 8:
            out["rightToInformation"]["identificationEvidences"] = rng.sample(
                ["id card", "passport", "date of birth", "email check"], rng.randint(0, 4)
            )
    return out


import contextlib
import http.server
import threading


@contextlib.contextmanager
def local_receiver(statuses=None):
    """A loopback HTTP sink recording every POSTed JSON body.

    ``statuses`` optionally scripts the response code per request (default
    200). Yields ``(base_url, requests)`` where requests is a list of
    ``(status_sent, payload)`` tuples in arrival order.
    """
    requests: list = []
    plan = list(statuses or [])
    lock = threading.Lock()

    class Handler(http.server.BaseHTTPRequestHandler):
        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            body = self.rfile.read(length)
            with lock:
                status = plan.pop(0) if plan else 200
                requests.append((status, json.loads(body)))
            self.send_response(status)
            self.end_headers()

        def log_message(self, *args):
            pass

    class Server(http.server.ThreadingHTTPServer):
        daemon_threads = True

    server = Server(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}", requests
    finally:
        server.shutdown()
