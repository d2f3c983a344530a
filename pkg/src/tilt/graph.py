"""Data-sharing graph over a corpus of documents.

Entity resolution runs in two passes: every document's controller is
registered first, then recipients resolve against the controller set. A
named recipient whose case-folded, whitespace-normalized name+country
matches a controller merges with that controller node; named recipients
merge with each other the same way. Category-only recipients never
merge — each occurrence is its own node.
"""

import json
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotFound
from .model.types import TiltDocument

KIND_SHAPES = {
    "controller": "box",
    "recipient": "ellipse",
    "dataCategory": "folder",
    "purpose": "diamond",
}


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    label: str
    country: str | None = None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    kind: str
    dataCategory: str | None
    sourceDocumentId: str


@dataclass(frozen=True)
class SharingGraph:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]

    def node_ids(self) -> set[str]:
        return {n.id for n in self.nodes}

    def controllers(self) -> tuple[Node, ...]:
        return tuple(n for n in self.nodes if n.kind == "controller")


def _norm(text: str) -> str:
    return re.sub(r"\s+", " ", text.strip()).casefold()


def _org_key(name: str, country: str | None) -> str:
    return f"{_norm(name)}|{_norm(country or '')}"


class _Builder:
    def __init__(self):
        self.kinds: dict[str, str] = {}
        self.labels: dict[str, list[str]] = defaultdict(list)
        self.countries: dict[str, list[str]] = defaultdict(list)
        self.edges: set[Edge] = set()

    def node(self, node_id: str, kind: str, label: str, country: str | None):
        # controllers win kind conflicts; they are registered first
        self.kinds.setdefault(node_id, kind)
        if label:
            self.labels[node_id].append(label)
        if country:
            self.countries[node_id].append(country)

    def finish(self) -> SharingGraph:
        nodes = tuple(
            Node(
                id=node_id,
                kind=kind,
                label=min(self.labels[node_id]) if self.labels[node_id] else "",
                country=min(self.countries[node_id]) if self.countries[node_id] else None,
            )
            for node_id, kind in sorted(self.kinds.items())
        )
        return SharingGraph(nodes=nodes, edges=tuple(sorted(
            self.edges,
            key=lambda e: (e.source, e.target, e.kind, e.dataCategory or "", e.sourceDocumentId),
        )))


def build_graph(corpus: Sequence[TiltDocument]) -> SharingGraph:
    """Resolve entities and connect controllers, recipients, categories, purposes."""
    b = _Builder()
    controller_keys = set()
    for doc in corpus:
        key = _org_key(doc.controller.name, doc.controller.country)
        controller_keys.add(key)
        b.node(f"org:{key}", "controller", doc.controller.name, doc.controller.country)
    for doc in corpus:
        doc_id = doc.meta.id
        controller_id = f"org:{_org_key(doc.controller.name, doc.controller.country)}"
        for entry_index, entry in enumerate(doc.dataDisclosed):
            category_id = f"category:{_norm(entry.category)}"
            b.node(category_id, "dataCategory", entry.category, None)
            b.edges.add(Edge(controller_id, category_id, "processes",
                             entry.category, doc_id))
            for purpose in entry.purposes:
                purpose_id = f"purpose:{_norm(purpose.purpose)}"
                b.node(purpose_id, "purpose", purpose.purpose, None)
                b.edges.add(Edge(category_id, purpose_id, "forPurpose",
                                 entry.category, doc_id))
            for recipient_index, recipient in enumerate(entry.recipients):
                if recipient.name:
                    key = _org_key(recipient.name, recipient.country)
                    recipient_id = f"org:{key}"
                    kind = "controller" if key in controller_keys else "recipient"
                    b.node(recipient_id, kind, recipient.name, recipient.country)
                else:
                    # category-only recipients stay distinct per occurrence
                    recipient_id = f"recipient:{doc_id}:{entry_index}:{recipient_index}"
                    b.node(recipient_id, "recipient", recipient.category, recipient.country)
                b.edges.add(Edge(controller_id, recipient_id, "disclosesTo",
                                 entry.category, doc_id))
    return b.finish()


def classify_controllers(graph: SharingGraph) -> dict[str, str]:
    """Component size over controller adjacency: 1/2/≥3 → isolated/linked/networked.

    Two controllers are adjacent when one discloses to the other or both
    disclose to a common (non-controller) recipient node.
    """
    kind_of = {n.id: n.kind for n in graph.nodes}
    controller_ids = [n.id for n in graph.nodes if n.kind == "controller"]
    neighbors: dict[str, set[str]] = {c: set() for c in controller_ids}
    disclosers: dict[str, set[str]] = defaultdict(set)
    for edge in graph.edges:
        if edge.kind != "disclosesTo":
            continue
        if kind_of.get(edge.target) == "controller":
            if edge.source != edge.target:
                neighbors[edge.source].add(edge.target)
                neighbors[edge.target].add(edge.source)
        else:
            disclosers[edge.target].add(edge.source)
    for sharing in disclosers.values():
        group = sorted(sharing)
        for i, a in enumerate(group):
            for c in group[i + 1:]:
                neighbors[a].add(c)
                neighbors[c].add(a)
    classification: dict[str, str] = {}
    seen: set[str] = set()
    for start in controller_ids:
        if start in seen:
            continue
        component = []
        stack = [start]
        seen.add(start)
        while stack:
            current = stack.pop()
            component.append(current)
            for other in neighbors[current]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        size = len(component)
        kind = "isolated" if size == 1 else "linked" if size == 2 else "networked"
        for node_id in component:
            classification[node_id] = kind
    return classification


def follow_chain(corpus: Sequence[TiltDocument], start: str) -> list[TiltDocument]:
    """Follow notification-on-change links from the document with id `start`.

    Each hop resolves the last change's urlOfNewVersion against the
    corpus documents' meta.url; stops on unresolvable URLs and cycles.
    """
    by_id: dict[str, TiltDocument] = {}
    by_url: dict[str, TiltDocument] = {}
    for doc in corpus:
        by_id.setdefault(doc.meta.id, doc)
        by_url.setdefault(doc.meta.url, doc)
    current = by_id.get(start)
    if current is None:
        raise NotFound(f"no document with id {start!r} in the corpus")
    chain: list[TiltDocument] = []
    visited: set[str] = set()
    while current is not None and current.meta.id not in visited:
        chain.append(current)
        visited.add(current.meta.id)
        if not current.changesOfPurpose:
            break
        current = by_url.get(current.changesOfPurpose[-1].urlOfNewVersion)
    return chain


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export(graph: SharingGraph, format: str) -> bytes:
    """Render the graph as Graphviz DOT or as stable-sorted JSON."""
    if format == "dot":
        lines = ["digraph tilt {"]
        for node in sorted(graph.nodes, key=lambda n: n.id):
            lines.append(
                f"  {_dot_quote(node.id)} [label={_dot_quote(node.label)}, "
                f"shape={KIND_SHAPES[node.kind]}];"
            )
        for edge in graph.edges:
            lines.append(
                f"  {_dot_quote(edge.source)} -> {_dot_quote(edge.target)} "
                f"[label={_dot_quote(edge.kind)}];"
            )
        return ("\n".join(lines) + "\n}\n").encode("utf-8") if len(lines) > 1 \
            else b"digraph tilt {\n}\n"
    if format == "json":
        obj = {
            "nodes": [
                {k: v for k, v in (("id", n.id), ("kind", n.kind), ("label", n.label),
                                   ("country", n.country)) if v is not None}
                for n in sorted(graph.nodes, key=lambda n: n.id)
            ],
            "edges": [
                {k: v for k, v in (("source", e.source), ("target", e.target),
                                   ("kind", e.kind), ("dataCategory", e.dataCategory),
                                   ("sourceDocumentId", e.sourceDocumentId)) if v is not None}
                for e in graph.edges
            ],
        }
        return json.dumps(obj, ensure_ascii=False, indent=2).encode("utf-8")
    raise ValueError(f"format must be dot or json, got {format!r}")
