"""Structural diff between documents and its inverse, apply.

A ChangeSet stores three kinds of operations. Removed paths address the
*old* document; added and changed paths address the *new* one. Applying
a ChangeSet therefore runs removals first (deepest and highest index
first, so earlier removals never shift later ones), then additions in
ascending path order (so every list insert lands once everything to its
left is in place), then value changes on the now fully reshaped tree.

Lists are compared positionally, with one exception: the dataDisclosed
list is matched by entry id whenever both sides carry unique ids and the
shared ids appear in the same relative order. Under that matching,
entries keep their identity across insertions and removals, so an
unrelated new entry does not turn every following entry into a change.
"""

import json
from dataclasses import dataclass, field
from typing import Any

from .. import paths as p
from ..errors import PathError
from .parse import from_tree, to_tree
from .types import TiltDocument


@dataclass(frozen=True)
class ChangeSet:
    added: tuple[tuple[str, Any], ...] = ()
    removed: tuple[tuple[str, Any], ...] = ()
    changed: tuple[tuple[str, Any, Any], ...] = ()

    @property
    def empty(self) -> bool:
        return not (self.added or self.removed or self.changed)

    def to_obj(self) -> dict:
        return {
            "added": [{"path": path, "value": value} for path, value in self.added],
            "removed": [{"path": path, "value": value} for path, value in self.removed],
            "changed": [
                {"path": path, "old": old, "new": new} for path, old, new in self.changed
            ],
        }


@dataclass
class _Ops:
    added: list = field(default_factory=list)
    removed: list = field(default_factory=list)
    changed: list = field(default_factory=list)


def _scalar_eq(a, b) -> bool:
    if isinstance(a, str) and isinstance(b, str):
        return a == b
    # json encoding as the equality notion: distinguishes 1/1.0/true/-0.0
    return json.dumps(a) == json.dumps(b)


def _kind(value) -> str:
    if isinstance(value, dict):
        return "object"
    if isinstance(value, list):
        return "array"
    return "scalar"


def _entry_ids(items: list) -> list | None:
    ids = []
    for item in items:
        if not isinstance(item, dict):
            return None
        entry_id = item.get("id")
        if not isinstance(entry_id, str) or not entry_id:
            return None
        ids.append(entry_id)
    if len(set(ids)) != len(ids):
        return None
    return ids


def _walk(a, b, a_path: tuple, b_path: tuple, ops: _Ops):
    if _kind(a) != _kind(b):
        ops.changed.append((b_path, a, b))
        return
    if isinstance(a, dict):
        for key in sorted(set(a) | set(b)):
            if key not in b:
                ops.removed.append((a_path + (key,), a[key]))
            elif key not in a:
                ops.added.append((b_path + (key,), b[key]))
            else:
                _walk(a[key], b[key], a_path + (key,), b_path + (key,), ops)
        return
    if isinstance(a, list):
        if a_path == ("dataDisclosed",) == b_path:
            ids_a, ids_b = _entry_ids(a), _entry_ids(b)
            if ids_a is not None and ids_b is not None:
                shared_b = [i for i in ids_b if i in set(ids_a)]
                shared_a = [i for i in ids_a if i in set(ids_b)]
                if shared_a == shared_b:
                    _walk_by_id(a, b, ids_a, ids_b, a_path, ops)
                    return
        common = min(len(a), len(b))
        for i in range(common):
            _walk(a[i], b[i], a_path + (i,), b_path + (i,), ops)
        for i in range(common, len(a)):
            ops.removed.append((a_path + (i,), a[i]))
        for i in range(common, len(b)):
            ops.added.append((b_path + (i,), b[i]))
        return
    if not _scalar_eq(a, b):
        ops.changed.append((b_path, a, b))


def _walk_by_id(a: list, b: list, ids_a: list, ids_b: list, path: tuple, ops: _Ops):
    index_a = {entry_id: i for i, entry_id in enumerate(ids_a)}
    index_b = {entry_id: i for i, entry_id in enumerate(ids_b)}
    for i, entry_id in enumerate(ids_a):
        if entry_id not in index_b:
            ops.removed.append((path + (i,), a[i]))
    for j, entry_id in enumerate(ids_b):
        if entry_id not in index_a:
            ops.added.append((path + (j,), b[j]))
        else:
            i = index_a[entry_id]
            _walk(a[i], b[j], path + (i,), path + (j,), ops)


def diff_trees(a_tree, b_tree) -> ChangeSet:
    """Diff two decoded JSON trees."""
    ops = _Ops()
    _walk(a_tree, b_tree, (), (), ops)
    ops.added.sort(key=lambda op: p.sort_key(op[0]))
    ops.removed.sort(key=lambda op: p.sort_key(op[0]))
    ops.changed.sort(key=lambda op: p.sort_key(op[0]))
    return ChangeSet(
        added=tuple((p.format_path(path), value) for path, value in ops.added),
        removed=tuple((p.format_path(path), value) for path, value in ops.removed),
        changed=tuple(
            (p.format_path(path), old, new) for path, old, new in ops.changed
        ),
    )


def diff(a: TiltDocument, b: TiltDocument) -> ChangeSet:
    """Diff two documents over their canonical trees."""
    return diff_trees(to_tree(a), to_tree(b))


def _navigate(tree, path: p.Path):
    node = tree
    for comp in path[:-1]:
        if isinstance(comp, int):
            if not isinstance(node, list) or not 0 <= comp < len(node):
                raise PathError(f"no value at {p.format_path(path)}")
            node = node[comp]
        else:
            if not isinstance(node, dict) or comp not in node:
                raise PathError(f"no value at {p.format_path(path)}")
            node = node[comp]
    return node


def _remove(tree, path: p.Path):
    parent = _navigate(tree, path)
    last = path[-1]
    if isinstance(last, int):
        if not isinstance(parent, list) or not 0 <= last < len(parent):
            raise PathError(f"no value at {p.format_path(path)}")
        del parent[last]
    else:
        if not isinstance(parent, dict) or last not in parent:
            raise PathError(f"no value at {p.format_path(path)}")
        del parent[last]


def _insert(tree, path: p.Path, value):
    parent = _navigate(tree, path)
    last = path[-1]
    if isinstance(last, int):
        if not isinstance(parent, list) or not 0 <= last <= len(parent):
            raise PathError(f"cannot insert at {p.format_path(path)}")
        parent.insert(last, value)
    else:
        if not isinstance(parent, dict):
            raise PathError(f"cannot insert at {p.format_path(path)}")
        parent[last] = value


def _assign(tree, path: p.Path, value):
    parent = _navigate(tree, path)
    last = path[-1]
    if isinstance(last, int):
        if not isinstance(parent, list) or not 0 <= last < len(parent):
            raise PathError(f"no value at {p.format_path(path)}")
        parent[last] = value
    else:
        if not isinstance(parent, dict) or last not in parent:
            raise PathError(f"no value at {p.format_path(path)}")
        parent[last] = value


def apply_changeset(doc: TiltDocument, changes: ChangeSet) -> TiltDocument:
    """Apply a ChangeSet produced by diff(a, b) to a, yielding b."""
    tree = to_tree(doc)
    removals = sorted(
        ((p.parse_path(path), value) for path, value in changes.removed),
        key=lambda op: p.sort_key(op[0]),
        reverse=True,
    )
    additions = sorted(
        ((p.parse_path(path), value) for path, value in changes.added),
        key=lambda op: p.sort_key(op[0]),
    )
    for path, _ in removals:
        _remove(tree, path)
    for path, value in additions:
        _insert(tree, path, value)
    for path_text, _, new in changes.changed:
        _assign(tree, p.parse_path(path_text), new)
    return from_tree(tree)
