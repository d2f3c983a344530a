"""Field path language shared by the validator, diff and hub filters.

A path is a dotted chain of segments. Each segment is a field name
optionally followed by list indexes in brackets:

    meta.hash
    dataDisclosed[3].purposes[0].purpose
    dataDisclosed[*].legalBases[*].reference
    **.email

`[*]` matches every index of a list. A leading `**` segment makes the
rest of the path a suffix pattern matched at any depth. Parsed paths are
tuples whose components are strings (field names), ints (indexes) or the
two wildcard sentinels below.
"""

import re

from .errors import PathError


class _Sentinel:
    def __init__(self, token: str):
        self.token = token

    def __repr__(self):
        return self.token


STAR = _Sentinel("[*]")
ANY_PREFIX = _Sentinel("**")

Component = str | int | _Sentinel
Path = tuple[Component, ...]

_SEGMENT = re.compile(r"([^.\[\]]+)((?:\[(?:\d+|\*)\])*)$")
_INDEX = re.compile(r"\[(\d+|\*)\]")


def parse_path(text: str) -> Path:
    """Parse a path string into a component tuple.

    The empty string parses to the empty path, which acts as a
    match-everything prefix for hub filters.
    """
    if text == "":
        return ()
    components: list[Component] = []
    for pos, segment in enumerate(text.split(".")):
        if segment == "**":
            if pos != 0:
                raise PathError(f"'**' is only allowed as the leading segment: {text!r}")
            components.append(ANY_PREFIX)
            continue
        m = _SEGMENT.match(segment)
        if m is None:
            raise PathError(f"malformed path segment {segment!r} in {text!r}")
        components.append(m.group(1))
        for idx in _INDEX.findall(m.group(2)):
            components.append(STAR if idx == "*" else int(idx))
    return tuple(components)


def format_path(path: Path) -> str:
    out: list[str] = []
    for comp in path:
        if isinstance(comp, int):
            out.append(f"[{comp}]")
        elif comp is STAR:
            out.append("[*]")
        elif comp is ANY_PREFIX:
            out.append("**" if not out else ".**")
        else:
            out.append(comp if not out else f".{comp}")
    return "".join(out)


def resolve(tree, path: Path) -> list[tuple[Path, object]]:
    """Expand a path (no `**`) against a JSON tree.

    Returns every (concrete path, value) pair the path reaches; absent
    fields and out-of-range indexes simply yield nothing.
    """
    results: list[tuple[Path, object]] = []

    def go(node, remaining: Path, taken: tuple):
        if not remaining:
            results.append((taken, node))
            return
        head, rest = remaining[0], remaining[1:]
        if head is ANY_PREFIX:
            raise PathError("'**' paths cannot be resolved directly")
        if head is STAR:
            if isinstance(node, list):
                for i, item in enumerate(node):
                    go(item, rest, taken + (i,))
        elif isinstance(head, int):
            if isinstance(node, list) and 0 <= head < len(node):
                go(node[head], rest, taken + (head,))
        else:
            if isinstance(node, dict) and head in node:
                go(node[head], rest, taken + (head,))

    go(tree, path, ())
    return results


def walk(tree, prefix: Path = ()):
    """Yield (path, value) for every node of a JSON tree, root included."""
    yield prefix, tree
    if isinstance(tree, dict):
        for key in sorted(tree):
            yield from walk(tree[key], prefix + (key,))
    elif isinstance(tree, list):
        for i, item in enumerate(tree):
            yield from walk(item, prefix + (i,))


def suffix_match(suffix: Path, path: Path) -> bool:
    if len(suffix) > len(path):
        return False
    return all(_component_matches(p, a) for p, a in zip(suffix, path[len(path) - len(suffix):]))


def prefix_match(prefix: Path, path: Path) -> bool:
    """Component-wise prefix test; the empty prefix matches everything."""
    if len(prefix) > len(path):
        return False
    return all(_component_matches(p, a) for p, a in zip(prefix, path))


def _component_matches(pattern: Component, actual: Component) -> bool:
    if pattern is STAR:
        return isinstance(actual, int)
    return pattern == actual


def sort_key(path: Path) -> tuple:
    """Total order over concrete paths (names and indexes mix freely)."""
    return tuple((0, comp, "") if isinstance(comp, int) else (1, -1, str(comp)) for comp in path)
