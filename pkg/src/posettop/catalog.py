"""Built-in example posets addressable by name (``chain3``, ``circle4``...)."""
from __future__ import annotations

import re
import string

from .errors import UnknownLabel
from .poset import Poset, boolean_cube, fence

CIRCLE4 = (
    list("abcd"),
    [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
)
SPHERE6 = (
    list("abcdef"),
    [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
     ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")],
)
# a < b < d and c < d: the poset with a maximum used for the trivial-homotopy example
MAX5 = (
    list("abcd"),
    [("a", "b"), ("b", "d"), ("c", "d")],
)

NAMES = ("chain{n}", "fence{p}", "circle4", "sphere6", "max5", "qcube{n}")


def _chain_labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [str(i) for i in range(n)]


def builtin(name: str) -> Poset:
    if name == "circle4":
        return Poset.from_relations(*CIRCLE4)
    if name == "sphere6":
        return Poset.from_relations(*SPHERE6)
    if name == "max5":
        return Poset.from_relations(*MAX5)
    m = re.fullmatch(r"(chain|fence|qcube)(\d+)", name)
    if m:
        kind, k = m.group(1), int(m.group(2))
        if kind == "chain":
            if k < 1:
                raise UnknownLabel(name)
            labels = _chain_labels(k)
            return Poset.from_relations(labels, list(zip(labels, labels[1:])))
        if kind == "fence":
            return fence(k)
        return boolean_cube(k)
    raise UnknownLabel(f"unknown builtin {name!r}; known: {', '.join(NAMES)}")
