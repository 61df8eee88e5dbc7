"""Poset, complex and matrix serialization: JSON, plain text, DOT, MatrixMarket."""
from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import ParseError
from .poset import Poset

if TYPE_CHECKING:
    from .linalg import IntMatrix
    from .simplicial import SimplicialComplex


def poset_from_json(data: dict | str) -> Poset:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "elements" not in data:
        raise ParseError('poset JSON needs an "elements" list')
    relations = data.get("relations", [])
    try:
        pairs = [(str(x), str(y)) for x, y in relations]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad relation entry: {exc}") from exc
    return Poset.from_relations([str(e) for e in data["elements"]], pairs)


def poset_to_json(P: Poset) -> str:
    return json.dumps(P.to_dict())


def poset_from_text(text: str) -> Poset:
    """One ``x < y`` per line; a lone label declares an isolated element."""
    labels: list[str] = []
    seen: set[str] = set()
    pairs = []

    def note(label: str) -> None:
        if label not in seen:
            seen.add(label)
            labels.append(label)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<" in line:
            parts = [p.strip() for p in line.split("<")]
            if len(parts) != 2 or not all(parts):
                raise ParseError(f"line {lineno}: expected 'x < y', got {raw!r}")
            note(parts[0])
            note(parts[1])
            pairs.append((parts[0], parts[1]))
        elif len(line.split()) == 1:
            note(line)
        else:
            raise ParseError(f"line {lineno}: expected 'x < y', got {raw!r}")
    return Poset.from_relations(labels, pairs)


def poset_to_text(P: Poset) -> str:
    lines = [f"{P.label(i)} < {P.label(j)}" for i, j in P.covers]
    touched = {i for pair in P.covers for i in pair}
    lines += [P.label(i) for i in range(len(P)) if i not in touched]
    return "\n".join(lines) + "\n"


def load_poset(path: str | Path) -> Poset:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return poset_from_json(text)
    return poset_from_text(text)


def poset_to_dot(P: Poset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for label in P.elements:
        lines.append(f"  {json.dumps(label)};")
    for i, j in P.covers:
        lines.append(f"  {json.dumps(P.label(i))} -> {json.dumps(P.label(j))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_from_json(data: list | str) -> "SimplicialComplex":
    from .simplicial import SimplicialComplex

    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ParseError("complex JSON must be a list of maximal simplices")
    return SimplicialComplex.from_maximal([[str(v) for v in s] for s in data])


def complex_to_json(K: "SimplicialComplex") -> str:
    return json.dumps([[K.vertices[v] for v in s] for s in K.maximal_simplices()])


def complex_to_dot(K: "SimplicialComplex", name: str = "skeleton") -> str:
    lines = [f"graph {name} {{"]
    for label in K.vertices:
        lines.append(f"  {json.dumps(label)};")
    for s in K.simplices_of_dim(1):
        u, v = (K.vertices[x] for x in s)
        lines.append(f"  {json.dumps(u)} -- {json.dumps(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_to_market(A: "IntMatrix", comment: str = "") -> str:
    entries = sorted((r, c, v) for c, col in enumerate(A.columns) for r, v in col.items())
    lines = ["%%MatrixMarket matrix coordinate integer general"]
    if comment:
        lines += [f"% {line}" for line in comment.splitlines()]
    lines.append(f"{A.rows} {A.cols} {len(entries)}")
    lines += [f"{r + 1} {c + 1} {v}" for r, c, v in entries]
    return "\n".join(lines) + "\n"


def matrix_from_market(text: str) -> "IntMatrix":
    from .linalg import IntMatrix

    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
    if not lines:
        raise ParseError("empty MatrixMarket input")
    try:
        rows, cols, _ = (int(t) for t in lines[0].split())
        A = IntMatrix.zeros(rows, cols)
        for ln in lines[1:]:
            r, c, v = (int(t) for t in ln.split())
            A.add(r - 1, c - 1, v)
    except ValueError as exc:
        raise ParseError(f"bad MatrixMarket entry: {exc}") from exc
    return A

