"""Formal integer combinations of cells (cubes or simplices) of a fixed dimension."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Iterator, Mapping


class Chain:
    """Sparse ``{cell: coefficient}`` map with no zero coefficients stored.

    Cells are plain tuples of element ids (cube corners or simplex vertices).
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Hashable, int] | Iterable[tuple[Hashable, int]] = ()):
        self.dim = dim
        self.terms: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for cell, k in items:
            self.add(cell, k)

    def add(self, cell, k: int) -> None:
        v = self.terms.get(cell, 0) + k
        if v:
            self.terms[cell] = v
        else:
            self.terms.pop(cell, None)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, cell) -> int:
        return self.terms.get(cell, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Chain):
            return self.terms == other.terms and (self.dim == other.dim or not self.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "Chain") -> "Chain":
        out = Chain(self.dim, self.terms)
        for cell, k in other:
            out.add(cell, k)
        return out

    def __neg__(self) -> "Chain":
        return Chain(self.dim, {c: -k for c, k in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, k: int) -> "Chain":
        return Chain(self.dim, {c: k * v for c, v in self.terms.items()})

    def map(self, f: Callable[[Hashable], "Chain"], dim: int) -> "Chain":
        """Extend ``f`` linearly over the chain."""
        out = Chain(dim)
        for cell, k in self:
            for image, v in f(cell):
                out.add(image, k * v)
        return out

    def to_vector(self, index: Mapping[Hashable, int]) -> dict[int, int]:
        return {index[cell]: k for cell, k in self.terms.items()}

    def relabel(self, labels) -> list[tuple[list[str], int]]:
        return [([labels[x] for x in cell], k) for cell, k in sorted(self.terms.items())]

    def __repr__(self) -> str:
        if not self.terms:
            return f"Chain({self.dim}, 0)"
        body = " ".join(f"{'+' if k > 0 else '-'}{abs(k) if abs(k) != 1 else ''}{cell}"
                        for cell, k in sorted(self.terms.items()))
        return f"Chain({self.dim}, {body})"
