"""Finite posets: construction, order queries, predicates and constructions.

Elements are opaque string labels. Internally every element is a dense
integer id following input order; the order relation is kept as one
bitmask per element (bit ``j`` of ``up[i]`` is set iff ``i <= j``).
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Sequence

import numpy as np

from .errors import CycleDetected, DuplicateLabel, NotHomogeneous, UnknownLabel


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Poset:
    """Immutable finite partial order.

    Build with :meth:`from_relations` (labels plus any generating set of
    strict relations); the raw constructor takes closed up-set bitmasks.
    """

    def __init__(self, elements: Sequence[str], up: Sequence[int]):
        self.elements: tuple[str, ...] = tuple(elements)
        self._index = {label: i for i, label in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            seen = set()
            for label in self.elements:
                if label in seen:
                    raise DuplicateLabel(label)
                seen.add(label)
        self._up: tuple[int, ...] = tuple(up)
        down = [0] * len(self.elements)
        for i, mask in enumerate(self._up):
            for j in _bits(mask):
                down[j] |= 1 << i
        self._down: tuple[int, ...] = tuple(down)

    # construction ---------------------------------------------------------

    @classmethod
    def from_relations(cls, labels: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "Poset":
        """Close ``pairs`` (meaning ``x < y``) transitively and check antisymmetry."""
        labels = [str(x) for x in labels]
        index: dict[str, int] = {}
        for i, label in enumerate(labels):
            if label in index:
                raise DuplicateLabel(label)
            index[label] = i
        n = len(labels)
        succ: list[set[int]] = [set() for _ in range(n)]
        for x, y in pairs:
            for label in (x, y):
                if label not in index:
                    raise UnknownLabel(label)
            i, j = index[x], index[y]
            if i == j:
                raise CycleDetected(f"{x} < {x}")
            succ[i].add(j)
        return cls(labels, _closure(succ, labels))

    @classmethod
    def from_indices(cls, labels: Sequence[str], pairs: Iterable[tuple[int, int]]) -> "Poset":
        succ: list[set[int]] = [set() for _ in labels]
        for i, j in pairs:
            if i == j:
                raise CycleDetected(f"{labels[i]} < {labels[i]}")
            succ[i].add(j)
        return cls(labels, _closure(succ, labels))

    # basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        rel = ", ".join(f"{self.elements[i]}<{self.elements[j]}" for i, j in self.covers)
        return f"Poset([{', '.join(self.elements)}]; {rel})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.elements, self._up))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def leq(self, x: int, y: int) -> bool:
        return (self._up[x] >> y) & 1 == 1

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def up_mask(self, x: int, strict: bool = False) -> int:
        return self._up[x] & ~(1 << x) if strict else self._up[x]

    def down_mask(self, x: int, strict: bool = False) -> int:
        return self._down[x] & ~(1 << x) if strict else self._down[x]

    def up_set(self, x: int, strict: bool = False) -> frozenset[int]:
        """``F_x`` (or its strict variant)."""
        return frozenset(_bits(self.up_mask(x, strict)))

    def down_set(self, x: int, strict: bool = False) -> frozenset[int]:
        """``U_x`` (or its strict variant)."""
        return frozenset(_bits(self.down_mask(x, strict)))

    @cached_property
    def up_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bits(m)) for m in self._up)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i in range(len(self)):
            above = self.up_mask(i, strict=True)
            for j in _bits(above):
                if above & self.down_mask(j, strict=True) == 0:
                    out.append((i, j))
        return tuple(out)

    def cover_labels(self) -> set[tuple[str, str]]:
        return {(self.elements[i], self.elements[j]) for i, j in self.covers}

    def minimal_elements(self) -> list[int]:
        return [i for i in range(len(self)) if self.down_mask(i, strict=True) == 0]

    def maximal_elements(self) -> list[int]:
        return [i for i in range(len(self)) if self.up_mask(i, strict=True) == 0]

    def has_maximum(self) -> int | None:
        tops = self.maximal_elements()
        if len(tops) == 1 and self._down[tops[0]] == (1 << len(self)) - 1:
            return tops[0]
        return None

    def has_minimum(self) -> int | None:
        bottoms = self.minimal_elements()
        if len(bottoms) == 1 and self._up[bottoms[0]] == (1 << len(self)) - 1:
            return bottoms[0]
        return None

    def linear_extension(self) -> list[int]:
        """Elements sorted so that ``x < y`` implies x comes first (ties by id)."""
        return sorted(range(len(self)), key=lambda i: (bin(self._down[i]).count("1"), i))

    # chains ---------------------------------------------------------------

    def maximal_chains(self) -> list[tuple[int, ...]]:
        """Every maximal chain, as a tuple increasing in the order."""
        up_covers: list[list[int]] = [[] for _ in range(len(self))]
        for i, j in self.covers:
            up_covers[i].append(j)
        out: list[tuple[int, ...]] = []

        def walk(path: list[int]) -> None:
            nxt = up_covers[path[-1]]
            if not nxt:
                out.append(tuple(path))
                return
            for j in nxt:
                path.append(j)
                walk(path)
                path.pop()

        for m in self.minimal_elements():
            walk([m])
        return sorted(out)

    def chains(self) -> list[tuple[int, ...]]:
        """All nonempty chains, each increasing in the order, sorted lexicographically."""
        out: list[tuple[int, ...]] = []

        def extend(chain: tuple[int, ...], above: int) -> None:
            out.append(chain)
            for j in _bits(above):
                extend(chain + (j,), above & self._up[j] & ~(1 << j))

        for i in range(len(self)):
            extend((i,), self.up_mask(i, strict=True))
        return sorted(out)

    def homogeneity(self) -> int | None:
        """Dimension ``n`` if every maximal chain has ``n + 1`` elements."""
        if not len(self):
            return None
        lengths = {len(c) for c in self.maximal_chains()}
        return lengths.pop() - 1 if len(lengths) == 1 else None

    def height(self) -> int:
        return max((len(c) for c in self.maximal_chains()), default=0) - 1

    def degree(self, x: int) -> int:
        if self.homogeneity() is None:
            raise NotHomogeneous("degree is only defined on homogeneous posets")
        return self.subposet(self.down_set(x)).height()

    def is_connected(self) -> bool:
        if len(self) == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in _bits(self._up[x] | self._down[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == len(self)

    # constructions --------------------------------------------------------

    def subposet(self, ids: Iterable[int]) -> "Poset":
        """Induced subposet on ``ids``, keeping the original relative order."""
        keep = sorted(set(ids))
        pos = {old: new for new, old in enumerate(keep)}
        up = []
        for old in keep:
            mask = 0
            for j in _bits(self._up[old]):
                if j in pos:
                    mask |= 1 << pos[j]
            up.append(mask)
        return Poset([self.elements[i] for i in keep], up)

    def relabel(self, labels: Sequence[str]) -> "Poset":
        return Poset(labels, self._up)

    def with_maximum(self, label: str = "top") -> "Poset":
        """Adjoin a new global maximum."""
        n = len(self)
        while label in self._index:
            label += "'"
        up = [m | (1 << n) for m in self._up] + [1 << n]
        return Poset(list(self.elements) + [label], up)

    def remove_beat_points(self) -> "Poset":
        """Iteratively delete beat points (lowest id first) and return the core."""
        current = self
        while True:
            beat = current._first_beat_point()
            if beat is None:
                return current
            current = current.subposet(i for i in range(len(current)) if i != beat)

    def _first_beat_point(self) -> int | None:
        for x in range(len(self)):
            below = self.down_mask(x, strict=True)
            if below and _has_max(self, below):
                return x
            above = self.up_mask(x, strict=True)
            if above and _has_min(self, above):
                return x
        return None

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "relations": [[self.elements[i], self.elements[j]] for i, j in self.covers],
        }


def _has_max(P: Poset, mask: int) -> bool:
    return any(P.down_mask(m) & mask == mask for m in _bits(mask))


def _has_min(P: Poset, mask: int) -> bool:
    return any(P.up_mask(m) & mask == mask for m in _bits(mask))


def _closure(succ: list[set[int]], labels: Sequence[str]) -> list[int]:
    n = len(succ)
    indeg = [0] * n
    for i in range(n):
        for j in succ[i]:
            indeg[j] += 1
    order = []
    queue = deque(i for i in range(n) if indeg[i] == 0)
    while queue:
        i = queue.popleft()
        order.append(i)
        for j in sorted(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(order) != n:
        stuck = [labels[i] for i in range(n) if indeg[i] > 0]
        raise CycleDetected("relations imply a cycle through " + ", ".join(stuck))
    up = [0] * n
    for i in reversed(order):
        mask = 1 << i
        for j in succ[i]:
            mask |= up[j]
        up[i] = mask
    return up


# standard posets ------------------------------------------------------------


def chain(n: int, labels: Sequence[str] | None = None) -> Poset:
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    return Poset.from_indices(labels, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset([str(i) for i in range(n)], [1 << i for i in range(n)])


def fence(p: int) -> Poset:
    """The zigzag ``I_p``: elements ``0..p``, even positions below their odd neighbours."""
    pairs = []
    for k in range(p):
        pairs.append((k, k + 1) if k % 2 == 0 else (k + 1, k))
    return Poset.from_indices([str(i) for i in range(p + 1)], pairs)


def product(P: Poset, Q: Poset, sep: str = ",") -> Poset:
    """Componentwise product order; labels are ``p + sep + q``."""
    pairs = list(_cartesian(range(len(P)), range(len(Q))))
    pos = {pq: k for k, pq in enumerate(pairs)}
    up = []
    for p, q in pairs:
        mask = 0
        for p2 in P.up_lists[p]:
            for q2 in Q.up_lists[q]:
                mask |= 1 << pos[p2, q2]
        up.append(mask)
    return Poset([f"{P.elements[p]}{sep}{Q.elements[q]}" for p, q in pairs], up)


def boolean_cube(n: int) -> Poset:
    """``Q_n`` with bit-string labels (coordinate 1 first)."""
    words = ["".join(bits) for bits in _cartesian("01", repeat=n)] if n else [""]
    words = sorted(words, key=lambda w: (w.count("1"), w))
    pos = {w: i for i, w in enumerate(words)}
    pairs = []
    for w in words:
        for k, ch in enumerate(w):
            if ch == "0":
                pairs.append((pos[w], pos[w[:k] + "1" + w[k + 1:]]))
    return Poset.from_indices(words if n else ["*"], pairs)


def random_poset(n: int, density: float, seed: int) -> Poset:
    """Random poset on labels ``"0".."n-1"``.

    One PCG64 draw per pair ``i < j`` in row-major order; the pair becomes a
    relation when the draw is below ``density``. The result is closed and
    reduced, so ids are always a linear extension.
    """
    if n < 1:
        raise ValueError("random_poset needs n >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(n * (n - 1) // 2)
    pairs = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < density:
                pairs.append((i, j))
            k += 1
    return Poset.from_indices([str(i) for i in range(n)], pairs)
