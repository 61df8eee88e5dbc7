"""Simplicial complexes, order complexes, face posets and elementary collapses.

A simplex is a tuple of vertex indices in the complex's fixed vertex
order. For an order complex that order is the poset order itself, so every
chain is canonically oriented and no orientation choice is ever made.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .chains import Chain
from .errors import BudgetExhausted
from .linalg import IntMatrix
from .poset import Poset

Simplex = tuple[int, ...]


class SimplicialComplex:
    def __init__(self, vertices: Sequence[str], simplices: Iterable[Simplex]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.simplices: frozenset[Simplex] = frozenset(tuple(s) for s in simplices)
        for s in self.simplices:
            if not s:
                raise ValueError("empty simplex")
            for face in _facets(s):
                if face and face not in self.simplices:
                    raise ValueError(f"complex is not closed under faces: {s} lacks {face}")

    @classmethod
    def from_maximal(cls, maximal: Iterable[Sequence[str]]) -> "SimplicialComplex":
        """Complex generated by the given simplices (vertex lists of labels)."""
        maximal = [list(dict.fromkeys(m)) for m in maximal]
        vertices = sorted({v for m in maximal for v in m})
        pos = {v: i for i, v in enumerate(vertices)}
        simplices: set[Simplex] = set()
        for m in maximal:
            ids = sorted(pos[v] for v in m)
            for k in range(1, len(ids) + 1):
                simplices.update(combinations(ids, k))
        return cls(vertices, simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def __repr__(self) -> str:
        counts = [len(self.simplices_of_dim(k)) for k in range(self.dim + 1)]
        return f"SimplicialComplex(f-vector={counts})"

    @cached_property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    @cached_property
    def _by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for v in out.values():
            v.sort()
        return out

    def simplices_of_dim(self, n: int) -> list[Simplex]:
        """Basis of n-simplices in lexicographic order of vertex ids."""
        return self._by_dim.get(n, [])

    def basis_index(self, n: int) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices_of_dim(n))}

    def maximal_simplices(self) -> list[Simplex]:
        covered = {f for s in self.simplices for f in _facets(s)}
        return sorted(s for s in self.simplices if s not in covered)

    def boundary(self, s: Simplex) -> Chain:
        return Chain(len(s) - 2, ((f, (-1) ** i) for i, f in enumerate(_facets(s))))

    def boundary_matrix(self, n: int) -> IntMatrix:
        """Matrix of the boundary from n-simplices (columns) to (n-1)-simplices (rows)."""
        cols = self.simplices_of_dim(n)
        if n == 0:
            return IntMatrix.zeros(0, len(cols))
        rows = self.basis_index(n - 1)
        return IntMatrix.from_columns(
            len(rows), ({rows[f]: (-1) ** i for i, f in enumerate(_facets(s))} for s in cols)
        )

    def free_faces(self) -> list[tuple[Simplex, Simplex]]:
        return _free_pairs(self.simplices)

    def is_pseudo_manifold(self, m: int | None = None) -> bool:
        """Advisory check: every (m-1)-simplex lies in exactly two m-simplices."""
        m = self.dim if m is None else m
        if m < 1:
            return False
        count: dict[Simplex, int] = {f: 0 for f in self.simplices_of_dim(m - 1)}
        for s in self.simplices_of_dim(m):
            for f in _facets(s):
                count[f] += 1
        return all(c == 2 for c in count.values())

    def labels_of(self, s: Simplex) -> list[str]:
        return [self.vertices[v] for v in s]


def _facets(s: Simplex) -> list[Simplex]:
    return [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []


def order_complex(P: Poset) -> SimplicialComplex:
    """Simplices are the nonempty chains of ``P``, each listed in increasing order."""
    return SimplicialComplex(P.elements, P.chains())


def face_poset(K: SimplicialComplex) -> Poset:
    """Simplices of ``K`` ordered by inclusion; labels join vertex labels with commas."""
    simplices = sorted(K.simplices, key=lambda s: (len(s), s))
    pos = {s: i for i, s in enumerate(simplices)}
    pairs = [(pos[f], pos[s]) for s in simplices for f in _facets(s)]
    return Poset.from_indices([",".join(K.labels_of(s)) for s in simplices], pairs)


def simplicial_homology(K: SimplicialComplex, max_dim: int | None = None) -> list:
    """Integral homology of ``K`` in degrees ``0..max_dim`` (default: dim K)."""
    from .linalg import homology_from_boundaries

    top = K.dim if max_dim is None else max_dim
    mats = [K.boundary_matrix(n) for n in range(top + 2)]
    return [homology_from_boundaries(mats[n], mats[n + 1]) for n in range(top + 1)]


# collapses ----------------------------------------------------------------


@dataclass(frozen=True)
class Collapse:
    free: Simplex
    maximal: Simplex


def _free_pairs(simplices: frozenset[Simplex] | set[Simplex]) -> list[tuple[Simplex, Simplex]]:
    cofaces: dict[Simplex, list[Simplex]] = {}
    for s in simplices:
        for f in _facets(s):
            cofaces.setdefault(f, []).append(s)
    return sorted((f, cs[0]) for f, cs in cofaces.items() if len(cs) == 1)


def collapse_search(K: SimplicialComplex, budget: int = 10**6) -> list[Collapse] | None:
    """Search for elementary collapses reducing ``K`` to a single vertex.

    Depth-first, taking free faces in lexicographic order and backtracking.
    Returns the verified sequence, or ``None`` when the search space is
    exhausted (which proves ``K`` is not collapsible). Raises
    :class:`BudgetExhausted` after ``budget`` visited states.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    start = frozenset(K.simplices)
    visited = {start}
    stack = [(start, iter(_free_pairs(start)))]
    path: list[Collapse] = []
    nodes = 1
    if len(start) == 1:
        return []
    while stack:
        state, moves = stack[-1]
        move = next(moves, None)
        if move is None:
            stack.pop()
            if path:
                path.pop()
            continue
        nxt = state - {move[0], move[1]}
        if nxt in visited:
            continue
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"collapse search exceeded {budget} nodes")
        visited.add(nxt)
        path.append(Collapse(*move))
        if len(nxt) == 1:
            verify_collapse(K, path)
            return list(path)
        stack.append((nxt, iter(_free_pairs(nxt))))
    return None


def verify_collapse(K: SimplicialComplex, sequence: Sequence[Collapse]) -> None:
    """Replay ``sequence`` on ``K``; raise ValueError unless it ends at one vertex."""
    state = set(K.simplices)
    for step in sequence:
        if step.maximal not in state or step.free not in state:
            raise ValueError(f"{step} removes a simplex that is not present")
        if not set(step.free) < set(step.maximal):
            raise ValueError(f"{step}: free face is not a proper face")
        cofaces = [s for s in state if s != step.free and set(step.free) <= set(s)]
        if cofaces != [step.maximal]:
            raise ValueError(f"{step}: face is not free")
        state -= {step.free, step.maximal}
    if len(state) != 1:
        raise ValueError(f"collapse sequence ends with {len(state)} simplices")


def certificate_to_json(K: SimplicialComplex, sequence: Sequence[Collapse]) -> list[dict]:
    return [{"free": K.labels_of(c.free), "maximal": K.labels_of(c.maximal)} for c in sequence]
