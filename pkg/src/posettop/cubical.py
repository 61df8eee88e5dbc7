"""Discrete cubical homology of a poset.

An n-cube is an order-preserving map ``Q_1^n -> P`` stored as the tuple of
its ``2**n`` corner values. Corner ``s`` is the bit-vector with coordinate
``i`` (1-based) in bit ``i - 1``, so a 2-cube reads ``(x00, x10, x01, x11)``
where ``xij`` is the value at ``(i, j)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .chains import Chain
from .errors import CapExceeded
from .linalg import HomologyGroup, IntMatrix, homology_from_boundaries
from .poset import Poset

Cube = tuple[int, ...]

DEFAULT_CAP = 10**6


def cube_dim(sigma: Cube) -> int:
    return len(sigma).bit_length() - 1


def face(sigma: Cube, i: int, sign: int) -> Cube:
    """Fix coordinate ``i`` (1-based) to 0 (``sign < 0``) or 1 (``sign > 0``)."""
    n = cube_dim(sigma)
    if not 1 <= i <= n:
        raise ValueError(f"axis {i} out of range for a {n}-cube")
    bit = 1 if sign > 0 else 0
    k = i - 1
    low_mask = (1 << k) - 1
    out = []
    for s in range(1 << (n - 1)):
        out.append(sigma[(s & low_mask) | (bit << k) | ((s >> k) << (k + 1))])
    return tuple(out)


def is_degenerate(sigma: Cube) -> bool:
    n = cube_dim(sigma)
    return any(face(sigma, i, -1) == face(sigma, i, +1) for i in range(1, n + 1))


def is_cube(P: Poset, sigma: Cube) -> bool:
    """Check the corner tuple is order preserving on ``Q_1^n``."""
    n = cube_dim(sigma)
    if len(sigma) != 1 << n:
        return False
    for s in range(len(sigma)):
        for k in range(n):
            if not s >> k & 1 and not P.leq(sigma[s], sigma[s | 1 << k]):
                return False
    return True


def boundary(sigma: Cube) -> Chain:
    """Alternating sum of opposite faces with degenerate faces dropped."""
    n = cube_dim(sigma)
    out = Chain(n - 1)
    if n == 0:
        return out
    for i in range(1, n + 1):
        sgn = -1 if i % 2 else 1
        for tau, k in ((face(sigma, i, -1), sgn), (face(sigma, i, +1), -sgn)):
            if n == 1 or not is_degenerate(tau):
                out.add(tau, k)
    return out


@dataclass
class CubeBasis:
    dim: int
    cubes: list[Cube]
    degenerate_count: int = 0
    index: dict[Cube, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {c: i for i, c in enumerate(self.cubes)}

    def __len__(self) -> int:
        return len(self.cubes)

    @property
    def total(self) -> int:
        return len(self.cubes) + self.degenerate_count


def _extend(P: Poset, lower: Sequence[Cube], cap: int, dim: int) -> list[Cube]:
    """All n-cubes as pairs (lower face, upper face) with lower <= upper pointwise."""
    trie: dict = {}
    for c in lower:
        node = trie
        for v in c:
            node = node.setdefault(v, {})
    out: list[Cube] = []
    width = len(lower[0]) if lower else 0
    ups = P.up_lists

    def walk(lo: Cube, node: dict, depth: int, acc: list[int]) -> None:
        if depth == width:
            out.append(lo + tuple(acc))
            if len(out) > cap:
                raise CapExceeded(cap, len(out), dim)
            return
        options = ups[lo[depth]]
        if len(options) <= len(node):
            for v in options:
                child = node.get(v)
                if child is not None:
                    acc.append(v)
                    walk(lo, child, depth + 1, acc)
                    acc.pop()
        else:
            for v in sorted(node):
                if P.leq(lo[depth], v):
                    acc.append(v)
                    walk(lo, node[v], depth + 1, acc)
                    acc.pop()

    for lo in lower:
        walk(lo, trie, 0, [])
    return out


class CubicalComplex:
    """Lazily enumerated cubical chain complex of a poset with cached bases."""

    def __init__(self, P: Poset, cap: int = DEFAULT_CAP):
        self.poset = P
        self.cap = cap
        self._all: list[list[Cube]] = [[(x,) for x in range(len(P))]]
        self._bases: dict[int, CubeBasis] = {}
        self._mats: dict[int, IntMatrix] = {}

    def all_cubes(self, n: int) -> list[Cube]:
        """Every n-cube, degenerate ones included."""
        while len(self._all) <= n:
            dim = len(self._all)
            self._all.append(_extend(self.poset, self._all[-1], self.cap, dim))
        return self._all[n]

    def basis(self, n: int) -> CubeBasis:
        if n not in self._bases:
            cubes = self.all_cubes(n)
            if n == 0:
                good = list(cubes)
            else:
                good = [c for c in cubes if not is_degenerate(c)]
            self._bases[n] = CubeBasis(n, sorted(good), len(cubes) - len(good))
        return self._bases[n]

    def boundary_matrix(self, n: int) -> IntMatrix:
        """Matrix of the cubical boundary ``C_n -> C_{n-1}`` in the sorted bases."""
        if n not in self._mats:
            cols = self.basis(n)
            if n == 0:
                self._mats[n] = IntMatrix.zeros(0, len(cols))
            else:
                rows = self.basis(n - 1)
                self._mats[n] = IntMatrix.from_columns(
                    len(rows), (boundary(c).to_vector(rows.index) for c in cols.cubes)
                )
        return self._mats[n]

    def homology(self, max_dim: int = 3) -> list[HomologyGroup]:
        return [
            homology_from_boundaries(self.boundary_matrix(p), self.boundary_matrix(p + 1))
            for p in range(max_dim + 1)
        ]

    def chain_vector(self, chain: Chain) -> dict[int, int]:
        return chain.to_vector(self.basis(chain.dim).index)


def enumerate_cubes(P: Poset, n: int, cap: int = DEFAULT_CAP) -> CubeBasis:
    return CubicalComplex(P, cap).basis(n)


def cubical_boundary_matrix(P: Poset, n: int, cap: int = DEFAULT_CAP) -> IntMatrix:
    return CubicalComplex(P, cap).boundary_matrix(n)


def cubical_homology(P: Poset, max_dim: int = 3, cap: int = DEFAULT_CAP) -> list[HomologyGroup]:
    """``H_p`` for ``p = 0..max_dim``; needs cubes up to dimension ``max_dim + 1``."""
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    return CubicalComplex(P, cap).homology(max_dim)


def chain_from_labels(P: Poset, terms: Sequence[tuple[Sequence[str], int]]) -> Chain:
    """Build a cubical chain from ``([corner labels...], coefficient)`` pairs."""
    out = None
    for corners, k in terms:
        cube = tuple(P.index(x) for x in corners)
        if out is None:
            out = Chain(cube_dim(cube))
        if cube_dim(cube) and is_degenerate(cube):
            continue
        out.add(cube, k)
    return out if out is not None else Chain(0)
