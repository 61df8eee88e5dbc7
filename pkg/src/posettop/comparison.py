"""The comparison chain map from cubical chains of a poset to simplicial
chains of its order complex, and the map it induces on homology."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .chains import Chain
from .cubical import DEFAULT_CAP, Cube, CubicalComplex, cube_dim
from .linalg import HomologyGroup, HomologyPresentation, IntMatrix, in_integer_image, smith_normal_form
from .poset import Poset
from .simplicial import SimplicialComplex, order_complex

MAX_PSI_DIM = 6


@lru_cache(maxsize=None)
def perm_paths(n: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """``(sign, corner path)`` for every permutation of the n axes, lexicographically.

    The path starts at corner 0 and flips axis ``tau(i)`` at step ``i``.
    """
    if n > MAX_PSI_DIM:
        raise ValueError(f"psi is limited to cubes of dimension <= {MAX_PSI_DIM}")
    out = []
    for tau in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if tau[i] > tau[j])
        s = 0
        path = [0]
        for k in tau:
            s |= 1 << k
            path.append(s)
        out.append((-1 if inversions % 2 else 1, tuple(path)))
    return tuple(out)


def psi(sigma: Cube) -> Chain:
    """Signed sum of the simplices traced by ``sigma`` along every permutation path.

    Paths that repeat a vertex give degenerate simplices and are dropped.
    """
    n = cube_dim(sigma)
    out = Chain(n)
    for sign, path in perm_paths(n):
        verts = tuple(sigma[s] for s in path)
        if any(verts[i] == verts[i + 1] for i in range(n)):
            continue
        out.add(verts, sign)
    return out


def psi_matrix(cubes: CubicalComplex, K: SimplicialComplex, n: int) -> IntMatrix:
    rows = K.basis_index(n)
    return IntMatrix.from_columns(len(rows), (psi(c).to_vector(rows) for c in cubes.basis(n).cubes))


def chain_map_defect(cubes: CubicalComplex, K: SimplicialComplex, n: int) -> IntMatrix:
    """``d_simpl Psi_n - Psi_{n-1} d_cube`` (the zero matrix when psi is a chain map)."""
    left = K.boundary_matrix(n) @ psi_matrix(cubes, K, n)
    right = psi_matrix(cubes, K, n - 1) @ cubes.boundary_matrix(n)
    out = left.copy()
    for j, col in enumerate(right.columns):
        for i, v in col.items():
            out.add(i, j, -v)
    return out


@dataclass
class InducedMap:
    degree: int
    cube_group: HomologyGroup
    simpl_group: HomologyGroup
    matrix: list[list[int]]
    injective: bool
    surjective: bool

    @property
    def iso(self) -> bool:
        return self.injective and self.surjective

    @property
    def status(self) -> str:
        if self.iso:
            return "iso"
        if self.surjective:
            return "surj"
        if self.injective:
            return "inj"
        return "other"

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "betti_cube": self.cube_group.betti,
            "torsion_cube": list(self.cube_group.torsion),
            "betti_simpl": self.simpl_group.betti,
            "torsion_simpl": list(self.simpl_group.torsion),
            "psi_star": self.status,
            "injective": self.injective,
            "surjective": self.surjective,
            "matrix": self.matrix,
        }


class Comparison:
    """Cubical and simplicial chain complexes of one poset side by side."""

    def __init__(self, P: Poset, cap: int = DEFAULT_CAP):
        self.poset = P
        self.cubes = CubicalComplex(P, cap)
        self.K = order_complex(P)

    def psi_matrix(self, n: int) -> IntMatrix:
        return psi_matrix(self.cubes, self.K, n)

    def chain_map_holds(self, n: int) -> bool:
        return chain_map_defect(self.cubes, self.K, n).is_zero()

    def cube_presentation(self, p: int) -> HomologyPresentation:
        return HomologyPresentation(self.cubes.boundary_matrix(p), self.cubes.boundary_matrix(p + 1))

    def simpl_presentation(self, p: int) -> HomologyPresentation:
        return HomologyPresentation(self.K.boundary_matrix(p), self.K.boundary_matrix(p + 1))

    def induced_map(self, p: int) -> InducedMap:
        cube_h = self.cube_presentation(p)
        simpl_h = self.simpl_presentation(p)
        Psi = self.psi_matrix(p)
        matrix = [[0] * len(cube_h.generators) for _ in simpl_h.orders]
        for j, g in enumerate(cube_h.generators):
            for i, v in enumerate(simpl_h.coords(Psi.apply(g))):
                matrix[i][j] = v

        # psi(cycles) + simplicial boundaries must span the simplicial cycles
        images = Psi @ cube_h.kernel_matrix()
        d_next = self.K.boundary_matrix(p + 1)
        stacked = images.hstack(d_next)
        snf = smith_normal_form(stacked)
        surjective = all(in_integer_image(stacked, z, snf) is not None for z in simpl_h.cycle_basis)

        # cube cycles whose image is a boundary must themselves be boundaries
        k = images.cols
        negated = IntMatrix(d_next.rows, d_next.cols, [{i: -v for i, v in c.items()} for c in d_next.columns])
        relation = images.hstack(negated)
        rel_snf = smith_normal_form(relation, rows=False)
        injective = True
        for col in range(rel_snf.rank, relation.cols):
            x = [rel_snf.V[i][col] for i in range(k)]
            z = cube_h.kernel_matrix().apply(x)
            if not cube_h.is_boundary(z):
                injective = False
                break
        return InducedMap(p, cube_h.group, simpl_h.group, matrix, injective, surjective)


def induced_map(P: Poset, p: int, cap: int = DEFAULT_CAP) -> InducedMap:
    return Comparison(P, cap).induced_map(p)
