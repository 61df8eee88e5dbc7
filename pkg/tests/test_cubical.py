from __future__ import annotations

import pytest
from hypothesis import given, settings

import oracles
from conftest import posets
from posettop import antichain, builtin, fence
from posettop.chains import Chain
from posettop.cubical import (
    CubicalComplex,
    boundary,
    chain_from_labels,
    cube_dim,
    cubical_homology,
    enumerate_cubes,
    face,
    is_cube,
    is_degenerate,
)
from posettop.errors import CapExceeded
from posettop.linalg import HomologyGroup, in_integer_image

Z = HomologyGroup(1)
ZERO = HomologyGroup(0)

# (all cubes, nondegenerate cubes) in dimensions 0..3, from brute-force corner filtering
BRUTE_COUNTS = {
    "chain3": [(3, 3), (6, 3), (20, 11), (168, 123)],
    "circle4": [(4, 4), (8, 4), (20, 8), (76, 36)],
    "max5": [(4, 4), (8, 4), (25, 13), (187, 132)],
    "sphere6": [(6, 6), (18, 12), (102, 72), (1446, 1188)],
}
# nondegenerate 4-cubes: regression values, too many assignments for the brute-force filter
FOUR_CUBES = {"chain3": 7008, "circle4": 456, "max5": 7122}


def chain_of(P, *terms):
    return chain_from_labels(P, [(list(c), k) for c, k in terms])


@pytest.mark.parametrize("name", sorted(BRUTE_COUNTS))
def test_cube_counts(name):
    cx = CubicalComplex(builtin(name))
    for n, (total, good) in enumerate(BRUTE_COUNTS[name]):
        assert len(cx.all_cubes(n)) == total
        assert len(cx.basis(n)) == good
        assert cx.basis(n).total == total


@pytest.mark.parametrize("name", sorted(FOUR_CUBES))
def test_four_cube_counts(name):
    assert len(enumerate_cubes(builtin(name), 4)) == FOUR_CUBES[name]


@settings(max_examples=60)
@given(posets(max_size=5))
def test_enumeration_matches_brute_force(P):
    leq = oracles.leq_matrix(P)
    for n in range(3):
        brute = oracles.all_cubes(leq, n)
        cx = CubicalComplex(P)
        assert sorted(cx.all_cubes(n)) == sorted(brute)
        assert cx.basis(n).cubes == sorted(c for c in brute if n == 0 or oracles.nondegenerate(c))


def test_faces_of_a_square():
    sq = (0, 1, 2, 3)  # (x00, x10, x01, x11)
    assert face(sq, 1, -1) == (0, 2)
    assert face(sq, 1, +1) == (1, 3)
    assert face(sq, 2, -1) == (0, 1)
    assert face(sq, 2, +1) == (2, 3)
    assert cube_dim(sq) == 2


def test_boundary_of_the_chain_square():
    P = builtin("chain3")
    sq = tuple(P.index(x) for x in "abac")
    assert is_cube(P, sq) and not is_degenerate(sq)
    assert boundary(sq) == chain_of(P, ("ab", 1), ("bc", 1), ("ac", -1))


def test_degenerate_faces_drop_out():
    P = builtin("chain3")
    assert is_degenerate(tuple(P.index(x) for x in "aabb"))
    # (a,a,b,c): the axis-2 lower face (a,a) is degenerate and drops
    sq = tuple(P.index(x) for x in "aabc")
    assert boundary(sq) == chain_of(P, ("ab", -1), ("ac", 1), ("bc", -1))


def test_order_reversing_tuple_is_not_a_cube():
    P = builtin("chain3")
    assert not is_cube(P, (P.index("b"), P.index("a")))


@settings(max_examples=30)
@given(posets(max_size=6))
def test_boundary_squares_to_zero(P):
    cx = CubicalComplex(P)
    for n in (2, 3):
        assert (cx.boundary_matrix(n - 1) @ cx.boundary_matrix(n)).is_zero()


@pytest.mark.parametrize(
    "name, expected",
    [
        ("chain3", [Z, ZERO, ZERO]),
        ("circle4", [Z, Z, ZERO]),
        ("sphere6", [Z, ZERO, Z]),
        ("max5", [Z, ZERO, ZERO]),
        ("qcube2", [Z, ZERO, ZERO]),
        ("fence5", [Z, ZERO, ZERO]),
    ],
)
def test_homology_of_builtins(name, expected):
    assert cubical_homology(builtin(name), 2) == expected


def test_disconnected_poset():
    assert cubical_homology(antichain(3), 1) == [HomologyGroup(3), ZERO]


def test_sphere_square_cycle_bounds():
    # the 4-cycle around the middle of the sphere model bounds four squares
    P = builtin("sphere6")
    alpha = chain_of(P, ("ae", 1), ("be", -1), ("bf", 1), ("af", -1))
    assert alpha.map(boundary, 0) == 0
    beta = chain_of(P, ("acae", -1), ("acaf", 1), ("bcbe", 1), ("bcbf", -1))
    assert beta.map(boundary, 1) == alpha
    cx = CubicalComplex(P)
    assert in_integer_image(cx.boundary_matrix(2), _dense(cx, alpha)) is not None


def _dense(cx, chain):
    v = [0] * len(cx.basis(chain.dim))
    for i, k in cx.chain_vector(chain).items():
        v[i] = k
    return v


def test_height_one_square_is_nondegenerate():
    # a square with three equal corners still has distinct opposite faces
    P = builtin("circle4")
    sq = tuple(P.index(x) for x in "accc")
    assert is_cube(P, sq) and not is_degenerate(sq)
    assert boundary(sq) == Chain(1)


def test_cap():
    with pytest.raises(CapExceeded) as info:
        cubical_homology(fence(6), 2, cap=50)
    assert info.value.cap == 50


@pytest.mark.parametrize("name, betti", [("chain3", [1, 0, 0]), ("circle4", [1, 1, 0]), ("sphere6", [1, 0, 1]),
                                         ("max5", [1, 0, 0])])
def test_betti_numbers_from_independent_oracle(name, betti):
    # brute-force cubes, the oracle's own boundary and fraction-free rank
    assert oracles.cubical_betti(oracles.leq_matrix(builtin(name)), 2) == betti
    assert [g.betti for g in cubical_homology(builtin(name), 2)] == betti


@settings(max_examples=30)
@given(posets(max_size=5))
def test_betti_numbers_match_oracle_on_random_posets(P):
    assert [g.betti for g in cubical_homology(P, 1)] == oracles.cubical_betti(oracles.leq_matrix(P), 1)
