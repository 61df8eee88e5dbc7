from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import BUILTINS, posets
from posettop import builtin
from posettop.chains import Chain
from posettop.comparison import Comparison, InducedMap, perm_paths, psi
from posettop.linalg import HomologyGroup


def cube(P, labels):
    return tuple(P.index(x) for x in labels)


def simplex_chain(P, *terms):
    return Chain(len(terms[0][0]) - 1, [(cube(P, s), k) for s, k in terms])


def test_psi_on_a_square():
    P = builtin("sphere6")
    assert psi(cube(P, "acde")) == simplex_chain(P, ("ace", 1), ("ade", -1))


def test_psi_low_dimensions():
    P = builtin("chain3")
    assert psi(cube(P, "a")) == simplex_chain(P, ("a", 1))
    assert psi(cube(P, "ab")) == simplex_chain(P, ("ab", 1))
    # degenerate paths drop: (a,a,a,b) only keeps paths that move twice
    assert psi(cube(P, "aaab")) == Chain(2)
    # both paths of (a,b,b,c) trace a<b<c with opposite signs
    assert psi(cube(P, "abbc")) == Chain(2)
    assert psi(cube(P, "abac")) == simplex_chain(P, ("abc", 1))


def test_permutation_paths():
    paths = perm_paths(3)
    assert len(paths) == 6
    assert paths[0] == (1, (0, 1, 3, 7))
    assert sorted(s for s, _ in paths) == [-1, -1, -1, 1, 1, 1]


def test_identity_three_cube_triangulates():
    P = builtin("qcube3")
    # corner s goes to the bit-string of s, an order embedding of Q_1^3
    image = psi(tuple(P.index(format(s, "03b")) for s in range(8)))
    assert len(image) == 6 and sorted(image.terms.values()) == [-1, -1, -1, 1, 1, 1]


@pytest.mark.parametrize("name", BUILTINS)
def test_chain_map_identity(name):
    cmp = Comparison(builtin(name))
    for n in (1, 2, 3):
        assert cmp.chain_map_holds(n)


@settings(max_examples=25)
@given(posets(max_size=5))
def test_chain_map_identity_random(P):
    cmp = Comparison(P)
    for n in (1, 2, 3):
        assert cmp.chain_map_holds(n)


@pytest.mark.parametrize("name", BUILTINS)
def test_induced_map_is_iso_on_builtins(name):
    cmp = Comparison(builtin(name))
    for p in range(3):
        m = cmp.induced_map(p)
        assert m.iso, (name, p, m)
        assert m.cube_group == m.simpl_group


def test_sphere_degree_one_is_iso_between_zero_groups():
    m = Comparison(builtin("sphere6")).induced_map(1)
    assert m.cube_group == m.simpl_group == HomologyGroup(0)
    assert m.status == "iso"


def test_sphere_top_degree():
    m = Comparison(builtin("sphere6")).induced_map(2)
    assert m.iso and abs(m.matrix[0][0]) == 1


def test_circle_generator_maps_to_generator():
    m = Comparison(builtin("circle4")).induced_map(1)
    assert m.iso and m.matrix in ([[1]], [[-1]])


def test_status_labels():
    z = HomologyGroup(1)
    assert InducedMap(1, z, z, [[2]], True, False).status == "inj"
    assert InducedMap(1, z, z, [[1]], False, True).status == "surj"
    assert InducedMap(1, z, z, [[0]], False, False).status == "other"
    d = InducedMap(1, z, z, [[1]], True, True).to_dict()
    assert d["psi_star"] == "iso" and d["betti_cube"] == 1
