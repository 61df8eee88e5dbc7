from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracles
from posettop.errors import NotAComplex
from posettop.io import matrix_from_market, matrix_to_market
from posettop.linalg import (
    HomologyGroup,
    HomologyPresentation,
    IntMatrix,
    check_complex,
    homology_from_boundaries,
    in_integer_image,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
)


def matrices(max_rows=6, max_cols=6, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def det_abs(a):
    return abs(int(oracles.det(a)))


@given(matrices())
def test_snf_identity_and_invariants(a):
    res = smith_normal_form(IntMatrix.from_dense(a))
    res.verify(a)
    assert det_abs(res.U) == 1 and det_abs(res.V) == 1


@given(matrices(5, 5, -4, 4))
def test_snf_diagonal_matches_determinantal_divisors(a):
    res = smith_normal_form(IntMatrix.from_dense(a))
    assert res.diagonal[: res.rank] == oracles.invariant_factors(a)


@given(matrices(8, 8))
def test_rank_matches_fraction_free_elimination(a):
    A = IntMatrix.from_dense(a)
    assert smith_normal_form(A).rank == rank(A) == oracles.bareiss_rank(a)


@given(matrices(8, 8, -2, 2))
def test_sparse_invariant_factors_agree_with_dense(a):
    A = IntMatrix.from_dense(a)
    res = smith_normal_form(A)
    assert invariant_factors(A) == res.diagonal[: res.rank]


def test_small_snf():
    res = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert res.diagonal == [2, 6, 12]
    res = smith_normal_form([[0, 0], [0, 0]])
    assert res.rank == 0 and res.diagonal == [0, 0]


def test_one_sided_tracking_skips_the_other_side():
    a = [[2, 1], [4, 3]]
    res = smith_normal_form(IntMatrix.from_dense(a), rows=False)
    assert res.diagonal == [1, 2]
    assert oracles.det(res.V) in (1, -1)


@given(matrices(6, 6, -3, 3))
def test_kernel_basis_spans_nullspace(a):
    A = IntMatrix.from_dense(a)
    basis = kernel_basis(A)
    assert len(basis) == A.cols - oracles.bareiss_rank(a)
    for v in basis:
        assert not any(A.apply(v))


@given(matrices(5, 5, -3, 3), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_integer_image_solutions_are_exact(a, x):
    A = IntMatrix.from_dense(a)
    x = x[: A.cols]
    b = A.apply(x)
    sol = in_integer_image(A, b)
    assert sol is not None and A.apply(sol) == b


def test_integer_image_detects_divisibility():
    A = IntMatrix.from_dense([[2, 0], [0, 3]])
    assert in_integer_image(A, [1, 0]) is None
    assert in_integer_image(A, [4, 9]) == [2, 3]


def test_torsion_from_a_double_cover():
    # one edge loop, one 2-cell attached twice: H_1 = Z/2
    d1 = IntMatrix.zeros(1, 1)
    d2 = IntMatrix.from_dense([[2]])
    assert homology_from_boundaries(d1, d2) == HomologyGroup(0, (2,))
    assert str(HomologyGroup(0, (2,))) == "Z/2"
    assert str(HomologyGroup(2, ())) == "Z^2"
    assert str(HomologyGroup(0, ())) == "0"


def test_check_complex_rejects_nonzero_composition():
    with pytest.raises(NotAComplex):
        check_complex(IntMatrix.from_dense([[1]]), IntMatrix.from_dense([[1]]))


def test_presentation_coordinates():
    # C_1 = Z^2 all cycles, boundary image generated by (2, 0): H_1 = Z/2 + Z
    d1 = IntMatrix.zeros(0, 2)
    d2 = IntMatrix.from_dense([[2], [0]])
    H = HomologyPresentation(d1, d2)
    assert H.group == HomologyGroup(1, (2,))
    assert H.is_boundary([2, 0]) and not H.is_boundary([1, 0])
    assert H.coords([2, 0]) == (0, 0)
    assert sorted(map(abs, H.coords([1, 0]))) == [0, 1]
    assert H.coords([0, 3]) != (0, 0)
    for g in H.generators:
        assert H.is_cycle(g)


def test_matrix_market_roundtrip():
    A = IntMatrix.from_dense([[1, 0, -2], [0, 0, 5]])
    text = matrix_to_market(A)
    assert text.startswith("%%MatrixMarket matrix coordinate integer general")
    assert matrix_from_market(text) == A


def test_matmul_and_transpose():
    A = IntMatrix.from_dense([[1, 2], [3, 4]])
    B = IntMatrix.from_dense([[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [4, 3]]
    assert A.transpose().to_dense() == [[1, 3], [2, 4]]
    assert A.hstack(B).shape == (2, 4)
