import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellcut.intlinalg import (
    IntMatrix,
    cokernel_group,
    det,
    gram,
    hermite_column_basis,
    kernel_basis,
    lattices_equal,
    minors_gcd,
    rank,
    saturation,
    smith_normal_form,
    solve_int,
)
from oracles import naive_det, naive_minors_gcd, naive_rank, random_int_matrix


def small_matrices(max_dim=5, lo=-9, hi=9):
    def build(shape):
        r, c = shape
        return st.lists(
            st.lists(st.integers(lo, hi), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        ).map(lambda rows: IntMatrix(rows, shape=(r, c)))

    return st.tuples(
        st.integers(0, max_dim), st.integers(0, max_dim)
    ).flatmap(build)


def test_det_examples():
    assert det(IntMatrix([[2]])) == 2
    assert det(IntMatrix.identity(3)) == 1
    assert det(IntMatrix([[2, 3], [5, 7]])) == -1
    assert det(IntMatrix.zeros(0, 0)) == 1
    with pytest.raises(ValueError):
        det(IntMatrix.zeros(2, 3))


@given(small_matrices(max_dim=4))
@settings(max_examples=120, deadline=None)
def test_det_matches_cofactor_expansion(m):
    if m.rows == m.cols and m.rows > 0:
        assert det(m) == naive_det(m)


def test_smith_examples():
    sf = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
    assert sf.diagonal() == (1, 6)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).S.is_zero()
    assert smith_normal_form(IntMatrix([[2, 3, 0, 0], [0, 0, 5, 7]])).diagonal() == (1, 1)


def test_smith_deterministic():
    m = IntMatrix([[4, 6, 2], [6, 9, 3], [2, 3, 7]])
    a = smith_normal_form(m)
    b = smith_normal_form(m)
    assert a.U == b.U and a.S == b.S and a.V == b.V


@given(small_matrices())
@settings(max_examples=150, deadline=None)
def test_smith_form_properties(m):
    sf = smith_normal_form(m)
    assert sf.U @ m @ sf.V == sf.S
    assert abs(det(sf.U)) == 1
    assert abs(det(sf.V)) == 1
    diag = sf.diagonal()
    assert all(x >= 0 for x in diag)
    for i in range(len(diag) - 1):
        if diag[i]:
            assert diag[i + 1] % diag[i] == 0
        else:
            assert diag[i + 1] == 0
    # off-diagonal entries vanish
    for i in range(sf.S.rows):
        for j in range(sf.S.cols):
            if i != j:
                assert sf.S[i, j] == 0


def test_smith_diagonal_products_are_minor_gcds():
    rng = random.Random(20240229)
    for _ in range(40):
        m = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        r = rank(m)
        for k in range(1, r + 1):
            assert minors_gcd(m, k) == naive_minors_gcd(m, k)


def test_rank_matches_rational_elimination():
    rng = random.Random(99)
    for _ in range(120):
        m = random_int_matrix(rng, rng.randint(0, 5), rng.randint(0, 5))
        assert rank(m) == naive_rank(m)


def test_cokernel_examples():
    assert cokernel_group(IntMatrix([[2]])).invariant_factors == (2,)
    assert cokernel_group(IntMatrix([[2]])).free_rank == 0
    g = cokernel_group(IntMatrix([[0]]))
    assert g.free_rank == 1 and not g.invariant_factors
    # a disk wrapping twice around a loop leaves a two-element quotient
    assert str(cokernel_group(IntMatrix([[2]]))) == "Z_2"


def test_kernel_examples():
    kb = kernel_basis(IntMatrix([[6, 2]]))
    assert kb.cols == 1
    assert tuple(kb.column(0)) in ((1, -3), (-1, 3))
    assert kernel_basis(IntMatrix.identity(4)).cols == 0


@given(small_matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_is_saturated(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.cols == m.cols - rank(m)
    if k.cols:
        assert lattices_equal(saturation(k), k)


def test_saturation_examples():
    assert saturation(IntMatrix([[2], [0]])) == IntMatrix([[1], [0]])
    assert saturation(IntMatrix([[1], [1]])) == IntMatrix([[1], [1]])
    got = saturation(IntMatrix.from_columns([(2, 0, 0), (0, 3, 0)], rows=3))
    want = IntMatrix.from_columns([(1, 0, 0), (0, 1, 0)], rows=3)
    assert lattices_equal(got, want)
    with pytest.raises(ValueError):
        saturation(IntMatrix.from_columns([(1, 0), (2, 0)], rows=2))


def test_minors_gcd_examples():
    assert minors_gcd(IntMatrix.identity(2), 2) == 1
    assert minors_gcd(IntMatrix([[2, 3, 0, 0], [0, 0, 5, 7]]), 2) == 1
    assert minors_gcd(IntMatrix([[2, 0], [0, 4]]), 2) == 8
    with pytest.raises(ValueError):
        minors_gcd(IntMatrix.identity(2), 3)


def test_hermite_column_basis_preserves_lattice():
    rng = random.Random(5)
    for _ in range(60):
        m = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        h = hermite_column_basis(m)
        assert rank(h) == h.cols == rank(m)
        # mutual containment: columns of each solve in the other
        if h.cols:
            solve_int(h, m)
        assert lattices_equal(h, m)
        # canonical: same lattice from a shuffled generating set
        perm = list(range(m.cols))
        rng.shuffle(perm)
        shuffled = m.submatrix(range(m.rows), perm)
        assert hermite_column_basis(shuffled) == h


def test_solve_int_roundtrip():
    rng = random.Random(11)
    for _ in range(60):
        a = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = random_int_matrix(rng, a.cols, rng.randint(1, 3), lo=-4, hi=4)
        b = a @ x
        y = solve_int(a, b)
        assert a @ y == b
    with pytest.raises(ValueError):
        solve_int(IntMatrix([[2]]), IntMatrix([[1]]))


def test_gram():
    m = IntMatrix([[1, 2], [3, 4]])
    assert gram(m) == m.transpose() @ m
