from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pplab.linalg import RationalMatrix, Subspace, kernel_basis, rref, subspace_equal

fracs = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def matrices(max_dim=4):
    return st.tuples(
        st.integers(1, max_dim), st.integers(1, max_dim)
    ).flatmap(
        lambda shape: st.lists(
            st.lists(fracs, min_size=shape[1], max_size=shape[1]),
            min_size=shape[0],
            max_size=shape[0],
        ).map(RationalMatrix.from_rows)
    )


def test_rref_proportional_rows():
    red = rref(RationalMatrix.from_rows([[1, 2], [2, 4]]))
    assert red.rank == 1
    assert red.pivots == (0,)


def test_rref_identity_is_fixed():
    m = RationalMatrix.identity(3)
    red = rref(m)
    assert red.matrix == m
    assert red.rank == 3


def test_rref_hand_elimination():
    red = rref(RationalMatrix.from_rows([[2, 0, 0], [0, 1, 0]]))
    assert red.matrix == RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
    assert red.rank == 2


def test_kernel_basis_hand_solved():
    # 2a = 0 and b = 0 leave only the third coordinate free.
    ker = kernel_basis(RationalMatrix.from_rows([[2, 0, 0], [0, 1, 0]]))
    assert ker == Subspace.from_vectors([[0, 0, 1]], 3)


def test_kernel_of_identity_is_zero():
    for n in range(1, 5):
        assert kernel_basis(RationalMatrix.identity(n)).dim == 0


def test_kernel_of_zero_matrix_is_everything():
    ker = kernel_basis(RationalMatrix.zero(2, 3))
    assert ker.dim == 3
    assert ker.basis == RationalMatrix.identity(3)


def test_subspace_equal_scaling_invariance():
    a = Subspace.from_vectors([[1, 0]], 2)
    b = Subspace.from_vectors([[2, 0]], 2)
    assert subspace_equal(a, b)


def test_subspace_equal_distinct_lines():
    a = Subspace.from_vectors([[1, 0]], 2)
    b = Subspace.from_vectors([[0, 1]], 2)
    assert not subspace_equal(a, b)


def test_subspace_equal_full_space():
    a = Subspace.from_vectors([[1, 1], [1, -1]], 2)
    b = Subspace.from_vectors([[1, 0], [0, 1]], 2)
    assert subspace_equal(a, b)


def test_subspace_equal_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        subspace_equal(Subspace.zero(2), Subspace.zero(3))


@settings(deadline=None, max_examples=60)
@given(matrices())
def test_rref_is_idempotent(m):
    once = rref(m)
    twice = rref(once.matrix)
    assert once.matrix == twice.matrix
    assert once.pivots == twice.pivots


@settings(deadline=None, max_examples=60)
@given(matrices())
def test_kernel_vectors_annihilate(m):
    ker = kernel_basis(m)
    for i in range(ker.dim):
        image = m.mat_vec(ker.basis.row(i))
        assert all(x == 0 for x in image)


@settings(deadline=None, max_examples=60)
@given(matrices())
def test_rank_nullity(m):
    assert rref(m).rank + kernel_basis(m).dim == m.cols


@settings(deadline=None, max_examples=40)
@given(matrices(max_dim=3), st.integers(0, 10**6))
def test_subspace_invariant_under_row_recombination(m, seed):
    import random

    rng = random.Random(seed)
    sub = Subspace.from_vectors(m.to_rows(), m.cols)
    rows = [list(sub.basis.row(i)) for i in range(sub.dim)]
    if not rows:
        return
    # Invertible recombination: shuffles, scalings and row additions.
    for _ in range(6):
        i = rng.randrange(len(rows))
        j = rng.randrange(len(rows))
        if i == j:
            c = Fraction(rng.choice([1, 2, 3, -1]))
            rows[i] = [c * x for x in rows[i]]
        else:
            c = rng.randint(-3, 3)
            rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    assert subspace_equal(Subspace.from_vectors(rows, m.cols), sub)


def _naive_gauss_jordan(rows):
    rows = [list(r) for r in rows]
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


@settings(deadline=None, max_examples=80)
@given(matrices())
def test_rref_matches_naive_gauss_jordan(m):
    got = rref(m)
    want_rows, want_pivots = _naive_gauss_jordan(m.to_rows())
    assert got.matrix.to_rows() == want_rows
    assert list(got.pivots) == want_pivots


def test_matmul_and_inverse_roundtrip():
    m = RationalMatrix.from_rows([[1, 2], [3, Fraction(7, 2)]])
    assert m.inverse() @ m == RationalMatrix.identity(2)
    assert m @ m.inverse() == RationalMatrix.identity(2)


def test_inverse_of_singular_raises():
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_det_small_cases():
    assert RationalMatrix.from_rows([[1, 2], [3, 4]]).det() == -2
    assert RationalMatrix.identity(4).det() == 1
    assert RationalMatrix.from_rows([[Fraction(1, 2), 0], [0, 2]]).det() == 1
