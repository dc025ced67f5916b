from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oirep.linalg import (
    GF,
    QQ,
    DimensionError,
    Field,
    Matrix,
    Solver,
    _sparse_gauss_jordan,
    _to_integer_rows,
    field_context,
    hstack,
    image_basis,
    intersect_subspaces,
    inverse,
    kernel_basis,
    parse_field,
    primitive_integer_vector,
    rank,
    rref,
    rref_naive,
    same_span,
    solve,
)


def matrices(max_rows=6, max_cols=6, lo=-3, hi=3, density=None):
    @st.composite
    def build(draw):
        r = draw(st.integers(0, max_rows))
        c = draw(st.integers(0, max_cols))
        ent = st.integers(lo, hi) if density is None else st.sampled_from([0] * density + list(range(lo, hi + 1)))
        rows = [[draw(ent) for _ in range(c)] for _ in range(r)]
        return Matrix(rows, c)
    return build()


def naive_rank_mod(M, p):
    rows = [[x % p for x in r] for r in M.rows]
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                a = rows[i][c]
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


@given(matrices())
def test_rref_matches_naive(M):
    assert rref(M) == rref_naive(M)


@given(matrices(max_rows=10, max_cols=10, density=6))
def test_sparse_elimination_matches_naive(M):
    rows, piv = _sparse_gauss_jordan(_to_integer_rows(M.rows), M.ncols, None)
    R, p2 = rref_naive(M)
    assert piv == p2
    assert Matrix(rows, M.ncols) == R


def test_sparse_path_on_large_matrix():
    # big and sparse enough to take the sparse route inside rref
    n = 60
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        rows[i][(3 * i + 1) % n] = -1
    M = Matrix(rows, n)
    assert rref(M) == rref_naive(M)


@given(matrices())
def test_rank_nullity(M):
    assert rank(M) + kernel_basis(M).ncols == M.ncols
    K = kernel_basis(M)
    assert (M @ K).is_zero()


@given(matrices(), st.sampled_from([3, 5, 7]))
def test_prime_rank(M, p):
    with field_context(GF(p)):
        Mp = Matrix([[x % p for x in r] for r in M.rows], M.ncols)
        assert rank(Mp) == naive_rank_mod(M, p)
        K = kernel_basis(Mp)
        assert all(x % p == 0 for r in (Mp @ K).rows for x in r)


@given(matrices(max_rows=5, max_cols=5), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solver_consistent_and_inconsistent(M, x):
    x = x[:M.ncols]
    b = M.apply(x)
    y = Solver(M).solve_vector(b)
    assert y is not None and M.apply(y) == b
    if M.nrows and rank(M) < M.nrows:
        # something outside the image
        L = kernel_basis(M.T)
        bad = [sum(L.rows[i][k] for k in range(L.ncols)) for i in range(M.nrows)]
        if any(bad):
            assert solve(M, [u + v for u, v in zip(b, bad)]) is None


def test_inverse_and_singular():
    M = Matrix([[2, 1], [1, 1]])
    assert M @ inverse(M) == Matrix.identity(2)
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 2], [2, 4]]))
    with pytest.raises(DimensionError):
        inverse(Matrix([[1, 2]]))


@given(st.integers(0, 5), st.data())
def test_intersection_dimension(n, data):
    def draw(c):
        rows = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=n, max_size=n))
        return Matrix(rows, c)
    U = draw(data.draw(st.integers(0, 4)))
    W = draw(data.draw(st.integers(0, 4)))
    I = intersect_subspaces(U, W)
    assert I.ncols == rank(U) + rank(W) - rank(hstack([U, W], n))


def test_same_span_and_image():
    U = Matrix([[1, 2], [0, 0], [1, 2]])
    assert same_span(U, Matrix([[3], [0], [3]]))
    assert image_basis(U).ncols == 1


def test_fields():
    assert parse_field("rational") == QQ
    assert parse_field("prime:101") == Field(101)
    with pytest.raises(ValueError):
        Field(2)
    with pytest.raises(ValueError):
        Field(9)
    F = GF(7)
    assert F(Fraction(1, 3)) * 3 % 7 == 1


def test_primitive_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-1, 3), 0]) == [3, -2, 0]
    assert primitive_integer_vector([0, -2, 4]) == [0, 1, -2]
