from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from octomod.linalg import (
    DimensionMismatchError,
    Matrix,
    SingularMatrixError,
    Subspace,
    format_rational,
    intersect,
    invert,
    kernel,
    parse_rational,
    rank,
    rref,
    solve_sylvester_family,
    stable_span,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(0, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    # low-rank matrices are the interesting ones for kernels, so mix in duplicated rows
    data = [draw(st.lists(small, min_size=c, max_size=c)) for _ in range(r)]
    if r >= 2 and draw(st.booleans()):
        k = draw(small)
        data[-1] = [k * x for x in data[0]]
    return Matrix(data, ncols=c)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.nrows, m.ncols, [sympy.Rational(x.numerator, x.denominator)
                                           for row in m.rows for x in row])


def from_sympy(s: sympy.Matrix) -> Matrix:
    return Matrix([[Fraction(int(x.p), int(x.q)) for x in s.row(i)] for i in range(s.rows)], ncols=s.cols)


def test_rational_strings():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 7 ") == 7
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in ["", "1/", "a", "1/x"]:
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_rref_examples():
    r, k = rref(Matrix([[0, 2], [3, 0]]))
    assert r == Matrix.identity(2) and k == 2
    r, k = rref(Matrix([[1, 2], [2, 4]]))
    assert r == Matrix([[1, 2], [0, 0]]) and k == 1


def test_kernel_examples():
    K = kernel(Matrix([[1, 1]]))
    assert K == Subspace.span([[1, -1]], 2)
    assert kernel(Matrix.identity(3)).dim == 0
    assert kernel(Matrix.zeros(2, 3)) == Subspace.full(3)


def test_invert_examples():
    assert invert(Matrix([[2, 0], [0, 4]])) == Matrix([["1/2", 0], [0, "1/4"]])
    with pytest.raises(SingularMatrixError):
        invert(Matrix([[1, 2], [2, 4]]))
    with pytest.raises(DimensionMismatchError):
        invert(Matrix([[1, 2]]))


def test_sylvester_diagonal_commutant():
    # F diag(1,2) = diag(1,2) F forces F diagonal
    A = Matrix([[1, 0], [0, 2]])
    S = solve_sylvester_family([(A, A)])
    assert S.dim == 2
    brute = kernel(Matrix([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]]))
    assert S == brute


def test_sylvester_errors():
    with pytest.raises(ValueError):
        solve_sylvester_family([])
    with pytest.raises(DimensionMismatchError):
        solve_sylvester_family([(Matrix.identity(2), Matrix.identity(2)), (Matrix.identity(3), Matrix.identity(2))])


def test_integer_overflow_path_is_exact():
    big = 2 ** 70
    m = Matrix([[big, 1], [0, 1]])
    assert (m @ m) == Matrix([[big * big, big + 1], [0, 1]])


def test_stable_span_cyclic_shift():
    P = Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert stable_span([[1, 0, 0]], [P], 3).dim == 3
    assert stable_span([[1, 1, 1]], [P], 3) == Subspace.span([[1, 1, 1]], 3)
    assert stable_span([], [P], 3).dim == 0


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(m):
    r, k = rref(m)
    ref, piv = to_sympy(m).rref()
    assert k == len(piv) == rank(m)
    assert r == from_sympy(ref)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_matches_sympy(m):
    K = kernel(m)
    assert K.dim == m.ncols - rank(m)
    for v in K.vectors():
        assert not any(m.apply(v))
    oracle = Subspace.span([[Fraction(int(x.p), int(x.q)) for x in v] for v in to_sympy(m).nullspace()], m.ncols)
    assert K == oracle


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_invert_round_trip(m):
    if rank(m) < m.nrows:
        with pytest.raises(SingularMatrixError):
            invert(m)
        return
    inv = invert(m)
    assert m @ inv == Matrix.identity(m.nrows)
    assert inv @ m == Matrix.identity(m.nrows)


@settings(max_examples=40, deadline=None)
@given(matrices(rows=3, cols=4), matrices(rows=3, cols=4))
def test_subspace_lattice(a, b):
    A, B = Subspace.row_space(a), Subspace.row_space(b)
    S, I = A + B, A & B
    # dim(A + B) + dim(A & B) = dim A + dim B
    assert S.dim + I.dim == A.dim + B.dim
    assert S.contains_subspace(A) and S.contains_subspace(B)
    assert A.contains_subspace(I) and B.contains_subspace(I)
    assert intersect(A, A) == A


@settings(max_examples=40, deadline=None)
@given(matrices(rows=3, cols=4), st.lists(small, min_size=3, max_size=3))
def test_coordinates_reconstruct(a, weights):
    S = Subspace.row_space(a)
    v = [sum((w * x for w, x in zip(weights, col)), Fraction(0)) for col in zip(*a.rows)]
    c = S.coordinates(v)
    assert c is not None
    recon = [sum((ci * bi for ci, bi in zip(c, col)), Fraction(0)) for col in zip(*S.vectors())] if S.dim else [0] * 4
    assert list(recon) == v


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(matrices(rows=n, cols=n), matrices(rows=n, cols=n))))
def test_sylvester_solutions_intertwine(pair):
    A, B = pair
    S = solve_sylvester_family([(A, B)])
    n = A.nrows
    for v in S.vectors():
        F = Matrix([v[i * n:(i + 1) * n] for i in range(n)])
        assert F @ A == B @ F
    # oracle: vectorized equation (I (x) A^T - B (x) I) vec(F) = 0 solved by sympy
    At, Bs = to_sympy(A).T, to_sympy(B)
    big = sympy.kronecker_product(sympy.eye(n), At) - sympy.kronecker_product(Bs, sympy.eye(n))
    assert S.dim == n * n - big.rank()


def test_spec_table_examples():
    assert rref(Matrix.identity(3)) == (Matrix.identity(3), 3)
    assert rref(Matrix([[1, 1], [2, 2]])) == (Matrix([[1, 1], [0, 0]]), 1)
    assert invert(Matrix.identity(3)) == Matrix.identity(3)
    with pytest.raises(SingularMatrixError):
        invert(Matrix([[1, 1], [1, 1]]))
    x, y = Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2)
    assert (x & y).dim == 0
    assert intersect(Subspace.full(2), Subspace.span([[1, 1]], 2)) == Subspace.span([[1, 1]], 2)
    with pytest.raises(DimensionMismatchError):
        intersect(Subspace.full(2), Subspace.full(3))
    I2 = Matrix.identity(2)
    assert solve_sylvester_family([(I2, I2)]).dim == 4
    assert solve_sylvester_family([(Matrix([[1, 0], [0, 2]]), Matrix([[3, 0], [0, 4]]))]).dim == 0


@settings(max_examples=40, deadline=None)
@given(matrices(rows=3, cols=4), matrices(rows=2, cols=4))
def test_intersect_commutes_and_bounds(a, b):
    A, B = Subspace.row_space(a), Subspace.row_space(b)
    assert (A & B) == (B & A)
    assert (A & B).dim >= A.dim + B.dim - 4
