from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcx.errors import ValidationError
from dcx.exact import (
    GF,
    QQ,
    Field,
    Mat,
    column_space_basis,
    coords_in_span,
    kernel_basis,
    quotient_space,
    rank,
    rref,
    solve,
)

F2 = GF(2)
F3 = GF(3)
F101 = GF(101)


def test_field_rejects_composite_characteristic():
    with pytest.raises(ValidationError):
        Field(4)
    with pytest.raises(ValidationError):
        Field(1)


def test_field_elem_coercion():
    assert F3.elem(-1) == 2
    assert F3.elem(Fraction(1, 2)) == 2  # 1/2 = 2 mod 3
    assert QQ.elem("3/4") == Fraction(3, 4)
    with pytest.raises(ValidationError):
        F2.elem(Fraction(1, 2))


def test_rref_f2_rank_one():
    M = Mat.from_rows(F2, [[1, 1], [1, 1]])
    R, pivots = rref(M)
    assert R.to_rows() == [[1, 1], [0, 0]]
    assert pivots == (0,)
    assert rank(M) == 1


def test_rref_qq_normalizes_pivot():
    M = Mat.from_rows(QQ, [[2, 4], [1, 3]])
    R, pivots = rref(M)
    assert pivots == (0, 1)
    assert R.to_rows() == [[1, 0], [0, 1]]


def test_kernel_qq_line():
    M = Mat.from_rows(QQ, [[1, 2]])
    K = kernel_basis(M)
    assert K.shape == (2, 1)
    assert (M @ K).is_zero()
    # spanning vector proportional to (-2, 1)
    assert K.a[0, 0] == Fraction(-2) and K.a[1, 0] == Fraction(1)


def test_solve_f3_scalar():
    A = Mat.from_rows(F3, [[2]])
    B = Mat.from_rows(F3, [[1]])
    X = solve(A, B)
    assert X.to_rows() == [[2]]  # 2*2 = 4 = 1 mod 3


def test_solve_detects_inconsistency():
    A = Mat.from_rows(QQ, [[1], [1]])
    B = Mat.from_rows(QQ, [[0], [1]])
    assert solve(A, B) is None


def test_block_assembly_and_inference():
    A = Mat.identity(F3, 2)
    B = Mat.from_rows(F3, [[1], [2]])
    M = Mat.block(F3, [[A, B], [None, Mat.from_rows(F3, [[1]])]])
    assert M.to_rows() == [[1, 0, 1], [0, 1, 2], [0, 0, 1]]
    with pytest.raises(ValidationError):
        Mat.block(F3, [[None]])


def test_quotient_space_mod_diagonal():
    # W = span (1,1) in k^2: quotient is a line, proj kills W.
    S = Mat.from_rows(QQ, [[1], [1]])
    proj, section = quotient_space(S)
    assert proj.shape == (1, 2)
    assert section.shape == (2, 1)
    assert (proj @ S).is_zero()
    assert (proj @ section).to_rows() == [[1]]


def test_quotient_space_full_span():
    S = Mat.identity(F2, 2)
    proj, section = quotient_space(S)
    assert proj.shape == (0, 2)
    assert section.shape == (2, 0)


def test_coords_in_span():
    S = Mat.from_rows(F101, [[1, 0], [1, 1], [0, 1]])
    v = Mat.column(F101, [2, 3, 1])
    X = coords_in_span(S, v)
    assert (S @ X) == v
    w = Mat.column(F101, [1, 0, 0])
    assert coords_in_span(S, w) is None


def _mat_strategy(field, max_dim=5):
    if field.p is None:
        entry = st.fractions(
            min_value=-4, max_value=4, max_denominator=3
        )
    else:
        entry = st.integers(min_value=0, max_value=field.p - 1)
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: Mat.from_rows(field, rows))
        )
    )


@settings(max_examples=60, deadline=None)
@given(_mat_strategy(F101))
def test_rref_idempotent_and_rank_nullity_fp(M):
    R, pivots = rref(M)
    R2, pivots2 = rref(R)
    assert R == R2 and pivots == pivots2
    K = kernel_basis(M)
    assert len(pivots) + K.cols == M.cols
    assert (M @ K).is_zero()


@settings(max_examples=40, deadline=None)
@given(_mat_strategy(QQ, max_dim=4))
def test_rref_idempotent_and_rank_nullity_qq(M):
    R, pivots = rref(M)
    R2, pivots2 = rref(R)
    assert R == R2 and pivots == pivots2
    K = kernel_basis(M)
    assert len(pivots) + K.cols == M.cols
    assert (M @ K).is_zero()


@settings(max_examples=40, deadline=None)
@given(_mat_strategy(F3, max_dim=4), st.data())
def test_solve_recovers_known_solution(A, data):
    cols = data.draw(st.integers(1, 3))
    Xrows = data.draw(
        st.lists(
            st.lists(st.integers(0, 2), min_size=cols, max_size=cols),
            min_size=A.cols,
            max_size=A.cols,
        )
    )
    X = Mat.from_rows(F3, Xrows)
    B = A @ X
    Y = solve(A, B)
    assert Y is not None
    assert (A @ Y) == B


@settings(max_examples=40, deadline=None)
@given(_mat_strategy(F101, max_dim=4))
def test_quotient_space_laws(M):
    proj, section = quotient_space(M)
    n = M.rows
    r = rank(M)
    assert proj.shape == (n - r, n)
    assert section.shape == (n, n - r)
    assert (proj @ M).is_zero()
    assert (proj @ section) == Mat.identity(F101, n - r)
    assert rank(proj) == n - r


@settings(max_examples=40, deadline=None)
@given(_mat_strategy(F101, max_dim=4))
def test_column_space_basis_spans(M):
    B, pivots = column_space_basis(M)
    assert B.cols == rank(M)
    # every column of M lies in the span of B
    assert coords_in_span(B, M) is not None


def test_matmul_mod_reduction_safety():
    # products of large residues stay exact under int64 accumulation
    p = 997
    F = GF(p)
    A = Mat.from_rows(F, [[p - 1] * 50])
    B = Mat.from_rows(F, [[p - 1]] * 50)
    C = A @ B
    assert C.entry(0, 0) == (50 * (p - 1) * (p - 1)) % p


def test_digest_distinguishes_content_and_field():
    A = Mat.from_rows(F2, [[1, 0]])
    B = Mat.from_rows(F2, [[0, 1]])
    C = Mat.from_rows(F3, [[1, 0]])
    assert A.digest() != B.digest()
    assert A.digest() != C.digest()
    assert A.digest() == Mat.from_rows(F2, [[1, 0]]).digest()
