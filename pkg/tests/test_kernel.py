import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from geninv import (
    DimensionMismatchError,
    Tolerance,
    approx_eq,
    cmatrix,
    conj_transpose,
    diff_norm,
    fro_norm,
    mat_pow,
    matmul,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
small_complex = st.builds(complex, finite, finite)


def square_matrices(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.complex128, (n, n), elements=small_complex)
    )


def test_cmatrix_rejects_bad_shapes():
    with pytest.raises(ValueError):
        cmatrix([1, 2, 3])
    with pytest.raises(ValueError):
        cmatrix([[]])


def test_conj_transpose_examples():
    assert np.array_equal(conj_transpose(cmatrix([[0, 1], [0, 0]])),
                          cmatrix([[0, 0], [1, 0]]))
    assert conj_transpose(cmatrix([[1j]]))[0, 0] == -1j


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_conj_transpose_involution(a):
    assert np.array_equal(conj_transpose(conj_transpose(a)), a)


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_fro_norm_conjugation_invariant(a):
    assert fro_norm(a) == pytest.approx(fro_norm(conj_transpose(a)), rel=1e-12, abs=1e-12)


def test_matmul_identity(a1):
    assert np.array_equal(matmul(np.eye(3, dtype=complex), a1), a1)


def test_matmul_associativity_matches_repeated_squaring(a1):
    triple = matmul(matmul(a1, a1), a1)
    assert np.allclose(triple, mat_pow(a1, 3), atol=1e-12)


def test_matmul_fixture_product(a3, b3):
    expected = cmatrix([[4, 0, 0], [0, 0, 0], [4, 0, 0]])
    assert np.array_equal(matmul(a3, b3), expected)


def test_matmul_shape_check():
    with pytest.raises(DimensionMismatchError):
        matmul(np.ones((2, 3), dtype=complex), np.ones((2, 3), dtype=complex))


def test_approx_eq_fixtures(a1, a2):
    assert approx_eq(a1, a1)
    bump = a1.copy()
    bump[0, 0] += 1e-13
    assert approx_eq(a1, bump)
    assert not approx_eq(a1, a2)


def test_approx_eq_dimension_check(a1):
    with pytest.raises(DimensionMismatchError):
        approx_eq(a1, np.ones((2, 2), dtype=complex))


@settings(max_examples=60, deadline=None)
@given(square_matrices(), square_matrices())
def test_approx_eq_reflexive_symmetric(a, b):
    assert approx_eq(a, a)
    if a.shape == b.shape:
        assert approx_eq(a, b) == approx_eq(b, a)
        assert diff_norm(a, b) == diff_norm(b, a)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(eq_abs=0.0)
    with pytest.raises(ValueError):
        Tolerance(eq_rel=-1.0)
    with pytest.raises(ValueError):
        Tolerance(rank_rel=0.0)
    t = Tolerance(rank_rel=1e-12)
    assert t.rank_cutoff(3, 5) == 1e-12
    auto = Tolerance().rank_cutoff(3, 5)
    assert auto == pytest.approx(np.finfo(float).eps * 5 * 64)
