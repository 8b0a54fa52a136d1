import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isopar.forms import ShapeBlocks
from isopar.geometry import ExampleId
from isopar.linalg import Mat
from isopar.pencil import (
    PencilSample, jacobian_rank, kernel_structure_ok, nullity, pencil_array, pencil_matrix,
    r_lambda_scan, sample_hyperquadric, structured_lambda,
)
from isopar.scalar import CScalar, I, ONE, Scalar, ZERO
from isopar.suites import blocks_for, forms_for

H45, FKM69 = ExampleId.H45, ExampleId.FKM69


def test_pencil_at_unit_vector_is_S0():
    b = blocks_for(H45)
    M = pencil_matrix([1, 0, 0, 0, 0], b)
    assert M == Mat([[CScalar(v) for v in r] for r in b.S[0].data])


def test_pencil_at_first_normal_has_block_form():
    b = blocks_for(H45)
    M = pencil_matrix([0, 1], b)
    r = list(range(5)), list(range(5, 10)), list(range(10, 14))
    assert M.submatrix(r[0], r[1]) == b.A[1]
    assert M.submatrix(r[0], r[2]) == b.B[1]
    assert M.submatrix(r[1], r[2]) == b.C[1]


def test_pencil_symmetric_not_hermitian():
    b = blocks_for(H45)
    M = pencil_matrix([ONE, I, CScalar(1, 1)], b)
    assert M == M.T
    conj_T = Mat([[v.conj() for v in r] for r in M.T.data])
    assert M != conj_T


def test_pencil_length_error():
    with pytest.raises(ValueError):
        pencil_matrix([1] * 6, blocks_for(H45))


@pytest.mark.parametrize("ex,m1,want", [(H45, 4, 8), (FKM69, 6, 14)])
def test_calibration_nullities(ex, m1, want):
    b = blocks_for(ex)
    assert nullity(pencil_matrix([1], b)) == m1
    assert nullity(structured_lambda(b, 1, 1)) == want
    assert nullity(structured_lambda(b, 1, -1)) == want
    assert nullity(structured_lambda(b), "floating") == want


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_exact_and_floating_agree(re, im):
    b = blocks_for(H45)
    c = [CScalar(a, bb) for a, bb in zip(re, im)]
    M = pencil_matrix(c, b)
    assert nullity(M) == nullity(M, "floating")


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5).filter(any))
def test_real_direction_nullity_is_m1(c):
    b = blocks_for(H45)
    assert nullity(pencil_matrix([Scalar(v) for v in c], b)) == 4


def test_hyperquadric_samples():
    samples = sample_hyperquadric(4, 50, 1)
    for s in samples:
        a, bb = s.alpha, s.beta
        assert abs(a @ bb) < 1e-12
        assert abs(a @ a - bb @ bb) < 1e-12
        assert s.is_nongeneric()
        assert s.tau == 1j


def test_hyperquadric_deterministic():
    a = sample_hyperquadric(6, 20, 9)
    b = sample_hyperquadric(6, 20, 9)
    assert all(np.array_equal(x.c, y.c) for x, y in zip(a, b))
    c = sample_hyperquadric(6, 20, 10)
    assert not np.array_equal(a[0].c, c[0].c)


def test_hyperquadric_needs_k():
    with pytest.raises(ValueError):
        sample_hyperquadric(0, 3, 0)


def test_k1_scan_constant():
    b = blocks_for(H45)
    res = r_lambda_scan(b, sample_hyperquadric(1, 40, 2))
    assert len(res.histogram) == 1


@pytest.mark.parametrize("ex", [H45, FKM69])
def test_scan_histogram(ex):
    b = blocks_for(ex)
    res = r_lambda_scan(b, sample_hyperquadric(b.m1, 1000, 42), 42)
    assert res.histogram == {1: 1000}
    assert res.ok
    js = res.to_json()
    assert js["histogram"] == {"1": 1000} and js["k"] == b.m1 and js["seed"] == 42


def test_scan_flags_generic_samples():
    b = blocks_for(H45)
    res = r_lambda_scan(b, [PencilSample(c=np.array([1.0, 2.0, 0, 0, 0], dtype=complex))])
    assert not res.ok and res.violations[0]["reason"].startswith("generic")


def _toy_blocks(m1=2, m2=3):
    n = m1 + 2 * m2
    S0 = Mat([[ONE if i == j < m2 else (-ONE if i == j and m2 <= i < 2 * m2 else ZERO) for j in range(n)] for i in range(n)])
    A = Mat.identity(m2)
    S = [S0]
    for _ in range(m1):
        rows = [[ZERO] * n for _ in range(n)]
        for i in range(m2):
            rows[i][m2 + i] = ONE
            rows[m2 + i][i] = ONE
        S.append(Mat(rows))
    zero_b = Mat.zeros(m2, m1)
    return ShapeBlocks(m1, m2, S, [None] + [A] * m1, [None] + [zero_b] * m1, [None] + [zero_b] * m1,
                       tuple(range(1, m1 + 1)), tuple(range(1, m1 + 1)))


def test_toy_blocks_have_r_zero():
    b = _toy_blocks()
    res = r_lambda_scan(b, sample_hyperquadric(1, 30, 0))
    assert res.histogram == {0: 30}


@pytest.mark.parametrize("ex", [H45, FKM69])
def test_kernel_structure(ex):
    b = blocks_for(ex)
    assert all(kernel_structure_ok(b, a, s) for a in range(1, b.m1 + 1) for s in (1, -1))


def test_jacobian_rank_bounded():
    f = forms_for(H45)
    pt = [Scalar(i % 3 - 1) for i in range(14)]
    assert jacobian_rank(f.p, pt) <= 5
    assert jacobian_rank(f.p[:2], pt) <= 2


def test_floating_nullity_threshold():
    M = np.diag([1.0, 1e-12, 0.0])
    assert nullity(M, "floating") == 2
    with pytest.raises(ValueError):
        nullity(M, "fuzzy")


def test_pencil_array_matches_exact():
    b = blocks_for(H45)
    c = [1, 1j, 0.5, 0, -2]
    exact = pencil_matrix([CScalar(1), I, Scalar(1) / 2, ZERO, Scalar(-2)], b)
    assert np.allclose(pencil_array(c, b), np.array(exact.to_float()))
