import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isopar.algebras import (
    CliffordSystem, Octonion, Quaternion, build_c8_rep, build_clifford_system, oct_mul,
    quaternion_right_mult_matrix, right_mult_matrix, verify_clifford,
)
from isopar.linalg import Mat
from isopar.scalar import ONE, Scalar, ZERO

fr = st.fractions(min_value=-5, max_value=5, max_denominator=4).map(Scalar)
octs = st.lists(fr, min_size=8, max_size=8).map(lambda v: Octonion(*v))
quats = st.lists(fr, min_size=4, max_size=4).map(lambda v: Quaternion(*v))


@given(octs)
def test_unit(x):
    e1 = Octonion.basis(1)
    assert e1 * x == x and x * e1 == x


def test_imaginary_units_square_to_minus_one():
    for i in range(2, 9):
        e = Octonion.basis(i)
        assert e * e == -Octonion.basis(1)


@settings(max_examples=50, deadline=None)
@given(octs, octs)
def test_norm_multiplicative(a, b):
    assert oct_mul(a, b).norm2() == a.norm2() * b.norm2()


@settings(max_examples=50, deadline=None)
@given(octs, octs)
def test_alternative(a, b):
    assert (a * a) * b == a * (a * b)
    assert (a * b) * b == a * (b * b)


def test_not_associative():
    e = Octonion.basis
    assert (e(2) * e(3)) * e(5) != e(2) * (e(3) * e(5))


@given(quats, quats, quats)
def test_quaternions_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(quats, quats)
def test_quaternion_conj_antiautomorphism(a, b):
    assert (a * b).conj() == b.conj() * a.conj()


def test_ijk_cycle():
    i, j, k = (Quaternion.basis(n) for n in (1, 2, 3))
    assert i * j == k and j * k == i and k * i == j


def test_right_mult_matrix():
    eye = Mat.identity(8)
    mats = {i: right_mult_matrix(i) for i in range(2, 9)}
    assert mats[2].col(0) == list(Octonion.basis(2).coeffs)
    for i, M in mats.items():
        assert M.is_skew()
        assert M.T @ M == eye
        assert M @ M == -eye
    for i in range(2, 9):
        for j in range(i + 1, 9):
            assert (mats[i] @ mats[j] + mats[j] @ mats[i]).is_zero()


@settings(max_examples=20, deadline=None)
@given(octs)
def test_right_mult_acts(x):
    for i in (2, 5, 8):
        assert right_mult_matrix(i) @ list(x.coeffs) == list((x * Octonion.basis(i)).coeffs)


@pytest.mark.parametrize("i", [0, 1, 9])
def test_right_mult_index_range(i):
    with pytest.raises(IndexError):
        right_mult_matrix(i)


def test_c8_rep():
    J = build_c8_rep()
    eye = Mat.identity(16)
    assert len(J) == 8
    assert J[7] @ J[7] == -eye
    assert (J[0] @ J[1] + J[1] @ J[0]).is_zero()
    assert all(M.is_skew() for M in J)


def test_clifford_system():
    sys9 = build_clifford_system()
    assert sys9.m == 9 and sys9.dim == 32
    assert verify_clifford(sys9).ok
    assert all(P.trace() == 0 for P in sys9.mats)
    P0, P1 = sys9.mats[0], sys9.mats[1]
    c = [Scalar(k) for k in range(32)]
    assert P0 @ c == c[:16] + [-v for v in c[16:]]
    assert (P1 @ P0 + P0 @ P1).is_zero()


def test_verify_clifford_failures():
    mats = list(build_clifford_system().mats)
    mats[1] = mats[0]
    rep = verify_clifford(CliffordSystem(32, tuple(mats)))
    assert not rep.ok and rep.failure == (0, 1)
    assert verify_clifford(CliffordSystem(0, ())).ok


def test_quaternion_right_mult_gives_unit_blocks():
    # right multiplication by 1, i, j, k is orthogonal; by i, j, k it squares to -1
    eye = Mat.identity(4)
    mats = [quaternion_right_mult_matrix(Quaternion.basis(n)) for n in range(4)]
    assert mats[0] == eye
    for M in mats[1:]:
        assert M @ M == -eye
