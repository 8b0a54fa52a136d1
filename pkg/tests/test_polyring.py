import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from isopar.algebras import build_clifford_system
from isopar.geometry import build_F_45, build_F_69
from isopar.polyring import (
    MPoly, finite_difference_grad, grad, grad_inner, laplacian, norm_sq, rel_error,
    subst_linear, verify_cm,
)
from isopar.scalar import INV_SQRT2, Scalar
from strategies import polys, rational_points, scalars


def test_grad_monomial():
    x1, x2 = MPoly.variables(2)
    g = grad(x1 * x1)
    assert g[0] == x1.scale(2)
    assert g[1].is_zero()


def test_grad_of_r4():
    n = 4
    r2 = norm_sq(n)
    V = MPoly.variables(n)
    for i, gi in enumerate(grad(r2 * r2)):
        assert gi == (V[i] * r2).scale(4)


def test_laplacian_examples():
    assert laplacian(norm_sq(5)) == 10
    r2 = norm_sq(32)
    assert laplacian(r2 * r2) == r2.scale(136)


def test_laplacian_of_clifford_square():
    P0 = build_clifford_system().mats[0]
    n = P0.rows
    V = MPoly.variables(n)
    q = sum((V[i] * V[i]).scale(P0[i, i]) for i in range(n))
    assert laplacian(q * q) == norm_sq(n).scale(8)


def test_grad_inner_examples():
    x1, x2 = MPoly.variables(2)
    assert grad_inner(x1, x2 * x2).is_zero()
    r2 = norm_sq(3)
    assert grad_inner(r2, r2) == r2.scale(4)


def test_subst_examples():
    x1 = MPoly.var(1, 0)
    out = subst_linear(x1 * x1, [[INV_SQRT2, INV_SQRT2]], 2)
    u1, u2 = MPoly.variables(2)
    assert out == (u1 * u1 + (u1 * u2).scale(2) + u2 * u2).scale(Fraction(1, 2))
    assert subst_linear(x1 * x1 * x1, [[1]], 1) == x1 * x1 * x1


def test_subst_dimension_mismatch():
    with pytest.raises(ValueError):
        subst_linear(MPoly.var(2, 0), [[1]], 1)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys(2, 3, 4))
def test_no_zero_coefficients_stored(a):
    b = a - a.scale(Fraction(1, 2)) - a.scale(Fraction(1, 2))
    assert b.terms == {}
    assert all(c for c in (a * a).terms.values())


@settings(max_examples=30, deadline=None)
@given(polys(2, 3, 4), rational_points(4), rational_points(4))
def test_subst_composes(F, m1, m2):
    M1 = [m1[0:2], m1[2:4]]
    M2 = [m2[0:2], m2[2:4]]
    prod = [[sum((M1[i][k] * M2[k][j] for k in range(2)), Scalar()) for j in range(2)] for i in range(2)]
    once = subst_linear(subst_linear(F, M1, 2), M2, 2)
    assert once == subst_linear(F, prod, 2)


@settings(max_examples=30, deadline=None)
@given(polys(3, 3, 5))
def test_euler_identity(F):
    for d in range(4):
        Fd = F.homogeneous_part(d)
        V = MPoly.variables(3)
        euler = sum((V[i] * Fd.diff(i) for i in range(3)), MPoly.zero(3))
        assert euler == Fd.scale(d)


@settings(max_examples=30, deadline=None)
@given(polys(3, 2, 4), rational_points(3))
def test_grad_inner_nonnegative(F, pt):
    assert grad_inner(F, F).evaluate(pt) >= 0


def test_verify_cm_rejects_r4():
    r2 = norm_sq(4)
    res = verify_cm(r2 * r2, 4, 1, 1)
    assert res.grad_ok
    assert not res.laplacian_ok
    assert not res.ok
    assert res.residual_terms > 0


def test_verify_cm_needs_homogeneous():
    x = MPoly.var(2, 0)
    with pytest.raises(ValueError):
        verify_cm(x ** 4 + x, 4, 1, 1)


@pytest.mark.parametrize("build", [build_F_45, build_F_69])
def test_gradient_matches_finite_differences(build):
    F = build()
    rng = random.Random(7)
    G = grad(F)
    for _ in range(5):
        pt = [rng.uniform(-1, 1) for _ in range(F.nvars)]
        sym = [g.evaluate_float(pt) for g in G]
        fd = finite_difference_grad(F, pt)
        assert rel_error(sym, fd) < 1e-9


@given(polys(3, 3, 5))
def test_json_round_trip(F):
    assert MPoly.from_json(F.to_json()) == F


def test_json_shape():
    F = MPoly.var(2, 1).scale(Scalar(Fraction(1, 3), 1))
    assert F.to_json() == {"nvars": 2, "terms": [{"exp": [0, 1], "r": "1/3", "s": "1"}]}


def test_homogeneous_and_degree():
    x, y = MPoly.variables(2)
    assert (x * y + y * y).is_homogeneous(2)
    assert not (x + y * y).is_homogeneous()
    assert (x ** 3 + y).degree() == 3
