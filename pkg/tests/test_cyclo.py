import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from extclifford.cyclo import (
    CycloError,
    CycloMatrix,
    CycloScalar,
    cyclo_ring,
    gauss_closed_form,
    gauss_sum,
    hs_inner,
    i_unit,
    l_tilde,
    make_ring_for,
    omega,
    root_of_unity,
    sqrt_d,
    tau,
)
from extclifford.gf import field_for_dimension


def test_ring_sizes():
    r = make_ring_for(3)
    assert (r.M, r.phi) == (12, 4)
    assert make_ring_for(5, [12]).M == 60
    assert make_ring_for(7, [16]).M == 112
    assert make_ring_for(field_for_dimension(9)).M == 12
    with pytest.raises(CycloError):
        make_ring_for(6)


@pytest.mark.parametrize("M", [1, 4, 12, 20, 28, 36, 60, 112])
def test_cyclotomic_polynomial(M):
    ring = cyclo_ring(M)
    assert len(ring.cyclotomic) - 1 == ring.phi
    # zeta^M = 1 after reduction
    z = CycloScalar.root(ring, 1)
    assert z ** M == 1
    assert all(z ** k != 1 for k in range(1, M))


def test_tau_and_roots():
    f = field_for_dimension(3)
    ring = make_ring_for(f)
    t = tau(f, ring)
    assert t * t == omega(f, ring)
    assert t ** 3 == 1
    assert root_of_unity(ring, 4, 1) ** 2 == -1
    assert i_unit(ring) == root_of_unity(ring, 4, 1)
    with pytest.raises(CycloError):
        root_of_unity(ring, 5, 1)


@pytest.mark.parametrize("d", [3, 5, 7, 9, 25, 27])
def test_sqrt_d(d):
    f = field_for_dimension(d)
    ring = make_ring_for(f)
    s = sqrt_d(f, ring)
    assert s * s == d
    assert s.to_complex() == pytest.approx(math.sqrt(d))


def test_gauss_small_values():
    f3 = field_for_dimension(3)
    r3 = make_ring_for(f3)
    g3 = gauss_sum(f3, r3, 1, 0)
    assert g3 == 1 + 2 * tau(f3, r3)
    assert g3 == -i_unit(r3) * sqrt_d(f3, r3)
    f5 = field_for_dimension(5)
    r5 = make_ring_for(f5)
    assert gauss_sum(f5, r5, 1, 0) == -sqrt_d(f5, r5)
    assert l_tilde(f5, r5, 1) == -1
    assert l_tilde(f3, r3, 1) == -i_unit(r3)


def test_l_tilde():
    f3 = field_for_dimension(3)
    r3 = make_ring_for(f3)
    assert l_tilde(f3, r3, f3.neg(1)) == i_unit(r3)
    assert l_tilde(f3, r3, 0) == 1


@pytest.mark.parametrize("d", [3, 5, 9])
def test_l_tilde_conjugation(d):
    f = field_for_dimension(d)
    ring = make_ring_for(f)
    for x in range(1, d):
        assert l_tilde(f, ring, x).conj() == l_tilde(f, ring, f.neg(x))


def test_gauss_d7_exhaustive():
    f = field_for_dimension(7)
    ring = make_ring_for(f)
    pairs = [(a, b) for a in range(1, 7) for b in range(7)]
    assert len(pairs) == 42
    assert all(gauss_sum(f, ring, a, b) == gauss_closed_form(f, ring, a, b) for a, b in pairs)
    with pytest.raises(CycloError):
        gauss_sum(f, ring, 0, 1)


def test_scalar_serialisation():
    ring = cyclo_ring(12)
    x = CycloScalar(ring, [1, 0, -2, 0], 3)
    assert str(x) == "12:[1/3,0,-2/3,0]"
    assert CycloScalar.parse(str(x)) == x
    assert CycloScalar.rational(ring, Fraction(3, 4)).as_rational() == Fraction(3, 4)
    assert x.as_rational() is None


_coeffs = st.lists(st.integers(-5, 5), min_size=4, max_size=4)


@given(_coeffs, _coeffs, _coeffs)
def test_field_laws(a, b, c):
    ring = cyclo_ring(12)
    x, y, z = (CycloScalar(ring, v) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x
    assert (x * y).to_complex() == pytest.approx(x.to_complex() * y.to_complex())


@given(st.integers(0, 59), st.integers(0, 59))
def test_roots_multiply(j, k):
    ring = cyclo_ring(60)
    assert CycloScalar.root(ring, j) * CycloScalar.root(ring, k) == CycloScalar.root(ring, j + k)
    assert CycloScalar.root(ring, j).rotate(k) == CycloScalar.root(ring, j + k)
    assert CycloScalar.root(ring, j).to_complex() == pytest.approx(cmath.exp(2j * cmath.pi * j / 60))


def test_unit_inverse():
    f = field_for_dimension(5)
    ring = make_ring_for(f)
    s = sqrt_d(f, ring)
    assert s * s.inverse() == 1
    assert (i_unit(ring) / s) * s == i_unit(ring)
    with pytest.raises(ZeroDivisionError):
        CycloScalar.rational(ring, 0).inverse()


def test_matrix_ops():
    ring = cyclo_ring(12)
    rng = np.random.default_rng(3)
    A = CycloMatrix(ring, rng.integers(-3, 4, (3, 3, 4)), 2)
    B = CycloMatrix(ring, rng.integers(-3, 4, (3, 3, 4)), 5)
    C = CycloMatrix(ring, rng.integers(-3, 4, (3, 3, 4)))
    assert (A @ B) @ C == A @ (B @ C)
    assert (A @ B).H == B.H @ A.H
    assert np.allclose((A @ B).to_complex(), A.to_complex() @ B.to_complex())
    assert np.allclose(A.abs2().to_complex(), np.abs(A.to_complex()) ** 2)
    assert np.allclose(A.hadamard(B).to_complex(), A.to_complex() * B.to_complex())
    assert hs_inner(A, B) == (A.H @ B).trace()
    assert A.kron(B).to_complex() == pytest.approx(np.kron(A.to_complex(), B.to_complex()))
    assert (A - A).is_zero()


def test_matrix_large_conductor_path():
    # phi(112) = 48 keeps the loop-over-shifts matmul branch exercised
    ring = cyclo_ring(112)
    rng = np.random.default_rng(0)
    A = CycloMatrix(ring, rng.integers(-2, 3, (20, 20, ring.phi)))
    B = CycloMatrix(ring, rng.integers(-2, 3, (20, 20, ring.phi)))
    assert np.allclose((A @ B).to_complex(), A.to_complex() @ B.to_complex())


def test_embedding_between_rings():
    small, big = cyclo_ring(12), cyclo_ring(60)
    x = CycloScalar.root(small, 1)
    assert x.to_ring(big) == CycloScalar.root(big, 5)
