import random

import numpy as np
import pytest

from extclifford.clifford import (
    CliffordError,
    NotCliffordError,
    SympMatrix,
    clifford_element,
    covariance_check,
    esl_elements,
    identify_clifford,
    sl_elements,
    symplectic_unitary,
    trace_closed_form,
    weyl_expansion,
    weyl_reconstruct,
)
from extclifford.cyclo import CycloMatrix, CycloScalar, i_unit, omega, sqrt_d, tau
from extclifford.heisenberg import Operator, PhasePoint, compose, displacement, phase_points


def test_group_sizes(fields):
    for d in (3, 5, 7, 9):
        assert len(esl_elements(fields[d])) == 2 * d * (d * d - 1)
        assert len(sl_elements(fields[d])) == d * (d * d - 1)


def test_symp_matrix_basics(fields):
    f = fields[5]
    F = SympMatrix.from_ints(f, [2, 1, 1, 1])
    assert F.det == 1 and F.trace == 3
    assert (F @ F.inverse()).is_identity()
    assert F ** 0 == SympMatrix.identity(f)
    assert F ** -2 == (F @ F).inverse()
    assert SympMatrix.J(f).det == -1
    with pytest.raises(CliffordError):
        SympMatrix.from_ints(f, [1, 1, 1, 1])
    with pytest.raises(CliffordError):
        SympMatrix.from_ints(f, [1, 0, 0])


def test_identity_and_J(fields, rings):
    f, ring = fields[3], rings[3]
    assert symplectic_unitary(SympMatrix.identity(f), ring).is_identity()
    UJ = symplectic_unitary(SympMatrix.J(f), ring)
    assert UJ.antiunitary
    assert UJ.matrix == CycloMatrix.identity(ring, 3)
    assert (UJ @ UJ).is_identity()


def test_fourier_d3(fields, rings):
    f, ring = fields[3], rings[3]
    U = symplectic_unitary(SympMatrix.from_ints(f, [0, 1, -1, 0]), ring)
    w = omega(f, ring)
    pref = i_unit(ring) / sqrt_d(f, ring)
    expected = CycloMatrix.from_scalars([[pref * w ** ((-x * y) % 3) for y in range(3)] for x in range(3)])
    assert U.matrix == expected


def test_unitarity_d5(fields, rings):
    f, ring = fields[5], rings[5]
    for F in random.Random(0).sample(esl_elements(f), 30):
        U = symplectic_unitary(F, ring)
        assert compose(U, U.adjoint()).is_identity()


def test_faithful_d7_sample(fields, rings):
    f, ring = fields[7], rings[7]
    els = esl_elements(f)
    rng = random.Random(7)
    for _ in range(1000):
        F1, F2 = rng.choice(els), rng.choice(els)
        assert symplectic_unitary(F1, ring) @ symplectic_unitary(F2, ring) == symplectic_unitary(F1 @ F2, ring)


def test_covariance(fields, rings):
    f, ring = fields[3], rings[3]
    J = SympMatrix.J(f)
    assert J.apply((1, 1)) == (1, 2)
    assert covariance_check(J, (1, 1), ring)
    f5, r5 = fields[5], rings[5]
    assert all(covariance_check(F, u, r5) for F in esl_elements(f5)[::7] for u in phase_points(f5))


def test_weyl_expansion_examples(fields, rings):
    f, ring = fields[3], rings[3]
    ident = weyl_expansion(SympMatrix.identity(f), ring)
    assert ident == {PhasePoint(0, 0): CycloScalar.rational(ring, 1)}
    c = weyl_expansion(SympMatrix.from_ints(f, [1, 1, 0, 1]), ring)
    pref = i_unit(ring) / sqrt_d(f, ring)
    t = tau(f, ring)
    assert c == {PhasePoint(r, 0): pref * t ** (r * r) for r in range(3)}
    f7, r7 = fields[7], rings[7]
    Z = SympMatrix.zauner(f7)
    coeffs = weyl_expansion(Z, r7)
    assert len(coeffs) == 49
    assert weyl_reconstruct(f7, coeffs, r7) == symplectic_unitary(Z, r7)
    with pytest.raises(CliffordError):
        weyl_expansion(SympMatrix.J(f7), r7)


def test_closed_form_traces(fields, rings):
    f7, r7 = fields[7], rings[7]
    assert trace_closed_form(SympMatrix.zauner(f7), r7) == 1
    f3, r3 = fields[3], rings[3]
    assert trace_closed_form(SympMatrix.from_ints(f3, [1, 1, 0, 1]), r3) == i_unit(r3) * sqrt_d(f3, r3)
    assert trace_closed_form(SympMatrix.identity(f3), r3) == 3


def test_identify_simple(fields, rings):
    f, ring = fields[5], rings[5]
    F = SympMatrix.from_ints(f, [2, 1, 1, 1])
    el = identify_clifford(f, symplectic_unitary(F, ring))
    assert (el.F, el.chi, el.phase) == (F, (0, 0), CycloScalar.rational(ring, 1))
    el = identify_clifford(f, displacement(f, (3, 4), ring))
    assert el.F.is_identity() and el.chi == (3, 4) and el.phase == 1


@pytest.mark.parametrize("d", [5, 9])
def test_identify_round_trip(fields, rings, d):
    f, ring = fields[d], rings[d]
    rng = random.Random(d)
    w = omega(f, ring)
    for _ in range(20):
        F = rng.choice(esl_elements(f))
        chi = (rng.randrange(d), rng.randrange(d))
        U = clifford_element(F, chi, w, ring)
        el = identify_clifford(f, U)
        assert el.F == F and el.chi == chi and el.phase == w
        assert el.operator(ring) == U


def test_identify_rejects_non_clifford(fields, rings):
    f, ring = fields[3], rings[3]
    num = np.zeros((3, 3, ring.phi), dtype=np.int64)
    num[0, 0, 0] = num[1, 2, 0] = num[2, 1, 0] = 1
    num[1, 2, 0] = 0
    num[1, 2, 1] = 1              # a unit phase on one entry breaks covariance
    U = Operator(CycloMatrix(ring, num))
    with pytest.raises(NotCliffordError) as err:
        identify_clifford(f, U)
    assert err.value.generator in [(1, 0), (0, 1)]


def test_canonical_phase(fields, rings):
    f, ring = fields[5], rings[5]
    F = SympMatrix.from_ints(f, [0, 1, -1, 0])
    el = identify_clifford(f, clifford_element(F, (1, 2), omega(f, ring), ring))
    can = el.canonical()
    z = can.operator(ring).matrix.to_complex()
    first = z.ravel()[np.flatnonzero(np.abs(z.ravel()) > 1e-12)[0]]
    assert first.real > 0 and abs(first.imag) < 1e-12
