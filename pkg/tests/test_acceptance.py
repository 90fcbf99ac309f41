"""Acceptance criteria 1-13.  Each test prints a single PASS/FAIL line."""

import contextlib
import itertools
import random

import pytest

from extclifford.clifford import (
    SympMatrix,
    clifford_element,
    esl_elements,
    identify_clifford,
    trace_closed_form,
)
from extclifford.cyclo import CycloScalar, gauss_closed_form, gauss_sum, make_ring_for
from extclifford.gf import field_for_dimension
from extclifford.mub import (
    F_of_ab,
    ab_det,
    ab_of_F,
    ab_product,
    canonical_A,
    classify_cycling,
    cycling_scheme,
    is_half_cycling,
    mub_orbits,
    perm_action,
    u_of_label,
    unbiasedness_check,
)
from extclifford.sic import cube_root_symplectic_G, sic_subspace_bases, type1_sic_basis, verify_table3
from extclifford.spectra import eigenspace_dims, max_order_witnesses, order, order_oracle
from extclifford.verify import run_suite

pytestmark = pytest.mark.slow


@pytest.fixture
def criterion(capsys):
    """Print 'ACCEPTANCE n PASS|FAIL title' once the body finishes, even if it raises."""

    @contextlib.contextmanager
    def run(n, title):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\nACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'} {title}")

    return run


def _suite(name, d, samples, seed=0):
    res = run_suite(name, field_for_dimension(d), samples, seed)
    assert res.passed, res.as_dict()
    return res


def test_01_faithfulness(criterion):
    with criterion(1, "U_F1 U_F2 = U_F1F2 (d=3,5 all pairs; d=7,9 1e5 random pairs)"):
        for d in (3, 5):
            res = _suite("faithful", d, 10 ** 6)
            assert res.exhaustive and res.checked == (2 * d * (d * d - 1)) ** 2
        for d in (7, 9):
            res = _suite("faithful", d, 10 ** 5)
            assert res.checked == 10 ** 5


def test_02_covariance(criterion):
    with criterion(2, "U_F D_u U_F^dagger = D_Fu over ESL x F_d^2 (d=3,5,7)"):
        for d in (3, 5, 7):
            res = _suite("covariance", d, 10 ** 6)
            assert res.exhaustive and res.checked == 2 * d * (d * d - 1) * d * d


def test_03_gauss_sums(criterion):
    with criterion(3, "Gauss sums equal closed form for all a != 0, b (d=3,5,7,9,25,27)"):
        for d in (3, 5, 7, 9, 25, 27):
            f = field_for_dimension(d)
            ring = make_ring_for(f)
            for a, b in itertools.product(range(1, d), range(d)):
                assert gauss_sum(f, ring, a, b) == gauss_closed_form(f, ring, a, b), (d, a, b)


def test_04_weyl_and_traces(criterion):
    with criterion(4, "Weyl expansion and closed trace over all of SL(2,F_d) (d=3,5,7,9)"):
        for d in (3, 5, 7, 9):
            n = d * (d * d - 1)
            assert _suite("weyl", d, n).exhaustive
            assert _suite("traces", d, n).exhaustive


def test_05_orders(criterion):
    with criterion(5, "order formulas match repeated multiplication on ESL (d=3..13); max orders"):
        for d in (3, 5, 7, 9, 11, 13):
            f = field_for_dimension(d)
            for F in esl_elements(f):
                assert order(F) == order_oracle(F), F
            w = max_order_witnesses(f)
            assert w["symplectic_type1"][1] == d - 1
            assert w["symplectic_type2"][1] == d + 1
            assert w["antisymplectic"][1] == 2 * (d + 1)
            assert all(order_oracle(F) == m for F, m in w.values())


def test_06_cube_roots_of_zauner(criterion):
    with criterion(6, "listed G and constructed G: G^2m = Zauner, ord G = 6m"):
        rows = verify_table3()
        assert len(rows) == 18 and all(e.ok for e in rows)
        for d in (5, 11, 17, 23, 29, 41, 47, 53, 59):
            G = cube_root_symplectic_G(d)
            m = (d + 1) // 6
            assert G ** (2 * m) == SympMatrix.from_ints(G.field, [0, -1, 1, -1])
            assert order_oracle(G) == 6 * m


def test_07_sic_subspaces(criterion):
    with criterion(7, "U_G eigenprojector dims (d=5,11,17,23) and type 1 bases (d=7,13,19)"):
        for d in (5, 11, 17, 23):
            rep = sic_subspace_bases(d)
            m = (d + 1) // 6
            assert rep.ok, rep.checks
            assert rep.per_r_dims == [0 if r == 3 * m else 1 for r in range(6 * m)]
            assert rep.subspace_dims == (2 * m - 1, 2 * m, 2 * m)
        for d in (7, 13, 19):
            rep = type1_sic_basis(d)
            assert rep.ok, rep.checks
            assert rep.subspace_dims[0] == 2 * ((d - 1) // 6) + 1


def test_08_zauner_d7(criterion):
    with criterion(8, "d=7 Zauner eigenspace dims (3,2,2) from Tr U = 1"):
        f = field_for_dimension(7)
        Z = SympMatrix.zauner(f)
        assert trace_closed_form(Z, make_ring_for(f)) == 1
        assert eigenspace_dims(Z) == [3, 2, 2]


def test_09_mubs(criterion):
    with criterion(9, "|<mu,x|mu',x'>|^2 = 1/d exactly (d=3,5,7,9)"):
        for d in (3, 5, 7, 9):
            rep = unbiasedness_check(field_for_dimension(d))
            assert rep.ok, rep.failures


def test_10_cycling(criterion):
    with criterion(10, "orbit brute force matches trace criteria on ESL (d=3,5,7,9,11,13)"):
        cyclers = {}
        for d in (3, 5, 7, 9, 11, 13):
            f = field_for_dimension(d)
            s = classify_cycling(f)
            assert s.ok, s.mismatches[:3]
            assert s.cycling[1] == 0
            cyclers[d] = s.cycling[-1]
            assert s.half_cycling[1] > 0
            assert (s.half_cycling[-1] > 0) == (d % 4 == 1)
            for F in esl_elements(f):
                if is_half_cycling(F):
                    assert sorted(map(len, mub_orbits(F))) == [(d + 1) // 2] * 2
        assert {d for d, n in cyclers.items() if n} == {3, 7, 11}


def test_11_extension_labelling(criterion):
    with criterion(11, "perm_action equals matrix action; (a,b) product and det (d=3,5,7,9)"):
        rng = random.Random(11)
        for d in (3, 5, 7, 9):
            f = field_for_dimension(d)
            els = esl_elements(f)
            for F in els:
                for r in range(d * d - 1):
                    assert u_of_label(f, perm_action(F, r)) == F.apply(u_of_label(f, r)), (F, r)
            pairs = itertools.product(els, els) if d <= 5 else ((rng.choice(els), rng.choice(els)) for _ in range(20000))
            ab = {F: ab_of_F(f, F) for F in els}
            for F, G in pairs:
                assert ab_product(f, ab[F], ab[G]) == ab[F @ G]
            for F in els:
                assert F_of_ab(f, ab[F]) == F.entries and ab_det(f, ab[F]) == F.det_code


def test_12_cycling_scheme(criterion):
    with criterion(12, "P_{s,x} rank-1 with overlap table; A^((d+3)/2) shifts s by 1, A^2 by 2"):
        for d in (3, 5, 7, 9, 11):
            f = field_for_dimension(d)
            sch = cycling_scheme(f)
            P = {(s, x): sch.projector(s, x) for s in range(d + 1) for x in range(d)}
            for (s, x), Q in P.items():
                assert Q @ Q == Q and Q.trace() == 1
            if d <= 5:
                for (s, x), (s2, x2) in itertools.product(P, P):
                    want = (1 if x == x2 else 0) if s == s2 else CycloScalar.rational(sch.ring, 1) / d
                    assert (P[s, x] @ P[s2, x2]).trace() == want
            A = canonical_A(f)
            shifts = [(A @ A, 2)] if d <= 9 else []
            if d % 4 == 3:
                shifts.append((A ** ((d + 3) // 2), 1))
            for F, step in shifts:
                for (s, x), Q in P.items():
                    s2, x2 = sch.act(F, s, x)
                    assert s2 == (s + step) % (d + 1)
                    assert sch.conjugate(F, Q) == P[s2, x2]


def test_13_identify_round_trip(criterion):
    with criterion(13, "identify_clifford round-trips 1000 random elements (d=3,5,7)"):
        for d in (3, 5, 7):
            f = field_for_dimension(d)
            ring = make_ring_for(f)
            rng = random.Random(13 * d)
            els = esl_elements(f)
            for _ in range(1000):
                F = rng.choice(els)
                chi = (rng.randrange(d), rng.randrange(d))
                phase = CycloScalar.root(ring, rng.randrange(ring.M))
                U = clifford_element(F, chi, phase, ring)
                el = identify_clifford(f, U)
                assert (el.F, el.chi, el.phase) == (F, chi, phase)
                assert el.operator(ring) == U
