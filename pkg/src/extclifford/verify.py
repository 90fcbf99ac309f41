"""Named verification suites: exhaustive when affordable, seeded samples otherwise.

Every check is an exact equality; a failing suite reports its first counterexample.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .clifford import (
    esl_elements,
    sl_elements,
    symplectic_unitary,
    trace_closed_form,
    weyl_expansion,
    weyl_reconstruct,
)
from .cyclo import gauss_closed_form, gauss_sum, make_ring_for
from .gf import GaloisField
from .heisenberg import compose, displacement, phase_points
from .mub import (
    ab_det,
    ab_of_F,
    ab_product,
    classify_cycling,
    displacement_action,
    F_of_ab,
    mub_bases,
    mub_labels,
    perm_action,
    symplectic_mub_action,
    u_of_label,
    unbiasedness_check,
)
from .spectra import order, order_oracle

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_all"]

DEFAULT_SAMPLES = 20000


@dataclass
class SuiteResult:
    suite: str
    d: int
    checked: int
    exhaustive: bool
    counterexample: object = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def as_dict(self) -> dict:
        return {"suite": self.suite, "d": self.d, "passed": self.passed, "checked": self.checked,
                "exhaustive": self.exhaustive, "counterexample": self.counterexample}


def _pick(items: list, samples: int, rng: random.Random) -> tuple[list, bool]:
    if len(items) <= samples:
        return items, True
    return [rng.choice(items) for _ in range(samples)], False


def _first_failure(name: str, d: int, cases: Iterable, check: Callable, exhaustive: bool) -> SuiteResult:
    n = 0
    for case in cases:
        n += 1
        if not check(case):
            return SuiteResult(name, d, n, exhaustive, _describe(case))
    return SuiteResult(name, d, n, exhaustive)


def _describe(case):
    if isinstance(case, tuple):
        return [_describe(c) for c in case]
    if hasattr(case, "signed"):
        return case.signed()
    if isinstance(case, (list, tuple)):
        return list(case)
    return case if isinstance(case, (int, str)) else str(case)


def suite_faithful(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    ring = make_ring_for(f)
    els = list(esl_elements(f))
    pairs = list(itertools.product(els, els)) if len(els) ** 2 <= samples else None
    if pairs is None:
        pairs = [(rng.choice(els), rng.choice(els)) for _ in range(samples)]
    U = {F: symplectic_unitary(F, ring) for F in els}

    def check(pq):
        F1, F2 = pq
        return U[F1] @ U[F2] == U[F1 @ F2]

    return _first_failure("faithful", f.d, pairs, check, len(pairs) == len(els) ** 2)


def suite_covariance(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    ring = make_ring_for(f)
    cases, full = _pick(list(itertools.product(esl_elements(f), phase_points(f))), samples, rng)

    def check(case):
        F, u = case
        U = symplectic_unitary(F, ring)
        return compose(U, displacement(f, u, ring)) == compose(displacement(f, F.apply(u), ring), U)

    return _first_failure("covariance", f.d, cases, check, full)


def suite_orders(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    cases, full = _pick(list(esl_elements(f)), samples, rng)
    return _first_failure("orders", f.d, cases, lambda F: order(F) == order_oracle(F), full)


def suite_gauss(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    ring = make_ring_for(f)
    cases, full = _pick([(a, b) for a in range(1, f.d) for b in range(f.d)], samples, rng)
    return _first_failure("gauss", f.d, cases,
                          lambda ab: gauss_sum(f, ring, *ab) == gauss_closed_form(f, ring, *ab), full)


def suite_traces(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    ring = make_ring_for(f)
    cases, full = _pick(list(sl_elements(f)), samples, rng)
    return _first_failure("traces", f.d, cases,
                          lambda F: trace_closed_form(F, ring) == symplectic_unitary(F, ring).trace(), full)


def suite_weyl(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    ring = make_ring_for(f)
    cases, full = _pick(list(sl_elements(f)), samples, rng)

    def check(F):
        return weyl_reconstruct(f, weyl_expansion(F, ring), ring) == symplectic_unitary(F, ring)

    return _first_failure("weyl", f.d, cases, check, full)


def suite_mubs(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    ring = make_ring_for(f)
    rep = unbiasedness_check(f, ring)
    if not rep.ok:
        return SuiteResult("mubs", f.d, rep.pairs, True, ["unbiased", *map(str, rep.failures[0])])
    bases = mub_bases(f, ring)
    labels = mub_labels(f)
    n = rep.pairs
    disp, full_d = _pick(list(itertools.product(phase_points(f), labels, range(f.d))), samples, rng)
    for u, mu, x in disp:
        n += 1
        ph, mu2, x2 = displacement_action(f, u, mu, x, ring)
        if displacement(f, u, ring).apply(bases[mu].column(x)) != bases[mu2].column(x2).scale(ph):
            return SuiteResult("mubs", f.d, n, full_d, ["displacement", list(u), str(mu), x])
    acts, full_s = _pick(list(itertools.product(esl_elements(f), labels, range(f.d))), samples, rng)
    for F, mu, x in acts:
        n += 1
        ph, mu2, x2 = symplectic_mub_action(F, mu, x, ring)
        if symplectic_unitary(F, ring).apply(bases[mu].column(x)) != bases[mu2].column(x2).scale(ph):
            return SuiteResult("mubs", f.d, n, full_s, ["symplectic", F.signed(), str(mu), x])
    summary = classify_cycling(f)
    n += summary.total
    if not summary.ok:
        return SuiteResult("mubs", f.d, n, True, ["cycling", summary.mismatches[0].signed()])
    return SuiteResult("mubs", f.d, n, full_d and full_s)


def suite_perm(f: GaloisField, samples: int, rng: random.Random) -> SuiteResult:
    els = list(esl_elements(f))
    labels = range(f.d * f.d - 1)
    cases, full = _pick(list(itertools.product(els, labels)), samples, rng)
    n = 0
    for F, r in cases:
        n += 1
        if u_of_label(f, perm_action(F, r)) != F.apply(u_of_label(f, r)):
            return SuiteResult("perm", f.d, n, full, ["perm_action", F.signed(), r])
    pairs, full_p = _pick(list(itertools.product(els, els)), samples, rng)
    for F, G in pairs:
        n += 1
        ab = ab_of_F(f, F)
        if (F_of_ab(f, ab) != F.entries or ab_det(f, ab) != F.det_code
                or ab_product(f, ab, ab_of_F(f, G)) != ab_of_F(f, F @ G)):
            return SuiteResult("perm", f.d, n, full_p, ["ab", F.signed(), G.signed()])
    return SuiteResult("perm", f.d, n, full and full_p)


SUITES: dict[str, Callable[[GaloisField, int, random.Random], SuiteResult]] = {
    "faithful": suite_faithful,
    "covariance": suite_covariance,
    "orders": suite_orders,
    "gauss": suite_gauss,
    "traces": suite_traces,
    "weyl": suite_weyl,
    "mubs": suite_mubs,
    "perm": suite_perm,
}


def run_suite(name: str, f: GaloisField, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](f, samples, random.Random(f"{seed}:{name}:{f.d}"))


def run_all(f: GaloisField, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> list[SuiteResult]:
    return [run_suite(name, f, samples, seed) for name in SUITES]
