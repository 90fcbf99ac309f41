"""The metaplectic representation F -> U_F of ESL(2, F_d) and restricted Clifford elements."""

from __future__ import annotations

import functools
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

import numpy as np

from .cyclo import (CycloMatrix, CycloRing, CycloScalar, as_int64_or_object, hs_inner, l_tilde,
                    make_ring_for, sqrt_d, tau_exponent)
from .gf import GaloisField, dual_basis, iter_matrices_2x2
from .heisenberg import Operator, PhasePoint, compose, displacement, phase_points, symplectic_form

__all__ = [
    "SympMatrix",
    "CliffordError",
    "NotCliffordError",
    "esl_elements",
    "sl_elements",
    "symplectic_unitary",
    "compose",
    "adjoint",
    "covariance_check",
    "weyl_expansion",
    "weyl_reconstruct",
    "trace_closed_form",
    "CliffordElement",
    "clifford_element",
    "identify_clifford",
]


class CliffordError(ValueError):
    """Invalid matrix (determinant not +-1) or an operation outside its domain."""


class NotCliffordError(CliffordError):
    """The operator does not normalize the displacement operators."""

    def __init__(self, generator: PhasePoint, reason: str):
        super().__init__(f"generator D{tuple(generator)}: {reason}")
        self.generator = generator
        self.reason = reason


@dataclass(frozen=True)
class SympMatrix:
    """[[a, b], [c, dd]] over GF(d) with determinant +-1; entries are element codes."""

    field: GaloisField
    a: int
    b: int
    c: int
    dd: int

    def __post_init__(self):
        det = self.field.sub(self.field.mul(self.a, self.dd), self.field.mul(self.b, self.c))
        if det == 1:
            object.__setattr__(self, "det", 1)
        elif det == self.field.neg(1):
            object.__setattr__(self, "det", -1)
        else:
            raise CliffordError(f"determinant {self.field.to_str(det)} is not +-1")

    det: int = dc_field(init=False, default=0, compare=False, repr=False)

    @classmethod
    def from_ints(cls, field: GaloisField, entries: Sequence[int]) -> "SympMatrix":
        """Entries as element codes; a negative int -c means minus the element c."""
        if len(entries) != 4:
            raise CliffordError("a 2x2 matrix needs four entries")
        return cls(field, *(field.code(e) for e in entries))

    @classmethod
    def identity(cls, field: GaloisField) -> "SympMatrix":
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def J(cls, field: GaloisField) -> "SympMatrix":
        return cls(field, 1, 0, 0, field.neg(1))

    @classmethod
    def zauner(cls, field: GaloisField) -> "SympMatrix":
        m1 = field.neg(1)
        return cls(field, 0, m1, 1, m1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.dd)

    @property
    def trace(self) -> int:
        return self.field.add(self.a, self.dd)

    @property
    def det_code(self) -> int:
        return 1 if self.det == 1 else self.field.neg(1)

    def __matmul__(self, other: "SympMatrix") -> "SympMatrix":
        f = self.field
        a, b, c, d = self.entries
        e, g, h, k = other.entries
        return SympMatrix(f, f.add(f.mul(a, e), f.mul(b, h)), f.add(f.mul(a, g), f.mul(b, k)),
                          f.add(f.mul(c, e), f.mul(d, h)), f.add(f.mul(c, g), f.mul(d, k)))

    def inverse(self) -> "SympMatrix":
        f = self.field
        a, b, c, d = self.entries
        if self.det == 1:
            return SympMatrix(f, d, f.neg(b), f.neg(c), a)
        return SympMatrix(f, f.neg(d), b, c, f.neg(a))

    def __pow__(self, k: int) -> "SympMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = SympMatrix.identity(self.field)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, u: Sequence[int]) -> PhasePoint:
        f = self.field
        return PhasePoint(f.add(f.mul(self.a, u[0]), f.mul(self.b, u[1])),
                          f.add(f.mul(self.c, u[0]), f.mul(self.dd, u[1])))

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def signed(self) -> list[int]:
        """Entries for display: prime-field elements in the balanced range, others as codes."""
        p = self.field.p
        return [e - p if (e < p and e > p // 2) else e for e in self.entries]

    def __repr__(self) -> str:
        return f"SympMatrix({self.field!r}, {list(self.entries)})"


@functools.lru_cache(maxsize=16)
def esl_elements(field: GaloisField) -> tuple[SympMatrix, ...]:
    """All 2d(d^2 - 1) elements of ESL(2, F_d)."""
    return tuple(SympMatrix(field, *e) for e in iter_matrices_2x2(field))


def sl_elements(field: GaloisField) -> tuple[SympMatrix, ...]:
    return tuple(F for F in esl_elements(field) if F.det == 1)


# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=8192)
def _unitary_det1(F: SympMatrix, ring: CycloRing) -> CycloMatrix:
    f = F.field
    d = f.d
    a, b, c, dd = F.entries
    step = tau_exponent(ring, f.p)
    xs = np.arange(d)
    if b == 0:
        e = f.trace(f.mul(f.mul(a, c), f.mul(xs, xs)))
        U = CycloMatrix.from_phases(ring, (d, d), f.mul(a, xs), xs, e * step)
        return -U if f.chi(a) == -1 else U
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    binv = f.inv(b)
    quad = f.add(f.sub(f.mul(a, f.mul(Y, Y)), f.mul(2 % f.p, f.mul(X, Y))), f.mul(dd, f.mul(X, X)))
    e = f.trace(f.mul(binv, quad))
    pref = l_tilde(f, ring, f.neg(b)) * sqrt_d(f, ring)
    U = CycloMatrix.from_phases(ring, (d, d), X.ravel(), Y.ravel(), e.ravel() * step, scalar=pref)
    return CycloMatrix(ring, U.num, U.den * d)


def symplectic_unitary(F: SympMatrix, ring: CycloRing | None = None) -> Operator:
    """U_F; for det F = -1 the antiunitary U_{FJ} U_J (matrix part U_{FJ}, flag set)."""
    ring = ring or make_ring_for(F.field)
    if F.det == 1:
        return Operator(_unitary_det1(F, ring), False)
    return Operator(_unitary_det1(F @ SympMatrix.J(F.field), ring), True)


def adjoint(U: Operator) -> Operator:
    return U.adjoint()


def covariance_check(F: SympMatrix, u: Sequence[int], ring: CycloRing | None = None) -> bool:
    """U_F D_u U_F^dagger == D_{Fu}, exactly."""
    ring = ring or make_ring_for(F.field)
    U = symplectic_unitary(F, ring)
    lhs = U @ displacement(F.field, u, ring) @ U.adjoint()
    return lhs == displacement(F.field, F.apply(u), ring)


# ---------------------------------------------------------------------------
# expansion in the displacement basis

def _require_det1(F: SympMatrix) -> None:
    if F.det != 1:
        raise CliffordError("only defined for det F = +1")


def weyl_expansion(F: SympMatrix, ring: CycloRing | None = None) -> dict[PhasePoint, CycloScalar]:
    """Nonzero coefficients c_u with U_F = sum c_u D_u."""
    _require_det1(F)
    f = F.field
    ring = ring or make_ring_for(f)
    step = tau_exponent(ring, f.p)
    a, b, c, dd = F.entries
    t = F.trace
    out: dict[PhasePoint, CycloScalar] = {}
    two = f.from_int(2)
    if t != two:
        lead = f.chi(f.sub(t, two)) if b else f.chi(a)
        s = f.inv(f.sub(two, t))
        Ft = [f.mul(s, e) for e in (a, b, c, dd)]
        base = CycloScalar.rational(ring, Fraction(lead, f.d))
        for u in phase_points(f):
            v = (f.add(f.mul(Ft[0], u.u1), f.mul(Ft[1], u.u2)), f.add(f.mul(Ft[2], u.u1), f.mul(Ft[3], u.u2)))
            out[u] = base.rotate(symplectic_form(f, u, v) * step)
        return out
    if b == 0 and c == 0:
        return {PhasePoint(0, 0): CycloScalar.rational(ring, 1)}
    rd = sqrt_d(f, ring)
    if b:
        pref = l_tilde(f, ring, f.neg(b)) * rd / f.d
        one_minus_a = f.sub(1, a)
        for r in range(f.d):
            u = PhasePoint(f.mul(b, r), f.mul(one_minus_a, r))
            out[u] = pref.rotate(f.trace(f.mul(b, f.mul(r, r))) * step)
    else:
        pref = l_tilde(f, ring, c) * rd / f.d
        for r in range(f.d):
            u = PhasePoint(0, f.mul(c, r))
            out[u] = pref.rotate(-f.trace(f.mul(c, f.mul(r, r))) * step)
    return out


def weyl_reconstruct(field: GaloisField, coeffs: Mapping[Sequence[int], CycloScalar],
                     ring: CycloRing | None = None) -> Operator:
    """sum_u c_u D_u as an exact operator."""
    ring = ring or make_ring_for(field)
    d, M, phi = field.d, ring.M, ring.phi
    step = tau_exponent(ring, field.p)
    items = list(coeffs.items())
    den = 1
    for _, cval in items:
        den = den * cval.den // np.gcd(den, cval.den)
    acc = np.zeros((d, d, M), dtype=object)
    ys = np.arange(d)
    jj = np.arange(phi)
    for u, cval in items:
        u1, u2 = int(u[0]), int(u[1])
        rows = field.add(ys, u1)
        k = ((field.trace(field.mul(u1, u2)) + 2 * field.trace(field.mul(ys, u2))) % field.p) * step
        vals = cval.num.astype(object) * (den // cval.den)
        np.add.at(acc, (rows[:, None], ys[:, None], (k[:, None] + jj[None, :]) % M),
                  np.broadcast_to(vals, (d, phi)))
    num = ring.reduce(as_int64_or_object(acc))
    return Operator(CycloMatrix(ring, num, den))


def trace_closed_form(F: SympMatrix, ring: CycloRing | None = None) -> CycloScalar:
    """Tr U_F from the closed formulas (det F = +1)."""
    _require_det1(F)
    f = F.field
    ring = ring or make_ring_for(f)
    a, b, c, dd = F.entries
    t = F.trace
    two = f.from_int(2)
    if t != two:
        return CycloScalar.rational(ring, f.chi(f.sub(t, two)) if b else f.chi(a))
    if b:
        return l_tilde(f, ring, f.neg(b)) * sqrt_d(f, ring)
    if c:
        return l_tilde(f, ring, c) * sqrt_d(f, ring)
    return CycloScalar.rational(ring, f.d)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CliffordElement:
    """phase * U_F * D_chi."""

    F: SympMatrix
    chi: PhasePoint
    phase: CycloScalar

    def operator(self, ring: CycloRing | None = None) -> Operator:
        return clifford_element(self.F, self.chi, self.phase, ring)

    def canonical(self) -> "CliffordElement":
        """Same element with the phase chosen so the first nonzero entry is positive real.

        The result represents the operator up to a global phase only.
        """
        ring = self.phase.ring
        N = compose(symplectic_unitary(self.F, ring), displacement(self.F.field, self.chi, ring))
        flat = N.matrix.num.reshape(-1, ring.phi)
        k = int(np.flatnonzero(np.any(flat != 0, axis=1))[0])
        i, j = divmod(k, N.dim)
        e = N.matrix.entry(i, j)
        n2 = (e * e.conj()).as_rational()
        unit = e if n2 == 1 else e * sqrt_d(self.F.field, ring)
        return CliffordElement(self.F, self.chi, unit.conj())


def clifford_element(F: SympMatrix, chi: Sequence[int], phase: CycloScalar | None = None,
                     ring: CycloRing | None = None) -> Operator:
    ring = ring or (phase.ring if phase is not None else make_ring_for(F.field))
    N = compose(symplectic_unitary(F, ring), displacement(F.field, chi, ring))
    if phase is None:
        return N
    if phase.ring != ring:
        phase = phase.to_ring(ring)
    return N.scaled(phase)


def _hs_coefficient(field: GaloisField, W: CycloMatrix, v: PhasePoint, ring: CycloRing) -> CycloScalar:
    """Tr(D_v^dagger W) / d."""
    return hs_inner(displacement(field, v, ring).matrix, W) / field.d


def identify_clifford(field: GaloisField, U: Operator) -> CliffordElement:
    """Recover (F, chi, phase) with U = phase * U_F * D_chi from the action on D_(e_r,0), D_(0,e_r)."""
    d, p, n = field.d, field.p, field.n
    if U.dim != d:
        raise CliffordError(f"operator has dimension {U.dim}, field has {d}")
    ring = U.ring
    omega_step = ring.M // p
    Ud = U.adjoint()
    images: dict[PhasePoint, tuple[PhasePoint, int]] = {}
    gens = [PhasePoint(p**r, 0) for r in range(n)] + [PhasePoint(0, p**r) for r in range(n)]
    for g in gens:
        W = (U @ displacement(field, g, ring) @ Ud)
        if W.antiunitary:
            raise NotCliffordError(g, "conjugate is not linear")
        Wm = W.matrix
        col0 = np.flatnonzero(np.any(Wm.num[:, 0, :] != 0, axis=1))
        if len(col0) != 1:
            raise NotCliffordError(g, "conjugate is not a monomial matrix")
        v1 = int(col0[0])
        found = None
        for v2 in range(d):
            v = PhasePoint(v1, v2)
            cval = _hs_coefficient(field, Wm, v, ring)
            if not cval.is_zero():
                found = (v, cval)
                break
        if found is None:
            raise NotCliffordError(g, "no displacement overlaps the conjugate")
        v, cval = found
        if displacement(field, v, ring).matrix.scale(cval) != Wm:
            raise NotCliffordError(g, "conjugate is not proportional to a displacement")
        k = next((k for k in range(p) if cval == CycloScalar.root(ring, k * omega_step)), None)
        if k is None:
            raise NotCliffordError(g, "phase of the conjugate is not a p-th root of unity")
        images[g] = (v, k)
    col1, col2 = images[gens[0]][0], images[gens[n]][0]
    try:
        F = SympMatrix(field, col1.u1, col2.u1, col1.u2, col2.u2)
    except CliffordError as exc:
        raise NotCliffordError(gens[0], str(exc)) from None
    if (F.det == -1) != U.antiunitary:
        raise NotCliffordError(gens[0], "determinant does not match (anti)linearity")
    for r in range(n):
        for g in (gens[r], gens[n + r]):
            if F.apply(g) != images[g][0]:
                raise NotCliffordError(g, "action is not F_d-linear")
    # omega^(s <chi, g>) with s = det F; recover tr(chi2 e_r) and tr(chi1 e_r)
    s = F.det
    basis = [field(p**r) for r in range(n)]
    dual = [e.code for e in dual_basis(basis)]
    chi1 = chi2 = 0
    for r in range(n):
        t2 = (s * images[gens[r]][1]) % p          # tr(chi2 e_r)
        t1 = (-s * images[gens[n + r]][1]) % p     # tr(chi1 e_r)
        chi2 = field.add(chi2, field.mul(t2, dual[r]))
        chi1 = field.add(chi1, field.mul(t1, dual[r]))
    chi = PhasePoint(chi1, chi2)
    N = clifford_element(F, chi, ring=ring)
    phase = hs_inner(N.matrix, U.matrix) / d
    if N.scaled(phase) != U:
        raise NotCliffordError(gens[0], "residual is not a scalar multiple")
    return CliffordElement(F, chi, phase)
