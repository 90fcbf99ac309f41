"""Operators with an antiunitary flag, displacement operators and the symplectic form."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .cyclo import CycloMatrix, CycloRing, CycloScalar, make_ring_for, tau_exponent
from .gf import FdElem, FieldError, GaloisField, dual_basis, make_field

__all__ = [
    "PhasePoint",
    "Operator",
    "displacement",
    "symplectic_form",
    "tensor_factorization_check",
    "phase_points",
]


class PhasePoint(NamedTuple):
    """A point (u1, u2) of the discrete phase space, stored as element codes."""

    u1: int
    u2: int

    def add(self, field: GaloisField, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(field.add(self.u1, other.u1), field.add(self.u2, other.u2))

    def neg(self, field: GaloisField) -> "PhasePoint":
        return PhasePoint(field.neg(self.u1), field.neg(self.u2))

    def scale(self, field: GaloisField, x: int) -> "PhasePoint":
        return PhasePoint(field.mul(x, self.u1), field.mul(x, self.u2))


def phase_points(field: GaloisField) -> list[PhasePoint]:
    return [PhasePoint(a, b) for a in range(field.d) for b in range(field.d)]


@dataclass(frozen=True, eq=False)
class Operator:
    """A d x d operator: v -> matrix @ v, or v -> matrix @ conj(v) when antiunitary."""

    matrix: CycloMatrix
    antiunitary: bool = False

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def ring(self) -> CycloRing:
        return self.matrix.ring

    def __matmul__(self, other: "Operator") -> "Operator":
        return compose(self, other)

    def adjoint(self) -> "Operator":
        if self.antiunitary:
            return Operator(self.matrix.T, True)
        return Operator(self.matrix.H, False)

    def apply(self, vec: CycloMatrix) -> CycloMatrix:
        return self.matrix @ (vec.conj() if self.antiunitary else vec)

    def scaled(self, c) -> "Operator":
        return Operator(self.matrix.scale(c), self.antiunitary)

    def trace(self) -> CycloScalar:
        if self.antiunitary:
            raise ValueError("trace of an antiunitary operator is not defined")
        return self.matrix.trace()

    def is_identity(self) -> bool:
        return not self.antiunitary and self.matrix == CycloMatrix.identity(self.ring, self.dim)

    def to_ring(self, ring: CycloRing) -> "Operator":
        return Operator(self.matrix.to_ring(ring), self.antiunitary)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return self.antiunitary == other.antiunitary and self.matrix == other.matrix

    __hash__ = None  # type: ignore[assignment]


def compose(U: Operator, V: Operator) -> Operator:
    """(M1, f1) o (M2, f2) = (M1 conj^f1(M2), f1 xor f2)."""
    if U.dim != V.dim:
        raise ValueError(f"dimension mismatch: {U.dim} vs {V.dim}")
    right = V.matrix.conj() if U.antiunitary else V.matrix
    return Operator(U.matrix @ right, U.antiunitary != V.antiunitary)


def symplectic_form(field: GaloisField, u: Sequence[int], v: Sequence[int]) -> int:
    """<u, v> = tr(u2 v1 - u1 v2), an element of Z_p."""
    return field.trace(field.sub(field.mul(u[1], v[0]), field.mul(u[0], v[1])))


@functools.lru_cache(maxsize=4096)
def _displacement(field: GaloisField, ring: CycloRing, u1: int, u2: int) -> Operator:
    ys = np.arange(field.d)
    xs = field.add(ys, u1)
    e = (field.trace(field.mul(u1, u2)) + 2 * field.trace(field.mul(ys, u2))) % field.p
    z = e * tau_exponent(ring, field.p)
    return Operator(CycloMatrix.from_phases(ring, (field.d, field.d), xs, ys, z))


def displacement(field: GaloisField, u: Sequence[int], ring: CycloRing | None = None) -> Operator:
    """D_u with <x|D_u|y> = tau^(tr(u1 u2) + 2 tr(y u2)) [x = y + u1]."""
    ring = ring or make_ring_for(field)
    u1, u2 = (int(field(c).code) if isinstance(c, FdElem) else int(c) for c in u)
    return _displacement(field, ring, u1, u2)


@dataclass
class TensorCheckReport:
    basis: list[int]
    dual: list[int]
    checked: int
    failures: list[PhasePoint]

    @property
    def ok(self) -> bool:
        return not self.failures


def tensor_factorization_check(basis: Sequence[FdElem], points: Sequence[Sequence[int]] | None = None,
                               ring: CycloRing | None = None) -> TensorCheckReport:
    """Compare D_u with S^-1 (D^p x ... x D^p) S for each u (all of phase space by default)."""
    F = basis[0].field
    if F.n < 2:
        raise FieldError("tensor factorization needs n >= 2")
    dual = [e.code for e in dual_basis(basis)]
    es = [F(b).code for b in basis]
    ring = ring or make_ring_for(F)
    Fp = make_field(F.p, 1)
    p, n = F.p, F.n
    xs = np.arange(F.d)
    # S|x> = |x_1> (x) ... (x) |x_n>, x_r = tr(x e'_r); big-endian tensor index
    idx = np.zeros(F.d, dtype=np.int64)
    for r in range(n):
        idx = idx * p + F.trace(F.mul(xs, dual[r]))
    if len(set(idx.tolist())) != F.d:
        raise FieldError("coordinate map is not a bijection")  # pragma: no cover
    pts = phase_points(F) if points is None else [PhasePoint(*map(int, u)) for u in points]
    failures = []
    for u in pts:
        comps = [(F.trace(F.mul(u.u1, dual[r])), F.trace(F.mul(u.u2, es[r]))) for r in range(n)]
        K = displacement(Fp, comps[0], ring).matrix
        for c in comps[1:]:
            K = K.kron(displacement(Fp, c, ring).matrix)
        pulled = CycloMatrix(ring, K.num[np.ix_(idx, idx)], K.den)
        if pulled != displacement(F, u, ring).matrix:
            failures.append(u)
    return TensorCheckReport(es, dual, len(pts), failures)
