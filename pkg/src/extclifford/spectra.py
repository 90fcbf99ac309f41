"""Eigenvalues, orders, roots and eigenprojectors for elements of ESL(2, F_d)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clifford import SympMatrix, esl_elements, symplectic_unitary, trace_closed_form
from .cyclo import CycloMatrix, CycloRing, CycloScalar, as_int64_or_object, make_ring_for
from .gf import GaloisField, mat2_inv, mat2_mul
from .heisenberg import Operator

__all__ = [
    "SpectralError",
    "SpectralData",
    "Type3Row",
    "classify",
    "eigen_data",
    "order",
    "order_oracle",
    "type3_row",
    "matrix_roots",
    "unitary_eigenprojector",
    "eigenprojectors",
    "eigenspace_dims",
    "max_order_witnesses",
]


class SpectralError(ValueError):
    pass


def _disc(F: SympMatrix) -> int:
    f = F.field
    t = F.trace
    return f.sub(f.mul(t, t), f.mul(f.from_int(4), F.det_code))


def classify(F: SympMatrix) -> int:
    """1, 2 or 3 as t^2 - 4 det F is a nonzero square, a non-square, or zero."""
    chi = F.field.chi(_disc(F))
    return {1: 1, -1: 2, 0: 3}[chi]


@dataclass(frozen=True)
class SpectralData:
    """Spectral data of a type 1 or type 2 matrix.

    ``eigenvalues`` and both diagonalizers are GF(d^2) codes.  ``S`` diagonalizes the
    companion form [[0, -det], [1, t]]; ``P`` diagonalizes F itself (P F P^-1 = diag).
    """

    type: int
    eigenvalues: tuple[int, int]
    r: int
    S: tuple[int, int, int, int]
    P: tuple[int, int, int, int]
    order: int


def _lift(F: SympMatrix) -> tuple[int, int, int, int]:
    ext = F.field.extension
    return tuple(ext.embed(e) for e in F.entries)  # type: ignore[return-value]


def eigen_data(F: SympMatrix) -> SpectralData:
    f = F.field
    kind = classify(F)
    if kind == 3:
        raise SpectralError("type 3 matrices have a repeated eigenvalue; no eigen data")
    ext = f.extension
    E = ext.field
    d = f.d
    t = ext.embed(F.trace)
    delta = ext.embed(F.det_code)
    disc = _disc(F)
    root = E.exp(f.log(disc) * (d + 1) // 2)           # sqrt in GF(d^2)
    half = E.inv(E.from_int(2))
    lam_p = E.mul(half, E.add(t, root))
    lam_m = E.mul(half, E.sub(t, root))
    if kind == 1:
        r = f.log(ext.unembed(lam_p))
        th = ext.embed(f.theta)
        thr, thmr = E.pow(th, r), E.pow(th, -r)
        den = E.inv(E.sub(E.mul(delta, thmr), thr))
        S = (E.mul(thmr, den), den, E.mul(delta, thr), 1)
        if delta == 1:
            m = (d - 1) // math.gcd(r, d - 1)
        else:
            m = (d - 1) // math.gcd(r, (d - 1) // 2)
    else:
        r = ext.log_eta(lam_p)
        sgn = 1 if r % 2 == 0 else E.neg(1)
        er = ext.eta_pow(r)
        den = E.inv(E.sub(sgn, E.mul(er, er)))
        S = (den, E.mul(er, den), E.mul(sgn, er), 1)
        m = 2 * (d + 1) // math.gcd(r, 2 * (d + 1))
    Fbar = (0, E.neg(delta), 1, t)
    diag = mat2_mul(E, mat2_mul(E, S, Fbar), mat2_inv(E, S))
    if diag != (lam_p, 0, 0, lam_m):
        raise SpectralError("diagonalizer check failed")  # pragma: no cover
    # F = B Fbar B^-1 with B = [v, F v]
    a, b, c, dd = F.entries
    v = (1, 0) if c else (0, 1) if b else (1, 1)
    Fv = F.apply(v)
    B = (ext.embed(v[0]), ext.embed(Fv[0]), ext.embed(v[1]), ext.embed(Fv[1]))
    P = mat2_mul(E, S, mat2_inv(E, B))
    if mat2_mul(E, mat2_mul(E, P, _lift(F)), mat2_inv(E, P)) != (lam_p, 0, 0, lam_m):
        raise SpectralError("full diagonalizer check failed")  # pragma: no cover
    return SpectralData(kind, (lam_p, lam_m), r, S, P, m)


@dataclass(frozen=True)
class Type3Row:
    det: int
    trace: str          # "2", "-2", "2i", "-2i"
    offdiag: str        # "zero", "Q", "N" (class of the nonzero of beta, gamma)
    order: int


def type3_row(F: SympMatrix) -> Type3Row:
    """Row of the type 3 order table that F falls in."""
    f = F.field
    if classify(F) != 3:
        raise SpectralError("not a type 3 matrix")
    p = f.p
    t = F.trace
    nz = F.b or F.c
    cls = "zero" if not (F.b or F.c) else ("Q" if f.chi(nz) == 1 else "N")
    scalar = 1 if cls == "zero" else p
    if F.det == 1:
        if t == f.from_int(2):
            return Type3Row(1, "2", cls, scalar)
        return Type3Row(1, "-2", cls, 2 * scalar)
    i = f.sqrt_minus_one()
    if i is None:  # pragma: no cover - excluded by the discriminant
        raise SpectralError("type 3 anti-symplectic needs sqrt(-1)")
    label = "2i" if t == f.mul(f.from_int(2), i) else "-2i"
    return Type3Row(-1, label, cls, 4 * scalar)


def order(F: SympMatrix) -> int:
    """Multiplicative order from the closed formulas and the type 3 table."""
    if classify(F) == 3:
        return type3_row(F).order
    return eigen_data(F).order


def order_oracle(F: SympMatrix) -> int:
    """Order by repeated multiplication."""
    bound = 4 * F.field.p * 2 * (F.field.d + 1)
    G = F
    for k in range(1, bound + 1):
        if G.is_identity():
            return k
        G = G @ F
    raise SpectralError(f"order of {F} exceeds {bound}")  # pragma: no cover


# ---------------------------------------------------------------------------

def _roots_exhaustive(F: SympMatrix, s: int) -> list[SympMatrix]:
    return [G for G in esl_elements(F.field) if G ** s == F]


def _from_lifted(F: SympMatrix, M: tuple[int, int, int, int]) -> SympMatrix | None:
    ext = F.field.extension
    if not all(ext.in_base(x) for x in M):
        return None
    return SympMatrix(F.field, *(ext.unembed(x) for x in M))


def matrix_roots(F: SympMatrix, s: int, *, exhaustive: bool = False) -> list[SympMatrix]:
    """All G in ESL(2, F_d) with G^s = F, sorted by entries."""
    if s < 1:
        raise SpectralError("s must be positive")
    if s == 1:
        return [F]
    if exhaustive or classify(F) == 3:
        return sorted(_roots_exhaustive(F, s), key=lambda G: G.entries)
    # G commutes with F, so P diagonalizes G too: G = P^-1 diag(mu1, mu2) P with
    # mu1^s = lambda_+, mu2 = det(G) / mu1.  mu1 ranges over GF(d^2) since a type 1 F
    # may have type 2 roots.
    f = F.field
    ext = f.extension
    E = ext.field
    sd = eigen_data(F)
    P = sd.P
    Pinv = mat2_inv(E, P)
    lam_p, lam_m = sd.eigenvalues
    N = E.d - 1
    g = math.gcd(s, N)
    target = E.log(lam_p)
    out: set[SympMatrix] = set()
    if target % g == 0:
        k0 = (target // g) * pow(s // g, -1, N // g) % (N // g)
        for j in range(g):
            mu1 = E.exp(k0 + j * (N // g))
            for dg in (1, -1):
                if dg ** s != F.det:
                    continue
                mu2 = E.mul(E.from_int(dg), E.inv(mu1))
                if E.pow(mu2, s) != lam_m:
                    continue
                cand = _from_lifted(F, mat2_mul(E, mat2_mul(E, Pinv, (mu1, 0, 0, mu2)), P))
                if cand is not None and cand ** s == F:
                    out.add(cand)
    return sorted(out, key=lambda G: G.entries)


# ---------------------------------------------------------------------------
# eigenprojectors of U_F

def _projector_ring(F: SympMatrix, m: int, ring: CycloRing | None) -> CycloRing:
    if ring is None:
        return make_ring_for(F.field, [m])
    if ring.M % m or ring.M % 4 or ring.M % F.field.p:
        raise SpectralError(f"{ring} does not contain the {m}-th roots of unity")
    return ring


def _power_stack(F: SympMatrix, m: int, ring: CycloRing) -> tuple[list[np.ndarray], int]:
    """Numerators of U_{F^s} (s < m) over a common denominator.

    Uses U_F^s = U_{F^s}; faithfulness is verified independently.
    """
    mats = [symplectic_unitary(F ** s, ring).matrix for s in range(m)]
    den = 1
    for A in mats:
        den = den * A.den // math.gcd(den, A.den)
    return [A.num * (den // A.den) for A in mats], den


def _require_det1(F: SympMatrix) -> None:
    if F.det != 1:
        raise SpectralError("eigenprojectors are only provided for det F = +1 (unitary U_F)")


def eigenprojectors(F: SympMatrix, ring: CycloRing | None = None) -> list[Operator]:
    """[P_0, ..., P_{m-1}] with P_r = (1/m) sum_s exp(-2 pi i r s / m) U_F^s."""
    _require_det1(F)
    m = order(F)
    ring = _projector_ring(F, m, ring)
    nums, den = _power_stack(F, m, ring)
    d, M, phi = F.field.d, ring.M, ring.phi
    step = M // m
    padded = []
    for A in nums:
        Z = np.zeros((d, d, M), dtype=A.dtype)
        Z[:, :, :phi] = A
        padded.append(Z)
    out = []
    for r in range(m):
        acc = np.zeros((d, d, M), dtype=object if any(Z.dtype == object for Z in padded) else np.int64)
        for s, Z in enumerate(padded):
            acc += np.roll(Z, (-r * s * step) % M, axis=2)
        num = ring.reduce(as_int64_or_object(acc))
        out.append(Operator(CycloMatrix(ring, num, den * m)))
    return out


def unitary_eigenprojector(F: SympMatrix, r: int, ring: CycloRing | None = None) -> Operator:
    _require_det1(F)
    m = order(F)
    ring = _projector_ring(F, m, ring)
    nums, den = _power_stack(F, m, ring)
    d, M, phi = F.field.d, ring.M, ring.phi
    acc = np.zeros((d, d, M), dtype=object if any(A.dtype == object for A in nums) else np.int64)
    for s, A in enumerate(nums):
        k = (-r * s * (M // m)) % M
        idx = (np.arange(phi) + k) % M
        acc[:, :, idx] += A
    return Operator(CycloMatrix(ring, ring.reduce(as_int64_or_object(acc)), den * m))


def eigenspace_dims(F: SympMatrix, ring: CycloRing | None = None) -> list[int]:
    """Dimensions of the eigenspaces of U_F for exp(2 pi i r / m), from closed-form traces."""
    _require_det1(F)
    m = order(F)
    ring = _projector_ring(F, m, ring)
    traces = [trace_closed_form(F ** s, ring) for s in range(m)]
    dims = []
    for r in range(m):
        tot = CycloScalar.rational(ring, 0)
        for s, T in enumerate(traces):
            tot = tot + T.rotate(-r * s * (ring.M // m))
        q = tot.as_rational()
        if q is None or (q / m).denominator != 1:
            raise SpectralError(f"eigenspace trace for r = {r} is not an integer")  # pragma: no cover
        dims.append(int(q / m))
    return dims


# ---------------------------------------------------------------------------

def max_order_witnesses(field: GaloisField) -> dict[str, tuple[SympMatrix, int]]:
    """Companion matrices realising the largest orders of each kind.

    Keys: 'symplectic_type1' (d-1), 'symplectic_type2' (d+1), 'antisymplectic' (2(d+1)).
    For d = 3 the type 1 maximum d - 1 = 2 is attained only by -I (type 3).
    """
    f = field
    ext = f.extension
    E = ext.field
    d = f.d
    out: dict[str, tuple[SympMatrix, int]] = {}
    m1 = f.neg(1)
    th = f.theta
    t1 = f.add(th, f.inv(th))
    t2 = ext.unembed(E.add(ext.eta_pow(2), ext.eta_pow(-2)))
    t3 = ext.unembed(E.sub(ext.eta, E.inv(ext.eta)))
    cands = {
        "symplectic_type1": SympMatrix(f, 0, m1, 1, t1) if d > 3 else SympMatrix(f, m1, 0, 0, m1),
        "symplectic_type2": SympMatrix(f, 0, m1, 1, t2),
        "antisymplectic": SympMatrix(f, 0, 1, 1, t3),
    }
    for key, F in cands.items():
        out[key] = (F, order(F))
    return out

