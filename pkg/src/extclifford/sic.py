"""Eigenbases of the order-3 (Zauner-class) symplectic unitary in prime dimension.

Two branches: d = 1 (mod 6), where a diagonal G with G^(2m) = F gives an explicit
permutation eigenbasis, and d = 5 (mod 6), where G of order 6m = d + 1 is built in
GF(d^2) and its eigenprojectors carve out the three eigenspaces of U_F.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from sympy import isprime

from .clifford import SympMatrix, symplectic_unitary, trace_closed_form
from .cyclo import CycloMatrix, make_ring_for, root_of_unity
from .gf import GaloisField, make_field
from .spectra import eigenprojectors, eigenspace_dims, order, order_oracle

__all__ = [
    "SicError",
    "SicBasisReport",
    "TABLE3",
    "type1_sic_basis",
    "cube_root_symplectic_G",
    "verify_table3",
    "sic_subspace_bases",
    "gamma",
    "gamma_identities",
]


class SicError(ValueError):
    pass


# one listed choice of G per prime d = 5 (mod 6), d < 150
TABLE3: dict[int, tuple[int, int, int, int]] = {
    5: (1, -1, 1, 0),
    11: (-4, 2, -2, -2),
    17: (6, -8, 8, -2),
    23: (11, -7, 7, 4),
    29: (12, -9, 9, 3),
    41: (7, 11, -11, 18),
    47: (-12, -3, 3, -15),
    53: (-22, 8, -8, -14),
    59: (-25, 28, -28, 3),
    71: (8, 34, -34, -29),
    83: (18, -25, 25, -7),
    89: (-25, -12, 12, -37),
    101: (9, 42, -42, -50),
    107: (-47, 31, -31, -16),
    113: (56, -47, 47, 9),
    131: (-44, 11, -11, -33),
    137: (-58, 20, -20, -38),
    149: (47, -12, 12, 35),
}


@dataclass
class SicBasisReport:
    d: int
    branch: str                      # "1mod6" or "5mod6"
    m: int
    G: SympMatrix
    F: SympMatrix
    eigenvectors: list[tuple[str, np.ndarray]]
    subspace_dims: tuple[int, int, int]
    per_r_dims: list[int] = dc_field(default_factory=list)
    checks: dict[str, bool] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _prime_field(d: int, residue: int) -> GaloisField:
    if not isprime(d) or d % 6 != residue:
        raise SicError(f"d must be a prime congruent to {residue} mod 6, got {d}")
    return make_field(d)


def _zauner(f: GaloisField) -> SympMatrix:
    return SympMatrix.zauner(f)


# ---------------------------------------------------------------------------

def type1_sic_basis(d: int) -> SicBasisReport:
    """Permutation eigenbasis for d = 6m + 1.

    U_G = -sum |theta x><x|, so U_G psi_r = -sigma^r psi_r and U_G |0> = -|0>; the
    eigenvalue-1 space of U_F = U_G^(2m) is spanned by |0>, psi_0, psi_3, ..., psi_(6m-3).
    """
    if d < 7:
        raise SicError("d must be at least 7")
    f = _prime_field(d, 1)
    m = (d - 1) // 6
    th = f.theta
    G = SympMatrix(f, th, 0, 0, f.inv(th))
    F = G ** (2 * m)
    ring = make_ring_for(f, [6 * m])
    UG = symplectic_unitary(G, ring)
    UF = symplectic_unitary(F, ring)
    step = ring.M // (6 * m)
    xs = np.arange(1, d)
    logs = f.log(xs)
    checks: dict[str, bool] = {}
    checks["F_is_G_power"] = F == SympMatrix(f, f.pow(th, 2 * m), 0, 0, f.pow(th, -2 * m))
    lam = root_of_unity(ring, 3, 1)
    vecs: list[tuple[str, np.ndarray]] = []
    e0 = CycloMatrix.from_phases(ring, (d, 1), [0], [0], [0])
    checks["U_G psi'_0 = -psi'_0"] = UG.apply(e0) == -e0
    checks["U_F psi'_0 = psi'_0"] = UF.apply(e0) == e0
    vecs.append(("psi'_0", e0.to_complex()[:, 0]))
    sigma = root_of_unity(ring, 6 * m, 1)
    g_ok = f_ok = True
    for r in range(6 * m):
        psi = CycloMatrix.from_phases(ring, (d, 1), xs, np.zeros_like(xs), -r * logs * step)
        g_ok &= UG.apply(psi) == psi.scale(-(sigma ** r))
        f_ok &= UF.apply(psi) == psi.scale(lam ** (r % 3))
        vecs.append((f"psi_{r}", psi.to_complex()[:, 0] / np.sqrt(d - 1)))
    checks["U_G psi_r = -sigma^r psi_r"] = g_ok
    checks["U_F psi_r = lambda^r psi_r"] = f_ok
    dims = (2 * m + 1, 2 * m, 2 * m)
    checks["dims_match_traces"] = tuple(eigenspace_dims(F)) == dims
    return SicBasisReport(d, "1mod6", m, G, F, vecs, dims, checks=checks)


# ---------------------------------------------------------------------------

def gamma(f: GaloisField, r: int) -> int:
    """(eta^2r - eta^-2r) / (eta^2m - eta^-2m) as a base-field code, d = 6m - 1."""
    ext = f.extension
    E = ext.field
    m = (f.d + 1) // 6
    num = E.sub(ext.eta_pow(2 * r), ext.eta_pow(-2 * r))
    den = E.sub(ext.eta_pow(2 * m), ext.eta_pow(-2 * m))
    val = E.div(num, den)
    if not ext.in_base(val):
        raise SicError(f"gamma_{r} is not in the base field")  # pragma: no cover
    return ext.unembed(val)


def cube_root_symplectic_G(d: int) -> SympMatrix:
    """Symplectic G of order 6m with G^(2m) = [[0, -1], [1, -1]], for d = 6m - 1."""
    f = _prime_field(d, 5)
    m = (d + 1) // 6
    G = SympMatrix(f, gamma(f, m + 1), f.neg(gamma(f, 1)), gamma(f, 1), gamma(f, m - 1))
    if G ** (2 * m) != _zauner(f) or order(G) != 6 * m:
        raise SicError("constructed G fails its defining properties")  # pragma: no cover
    return G


@dataclass
class Table3Entry:
    d: int
    G: tuple[int, int, int, int]
    power_is_zauner: bool
    order: int
    expected_order: int

    @property
    def ok(self) -> bool:
        return self.power_is_zauner and self.order == self.expected_order


def check_G(d: int, entries) -> Table3Entry:
    f = make_field(d)
    m = (d + 1) // 6
    G = SympMatrix.from_ints(f, [e % d for e in entries])
    return Table3Entry(d, tuple(entries), G ** (2 * m) == _zauner(f), order_oracle(G), 6 * m)


def verify_table3() -> list[Table3Entry]:
    return [check_G(d, G) for d, G in TABLE3.items()]


# ---------------------------------------------------------------------------

def sic_subspace_bases(d: int) -> SicBasisReport:
    """Eigenprojectors of U_G (d = 6m - 1) grouped into the eigenspaces of U_F = U_G^(2m)."""
    f = _prime_field(d, 5)
    m = (d + 1) // 6
    G = cube_root_symplectic_G(d)
    F = G ** (2 * m)
    ring = make_ring_for(f, [6 * m])
    projs = eigenprojectors(G, ring)
    per_r = []
    for P in projs:
        q = P.trace().as_rational()
        if q is None or q.denominator != 1:
            raise SicError("projector trace is not an integer")  # pragma: no cover
        per_r.append(int(q))
    grouped = tuple(sum(per_r[r] for r in range(6 * m) if r % 3 == k) for k in range(3))
    checks: dict[str, bool] = {
        "per_r_dims": per_r == [0 if r == 3 * m else 1 for r in range(6 * m)],
        "grouped_dims": grouped == (2 * m - 1, 2 * m, 2 * m),
        "G^3m = -I": G ** (3 * m) == SympMatrix(f, f.neg(1), 0, 0, f.neg(1)),
    }
    UG = symplectic_unitary(G, ring).matrix.to_complex()
    vecs: list[tuple[str, np.ndarray]] = []
    resid_ok = True
    for r, P in enumerate(projs):
        if per_r[r] == 0:
            continue
        Pc = P.matrix.to_complex()
        j = int(np.argmax(np.linalg.norm(Pc, axis=0)))
        v = Pc[:, j] / np.linalg.norm(Pc[:, j])
        lam = np.exp(2j * np.pi * r / (6 * m))
        resid_ok &= bool(np.linalg.norm(UG @ v - lam * v) < 1e-9)
        vecs.append((f"r={r}", v))
    checks["eigen_residual"] = resid_ok
    return SicBasisReport(d, "5mod6", m, G, F, vecs, grouped, per_r, checks)


def gamma_identities(d: int) -> dict[str, bool]:
    """t_s - 2 = (eta^s - eta^-s)^2, l(t_s - 2) = (-1)^(s+1), Tr U_G^s = -sigma^(3ms)."""
    f = _prime_field(d, 5)
    m = (d + 1) // 6
    ext = f.extension
    E = ext.field
    G = cube_root_symplectic_G(d)
    ring = make_ring_for(f, [6 * m])
    sigma = root_of_unity(ring, 6 * m, 1)
    two = f.from_int(2)
    ok_sq = ok_chi = ok_tr = True
    for s in range(1, 6 * m):
        Gs = G ** s
        if s % (3 * m):
            diff = E.sub(ext.eta_pow(s), ext.eta_pow(-s))
            ok_sq &= ext.embed(f.sub(Gs.trace, two)) == E.mul(diff, diff)
            ok_chi &= f.chi(f.sub(Gs.trace, two)) == (-1) ** (s + 1)
        if s % (3 * m) or s == 3 * m:
            ok_tr &= trace_closed_form(Gs, ring) == -(sigma ** (3 * m * s))
    return {"t_s - 2 = (eta^s - eta^-s)^2": ok_sq, "l(t_s - 2) = (-1)^(s+1)": ok_chi,
            "Tr U_G^s = -sigma^(3ms)": ok_tr}

