"""Wootters-Fields MUBs, their Clifford action, cycling, and the GF(d^2) labelling.

MUB labels are base-field codes 0..d-1 plus the singleton ``INF``.  Extension-field
quantities (x(u), the pair (a, b), eta) are codes of ``field.extension.field``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence

import numpy as np

from .clifford import SympMatrix, esl_elements, symplectic_unitary
from .cyclo import CycloMatrix, CycloRing, CycloScalar, make_ring_for, omega, tau_exponent
from .gf import FieldError, GaloisField
from .heisenberg import Operator, PhasePoint, displacement

__all__ = [
    "INF",
    "MubError",
    "mub_labels",
    "H_matrix",
    "mub_unitary",
    "mub_vector",
    "mub_bases",
    "unbiasedness_check",
    "displacement_action",
    "mobius",
    "symplectic_mub_action",
    "mub_orbits",
    "orbit_length",
    "cycling_index",
    "is_cycling",
    "is_half_cycling",
    "cycling_by_trace",
    "half_cycling_by_trace",
    "classify_cycling",
    "canonical_A",
    "beta_seq",
    "discriminant_identity",
    "x_of_u",
    "u_of_x",
    "AbPair",
    "ab_of_F",
    "F_of_ab",
    "ab_product",
    "ab_det",
    "ExtLabel",
    "u_of_label",
    "label_of_u",
    "perm_action",
    "CyclingScheme",
    "cycling_scheme",
    "rank_one",
]


class MubError(ValueError):
    pass


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def mub_labels(field: GaloisField) -> list:
    return [*range(field.d), INF]


def _check_label(field: GaloisField, mu) -> None:
    if mu is not INF and not (0 <= int(mu) < field.d):
        raise MubError(f"bad MUB label {mu!r}")


def H_matrix(field: GaloisField, mu) -> SympMatrix:
    _check_label(field, mu)
    if mu is INF:
        return SympMatrix(field, 0, 1, field.neg(1), 0)
    return SympMatrix(field, 1, int(mu), 0, 1)


def mub_unitary(field: GaloisField, mu, ring: CycloRing | None = None) -> Operator:
    return symplectic_unitary(H_matrix(field, mu), ring)


def mub_vector(field: GaloisField, mu, x: int, ring: CycloRing | None = None) -> CycloMatrix:
    """|mu, x> = U_{H_mu}|x> as a d x 1 exact column."""
    return mub_unitary(field, mu, ring).matrix.column(int(x))


def mub_bases(field: GaloisField, ring: CycloRing | None = None) -> dict:
    """Label -> d x d matrix whose column x is |mu, x>."""
    ring = ring or make_ring_for(field)
    return {mu: mub_unitary(field, mu, ring).matrix for mu in mub_labels(field)}


@dataclass
class UnbiasednessReport:
    d: int
    pairs: int
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def unbiasedness_check(field: GaloisField, ring: CycloRing | None = None) -> UnbiasednessReport:
    """|<mu,x|mu',x'>|^2 = 1/d across bases and delta_{xx'} within, exactly."""
    ring = ring or make_ring_for(field)
    d = field.d
    bases = mub_bases(field, ring)
    labels = list(bases)
    eye = CycloMatrix.identity(ring, d)
    flat = CycloMatrix(ring, np.broadcast_to(eye.num[0, 0], (d, d, ring.phi)).copy(), d)
    report = UnbiasednessReport(d, 0)
    for i, mu in enumerate(labels):
        for nu in labels[i:]:
            G = bases[mu].H @ bases[nu]
            target = eye if mu is nu else flat
            if (G if mu is nu else G.abs2()) != target:
                report.failures.append((mu, nu))
            report.pairs += 1
    return report


# ---------------------------------------------------------------------------
# label-level actions

def _tau_power(field: GaloisField, ring: CycloRing, e: int) -> CycloScalar:
    return CycloScalar.root(ring, (int(e) % field.p) * tau_exponent(ring, field.p))


def displacement_action(field: GaloisField, u: Sequence[int], mu, x: int,
                        ring: CycloRing | None = None) -> tuple[CycloScalar, object, int]:
    """D_u|mu, x> = phase |mu, x'>."""
    ring = ring or make_ring_for(field)
    _check_label(field, mu)
    f = field
    u1, u2 = int(u[0]), int(u[1])
    two_x = f.add(x, x)
    if mu is INF:
        x2 = f.sub(x, u2)
        e = f.trace(f.mul(f.sub(two_x, u2), u1))
    else:
        shift = f.sub(u1, f.mul(mu, u2))
        x2 = f.add(x, shift)
        e = f.trace(f.mul(f.add(two_x, shift), u2))
    return _tau_power(f, ring, e), mu, x2


def mobius(F: SympMatrix, mu):
    """f_F(mu) = (alpha mu + beta) / (gamma mu + delta) on F_d with infinity."""
    f = F.field
    a, b, c, dd = F.entries
    if mu is INF:
        return INF if c == 0 else f.div(a, c)
    den = f.add(f.mul(c, mu), dd)
    if den == 0:
        return INF
    return f.div(f.add(f.mul(a, mu), b), den)


def symplectic_mub_action(F: SympMatrix, mu, x: int,
                          ring: CycloRing | None = None) -> tuple[CycloScalar, object, int]:
    """U_F|mu, x> = phase |mu', x'>, from the factorisation F H_mu = H_mu' K."""
    f = F.field
    ring = ring or make_ring_for(f)
    _check_label(f, mu)
    a, b, c, dd = F.entries
    delta = F.det_code
    xx = f.mul(x, x)
    if mu is not INF:
        den = f.add(f.mul(c, mu), dd)
        if den:
            k = f.div(delta, den)
            mu2, x2 = f.div(f.add(f.mul(a, mu), b), den), f.mul(k, x)
            lead, e = k, f.trace(f.mul(f.mul(k, c), xx))
        else:
            mu2, x2 = INF, f.mul(f.neg(c), x)
            lead, e = f.neg(c), -f.trace(f.mul(f.mul(a, c), xx))
    elif c:
        k = f.div(delta, c)
        mu2, x2 = f.div(a, c), f.mul(k, x)
        lead, e = k, -f.trace(f.mul(f.mul(k, dd), xx))
    else:
        mu2, x2 = INF, f.mul(dd, x)
        lead, e = dd, -f.trace(f.mul(f.mul(b, dd), xx))
    return _tau_power(f, ring, e) * f.chi(lead), mu2, x2


# ---------------------------------------------------------------------------
# cycling

def _label_index(field: GaloisField, mu) -> int:
    return field.d if mu is INF else int(mu)


def mub_orbits(F: SympMatrix) -> list[list]:
    """Cycles of the Moebius permutation of the d + 1 labels, each starting at its least label."""
    seen: set[int] = set()
    cycles = []
    for mu in mub_labels(F.field):
        if _label_index(F.field, mu) in seen:
            continue
        cyc = [mu]
        seen.add(_label_index(F.field, mu))
        nxt = mobius(F, mu)
        while nxt is not mu and nxt != mu:
            cyc.append(nxt)
            seen.add(_label_index(F.field, nxt))
            nxt = mobius(F, nxt)
        cycles.append(cyc)
    return cycles


def orbit_length(F: SympMatrix, mu) -> int:
    """m_F(mu): least m >= 1 with f_F^m(mu) = mu."""
    m, cur = 1, mobius(F, mu)
    while cur is not mu and cur != mu:
        cur = mobius(F, cur)
        m += 1
    return m


def cycling_index(F: SympMatrix) -> int:
    return orbit_length(F, 0)


def is_cycling(F: SympMatrix) -> bool:
    return len(mub_orbits(F)) == 1


def is_half_cycling(F: SympMatrix) -> bool:
    half = (F.field.d + 1) // 2
    return all(len(c) == half for c in mub_orbits(F))


def _trace_in(F: SympMatrix, values) -> bool:
    return F.field.extension.embed(F.trace) in values


def cycling_by_trace(F: SympMatrix) -> bool:
    """Criterion: det F = -1, d = 3 mod 4, Tr F = eta^r - eta^-r with gcd(r, d+1) = 1."""
    f = F.field
    d = f.d
    if F.det == 1 or d % 4 == 1:
        return False
    ext = f.extension
    E = ext.field
    vals = {E.sub(ext.eta_pow(r), ext.eta_pow(-r)) for r in range(2 * (d + 1)) if math.gcd(r, d + 1) == 1}
    return _trace_in(F, vals)


def half_cycling_by_trace(F: SympMatrix) -> bool:
    """Criterion: symplectic with Tr F = eta^2r + eta^-2r, gcd(r, (d+1)/2) = 1; or
    anti-symplectic, d = 1 mod 4, Tr F = eta^r - eta^-r with r odd and gcd(r, d+1) = 1."""
    f = F.field
    d = f.d
    ext = f.extension
    E = ext.field
    if F.det == 1:
        vals = {E.add(ext.eta_pow(2 * r), ext.eta_pow(-2 * r))
                for r in range(d + 1) if math.gcd(r, (d + 1) // 2) == 1}
        return _trace_in(F, vals)
    if d % 4 == 3:
        return False
    vals = {E.sub(ext.eta_pow(r), ext.eta_pow(-r))
            for r in range(2 * (d + 1)) if r % 2 and math.gcd(r, d + 1) == 1}
    return _trace_in(F, vals)


@dataclass
class CyclingSummary:
    d: int
    total: int
    cycling: dict[int, int]            # det -> count
    half_cycling: dict[int, int]
    mismatches: list[SympMatrix]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def classify_cycling(field: GaloisField, elements: Sequence[SympMatrix] | None = None) -> CyclingSummary:
    """Orbit brute force against the trace criteria over ESL(2, F_d)."""
    els = esl_elements(field) if elements is None else elements
    cyc = {1: 0, -1: 0}
    half = {1: 0, -1: 0}
    bad = []
    for F in els:
        c, h = is_cycling(F), is_half_cycling(F)
        cyc[F.det] += c
        half[F.det] += h
        if c != cycling_by_trace(F) or h != half_cycling_by_trace(F):
            bad.append(F)
    return CyclingSummary(field.d, len(els), cyc, half, bad)


def canonical_A(field: GaloisField) -> SympMatrix:
    """[[0, 1], [1, eta - eta^-1]], anti-symplectic of order 2(d + 1)."""
    ext = field.extension
    t = ext.unembed(ext.field.sub(ext.eta, ext.eta_pow(-1)))
    return SympMatrix(field, 0, 1, 1, t)


def beta_seq(field: GaloisField, k: int) -> int:
    """(eta^(dk) - eta^k) / (eta^d - eta), so that A^k = [[b_(k-1), b_k], [b_k, b_(k+1)]]."""
    ext = field.extension
    E = ext.field
    d = field.d
    val = E.div(E.sub(ext.eta_pow(d * k), ext.eta_pow(k)), E.sub(ext.eta_pow(d), ext.eta))
    return ext.unembed(val)


def discriminant_identity(field: GaloisField, k: int) -> bool:
    """(b_(k-1) - b_(k+1))^2 + 4 b_k^2 = (eta^k - (-1)^k eta^-k)^2."""
    f = field
    ext = f.extension
    E = ext.field
    diff = f.sub(beta_seq(f, k - 1), beta_seq(f, k + 1))
    bk = beta_seq(f, k)
    lhs = f.add(f.mul(diff, diff), f.mul(f.from_int(4), f.mul(bk, bk)))
    inner = ext.eta_pow(-k)
    inner = E.sub(ext.eta_pow(k), inner if k % 2 == 0 else E.neg(inner))
    return ext.embed(lhs) == E.mul(inner, inner)


# ---------------------------------------------------------------------------
# extension-field labelling of phase space

def _eta_sum(field: GaloisField) -> int:
    ext = field.extension
    return ext.field.add(ext.eta, ext.eta_pow(-1))


def x_of_u(field: GaloisField, u: Sequence[int]) -> int:
    """x(u) = eta^-1 u1 + u2."""
    ext = field.extension
    E = ext.field
    return E.add(E.mul(ext.eta_pow(-1), ext.embed(int(u[0]))), ext.embed(int(u[1])))


def u_of_x(field: GaloisField, x: int) -> PhasePoint:
    ext = field.extension
    E = ext.field
    s = _eta_sum(field)
    xd = E.frobenius(x, field.n)
    u1 = E.div(E.sub(x, xd), s)
    u2 = E.div(E.add(E.mul(ext.eta, x), E.mul(ext.eta_pow(-1), xd)), s)
    return PhasePoint(ext.unembed(u1), ext.unembed(u2))


class AbPair(NamedTuple):
    """Image (a, b) of a 2 x 2 matrix in (GF(d^2))^2."""

    a: int
    b: int


def _entries(F) -> tuple[int, int, int, int]:
    return F.entries if isinstance(F, SympMatrix) else tuple(int(e) for e in F)  # type: ignore


def ab_of_F(field: GaloisField, F) -> AbPair:
    """Defined for every 2 x 2 matrix over F_d, singular or not."""
    ext = field.extension
    E = ext.field
    al, be, ga, de = (ext.embed(e) for e in _entries(F))
    eta, eti = ext.eta, ext.eta_pow(-1)
    s = _eta_sum(field)
    a = E.div(E.add(E.add(E.mul(eti, al), be), E.add(ga, E.mul(eta, de))), s)
    b = E.div(E.add(E.sub(E.mul(ext.eta_pow(-2), be), E.mul(eti, al)), E.sub(E.mul(eti, de), ga)), s)
    return AbPair(a, b)


def F_of_ab(field: GaloisField, ab: AbPair) -> tuple[int, int, int, int]:
    ext = field.extension
    E = ext.field
    a, b = ab
    n = field.n
    ad, bd = E.frobenius(a, n), E.frobenius(b, n)
    eta, eti = ext.eta, ext.eta_pow(-1)
    s = _eta_sum(field)
    p1 = E.sub(a, bd)                                 # a - b^d
    p2 = E.sub(ad, b)                                 # a^d - b
    q1 = E.add(a, E.mul(ext.eta_pow(-2), bd))         # a + eta^-2 b^d
    q2 = E.add(ad, E.mul(ext.eta_pow(2), b))          # a^d + eta^2 b
    al = E.div(E.add(E.mul(eti, p1), E.mul(eta, p2)), s)
    be = E.div(E.sub(p1, p2), s)
    ga = E.div(E.sub(q1, q2), s)
    de = E.div(E.add(E.mul(eta, q1), E.mul(eti, q2)), s)
    return tuple(ext.unembed(v) for v in (al, be, ga, de))  # type: ignore[return-value]


def ab_product(field: GaloisField, p: AbPair, q: AbPair) -> AbPair:
    """(a, b) o (a', b') = (a a' + b b'^d, a b' + b a'^d)."""
    E = field.extension.field
    n = field.n
    a, b = p
    a2, b2 = q
    return AbPair(E.add(E.mul(a, a2), E.mul(b, E.frobenius(b2, n))),
                  E.add(E.mul(a, b2), E.mul(b, E.frobenius(a2, n))))


def ab_det(field: GaloisField, ab: AbPair) -> int:
    """a^(d+1) - b^(d+1), returned as a base-field code."""
    ext = field.extension
    E = ext.field
    d = field.d
    return ext.unembed(E.sub(E.pow(ab.a, d + 1), E.pow(ab.b, d + 1)))


@dataclass(frozen=True)
class ExtLabel:
    """r in [0, d^2 - 2], split as r = s + t(d + 1)."""

    r: int
    d: int

    def __post_init__(self):
        if not 0 <= self.r <= self.d * self.d - 2:
            raise MubError(f"label {self.r} out of range for d = {self.d}")

    @property
    def s(self) -> int:
        return self.r % (self.d + 1)

    @property
    def t(self) -> int:
        return self.r // (self.d + 1)

    @classmethod
    def from_st(cls, d: int, s: int, t: int) -> "ExtLabel":
        return cls(s + (d + 1) * t, d)


def u_of_label(field: GaloisField, r: int) -> PhasePoint:
    """u_r = u(theta_bar^-r)."""
    E = field.extension.field
    return u_of_x(field, E.exp(-int(r)))


def label_of_u(field: GaloisField, u: Sequence[int]) -> int:
    x = x_of_u(field, u)
    if x == 0:
        raise MubError("the zero vector has no label")
    E = field.extension.field
    return (-E.log(x)) % (E.d - 1)


def perm_action(F: SympMatrix, r: int) -> int:
    """r - log_theta_bar(a + b eta^(-2r)) mod d^2 - 1."""
    f = F.field
    ext = f.extension
    E = ext.field
    a, b = ab_of_F(f, F)
    y = E.add(a, E.mul(b, ext.eta_pow(-2 * int(r))))
    if y == 0:
        raise FieldError("a + b eta^(-2r) vanished for an invertible matrix")  # pragma: no cover
    return (int(r) - E.log(y)) % (E.d - 1)


# ---------------------------------------------------------------------------
# the cycling labelling scheme

def rank_one(v: CycloMatrix) -> CycloMatrix:
    """|v><v| for a column v."""
    return v @ v.H


class CyclingScheme:
    """Projectors P_{s,x} and the maps between (s, x) and (mu, x) labels."""

    def __init__(self, field: GaloisField, ring: CycloRing | None = None):
        self.field = field
        self.ring = ring or make_ring_for(field)
        self.d = field.d
        self.ext = field.extension

    def u(self, s: int, t: int) -> PhasePoint:
        return u_of_label(self.field, s + (self.d + 1) * t)

    def projector(self, s: int, x: int) -> CycloMatrix:
        """(1/d)(I + sum_t omega^(-tr(theta^-t x)) D_{u_{s,t}})."""
        f, ring, d = self.field, self.ring, self.d
        w = omega(f, ring)
        acc = CycloMatrix.identity(ring, d)
        for t in range(d - 1):
            e = f.trace(f.mul(f.exp(-t), x))
            acc = acc + displacement(f, self.u(s, t), ring).matrix.scale(w ** ((-e) % f.p))
        return acc.scale(Fraction(1, d))

    def mu_s(self, s: int):
        d = self.d
        if s % (d + 1) == (d - 1) // 2:
            return INF
        ext, E = self.ext, self.ext.field
        num = E.sub(ext.eta_pow(s), ext.eta_pow(-s))
        den = E.add(ext.eta_pow(s + 1), ext.eta_pow(-s - 1))
        return ext.unembed(E.div(num, den))

    def lambda_s(self, s: int) -> int:
        d = self.d
        if s % (d + 1) == (d - 1) // 2:
            return 1
        ext, E = self.ext, self.ext.field
        den = E.add(E.mul(ext.eta, E.exp(-s)), E.mul(ext.eta_pow(-1), E.exp(-d * s)))
        return ext.unembed(E.div(_eta_sum(self.field), den))

    def s_of_mu(self, mu) -> int:
        """(1/2) log_eta((1 + eta^-1 mu) / (1 - eta mu)); the log is always even."""
        d = self.d
        if mu is INF:
            return (d - 1) // 2
        ext, E = self.ext, self.ext.field
        m = ext.embed(int(mu))
        val = E.div(E.add(1, E.mul(ext.eta_pow(-1), m)), E.sub(1, E.mul(ext.eta, m)))
        k = ext.log_eta(val)
        if k % 2:
            raise MubError("log_eta is odd")  # pragma: no cover
        return k // 2

    def state(self, s: int, x: int) -> CycloMatrix:
        """|mu_s, lambda_s x>, the vector whose ray is P_{s,x}."""
        return mub_vector(self.field, self.mu_s(s), self.field.mul(self.lambda_s(s), x), self.ring)

    def action(self, F: SympMatrix, s: int) -> tuple[int, int]:
        """(f_F(s), g_F(s)) from the remainder and quotient of s - log(a + b eta^-2s) by d + 1."""
        d = self.d
        r2 = perm_action(F, s)
        q = r2 // (d + 1)
        return r2 % (d + 1), self.field.exp(q)

    def act(self, F: SympMatrix, s: int, x: int) -> tuple[int, int]:
        """U_F P_{s,x} U_F^dagger = P_{s',x'}; antiunitaries conjugate the character, so x' picks up -1."""
        s2, g = self.action(F, s)
        x2 = self.field.mul(g, x)
        return s2, (x2 if F.det == 1 else self.field.neg(x2))

    def conjugate(self, F: SympMatrix, P: CycloMatrix) -> CycloMatrix:
        U = symplectic_unitary(F, self.ring)
        body = P.conj() if U.antiunitary else P
        return U.matrix @ body @ U.matrix.H


def cycling_scheme(field: GaloisField, ring: CycloRing | None = None) -> CyclingScheme:
    return CyclingScheme(field, ring)
