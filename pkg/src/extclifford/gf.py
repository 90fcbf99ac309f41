"""Finite fields GF(p^n) for odd p, and the quadratic extension GF(p^{2n}).

Elements are encoded as integers: the polynomial c_0 + c_1 x + ... + c_{n-1} x^{n-1}
(reduced modulo the defining polynomial) is stored as sum(c_k * p**k).  With this
encoding the prime subfield Z_p is exactly the codes 0..p-1, and for n = 1 the code
*is* the residue.

All arithmetic goes through dense log/antilog tables and Zech logarithms, so the
field methods accept either Python ints or numpy integer arrays (vectorised).
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from importlib import resources
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime

__all__ = [
    "FieldError",
    "GaloisField",
    "ExtensionField",
    "FdElem",
    "make_field",
    "field_trace",
    "discrete_log",
    "quadratic_character",
    "sqrt_in_ext",
    "dual_basis",
    "load_conway_table",
    "set_conway_override",
    "MAX_FIELD_SIZE",
    "MAX_EXT_SIZE",
]

MAX_FIELD_SIZE = 1 << 20
MAX_EXT_SIZE = 1 << 22
BUILTIN_CONWAY_LIMIT = 2048
CONWAY_ENV = "CLIFFORD_CONWAY_TABLE"


class FieldError(ValueError):
    """Bad field parameters or an operation outside the field's domain."""


# ---------------------------------------------------------------------------
# Conway table

def load_conway_table(path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Parse a table with lines ``p n c0,c1,...,cn``; ``#`` starts a comment."""
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                ps, ns, cs = line.split()
                p, n = int(ps), int(ns)
                coeffs = tuple(int(c) for c in cs.split(","))
            except ValueError as exc:
                raise FieldError(f"{path}:{lineno}: malformed line {line!r}") from exc
            if len(coeffs) != n + 1 or coeffs[-1] != 1:
                raise FieldError(f"{path}:{lineno}: expected monic degree-{n} polynomial")
            table[(p, n)] = coeffs
    return table


@functools.lru_cache(maxsize=None)
def _builtin_table() -> dict[tuple[int, int], tuple[int, ...]]:
    with resources.as_file(resources.files("extclifford") / "data" / "conway.txt") as path:
        return load_conway_table(path)


_override_path: str | None = None


def set_conway_override(path: str | None) -> None:
    """Register a user modulus table that takes precedence over the built-in one."""
    global _override_path
    _override_path = None if path is None else str(path)
    make_field.cache_clear()


@functools.lru_cache(maxsize=8)
def _override_table(path: str) -> dict[tuple[int, int], tuple[int, ...]]:
    return load_conway_table(path)


def _lookup_modulus(p: int, n: int, *, builtin_limit: int | None) -> tuple[int, ...] | None:
    path = _override_path or os.environ.get(CONWAY_ENV)
    if path:
        hit = _override_table(path).get((p, n))
        if hit is not None:
            return hit
    if builtin_limit is not None and p**n > builtin_limit:
        return None
    return _builtin_table().get((p, n))


# ---------------------------------------------------------------------------
# polynomial helpers over Z_p (coefficient lists, ascending)

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _poly_trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        q = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - q * c) % p
        _poly_trim(a)
    return a


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(m) - 1
    if n == 1:
        return True
    for k in range(1, n // 2 + 1):
        for tail in range(p**k):
            cand = [(tail // p**i) % p for i in range(k)] + [1]
            if not _poly_rem(m, cand, p):
                return False
    return True


# ---------------------------------------------------------------------------

class GaloisField:
    """GF(p^n) with dense discrete-log tables relative to a fixed primitive element.

    ``generator`` is the code of the primitive element; it defaults to the class of
    ``x`` (the root of ``modulus``).  Instances are immutable after construction.
    """

    def __init__(self, p: int, n: int, modulus: Sequence[int], generator: int | None = None,
                 *, max_size: int = MAX_FIELD_SIZE):
        if p == 2 or p < 2 or not isprime(p):
            raise FieldError(f"p must be an odd prime, got {p}")
        if n < 1:
            raise FieldError(f"n must be positive, got {n}")
        d = p**n
        if d > max_size:
            raise FieldError(f"field size {d} exceeds bound {max_size}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be a monic polynomial of degree n")
        if not _is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over Z_{p}")
        self.p, self.n, self.d = p, n, d
        self.modulus = modulus
        self._pows = np.array([p**k for k in range(n)], dtype=np.int64)
        if generator is None:
            generator = (-modulus[0]) % p if n == 1 else p
        self.generator = int(generator)
        self._build_tables()

    # -- construction ------------------------------------------------------
    def _digits_of(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._pows) % self.p

    def _mulmat(self, code: int) -> np.ndarray:
        """Matrix of y -> code*y on coordinate vectors (column convention)."""
        n, p = self.n, self.p
        cols = []
        base = self.coords(code)
        for j in range(n):
            prod = [0] * j + list(base)
            cols.append(_poly_rem(prod, self.modulus, p) + [0] * n)
        return np.array([[cols[j][i] for j in range(n)] for i in range(n)], dtype=np.int64)

    def _build_tables(self) -> None:
        p, n, d = self.p, self.n, self.d
        N = d - 1
        digits = np.zeros((N, n), dtype=np.int64)
        digits[0, 0] = 1
        step = self._mulmat(self.generator)       # multiply by g
        filled = 1
        power = step.copy()                       # matrix of g**filled
        while filled < N:
            take = min(filled, N - filled)
            digits[filled:filled + take] = (digits[:take] @ power.T) % p
            filled += take
            power = (power @ power) % p
        exp = digits @ self._pows
        if len(np.unique(exp)) != N or np.any(exp == 0):
            raise FieldError(f"element {self.generator} is not primitive in GF({d})")
        log = np.full(d, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        self._exp = np.concatenate([exp, exp])    # doubled: index up to 2N-1 without mod
        self._log = log
        self._exp_l = self._exp.tolist()
        self._log_l = log.tolist()
        # negation and traces from coordinates
        all_digits = self._digits_of(np.arange(d))
        self._neg = (((p - all_digits) % p) @ self._pows)
        self._neg_l = self._neg.tolist()
        # Zech logs: zech[k] = log(1 + g^k), -1 when 1 + g^k == 0
        one_plus = all_digits[exp].copy()
        one_plus[:, 0] = (one_plus[:, 0] + 1) % p
        codes = one_plus @ self._pows
        self._zech = np.where(codes == 0, -1, log[codes])
        self._zech_l = self._zech.tolist()
        # trace of basis monomials x^k via Frobenius, then linear extension
        tr_basis = []
        for k in range(n):
            mono = p**k
            acc, y = 0, mono
            for _ in range(n):
                acc = self.add(acc, y)
                y = self.pow(y, p)
            if acc >= p:
                raise FieldError("trace left the prime field; tables inconsistent")
            tr_basis.append(acc)
        self._trace = (all_digits @ np.array(tr_basis, dtype=np.int64)) % p
        self._trace_l = self._trace.tolist()
        chi = np.zeros(d, dtype=np.int64)
        chi[1:] = np.where(log[1:] % 2 == 0, 1, -1)
        self._chi = chi
        self._chi_l = chi.tolist()

    # -- basics -------------------------------------------------------------
    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})"

    @property
    def key(self) -> tuple:
        return (self.p, self.n, self.modulus, self.generator)

    def __eq__(self, other) -> bool:
        return isinstance(other, GaloisField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def theta(self) -> int:
        return self.generator

    def __call__(self, value) -> "FdElem":
        """Wrap an element code; a negative int -c denotes the additive inverse of code c."""
        if isinstance(value, FdElem):
            if value.field != self:
                raise FieldError("element belongs to another field")
            return value
        return FdElem(self, self.code(value))

    def code(self, value: int) -> int:
        value = int(value)
        if abs(value) >= self.d:
            raise FieldError(f"{value} is not an element code of {self}")
        return value if value >= 0 else self.neg(-value)

    def elements(self) -> range:
        return range(self.d)

    def from_int(self, z: int) -> int:
        """Image of the integer z in the prime subfield."""
        return int(z) % self.p

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) > self.n:
            raise FieldError("too many coordinates")
        return sum((int(c) % self.p) * self.p**k for k, c in enumerate(coords))

    def coords(self, a: int) -> list[int]:
        a = int(a)
        if not 0 <= a < self.d:
            raise FieldError(f"{a} is not an element code of {self}")
        return [(a // self.p**k) % self.p for k in range(self.n)]

    # -- arithmetic (scalar fast path + numpy path) ---------------------------
    def add(self, a, b):
        if type(a) is int and type(b) is int:
            if self.n == 1:
                return (a + b) % self.p
            if a == 0:
                return b
            if b == 0:
                return a
            la = self._log_l[a]
            z = self._zech_l[(self._log_l[b] - la) % (self.d - 1)]
            return 0 if z < 0 else self._exp_l[la + z]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a + b) % self.p
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.d - 1)]
        s = np.where(z < 0, 0, self._exp[(la + np.maximum(z, 0)) % (self.d - 1)])
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def neg(self, a):
        if type(a) is int:
            return self._neg_l[a]
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if type(a) is int and type(b) is int:
            if self.n == 1:
                return a * b % self.p
            if a == 0 or b == 0:
                return 0
            return self._exp_l[self._log_l[a] + self._log_l[b]]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return a * b % self.p
        r = self._exp[(self._log[a] + self._log[b]) % (self.d - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if type(a) is int:
            if a == 0:
                raise ZeroDivisionError("inverse of 0 in finite field")
            return self._exp_l[(-self._log_l[a]) % (self.d - 1)]
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0 in finite field")
        return self._exp[(-self._log[a]) % (self.d - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if type(a) is int:
            if a == 0:
                if k < 0:
                    raise ZeroDivisionError("0 to a negative power")
                return 1 if k == 0 else 0
            return self._exp_l[(self._log_l[a] * k) % (self.d - 1)]
        a = np.asarray(a, dtype=np.int64)
        r = self._exp[(self._log[a] * k) % (self.d - 1)]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)

    def exp(self, k):
        if type(k) is int:
            return self._exp_l[k % (self.d - 1)]
        return self._exp[np.asarray(k, dtype=np.int64) % (self.d - 1)]

    def log(self, a):
        """Discrete log base the generator, in [0, d-2]."""
        if type(a) is int:
            if a == 0:
                raise FieldError("discrete log of 0")
            return self._log_l[a]
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("discrete log of 0")
        return self._log[a]

    def trace(self, a):
        if type(a) is int:
            return self._trace_l[a]
        return self._trace[np.asarray(a, dtype=np.int64)]

    def chi(self, a):
        """Quadratic character: +1 on squares, -1 on non-squares, 0 at 0."""
        if type(a) is int:
            return self._chi_l[a]
        return self._chi[np.asarray(a, dtype=np.int64)]

    def sqrt(self, a: int) -> int | None:
        """The square root with the smaller discrete log, or None for non-residues."""
        if a == 0:
            return 0
        k = self._log_l[a]
        if k % 2:
            return None
        return self._exp_l[k // 2]

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p**times)

    def to_str(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        terms = []
        for k, c in enumerate(self.coords(a)):
            if c:
                terms.append(str(c) if k == 0 else (f"{'' if c == 1 else c}x" + (f"^{k}" if k > 1 else "")))
        return "+".join(terms) or "0"

    def eval_poly(self, coeffs: Sequence[int], a: int) -> int:
        """Evaluate an integer-coefficient polynomial (ascending) at a via Horner."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), self.from_int(c))
        return acc

    @functools.cached_property
    def extension(self) -> "ExtensionField":
        return ExtensionField(self)

    # -- small helpers --------------------------------------------------------
    def nonresidue(self) -> int:
        """Smallest-log non-residue (the generator itself)."""
        return self.generator

    def sqrt_minus_one(self) -> int | None:
        return self.sqrt(self.neg(1))


class FdElem:
    """Field element wrapper with operator overloading, for user-facing code."""

    __slots__ = ("field", "code")

    def __init__(self, field: GaloisField, code: int):
        code = int(code)
        if not 0 <= code < field.d:
            raise FieldError(f"{code} is not an element code of {field}")
        self.field = field
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, FdElem):
            if other.field != self.field:
                raise FieldError("mixed fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __int__(self) -> int:
        return self.code

    __index__ = __int__

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FdElem(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FdElem(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FdElem(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FdElem(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FdElem(self.field, self.field.div(self.code, o))

    def __neg__(self):
        return FdElem(self.field, self.field.neg(self.code))

    def __pow__(self, k: int):
        return FdElem(self.field, self.field.pow(self.code, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, FdElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.key, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"{self.field!r}({self.field.to_str(self.code)})"


# ---------------------------------------------------------------------------

def _primitive_ext_candidates(p: int, m: int, modulus: Sequence[int]):
    """Yield codes of primitive elements of Z_p[x]/(modulus) in increasing code order."""
    q = p**m
    order = q - 1
    factors = list(factorint(order))

    def mulmod(a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (len(a) + len(b))
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return _poly_rem(prod, modulus, p)

    def powmod(a: list[int], e: int) -> list[int]:
        result, base = [1], a
        while e:
            if e & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            e >>= 1
        return result

    for code in range(p, q):
        coords = _poly_trim([(code // p**k) % p for k in range(m)])
        if all(powmod(coords, order // f) != [1] for f in factors):
            yield code


class ExtensionField:
    """GF(d^2) over a base GF(d), with theta_bar chosen so that theta_bar^(d+1) = theta.

    ``embed`` maps base codes to extension codes; ``eta = theta_bar^((d-1)/2)``.
    """

    def __init__(self, base: GaloisField):
        p, n, d = base.p, base.n, base.d
        if d * d > MAX_EXT_SIZE:
            raise FieldError(f"extension GF({d}^2) exceeds bound {MAX_EXT_SIZE}")
        self.base = base
        mod2 = _lookup_modulus(p, 2 * n, builtin_limit=None)
        if mod2 is None:
            mod2 = _first_irreducible(p, 2 * n)
        self.modulus2 = tuple(mod2)
        # pick theta_bar: first primitive candidate whose (d+1)-th power is a root of
        # the base modulus; embedding theta -> theta_bar^(d+1) is then a homomorphism.
        candidates = _primitive_ext_candidates(p, 2 * n, self.modulus2)
        first = next(candidates)
        probe = GaloisField(p, 2 * n, self.modulus2, generator=first, max_size=MAX_EXT_SIZE)
        theta_bar = None
        for cand in itertools.chain([first], candidates):
            y = probe.pow(cand, d + 1)
            if probe.eval_poly(base.modulus, y) == 0:
                theta_bar = cand
                break
        if theta_bar is None:  # pragma: no cover - impossible for a genuine field
            raise FieldError("no compatible primitive element in the extension")
        self.field = GaloisField(p, 2 * n, self.modulus2, generator=theta_bar, max_size=MAX_EXT_SIZE)
        self.theta_bar = theta_bar
        F = self.field
        self.d = d
        self.eta = F.exp((d - 1) // 2)
        # embed base code via logs: theta^k -> theta_bar^(k(d+1))
        emb = np.zeros(d, dtype=np.int64)
        nz = np.arange(1, d)
        emb[nz] = F.exp(base.log(nz) * (d + 1))
        self._embed = emb
        self._embed_l = emb.tolist()
        un = np.full(F.d, -1, dtype=np.int64)
        un[emb] = np.arange(d)
        self._unembed = un
        self._unembed_l = un.tolist()

    def __repr__(self) -> str:
        return f"GF({self.d}^2 over {self.base!r})"

    def embed(self, a):
        if type(a) is int:
            return self._embed_l[a]
        return self._embed[np.asarray(a, dtype=np.int64)]

    def unembed(self, y: int) -> int:
        """Inverse of embed; raises if y is not in the base subfield."""
        b = self._unembed_l[int(y)]
        if b < 0:
            raise FieldError(f"extension element {y} is not in the base field")
        return b

    def in_base(self, y: int) -> bool:
        return self._unembed_l[int(y)] >= 0

    def log_eta(self, y: int) -> int:
        """log base eta, in [0, 2(d+1)); y must lie in the subgroup generated by eta."""
        k = self.field.log(int(y))
        step = (self.d - 1) // 2
        if k % step:
            raise FieldError("element is not a power of eta")
        return k // step

    def eta_pow(self, k: int) -> int:
        return self.field.exp(k * ((self.d - 1) // 2))


def _first_irreducible(p: int, m: int) -> tuple[int, ...]:
    for tail in range(p**m):
        cand = [(tail // p**k) % p for k in range(m)] + [1]
        if cand[0] and _is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


@functools.lru_cache(maxsize=64)
def _make_field(p: int, n: int, modulus: tuple[int, ...] | None, max_size: int) -> GaloisField:
    if p == 2 or p < 2 or not isprime(p):
        raise FieldError(f"p must be an odd prime, got {p}")
    if n < 1:
        raise FieldError(f"n must be positive, got {n}")
    if p**n > max_size:
        raise FieldError(f"field size {p}^{n} exceeds bound {max_size}")
    if modulus is None:
        modulus = _lookup_modulus(p, n, builtin_limit=BUILTIN_CONWAY_LIMIT)
        if modulus is None:
            raise FieldError(f"no Conway polynomial for {p}^{n}; supply a modulus")
    return GaloisField(p, n, modulus, max_size=max_size)


def make_field(p: int, n: int = 1, modulus: Sequence[int] | None = None,
               *, max_size: int = MAX_FIELD_SIZE) -> GaloisField:
    """GF(p^n) with a verified-irreducible modulus and primitive theta = x.

    Without ``modulus`` the Conway polynomial is taken from the override table
    (``set_conway_override`` / ``$CLIFFORD_CONWAY_TABLE``) or the built-in table.
    """
    mod = None if modulus is None else tuple(int(c) % p if p > 0 else int(c) for c in modulus)
    return _make_field(int(p), int(n), mod, int(max_size))


make_field.cache_clear = _make_field.cache_clear  # type: ignore[attr-defined]


def field_for_dimension(d: int, **kw) -> GaloisField:
    """GF(d) for an odd prime power d."""
    if d < 3:
        raise FieldError(f"dimension must be an odd prime power, got {d}")
    f = factorint(d)
    if len(f) != 1:
        raise FieldError(f"dimension must be a prime power, got {d}")
    (p, n), = f.items()
    return make_field(p, n, **kw)


# ---------------------------------------------------------------------------
# module-level operations on wrapped elements

def field_trace(x: FdElem) -> int:
    return x.field.trace(x.code)


def discrete_log(x: FdElem) -> int:
    return x.field.log(x.code)


def quadratic_character(x: FdElem) -> int:
    return x.field.chi(x.code)


def sqrt_in_ext(x: FdElem) -> FdElem:
    """A square root of x in GF(d^2): theta_bar^(k(d+1)/2) with k = log x.

    For non-residues this is the usual convention; for residues it is the base-field
    root whose log (base theta_bar) is below (d^2-1)/2.
    """
    F = x.field
    if x.code == 0:
        raise FieldError("square root of 0 requested (degenerate discriminant)")
    ext = F.extension
    k = F.log(x.code)
    return FdElem(ext.field, ext.field.exp(k * (F.d + 1) // 2))


def _solve_mod_p(A: list[list[int]], p: int) -> list[list[int]] | None:
    """Inverse of a square matrix mod p, or None if singular."""
    n = len(A)
    M = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] % p), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, p)
        M[col] = [v * inv % p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] % p:
                f = M[r][col]
                M[r] = [(vr - f * vc) % p for vr, vc in zip(M[r], M[col])]
    return [row[n:] for row in M]


def dual_basis(basis: Sequence[FdElem]) -> list[FdElem]:
    """The basis e'_s with tr(e_r e'_s) = delta_rs."""
    if not basis:
        raise FieldError("empty basis")
    F = basis[0].field
    if len(basis) != F.n:
        raise FieldError(f"a basis of {F} over Z_{F.p} has {F.n} elements")
    codes = [F(b).code for b in basis]
    monos = [F.p**k for k in range(F.n)]
    gram = [[F.trace(F.mul(e, m)) for m in monos] for e in codes]
    inv = _solve_mod_p(gram, F.p)
    if inv is None:
        raise FieldError("input is not a basis (trace Gram matrix is singular)")
    dual = [F.from_coords([inv[k][s] for k in range(F.n)]) for s in range(F.n)]
    for r, e in enumerate(codes):
        for s, ed in enumerate(dual):
            if F.trace(F.mul(e, ed)) != (r == s):
                raise FieldError("dual basis check failed")  # pragma: no cover
    return [FdElem(F, c) for c in dual]


def legendre(z: int, p: int) -> int:
    """Legendre symbol by enumeration of squares (test oracle)."""
    z %= p
    if z == 0:
        return 0
    return 1 if any(y * y % p == z for y in range(1, p)) else -1


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


def iter_matrices_2x2(F: GaloisField) -> Iterable[tuple[int, int, int, int]]:
    """All (a, b, c, d) with ad - bc = +-1, in lexicographic (a, b, c) order."""
    one, mone = 1, F.neg(1)
    for a in range(F.d):
        for b in range(F.d):
            for c in range(F.d):
                bc = F.mul(b, c)
                if a:
                    inva = F.inv(a)
                    for det in (one, mone):
                        yield (a, b, c, F.mul(F.add(det, bc), inva))
                else:
                    for det in (one, mone):
                        if F.neg(bc) == det:
                            for dd in range(F.d):
                                yield (a, b, c, dd)


# ---------------------------------------------------------------------------
# 2x2 matrices over any GaloisField, as tuples (a, b, c, d) of codes

def mat2_mul(F: GaloisField, A: Sequence[int], B: Sequence[int]) -> tuple[int, int, int, int]:
    a, b, c, d = A
    e, f, g, h = B
    return (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))


def mat2_det(F: GaloisField, A: Sequence[int]) -> int:
    a, b, c, d = A
    return F.sub(F.mul(a, d), F.mul(b, c))


def mat2_inv(F: GaloisField, A: Sequence[int]) -> tuple[int, int, int, int]:
    a, b, c, d = A
    k = F.inv(mat2_det(F, A))
    return (F.mul(k, d), F.mul(k, F.neg(b)), F.mul(k, F.neg(c)), F.mul(k, a))
