"""Exact arithmetic in the tower GF(p) < GF(p^m) < GF(p^2m).

GF(p^2m) is GF(p)[x] / (f) for the lexicographically smallest monic primitive
polynomial f of degree 2m, so alpha = x generates the multiplicative group.
GF(p^m) is not built separately: it is the fixed field of x -> x^(p^m), with
generator omega = alpha^(p^m + 1).

Every element is stored as an integer *index*: the coefficient vector
(c_0, ..., c_{2m-1}) of c_0 + c_1 x + ... read as a base-p numeral with c_0
as the most significant digit.  Integer order on indices is therefore the
lexicographic order on coefficient vectors, and the zero element is index 0.
Bulk operations work on numpy arrays of indices; :class:`FieldElem` wraps a
single index for scalar use.
"""

from __future__ import annotations

import itertools
import os
from functools import cached_property
from math import isqrt

import numpy as np

from .errors import (
    EvenPrimeUnsupported,
    NotInSubfield,
    NotPrime,
    RangeError,
    SingularBasis,
    SizeGuardExceeded,
    TowerMismatch,
    ZeroHasNoLog,
)

DEFAULT_SIZE_GUARD = 2**24
SIZE_GUARD_ENV = "DENNISTON_SIZE_GUARD"

_CHUNK = 1 << 18


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low-degree-first --------------

def _mulmod(a: list[int], b: list[int], low: tuple[int, ...], p: int) -> list[int]:
    # reduce modulo the monic polynomial x^n + sum(low[i] x^i)
    n = len(low)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(n):
                prod[d - n + i] -= c * low[i]
        prod[d] = 0
    return [c % p for c in prod[:n]]


def _x_power(e: int, low: tuple[int, ...], p: int) -> list[int]:
    n = len(low)
    result = [1] + [0] * (n - 1)
    base = [0, 1] + [0] * (n - 2) if n > 1 else [(-low[0]) % p]
    while e:
        if e & 1:
            result = _mulmod(result, base, low, p)
        base = _mulmod(base, base, low, p)
        e >>= 1
    return result


def is_primitive(low: tuple[int, ...], p: int) -> bool:
    """True iff x^n + sum(low[i] x^i) is primitive over GF(p).

    x has order exactly p^n - 1 in the unit group of GF(p)[x]/(f), which has
    at most p^n - 1 elements, so this also certifies irreducibility.
    """
    if low[0] == 0:
        return False
    n = len(low)
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _x_power(order, low, p) != one:
        return False
    return all(_x_power(order // ell, low, p) != one for ell in prime_factors(order))


def find_primitive_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree ``n``.

    Coefficients are compared low-degree-first; the result is the full
    coefficient tuple of length n + 1 ending in the leading 1.
    """
    for low in itertools.product(range(p), repeat=n):
        if is_primitive(low, p):
            return (*low, 1)
    raise ArithmeticError(f"no primitive polynomial of degree {n} over GF({p})")  # pragma: no cover


def _matpow_mod(M: np.ndarray, e: int, p: int) -> np.ndarray:
    R = np.eye(M.shape[0], dtype=np.int64)
    B = M.copy()
    while e:
        if e & 1:
            R = (R @ B) % p
        B = (B @ B) % p
        e >>= 1
    return R


class FieldTower:
    """GF(p^2m) with its subfield GF(p^m), discrete-log tables and traces.

    Immutable after construction.  Use :func:`build_tower` rather than calling
    the constructor directly; the constructor trusts that ``modulus`` is
    primitive and only checks the resulting power table.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.n = n = 2 * m
        self.q = q = p**n
        self.sub_order = p**m
        self.modulus = tuple(int(c) for c in modulus)
        self.weights = np.array([p ** (n - 1 - j) for j in range(n)], dtype=np.int64)

        self.exp = self._power_table()
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp] = np.arange(q - 1, dtype=np.int64)
        if np.count_nonzero(log >= 0) != q - 1:
            raise ArithmeticError("modulus is not primitive: powers of x repeat")
        self.log = log
        for arr in (self.exp, self.log):
            arr.setflags(write=False)

        self.alpha = FieldElem(self, int(self.exp[1]))
        self.omega = FieldElem(self, int(self.exp[self.sub_order + 1]))
        self._init_subfield()
        self._init_traces()

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, m={self.m}, modulus={self.modulus})"

    # -- construction helpers ------------------------------------------------

    def _power_table(self) -> np.ndarray:
        """Indices of alpha^0, ..., alpha^(q-2), built block by block."""
        p, n, q = self.p, self.n, self.q
        # row vector c (low-degree-first) times M is c * x
        M = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            M[i, i + 1] = 1
        M[n - 1, :] = [(-c) % p for c in self.modulus[:n]]

        block = isqrt(q - 1) + 1
        first = np.zeros((block, n), dtype=np.int64)
        first[0, 0] = 1
        for i in range(1, block):
            first[i] = (first[i - 1] @ M) % p
        step = _matpow_mod(M, block, p)

        out = np.empty(q - 1, dtype=np.int64)
        cur = first
        pos = 0
        while pos < q - 1:
            take = min(block, q - 1 - pos)
            out[pos:pos + take] = cur[:take] @ self.weights
            pos += take
            cur = (cur @ step) % p
        return out

    def _init_subfield(self) -> None:
        p, m, q = self.p, self.m, self.q
        # basis {1, omega, ..., omega^(m-1)} as coefficient rows
        basis = self.to_digits(self.exp[[(j * (self.sub_order + 1)) % (q - 1) for j in range(m)]])
        self.subfield_basis_matrix = basis
        coords = self.sub_digits(np.arange(self.sub_order, dtype=np.int64))
        codes = ((coords @ basis) % p) @ self.weights
        if len(np.unique(codes)) != self.sub_order:
            raise SingularBasis("powers of omega are linearly dependent over GF(p)")
        sub_index = np.full(q, -1, dtype=np.int64)
        sub_index[codes] = np.arange(self.sub_order, dtype=np.int64)
        self.subfield_codes = codes
        self.sub_index = sub_index
        codes.setflags(write=False)
        sub_index.setflags(write=False)

    def _init_traces(self) -> None:
        p, n, q = self.p, self.n, self.q
        # full trace is GF(p)-linear: tabulate it on the power basis
        tvec = np.array([self._trace_direct(int(self.exp[i]), n) for i in range(n)], dtype=np.int64)
        trace2 = np.empty(q, dtype=np.int64)
        for start in range(0, q, _CHUNK):
            idx = np.arange(start, min(q, start + _CHUNK), dtype=np.int64)
            trace2[start:start + len(idx)] = (self.to_digits(idx) @ tvec) % p
        self.trace2_table = trace2
        tm = np.full(q, -1, dtype=np.int64)
        for code in self.subfield_codes:
            tm[code] = self._trace_direct(int(code), self.m)
        self.tracem_table = tm
        trace2.setflags(write=False)
        tm.setflags(write=False)

    def _trace_direct(self, code: int, terms: int) -> int:
        """sum_{i<terms} x^(p^i), returned as its GF(p) value."""
        acc = np.zeros(self.n, dtype=np.int64)
        for i in range(terms):
            acc += self.to_digits(self.pow_code(code, self.p**i))
        acc %= self.p
        if np.any(acc[1:]):
            raise ArithmeticError("trace landed outside GF(p)")
        return int(acc[0])

    # -- index-level arithmetic (vectorised) ----------------------------------

    def to_digits(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.weights) % self.p

    def from_digits(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self.weights

    def sub_digits(self, sub_idx) -> np.ndarray:
        """Subfield coordinate vectors for subfield indices (MSB-first)."""
        w = np.array([self.p ** (self.m - 1 - j) for j in range(self.m)], dtype=np.int64)
        return (np.asarray(sub_idx, dtype=np.int64)[..., None] // w) % self.p

    def add_codes(self, a, b) -> np.ndarray:
        return self.from_digits(self.to_digits(a) + self.to_digits(b))

    def neg_codes(self, a) -> np.ndarray:
        return self.from_digits(-self.to_digits(a))

    def mul_codes(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        prod = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def pow_codes(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a) * self.one.index
        return np.where(a == 0, 0, out)

    def pow_code(self, code: int, e: int) -> int:
        """Square-and-multiply on a single index."""
        if code == 0:
            if e == 0:
                return self.one.index
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        e %= self.q - 1
        result = self.one.index
        base = code
        while e:
            if e & 1:
                result = self._mul1(result, base)
            base = self._mul1(base, base)
            e >>= 1
        return result

    def _mul1(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    # -- element constructors -------------------------------------------------

    def element(self, coeffs) -> FieldElem:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise ValueError(f"expected at most {self.n} coefficients")
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElem(self, int(self.from_digits(coeffs)))

    def from_index(self, index: int) -> FieldElem:
        if not 0 <= index < self.q:
            raise ValueError("index out of range")
        return FieldElem(self, int(index))

    def scalar(self, c: int) -> FieldElem:
        return self.element([c % self.p])

    def alpha_power(self, e: int) -> FieldElem:
        return FieldElem(self, int(self.exp[e % (self.q - 1)]))

    def subfield_element(self, coords) -> FieldElem:
        """Element sum(coords[j] * omega^j)."""
        w = [self.p ** (self.m - 1 - j) for j in range(self.m)]
        idx = sum((int(c) % self.p) * wj for c, wj in zip(coords, w))
        return FieldElem(self, int(self.subfield_codes[idx]))

    @cached_property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @cached_property
    def one(self) -> FieldElem:
        return FieldElem(self, int(self.from_digits([1] + [0] * (self.n - 1))))

    @property
    def log_table(self) -> np.ndarray:
        """dlog by index; -1 marks the zero element."""
        return self.log

    def elements(self):
        for i in range(self.q):
            yield FieldElem(self, i)

    def is_subfield_code(self, codes) -> np.ndarray:
        return self.sub_index[np.asarray(codes, dtype=np.int64)] >= 0

    # -- character functionals --------------------------------------------------

    @cached_property
    def big_character_matrix(self) -> np.ndarray:
        """Row t holds Tr_{2m/1}(t * alpha^i) for i < 2m (t an index)."""
        t = np.arange(self.q, dtype=np.int64)
        cols = [self.trace2_table[self.mul_codes(t, self.exp[i])] for i in range(self.n)]
        out = np.stack(cols, axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def sub_character_matrix(self) -> np.ndarray:
        """Row s holds Tr_{m/1}(s * omega^j) for j < m (s a subfield index)."""
        s = self.subfield_codes
        cols = []
        for j in range(self.m):
            wj = self.exp[(j * (self.sub_order + 1)) % (self.q - 1)]
            cols.append(self.tracem_table[self.mul_codes(s, wj)])
        out = np.stack(cols, axis=1)
        out.setflags(write=False)
        return out


class FieldElem:
    """A single element of GF(p^2m)."""

    __slots__ = ("tower", "index")

    def __init__(self, tower: FieldTower, index: int):
        self.tower = tower
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.tower.to_digits(self.index))

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.tower is not self.tower:
                raise TowerMismatch("operands belong to different towers")
            return other
        if isinstance(other, (int, np.integer)):
            return self.tower.scalar(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.tower, int(self.tower.add_codes(self.index, other.index)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.tower, int(self.tower.neg_codes(self.index)))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.tower, self.tower._mul1(self.index, other.index))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FieldElem(self.tower, self.tower.pow_code(self.index, int(e)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other ** -1

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.tower is other.tower and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self == self.tower.scalar(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.tower), self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"FieldElem({list(self.coeffs)})"

    def in_subfield(self) -> bool:
        return frobenius(self, self.tower.m) == self


def resolve_size_guard(size_guard: int | None = None) -> int:
    if size_guard is not None:
        return int(size_guard)
    env = os.environ.get(SIZE_GUARD_ENV)
    return int(env) if env else DEFAULT_SIZE_GUARD


def build_tower(p: int, m: int, size_guard: int | None = None) -> FieldTower:
    """Build GF(p) < GF(p^m) < GF(p^2m) for an odd prime ``p`` and ``m >= 2``.

    ``size_guard`` caps p^(2m); it defaults to the DENNISTON_SIZE_GUARD
    environment variable, or 2**24.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenPrimeUnsupported("characteristic 2 is not supported")
    if m < 2:
        raise RangeError("m must be at least 2")
    guard = resolve_size_guard(size_guard)
    if p ** (2 * m) > guard:
        raise SizeGuardExceeded(f"GF({p}^{2 * m}) has {p ** (2 * m)} elements; guard is {guard}")
    return _cached_tower(p, m)


_TOWERS: dict[tuple[int, int], FieldTower] = {}


def _cached_tower(p: int, m: int) -> FieldTower:
    key = (p, m)
    if key not in _TOWERS:
        _TOWERS[key] = FieldTower(p, m, find_primitive_polynomial(p, 2 * m))
    return _TOWERS[key]


# -- module-level operations ---------------------------------------------------

def add(x: FieldElem, y: FieldElem) -> FieldElem:
    return x + y


def neg(x: FieldElem) -> FieldElem:
    return -x


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    return x * y


def power(x: FieldElem, e: int) -> FieldElem:
    """x^e; 0^0 is 1 by convention."""
    return x**e


def frobenius(x: FieldElem, t: int) -> FieldElem:
    """x^(p^t)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    t %= x.tower.n
    return x ** (x.tower.p**t)


def _require_subfield(a: FieldElem) -> None:
    if not a.in_subfield():
        raise NotInSubfield(f"{a!r} is not in GF({a.tower.p}^{a.tower.m})")


def trace_m1(a: FieldElem) -> int:
    """Tr from GF(p^m) down to GF(p)."""
    _require_subfield(a)
    return int(a.tower.tracem_table[a.index])


def trace_2m1(x: FieldElem) -> int:
    """Tr from GF(p^2m) down to GF(p)."""
    return int(x.tower.trace2_table[x.index])


def dlog(x: FieldElem) -> int:
    if x.index == 0:
        raise ZeroHasNoLog("zero has no discrete logarithm")
    return int(x.tower.log[x.index])


def subfield_coords(a: FieldElem) -> tuple[int, ...]:
    """Coordinates of ``a`` in the basis 1, omega, ..., omega^(m-1)."""
    _require_subfield(a)
    tower = a.tower
    idx = tower.sub_index[a.index]
    if idx < 0:
        raise SingularBasis("subfield element missing from the coordinate table")
    return tuple(int(c) for c in tower.sub_digits(idx))
