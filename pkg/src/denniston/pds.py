"""Denniston-parameter PDSs in GF(p^m)+ x GF(p^2m)+ and their duals.

The construction pairs each coset omega^i <omega^e> of GF(p)^* in GF(p^m)^*
(e = (p^m - 1)/(p - 1)) with the cyclotomic class C_i^{e} of GF(p^2m) plus
zero.  Duals are computed constructively from exact character sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .cyclotomy import class_exponents, singer_order
from .errors import (
    ContainsIdentity,
    EvenPrimeUnsupported,
    NonIntegralCharacterSum,
    NotInSubfield,
    NotPrime,
    NotVerified,
    ParamInconsistency,
    RangeError,
    SizeMismatch,
    TowerMismatch,
)
from .finite_field import FieldElem, FieldTower, is_prime, subfield_coords
from .verify import character_spectrum, is_symmetric


@dataclass(frozen=True)
class PdsParams:
    v: int
    k: int
    lam: int
    mu: int

    def __iter__(self):
        return iter((self.v, self.k, self.lam, self.mu))

    def __str__(self):
        return f"v={self.v} k={self.k} lambda={self.lam} mu={self.mu}"

    @property
    def delta(self) -> int:
        return (self.mu - self.lam) ** 2 + 4 * (self.k - self.mu)

    @property
    def sqrt_delta(self) -> int | None:
        d = self.delta
        if d < 0:
            return None
        s = isqrt(d)
        return s if s * s == d else None

    @property
    def theta_pos(self) -> int:
        return (self.lam - self.mu + self._root()) // 2

    @property
    def theta_neg(self) -> int:
        return (self.lam - self.mu - self._root()) // 2

    def _root(self) -> int:
        s = self.sqrt_delta
        if s is None:
            raise ParamInconsistency(f"discriminant {self.delta} is not a perfect square")
        return s

    def is_consistent(self) -> bool:
        """k^2 = k + lambda k + mu (v - k - 1), with integral eigenvalues."""
        v, k, lam, mu = self
        if k * k != k + lam * k + mu * (v - k - 1):
            return False
        s = self.sqrt_delta
        return s is not None and (lam - mu + s) % 2 == 0

    def check(self) -> PdsParams:
        if not self.is_consistent():
            raise ParamInconsistency(f"inconsistent PDS parameters ({self})")
        return self

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenPrimeUnsupported("p = 2 is not supported")


def denniston_params(p: int, m: int, r: int) -> PdsParams:
    """(p^3m, (p^(m+r) - p^m + p^r)(p^m - 1), ...) for m >= 2, 1 <= r < m."""
    _check_prime(p)
    if m < 2:
        raise RangeError("m must be at least 2")
    if not 1 <= r < m:
        raise RangeError(f"r must satisfy 1 <= r < m, got r={r}, m={m}")
    h = p ** (m + r) - p**m + p**r
    return PdsParams(
        v=p ** (3 * m),
        k=h * (p**m - 1),
        lam=p**m - p**r + h * (p**r - 2),
        mu=h * (p**r - 1),
    ).check()


def x_params(p: int, m: int) -> PdsParams:
    """Parameters of the quadric PDS {x != 0 : Tr(x^(p^m+1)) = 0}."""
    _check_prime(p)
    if m < 2:
        raise RangeError("m must be at least 2")
    return PdsParams(
        v=p ** (2 * m),
        k=p ** (2 * m - 1) - p ** (m - 1) * (p - 1) - 1,
        lam=p ** (2 * m - 2) - p ** (m - 1) * (p - 1) - 2,
        mu=p ** (2 * m - 2) - p ** (m - 1),
    ).check()


def nls_params(n: int, r: int) -> PdsParams:
    """Negative Latin square type (n^2, r(n+1), r^2 + 3r - n, r^2 + r)."""
    return PdsParams(n * n, r * (n + 1), r * r + 3 * r - n, r * r + r)


def singer_params(p: int, m: int) -> tuple[int, int, int]:
    """(v, k, lambda) of the trace-zero Singer difference set."""
    return (
        (p**m - 1) // (p - 1),
        (p ** (m - 1) - 1) // (p - 1),
        (p ** (m - 2) - 1) // (p - 1),
    )


# -- the group GF(p^m)+ x GF(p^2m)+ ------------------------------------------

@dataclass(frozen=True)
class GroupElem:
    a: FieldElem
    b: FieldElem

    def __post_init__(self):
        if self.a.tower is not self.b.tower:
            raise TowerMismatch("components belong to different towers")
        if self.a.tower.sub_index[self.a.index] < 0:
            raise NotInSubfield("first component must lie in GF(p^m)")

    @property
    def tower(self) -> FieldTower:
        return self.a.tower

    @property
    def index(self) -> int:
        t = self.tower
        return int(t.sub_index[self.a.index]) * t.q + self.b.index

    @classmethod
    def from_index(cls, tower: FieldTower, index: int) -> GroupElem:
        s, b = divmod(int(index), tower.q)
        return cls(FieldElem(tower, int(tower.subfield_codes[s])), FieldElem(tower, b))

    def __add__(self, other: GroupElem) -> GroupElem:
        return GroupElem(self.a + other.a, self.b + other.b)

    def __neg__(self) -> GroupElem:
        return GroupElem(-self.a, -self.b)

    def __sub__(self, other: GroupElem) -> GroupElem:
        return self + (-other)

    def label(self) -> list[list[int]]:
        return [list(subfield_coords(self.a)), list(self.b.coeffs)]


@lru_cache(maxsize=8)
def group_character_matrix(tower: FieldTower) -> np.ndarray:
    """Row (s, t) holds the functional g -> Tr(s a) + Tr(t b) on group digits."""
    sub = tower.sub_character_matrix
    big = tower.big_character_matrix
    out = np.concatenate(
        [np.repeat(sub, tower.q, axis=0), np.tile(big, (tower.sub_order, 1))], axis=1
    ).astype(np.int8)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class GroupSet:
    """Subset of GF(p^m)+ x GF(p^2m)+ stored as sorted group indices.

    The index of (a, b) is sub_index(a) * p^2m + index(b), so index order is
    lexicographic order on (subfield coordinates of a, coefficients of b).
    """

    tower: FieldTower
    indices: np.ndarray

    def __post_init__(self):
        idx = np.unique(np.asarray(self.indices, dtype=np.int64))
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_pairs(cls, tower: FieldTower, pairs) -> GroupSet:
        return cls(tower, np.array([g.index for g in pairs], dtype=np.int64))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return (GroupElem.from_index(self.tower, int(i)) for i in self.indices)

    def __contains__(self, g: GroupElem):
        i = np.searchsorted(self.indices, g.index)
        return i < len(self.indices) and self.indices[i] == g.index

    def __eq__(self, other):
        if not isinstance(other, GroupSet):
            return NotImplemented
        return self.tower is other.tower and np.array_equal(self.indices, other.indices)

    def __repr__(self):
        return f"GroupSet(p={self.tower.p}, m={self.tower.m}, size={len(self)})"

    @property
    def p(self) -> int:
        return self.tower.p

    @property
    def order(self) -> int:
        return self.tower.sub_order * self.tower.q

    @property
    def ndigits(self) -> int:
        return 3 * self.tower.m

    def with_indices(self, indices) -> GroupSet:
        return GroupSet(self.tower, indices)

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """(subfield indices, big-field indices) of every element."""
        return np.divmod(self.indices, self.tower.q)

    def digit_matrix(self) -> np.ndarray:
        s, b = self.split()
        return np.concatenate([self.tower.sub_digits(s), self.tower.to_digits(b)], axis=1)

    def character_matrix(self) -> np.ndarray:
        return group_character_matrix(self.tower)

    def character_index(self, chi) -> int:
        s, t = chi
        return GroupElem(s, t).index

    def element_label(self, index: int) -> list[list[int]]:
        s, b = divmod(int(index), self.tower.q)
        return [
            [int(c) for c in self.tower.sub_digits(s)],
            [int(c) for c in self.tower.to_digits(b)],
        ]


def construct_D(tower: FieldTower) -> GroupSet:
    """Union over i < e of (omega^i <omega^e>) x (C_i^{e} + {0})."""
    p, q = tower.p, tower.q
    e = singer_order(tower)
    step = tower.sub_order + 1  # omega = alpha^(p^m + 1)
    parts = []
    for i in range(e):
        coset = tower.exp[((i + e * np.arange(p - 1, dtype=np.int64)) * step) % (q - 1)]
        a = tower.sub_index[coset]
        b = np.concatenate([[0], tower.exp[class_exponents(tower, e, i)]])
        parts.append((a[:, None] * q + b[None, :]).ravel())
    return GroupSet(tower, np.concatenate(parts))


# -- duality -------------------------------------------------------------------

def dual_params(params: PdsParams, v: int | None = None, eigenvalue: str = "neg") -> PdsParams:
    """Parameters of the set of characters taking one eigenvalue on a PDS.

    ``eigenvalue="pos"`` counts the characters with sum theta_pos, whose
    number is k* = [(sqrt(D) - beta)(v - 1) - 2k] / (2 sqrt(D)).  The default
    ``"neg"`` takes the other class, of size v - 1 - k*; for the Denniston
    family this is the r -> m - r partner.  lambda* and mu* come from the
    eigenvalues of the dual set (r*, s*) via mu* = k* + r*s* and
    lambda* = mu* + r* + s*.
    """
    params.check()
    v = params.v if v is None else v
    if v != params.v:
        raise ParamInconsistency(f"group order {v} does not match v={params.v}")
    _, k, lam, mu = params
    root = params.sqrt_delta
    beta = lam - mu
    k_pos = Fraction((root - beta) * (v - 1) - 2 * k, 2 * root)
    if eigenvalue == "pos":
        kstar, theta = k_pos, params.theta_pos
    elif eigenvalue == "neg":
        kstar, theta = v - 1 - k_pos, params.theta_neg
    else:
        raise ValueError(f"eigenvalue must be 'pos' or 'neg', got {eigenvalue!r}")
    # dual eigenvalues: on elements of the original set, and off it
    r_star = kstar * theta / k
    s_star = kstar * (-1 - theta) / (v - k - 1)
    mu_star = kstar + r_star * s_star
    lam_star = mu_star + r_star + s_star
    vals = (kstar, lam_star, mu_star)
    if any(x.denominator != 1 for x in vals):
        raise ParamInconsistency(f"non-integral dual parameters {vals}")
    return PdsParams(v, int(kstar), int(lam_star), int(mu_star)).check()


def dual_set(S, params: PdsParams, eigenvalue: str = "neg"):
    """Characters (identified with group elements) taking one eigenvalue on S.

    The pairing is <(s, t), (a, b)> = Tr_{m/1}(s a) + Tr_{2m/1}(t b) for
    group sets and <t, x> = Tr_{2m/1}(t x) for field sets.  The whole
    character table is evaluated exactly first, which certifies S; an
    uncertified set is refused.
    """
    if len(S) != params.k:
        raise SizeMismatch(f"set has {len(S)} elements, expected {params.k}")
    if len(S.indices) and S.indices[0] == 0:
        raise ContainsIdentity("set contains the group identity")
    values, integral = character_spectrum(S)
    if not integral[1:].all():
        raise NonIntegralCharacterSum("a nonprincipal character sum is not an integer")
    thetas = (params.theta_pos, params.theta_neg)
    if not (is_symmetric(S) and np.isin(values[1:], thetas).all()):
        raise NotVerified("set is not a PDS with the given parameters")
    if eigenvalue == "neg":
        theta = params.theta_neg
    elif eigenvalue == "pos":
        theta = params.theta_pos
    else:
        raise ValueError(f"eigenvalue must be 'pos' or 'neg', got {eigenvalue!r}")
    idx = np.flatnonzero(values == theta)
    return S.with_indices(idx[idx != 0])
