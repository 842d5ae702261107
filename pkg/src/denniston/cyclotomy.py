"""Cyclotomic classes of GF(p^2m) and the trace-zero Singer difference set.

With e = (p^m - 1)/(p - 1), the quadric PDS X is the union of the order-e
classes C_j (j in D), where D indexes the trace-zero hyperplane of GF(p^m)
modulo GF(p)^*.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, OrderDoesNotDivide, ZeroHasNoClass
from .finite_field import FieldElem, FieldTower
from .quadform import ElementSet


@dataclass(frozen=True)
class CycClass:
    """C_i^{e,n} = alpha^i <alpha^e>."""

    e: int
    i: int
    n: int

    def size(self, p: int) -> int:
        return (p**self.n - 1) // self.e


@dataclass(frozen=True)
class IndexSet:
    modulus: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted({int(i) % self.modulus for i in self.indices}))
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def shift(self, k: int) -> IndexSet:
        return IndexSet(self.modulus, tuple(i + k for i in self.indices))


def singer_order(tower: FieldTower) -> int:
    """e = (p^m - 1)/(p - 1)."""
    return (tower.sub_order - 1) // (tower.p - 1)


def _check_order(tower: FieldTower, e: int) -> None:
    if e <= 0 or (tower.q - 1) % e:
        raise OrderDoesNotDivide(f"{e} does not divide {tower.q - 1}")


def class_exponents(tower: FieldTower, e: int, i: int) -> np.ndarray:
    _check_order(tower, e)
    f = (tower.q - 1) // e
    return i + e * np.arange(f, dtype=np.int64)


def class_elements(tower: FieldTower, c: CycClass) -> ElementSet:
    if c.n != tower.n:
        raise ValueError(f"class tagged for GF(p^{c.n}) but tower is GF(p^{tower.n})")
    _check_order(tower, c.e)
    if not 0 <= c.i < c.e:
        raise IndexOutOfRange(f"class index {c.i} not in [0, {c.e})")
    return ElementSet(tower, tower.exp[class_exponents(tower, c.e, c.i)])


def class_of(x: FieldElem, e: int) -> CycClass:
    tower = x.tower
    _check_order(tower, e)
    if x.index == 0:
        raise ZeroHasNoClass("zero lies in no cyclotomic class")
    return CycClass(e, int(tower.log[x.index]) % e, tower.n)


def union_of_classes(tower: FieldTower, e: int, indices) -> ElementSet:
    parts = [class_exponents(tower, e, int(i) % e) for i in indices]
    exps = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    return ElementSet(tower, tower.exp[exps])


def singer_set(tower: FieldTower) -> IndexSet:
    """{i in [0, e) : Tr_{m/1}(omega^i) = 0}."""
    e = singer_order(tower)
    step = tower.sub_order + 1  # omega = alpha^(p^m + 1)
    codes = tower.exp[(np.arange(e, dtype=np.int64) * step) % (tower.q - 1)]
    traces = tower.tracem_table[codes]
    return IndexSet(e, tuple(int(i) for i in np.flatnonzero(traces == 0)))


def trace_zero_T(tower: FieldTower) -> ElementSet:
    """Nonzero elements of GF(p^m) with trace zero, found by filtering."""
    codes = tower.subfield_codes
    keep = (tower.tracem_table[codes] == 0) & (codes != 0)
    return ElementSet(tower, codes[keep])


def trace_zero_T_from_singer(tower: FieldTower, D: IndexSet | None = None) -> ElementSet:
    """The same set rebuilt as the union of omega^j <omega^e> over j in D."""
    D = singer_set(tower) if D is None else D
    e = D.modulus
    step = tower.sub_order + 1
    exps = [((j + e * t) * step) % (tower.q - 1) for j in D for t in range(tower.p - 1)]
    return ElementSet(tower, tower.exp[np.array(exps, dtype=np.int64)])


def construct_X_cyclo(tower: FieldTower) -> ElementSet:
    """Union of the order-e classes of GF(p^2m) indexed by the Singer set."""
    D = singer_set(tower)
    return union_of_classes(tower, D.modulus, D)


def shift_Xk(tower: FieldTower, k: int) -> ElementSet:
    """X_k: union of order-e classes indexed by (-k) + D."""
    e = singer_order(tower)
    if not 0 <= k < e:
        raise IndexOutOfRange(f"shift {k} not in [0, {e})")
    return union_of_classes(tower, e, singer_set(tower).shift(-k))


def preimage_check(tower: FieldTower, i: int) -> bool:
    """Whether {x : Q(x) = omega^i} is exactly the class C_i^{p^m-1}."""
    if not 0 <= i <= tower.sub_order - 2:
        raise IndexOutOfRange(f"index {i} not in [0, {tower.sub_order - 2}]")
    codes = np.arange(tower.q, dtype=np.int64)
    qvals = tower.pow_codes(codes, tower.sub_order + 1)
    target = (tower.omega ** i).index
    preimage = ElementSet(tower, codes[qvals == target])
    return preimage == class_elements(tower, CycClass(tower.sub_order - 1, i, tower.n))
