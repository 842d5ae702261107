"""The norm form Q(x) = x^(p^m+1) on GF(p^2m) and the quadric it cuts out.

Q maps GF(p^2m) onto GF(p^m); composing with the trace gives a GF(p)-valued
form Q0 = Tr o Q on the 2m-dimensional space GF(p)^2m.  The nonzero zeros of
Q0 form a partial difference set of negative Latin square type.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finite_field import FieldElem, FieldTower, frobenius, trace_m1


@dataclass(frozen=True, eq=False)
class ElementSet:
    """A set of elements of GF(p^2m), stored as sorted indices.

    Sorted index order is the lexicographic order on coefficient vectors.
    The additive group is Z_p^2m with identity index 0.
    """

    tower: FieldTower
    indices: np.ndarray
    ambient: str = "big_field"

    def __post_init__(self):
        idx = np.unique(np.asarray(self.indices, dtype=np.int64))
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_elements(cls, tower: FieldTower, elems) -> ElementSet:
        return cls(tower, np.array([e.index for e in elems], dtype=np.int64))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return (FieldElem(self.tower, int(i)) for i in self.indices)

    def __contains__(self, x: FieldElem):
        i = np.searchsorted(self.indices, x.index)
        return i < len(self.indices) and self.indices[i] == x.index

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.tower is other.tower and np.array_equal(self.indices, other.indices)

    def __repr__(self):
        return f"ElementSet(p={self.tower.p}, m={self.tower.m}, size={len(self)})"

    # group-protocol used by the verifiers
    @property
    def p(self) -> int:
        return self.tower.p

    @property
    def order(self) -> int:
        return self.tower.q

    @property
    def ndigits(self) -> int:
        return self.tower.n

    def with_indices(self, indices) -> ElementSet:
        return ElementSet(self.tower, indices, self.ambient)

    def digit_matrix(self) -> np.ndarray:
        return self.tower.to_digits(self.indices)

    def character_matrix(self) -> np.ndarray:
        return self.tower.big_character_matrix

    def negate(self) -> ElementSet:
        return self.with_indices(self.tower.neg_codes(self.indices))

    def scale(self, c: FieldElem) -> ElementSet:
        """The set {c x : x in self}."""
        return self.with_indices(self.tower.mul_codes(self.indices, c.index))

    def element_label(self, index: int) -> list[int]:
        return [int(d) for d in self.tower.to_digits(index)]


def q_eval(x: FieldElem) -> FieldElem:
    """Q(x) = x^(p^m + 1), an element of GF(p^m)."""
    return x ** (x.tower.sub_order + 1)


def r_eval(u: FieldElem, v: FieldElem) -> FieldElem:
    """Polarisation of Q: R(u, v) = u^(p^m) v + u v^(p^m)."""
    m = u.tower.m
    return frobenius(u, m) * v + u * frobenius(v, m)


def q0_eval(x: FieldElem) -> int:
    return trace_m1(q_eval(x))


def q0_table(tower: FieldTower) -> np.ndarray:
    """Q0 evaluated at every index of GF(p^2m)."""
    codes = np.arange(tower.q, dtype=np.int64)
    return tower.tracem_table[tower.pow_codes(codes, tower.sub_order + 1)]


def rank_mod_p(M, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if A[r, c]), None)
        if pivot is None:
            continue
        A[[rank, pivot]] = A[[pivot, rank]]
        A[rank] = (A[rank] * pow(int(A[rank, c]), -1, p)) % p
        for r in range(rows):
            if r != rank and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[rank]) % p
        rank += 1
    return rank


def rank_over_field(M: list[list[FieldElem]]) -> int:
    """Rank of a matrix with entries in GF(p^2m) (or any subfield)."""
    A = [row[:] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if A[r][c]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        inv = A[rank][c] ** -1
        A[rank] = [a * inv for a in A[rank]]
        for r in range(rows):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def gram_matrix_r(tower: FieldTower) -> list[list[FieldElem]]:
    """Gram matrix of R over GF(p^m) in the basis {1, alpha}."""
    basis = [tower.one, tower.alpha]
    return [[r_eval(u, v) for v in basis] for u in basis]


def gram_matrix_r0(tower: FieldTower) -> np.ndarray:
    """Gram matrix of R0 = Tr o R over GF(p) in the power basis alpha^i."""
    basis = [tower.alpha_power(i) for i in range(tower.n)]
    return np.array([[trace_m1(r_eval(u, v)) for v in basis] for u in basis], dtype=np.int64)


def nondegeneracy_rank(tower: FieldTower, form: str = "R0") -> int:
    """Gram rank of R over GF(p^m) (``form="R"``) or R0 over GF(p) (``"R0"``).

    Full rank (2 resp. 2m) means the form is nondegenerate.
    """
    if form == "R":
        return rank_over_field(gram_matrix_r(tower))
    if form == "R0":
        return rank_mod_p(gram_matrix_r0(tower), tower.p)
    raise ValueError(f"unknown form {form!r}")


def construct_X_quadform(tower: FieldTower) -> ElementSet:
    """Nonzero zeros of Q0, i.e. {x != 0 : Tr(x^(p^m+1)) = 0}."""
    q0 = q0_table(tower)
    idx = np.flatnonzero(q0 == 0)
    return ElementSet(tower, idx[idx != 0])
