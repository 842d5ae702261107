"""Exact certification of partial difference sets and difference sets.

Three independent oracles are provided:

* brute force: tally all |S|^2 ordered differences and compare against
  (lambda, mu) element by element;
* characters: every nonprincipal character sum must be one of the two
  eigenvalues.  Sums are kept as exact elements of Z[zeta_p] (counts of each
  exponent), never as floating point numbers;
* the Cayley graph adjacency matrix must satisfy
  A^2 = k I + lambda A + mu (J - I - A).

The verifiers accept any set object exposing the small group protocol shared
by :class:`~denniston.quadform.ElementSet` and :class:`~denniston.pds.GroupSet`:
``p``, ``order``, ``ndigits``, ``indices`` (sorted canonical indices, with the
identity at index 0), ``digit_matrix()``, ``character_matrix()`` and
``element_label()``.  The ambient group is always Z_p^ndigits, with the
index being the base-p numeral of the digit vector.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ContainsIdentity, NotSymmetricSet, SizeGuardExceeded, SizeMismatch

MATRIX_GUARD = 2**12
_PAIR_BUDGET = 1 << 22


class NonIntegral:
    """Marker for a character sum that is not a rational integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NonIntegral"


NONINTEGRAL = NonIntegral()


@dataclass(frozen=True)
class CycIntSum:
    """sum_j counts[j] * zeta_p^j as an exact cyclotomic integer."""

    counts: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.counts)

    def reduce(self) -> int | NonIntegral:
        # 1 + zeta + ... + zeta^(p-1) = 0 is the only relation, so the sum is
        # rational iff the counts on exponents 1..p-1 agree
        rest = self.counts[1:]
        if any(c != rest[0] for c in rest):
            return NONINTEGRAL
        return self.counts[0] - rest[0]


@dataclass
class VerificationReport:
    params: tuple[int, ...]
    method: str
    passed: bool
    lambda_hist: dict[int, int] = field(default_factory=dict)
    mu_hist: dict[int, int] = field(default_factory=dict)
    char_values: dict[int, int] = field(default_factory=dict)
    nonintegral: int = 0
    failure: str | None = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "method": self.method,
            "verdict": "pass" if self.passed else "fail",
            "lambda_hist": {str(k): v for k, v in sorted(self.lambda_hist.items())},
            "mu_hist": {str(k): v for k, v in sorted(self.mu_hist.items())},
            "char_values": {str(k): v for k, v in sorted(self.char_values.items())},
            "nonintegral": self.nonintegral,
            "failure": self.failure,
            "elapsed": round(self.elapsed, 4),
        }

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"[{verdict}] {self.method} params={self.params}"
        if self.lambda_hist or self.mu_hist:
            line += f" lambda_hist={dict(sorted(self.lambda_hist.items()))}"
            line += f" mu_hist={dict(sorted(self.mu_hist.items()))}"
        if self.char_values or self.nonintegral:
            line += f" char_values={dict(sorted(self.char_values.items()))}"
            if self.nonintegral:
                line += f" nonintegral={self.nonintegral}"
        if self.failure:
            line += f" first_failure={self.failure}"
        return line


def _params_tuple(params) -> tuple[int, int, int, int]:
    return (params.v, params.k, params.lam, params.mu)


# -- index arithmetic in Z_p^n ---------------------------------------------------

class ZpArithmetic:
    """Add and subtract canonical indices of Z_p^n without unpacking digits.

    The digits are cut into blocks of at most ``w`` digits; each block is
    handled by a p^w x p^w lookup table.
    """

    def __init__(self, p: int, ndigits: int, max_block: int = 1024):
        self.p = p
        self.ndigits = ndigits
        w = 1
        while p ** (w + 1) <= max_block and w < ndigits:
            w += 1
        self.blocks = []  # (weight, width) from least significant upward
        pos = 0
        while pos < ndigits:
            width = min(w, ndigits - pos)
            self.blocks.append((p**pos, width))
            pos += width

    @staticmethod
    @lru_cache(maxsize=None)
    def _tables(p: int, width: int) -> tuple[np.ndarray, np.ndarray]:
        size = p**width
        wts = np.array([p**j for j in range(width)], dtype=np.int64)
        dig = (np.arange(size, dtype=np.int64)[:, None] // wts) % p
        sub = ((dig[:, None, :] - dig[None, :, :]) % p) @ wts
        add = ((dig[:, None, :] + dig[None, :, :]) % p) @ wts
        sub.setflags(write=False)
        add.setflags(write=False)
        return sub, add

    def split(self, idx) -> list[np.ndarray]:
        idx = np.asarray(idx, dtype=np.int64)
        return [(idx // wt) % self.p**width for wt, width in self.blocks]

    def combine(self, xb, yb, op: str = "sub") -> np.ndarray:
        out = None
        for (wt, width), x, y in zip(self.blocks, xb, yb):
            table = self._tables(self.p, width)[0 if op == "sub" else 1]
            part = table[x, y] * wt
            out = part if out is None else out + part
        return out

    def sub(self, x, y) -> np.ndarray:
        return self.combine(self.split(x), self.split(y), "sub")

    def add(self, x, y) -> np.ndarray:
        return self.combine(self.split(x), self.split(y), "add")

    def neg(self, x) -> np.ndarray:
        return self.sub(np.zeros_like(np.asarray(x)), x)


def arithmetic_for(S) -> ZpArithmetic:
    return ZpArithmetic(S.p, S.ndigits)


def is_symmetric(S) -> bool:
    neg = arithmetic_for(S).neg(S.indices)
    return np.array_equal(np.sort(neg), S.indices)


def _membership(S) -> np.ndarray:
    mask = np.zeros(S.order, dtype=bool)
    mask[S.indices] = True
    return mask


# -- brute force -------------------------------------------------------------------

def difference_counts(S) -> np.ndarray:
    """counts[g] = #{(x, y) in S^2 : x - y = g} for every group index g."""
    ar = arithmetic_for(S)
    k = len(S.indices)
    counts = np.zeros(S.order, dtype=np.int64)
    if k == 0:
        return counts
    blocks = ar.split(S.indices)
    chunk = max(1, _PAIR_BUDGET // k)
    for start in range(0, k, chunk):
        rows = [b[start:start + chunk, None] for b in blocks]
        cols = [b[None, :] for b in blocks]
        diff = ar.combine(rows, cols, "sub")
        counts += np.bincount(diff.ravel(), minlength=S.order)
    return counts


def _check_size(S, k: int) -> None:
    if len(S.indices) != k:
        raise SizeMismatch(f"set has {len(S.indices)} elements, expected {k}")


def _check_identity(S) -> None:
    if len(S.indices) and S.indices[0] == 0:
        raise ContainsIdentity("set contains the group identity")


def _hist(values: np.ndarray) -> dict[int, int]:
    vals, cnt = np.unique(values, return_counts=True)
    return {int(a): int(b) for a, b in zip(vals, cnt)}


def verify_pds_bruteforce(S, expected) -> VerificationReport:
    """Check the PDS definition directly by counting all ordered differences."""
    t0 = time.perf_counter()
    v, k, lam, mu = _params_tuple(expected)
    _check_size(S, k)
    _check_identity(S)
    if S.order != v:
        raise SizeMismatch(f"group has order {S.order}, expected {v}")
    counts = difference_counts(S)
    inside = _membership(S)
    inside_counts = counts[inside]
    outside = ~inside
    outside[0] = False
    outside_counts = counts[outside]
    report = VerificationReport(
        params=(v, k, lam, mu),
        method="brute",
        passed=bool(np.all(inside_counts == lam) and np.all(outside_counts == mu)),
        lambda_hist=_hist(inside_counts),
        mu_hist=_hist(outside_counts),
    )
    if not report.passed:
        bad = np.flatnonzero((inside & (counts != lam)) | (outside & (counts != mu)))
        g = int(bad[0])
        report.failure = f"element {S.element_label(g)} occurs {int(counts[g])} times as a difference"
    report.elapsed = time.perf_counter() - t0
    return report


# -- characters --------------------------------------------------------------------

def character_functional(S, chi) -> np.ndarray:
    """Linear functional L with chi(g) = zeta^(L . digits(g))."""
    if isinstance(chi, (int, np.integer)):
        row = int(chi)
    elif hasattr(S, "character_index"):
        row = S.character_index(chi)
    else:
        raise TypeError(f"cannot interpret character {chi!r}")
    return np.asarray(S.character_matrix()[row], dtype=np.int64)


def char_sum(S, chi) -> CycIntSum:
    """Exact value of the character ``chi`` summed over ``S``.

    ``chi`` is a character index (canonical index of the dual element) or
    whatever the set's ``character_index`` accepts: a field element ``t``
    for field sets, a pair ``(s, t)`` for group sets.
    """
    L = character_functional(S, chi)
    exps = (S.digit_matrix() @ L) % S.p
    return CycIntSum(tuple(int(c) for c in np.bincount(exps, minlength=S.p)))


def character_counts(S) -> np.ndarray:
    """Exponent counts for every character: array of shape (order, p)."""
    p = S.p
    D = np.ascontiguousarray(S.digit_matrix().T.astype(np.int32))
    C = S.character_matrix()
    k = D.shape[1]
    out = np.empty((C.shape[0], p), dtype=np.int64)
    chunk = max(1, _PAIR_BUDGET // max(k, 1))
    for start in range(0, C.shape[0], chunk):
        block = C[start:start + chunk].astype(np.int32)
        E = (block @ D) % p
        rows = E.shape[0]
        flat = (np.arange(rows, dtype=np.int64)[:, None] * p + E).ravel()
        out[start:start + rows] = np.bincount(flat, minlength=rows * p).reshape(rows, p)
    return out


def character_spectrum(S) -> tuple[np.ndarray, np.ndarray]:
    """Reduced sums of all characters over ``S``, in character-index order.

    Returns ``(values, integral)``; ``values[i]`` is meaningful only where
    ``integral[i]`` is true.
    """
    counts = character_counts(S)
    integral = np.all(counts[:, 1:] == counts[:, 1:2], axis=1)
    values = counts[:, 0] - counts[:, 1]
    return values, integral


def verify_pds_character(S, expected) -> VerificationReport:
    """Every nonprincipal character sum must be theta_pos or theta_neg."""
    t0 = time.perf_counter()
    v, k, lam, mu = _params_tuple(expected)
    _check_size(S, k)
    _check_identity(S)
    if S.order != v:
        raise SizeMismatch(f"group has order {S.order}, expected {v}")
    values, integral = character_spectrum(S)
    values, integral = values[1:], integral[1:]
    thetas = (expected.theta_pos, expected.theta_neg)
    good = integral & np.isin(values, thetas)
    symmetric = is_symmetric(S)
    report = VerificationReport(
        params=(v, k, lam, mu),
        method="character",
        passed=bool(symmetric and good.all()),
        char_values=_hist(values[integral]),
        nonintegral=int(np.count_nonzero(~integral)),
    )
    if not symmetric:
        report.failure = "set is not closed under negation"
    elif not report.passed:
        i = int(np.flatnonzero(~good)[0]) + 1
        shown = int(values[i - 1]) if integral[i - 1] else "non-integral"
        report.failure = f"character {S.element_label(i)} sums to {shown}"
    report.elapsed = time.perf_counter() - t0
    return report


def verify_pds(S, expected, method: str = "both") -> VerificationReport:
    """Run one or both PDS oracles; with ``"both"`` the verdicts are combined."""
    if method == "brute":
        return verify_pds_bruteforce(S, expected)
    if method == "character":
        return verify_pds_character(S, expected)
    if method != "both":
        raise ValueError(f"unknown method {method!r}")
    a = verify_pds_bruteforce(S, expected)
    b = verify_pds_character(S, expected)
    return VerificationReport(
        params=a.params,
        method="both",
        passed=a.passed and b.passed,
        lambda_hist=a.lambda_hist,
        mu_hist=a.mu_hist,
        char_values=b.char_values,
        nonintegral=b.nonintegral,
        failure=a.failure or b.failure,
        elapsed=a.elapsed + b.elapsed,
    )


# -- difference sets -------------------------------------------------------------

def verify_difference_set(D, expected: tuple[int, int, int]) -> VerificationReport:
    """Every nonzero residue mod v must arise exactly lambda times as a difference."""
    t0 = time.perf_counter()
    v, k, lam = expected
    idx = np.array(sorted(set(int(i) for i in D)), dtype=np.int64)
    if len(idx) != k:
        raise SizeMismatch(f"set has {len(idx)} elements, expected {k}")
    if np.any((idx < 0) | (idx >= v)):
        raise ValueError(f"indices must lie in [0, {v})")
    diffs = ((idx[:, None] - idx[None, :]) % v).ravel()
    counts = np.bincount(diffs, minlength=v)[1:]
    report = VerificationReport(
        params=(v, k, lam),
        method="difference_set",
        passed=bool(np.all(counts == lam)),
        lambda_hist=_hist(counts),
    )
    if not report.passed:
        g = int(np.flatnonzero(counts != lam)[0]) + 1
        report.failure = f"residue {g} occurs {int(counts[g - 1])} times"
    report.elapsed = time.perf_counter() - t0
    return report


# -- Cayley graph ----------------------------------------------------------------

def cayley_adjacency(S, max_vertices: int = MATRIX_GUARD) -> np.ndarray:
    """Adjacency matrix with x ~ y iff x - y in S, vertices in index order."""
    v = S.order
    if v > max_vertices:
        raise SizeGuardExceeded(f"{v} vertices exceeds the matrix guard {max_vertices}")
    if not is_symmetric(S):
        raise NotSymmetricSet("S != -S, so the Cayley graph is directed")
    ar = arithmetic_for(S)
    verts = np.arange(v, dtype=np.int64)
    diff = ar.sub(verts[:, None], verts[None, :])
    return _membership(S)[diff].astype(np.int64)


def cayley_edges(S, max_vertices: int = MATRIX_GUARD) -> np.ndarray:
    """Sorted edge list (u, w), u < w, of the undirected Cayley graph."""
    v = S.order
    if v > max_vertices:
        raise SizeGuardExceeded(f"{v} vertices exceeds the export guard {max_vertices}")
    if len(S.indices) == 0:
        raise SizeMismatch("empty connection set")
    if not is_symmetric(S):
        raise NotSymmetricSet("S != -S, so the Cayley graph is directed")
    ar = arithmetic_for(S)
    verts = np.arange(v, dtype=np.int64)
    nbrs = ar.add(verts[:, None], S.indices[None, :])
    u = np.broadcast_to(verts[:, None], nbrs.shape)
    keep = u < nbrs
    edges = np.stack([u[keep], nbrs[keep]], axis=1)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def verify_srg_matrix(S, expected, max_vertices: int = MATRIX_GUARD) -> VerificationReport:
    """Check A^2 = k I + lambda A + mu (J - I - A) entrywise over the integers."""
    t0 = time.perf_counter()
    v, k, lam, mu = _params_tuple(expected)
    _check_size(S, k)
    _check_identity(S)
    A = cayley_adjacency(S, max_vertices)
    A2 = A @ A
    I = np.eye(v, dtype=np.int64)
    target = k * I + lam * A + mu * (1 - I - A)
    ok = np.array_equal(A2, target)
    off = ~I.astype(bool)
    report = VerificationReport(
        params=(v, k, lam, mu),
        method="matrix",
        passed=bool(ok),
        lambda_hist=_hist(A2[(A == 1) & off]),
        mu_hist=_hist(A2[(A == 0) & off]),
    )
    if not ok:
        bad = np.argwhere(A2 != target)[0]
        report.failure = f"entry {tuple(int(b) for b in bad)} is {int(A2[tuple(bad)])}"
    report.elapsed = time.perf_counter() - t0
    return report
