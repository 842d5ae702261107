"""JSON persistence of constructed sets, and Cayley graph export."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .cyclotomy import IndexSet, shift_Xk, singer_set
from .errors import ModulusMismatch, ParseError
from .finite_field import FieldTower
from .pds import GroupSet, PdsParams, construct_D, denniston_params, singer_params, x_params
from .quadform import ElementSet, construct_X_quadform

SCHEMA_VERSION = 1
KINDS = ("X", "X_k", "D", "dual", "singer")
AMBIENTS = ("field", "group", "cyclic")

_KEY_ORDER = (
    "schema_version", "p", "m", "modulus", "kind", "ambient", "shift",
    "params", "provenance", "elements",
)


@dataclass
class PdsDocument:
    p: int
    m: int
    modulus: list[int]
    kind: str
    ambient: str
    params: list[int]
    elements: list
    provenance: str
    shift: int | None = None
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        """Deterministic text: one key per line, one element per line."""
        d = self.__dict__
        lines = []
        for key in _KEY_ORDER:
            if key == "elements":
                continue
            if key == "shift" and self.shift is None:
                continue
            lines.append(f"  {json.dumps(key)}: {json.dumps(d[key], separators=(',', ':'))},")
        elems = [json.dumps(e, separators=(",", ":")) for e in self.elements]
        if elems:
            body = ",\n".join(f"    {e}" for e in elems)
            lines.append(f'  "elements": [\n{body}\n  ]')
        else:
            lines.append('  "elements": []')
        return "{\n" + "\n".join(lines) + "\n}\n"

    @classmethod
    def from_json(cls, text: str) -> PdsDocument:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ParseError("document must be a JSON object")
        missing = [k for k in _KEY_ORDER if k not in raw and k != "shift"]
        if missing:
            raise ParseError(f"missing fields: {', '.join(missing)}")
        if raw["schema_version"] != SCHEMA_VERSION:
            raise ParseError(f"unsupported schema_version {raw['schema_version']}")
        if raw["kind"] not in KINDS:
            raise ParseError(f"unknown kind {raw['kind']!r}")
        if raw["ambient"] not in AMBIENTS:
            raise ParseError(f"unknown ambient {raw['ambient']!r}")
        for key in ("p", "m"):
            if not isinstance(raw[key], int):
                raise ParseError(f"{key} must be an integer")
        params = raw["params"]
        if not (isinstance(params, list) and len(params) == 4 and all(isinstance(x, int) for x in params)):
            raise ParseError("params must be a list of four integers")
        if not isinstance(raw["elements"], list):
            raise ParseError("elements must be a list")
        return cls(
            p=raw["p"], m=raw["m"], modulus=list(raw["modulus"]), kind=raw["kind"],
            ambient=raw["ambient"], params=params, elements=raw["elements"],
            provenance=str(raw["provenance"]), shift=raw.get("shift"),
            schema_version=raw["schema_version"],
        )

    @property
    def pds_params(self) -> PdsParams:
        return PdsParams(*self.params)


# -- sets <-> documents ----------------------------------------------------------

def set_elements(S) -> list:
    if isinstance(S, IndexSet):
        return list(S.indices)
    return [S.element_label(int(i)) for i in S.indices]


def ambient_of(S) -> str:
    if isinstance(S, IndexSet):
        return "cyclic"
    return "group" if isinstance(S, GroupSet) else "field"


def make_document(tower: FieldTower, kind: str, S, params, provenance: str,
                  shift: int | None = None) -> PdsDocument:
    return PdsDocument(
        p=tower.p, m=tower.m, modulus=list(tower.modulus), kind=kind,
        ambient=ambient_of(S), params=list(params), elements=set_elements(S),
        provenance=provenance, shift=shift,
    )


def construct(tower: FieldTower, kind: str, shift: int | None = None):
    """(set, params) for a construct command."""
    p, m = tower.p, tower.m
    if kind == "X":
        return construct_X_quadform(tower), x_params(p, m)
    if kind == "X_k":
        if shift is None:
            raise ValueError("kind X_k needs a shift k")
        return shift_Xk(tower, shift), x_params(p, m)
    if kind == "D":
        return construct_D(tower), denniston_params(p, m, 1)
    if kind == "singer":
        v, k, lam = singer_params(p, m)
        return singer_set(tower), (v, k, lam, lam)
    raise ValueError(f"cannot construct kind {kind!r}")


def expected_params(doc: PdsDocument) -> tuple[int, int, int, int]:
    """Parameters a document of this kind must carry."""
    if doc.kind in ("X", "X_k"):
        return x_params(doc.p, doc.m).as_tuple()
    if doc.kind == "D":
        return denniston_params(doc.p, doc.m, 1).as_tuple()
    if doc.kind == "singer":
        v, k, lam = singer_params(doc.p, doc.m)
        return (v, k, lam, lam)
    return tuple(doc.params)


def check_modulus(doc: PdsDocument, tower: FieldTower) -> None:
    if tuple(doc.modulus) != tower.modulus:
        raise ModulusMismatch(
            f"document modulus {doc.modulus} differs from {list(tower.modulus)}"
        )


def _digits(vec, length: int, p: int, what: str) -> list[int]:
    if not (isinstance(vec, list) and len(vec) == length
            and all(isinstance(c, int) and 0 <= c < p for c in vec)):
        raise ParseError(f"malformed {what}: {vec!r}")
    return vec


def document_set(doc: PdsDocument, tower: FieldTower):
    """Rebuild the set a document describes (duplicates collapse)."""
    check_modulus(doc, tower)
    p, m = tower.p, tower.m
    if doc.ambient == "cyclic":
        v = doc.params[0]
        if not all(isinstance(i, int) and 0 <= i < v for i in doc.elements):
            raise ParseError("cyclic elements must be residues modulo v")
        return IndexSet(v, tuple(doc.elements))
    if doc.ambient == "field":
        rows = [_digits(e, 2 * m, p, "field element") for e in doc.elements]
        idx = tower.from_digits(np.array(rows, dtype=np.int64).reshape(-1, 2 * m))
        return ElementSet(tower, idx)
    idx = []
    for e in doc.elements:
        if not (isinstance(e, list) and len(e) == 2):
            raise ParseError(f"malformed group element: {e!r}")
        a = _digits(e[0], m, p, "subfield coordinates")
        b = _digits(e[1], 2 * m, p, "field element")
        s = sum(c * p ** (m - 1 - j) for j, c in enumerate(a))
        idx.append(s * tower.q + int(tower.from_digits(b)))
    return GroupSet(tower, np.array(idx, dtype=np.int64))


# -- graph export ----------------------------------------------------------------

def _graph6_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph6 supports at most 2^36 - 1 vertices")


def graph6_bytes(n: int, edges: np.ndarray) -> bytes:
    """graph6 encoding (with trailing newline) of a simple undirected graph.

    Bits are the upper triangle taken column by column: x(0,1), x(0,2),
    x(1,2), x(0,3), ... packed big-endian into 6-bit groups.
    """
    total = n * (n - 1) // 2
    bits = np.zeros(total + (-total) % 6, dtype=np.uint8)
    if len(edges):
        e = np.sort(np.asarray(edges, dtype=np.int64), axis=1)
        i, j = e[:, 0], e[:, 1]
        bits[j * (j - 1) // 2 + i] = 1
    groups = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.int64) + 63
    return _graph6_size(n) + groups.astype(np.uint8).tobytes() + b"\n"


def edgelist_text(edges: np.ndarray) -> str:
    return "".join(f"{int(u)} {int(w)}\n" for u, w in edges)
