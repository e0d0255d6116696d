"""JSON instance documents.

A document names its elements, gives the order either as a list of
``[lower, upper]`` pairs (closed reflexively and transitively) or as a full
matrix of JSON booleans (taken verbatim), and the product as an ``n x n``
index matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import Quantale, validate_quantale
from .lattice import NotAPartialOrder, lattice_from_order


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class QuantaleDocument:
    name: str
    elements: tuple[str, ...]
    leq: tuple
    mul: tuple[tuple[int, ...], ...]
    provenance: str | None = None
    leq_is_matrix: bool = False

    def order_matrix(self) -> np.ndarray:
        n = len(self.elements)
        if self.leq_is_matrix:
            return np.array(self.leq, dtype=bool)
        P = np.eye(n, dtype=bool)
        for a, b in self.leq:
            P[a, b] = True
        for k in range(n):
            P |= P[:, [k]] & P[[k], :]
        both = P & P.T & ~np.eye(n, dtype=bool)
        if both.any():
            a, b = (int(v) for v in np.argwhere(both)[0])
            raise NotAPartialOrder(f"order pairs form a cycle through {self.elements[a]} and {self.elements[b]}", (a, b))
        return P

    def to_quantale(self) -> Quantale:
        lat = lattice_from_order(self.order_matrix(), self.elements)
        return validate_quantale(lat, self.mul)


def _ref(value, index: dict[str, int], n: int, field: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"expected an element label or index, got {value!r}", field=field)
    if isinstance(value, int):
        if not 0 <= value < n:
            raise ParseError(f"index {value} outside 0..{n - 1}", field=field)
        return value
    if isinstance(value, str) and value in index:
        return index[value]
    raise ParseError(f"unknown element {value!r}", field=field)


def parse_document(text: str) -> QuantaleDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    for key in ("elements", "leq", "mul"):
        if key not in raw:
            raise ParseError("missing", field=key)
    elements = raw["elements"]
    if not isinstance(elements, list) or not elements or not all(isinstance(e, str) for e in elements):
        raise ParseError("must be a non-empty list of strings", field="elements")
    if len(set(elements)) != len(elements):
        raise ParseError("labels must be unique", field="elements")
    n = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    leq_raw = raw["leq"]
    if not isinstance(leq_raw, list):
        raise ParseError("must be a list", field="leq")
    # a matrix holds JSON booleans only, so it never collides with index pairs
    is_matrix = len(leq_raw) == n and all(
        isinstance(row, list) and len(row) == n and all(isinstance(v, bool) for v in row) for row in leq_raw
    )
    if is_matrix:
        leq = tuple(tuple(bool(v) for v in row) for row in leq_raw)
    else:
        pairs = []
        for i, pair in enumerate(leq_raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError("each order entry must be a [lower, upper] pair", field=f"leq[{i}]")
            pairs.append((_ref(pair[0], index, n, f"leq[{i}][0]"), _ref(pair[1], index, n, f"leq[{i}][1]")))
        leq = tuple(pairs)
    mul_raw = raw["mul"]
    if not isinstance(mul_raw, list) or len(mul_raw) != n:
        raise ParseError(f"must be an {n}x{n} matrix", field="mul")
    mul = []
    for i, row in enumerate(mul_raw):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row must have {n} entries", field=f"mul[{i}]")
        mul.append(tuple(_ref(v, index, n, f"mul[{i}][{j}]") for j, v in enumerate(row)))
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise ParseError("must be a string", field="name")
    prov = raw.get("provenance")
    if prov is not None and not isinstance(prov, str):
        raise ParseError("must be a string", field="provenance")
    return QuantaleDocument(name, tuple(elements), leq, tuple(mul), prov, is_matrix)


def load_document(path: str) -> QuantaleDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def to_document(Q: Quantale, name: str = "", provenance: str | None = None) -> dict:
    """Serialize with the order as Hasse cover pairs, labels throughout except mul."""
    doc = {
        "name": name,
        "elements": list(Q.names),
        "leq": [[Q.label(a), Q.label(b)] for a, b in sorted(Q.lat.covers())],
        "mul": [list(row) for row in Q.mul],
    }
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
