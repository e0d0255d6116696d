"""Finite bounded lattices stored as dense index tables.

Elements are the integers ``0..n-1``; labels only matter for presentation.
Subsets of elements travel around as ``frozenset`` values in the public API and
as integer bitmasks inside the set-heavy algorithms (see :func:`mask`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ELEMENTS = 4096

Table = tuple[tuple[int, ...], ...]


class ValidationError(ValueError):
    """A structure failed one of its defining axioms.

    ``witness`` is the first violating tuple of element indices found by the
    exhaustive scan.
    """

    axiom = "structure"

    def __init__(self, message: str, witness: Sequence = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotAPartialOrder(ValidationError):
    axiom = "partial-order"


class JoinNotLUB(ValidationError):
    axiom = "join"


class MeetNotGLB(ValidationError):
    axiom = "meet"


class NoBoundedStructure(ValidationError):
    axiom = "bounds"


class TooLarge(ValidationError):
    axiom = "size"


def mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def members(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


@dataclass(frozen=True, eq=False)
class Lattice:
    n: int
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    join_table: Table
    meet_table: Table
    bottom: int
    top: int

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[a]`` is the bitmask of elements above ``a``."""
        return tuple(mask(b for b in range(self.n) if self.leq[a][b]) for a in range(self.n))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(mask(b for b in range(self.n) if self.leq[b][a]) for a in range(self.n))

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def order_array(self) -> np.ndarray:
        arr = np.array(self.leq, dtype=bool).reshape(self.n, self.n)
        arr.setflags(write=False)
        return arr

    def label(self, x: int) -> str:
        return self.names[x]

    def index(self, label: str) -> int:
        return self.names.index(label)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(a, b)`` with ``a`` covered by ``b``."""
        edges = []
        for a in range(self.n):
            above = self.up[a] & ~(1 << a)
            for b in members(above):
                between = above & self.down[b] & ~(1 << b)
                if not between:
                    edges.append((a, b))
        return edges

    def __repr__(self) -> str:
        return f"Lattice(n={self.n})"


def _as_bool_matrix(leq, n: int) -> np.ndarray:
    arr = np.asarray(leq, dtype=bool)
    if arr.shape != (n, n):
        raise ValueError(f"order relation must be {n}x{n}, got shape {arr.shape}")
    return arr


def _as_index_table(table, n: int, what: str) -> np.ndarray:
    arr = np.asarray(table)
    if arr.shape != (n, n):
        raise ValueError(f"{what} table must be {n}x{n}, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"{what} table must hold element indices")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"{what} table holds an index outside 0..{n - 1}")
    return arr.astype(np.int64)


def _check_partial_order(P: np.ndarray) -> None:
    n = P.shape[0]
    diag = np.flatnonzero(~P.diagonal())
    if diag.size:
        a = int(diag[0])
        raise NotAPartialOrder(f"not reflexive at {a}", (a, a))
    both = P & P.T & ~np.eye(n, dtype=bool)
    if both.any():
        a, b = (int(v) for v in np.argwhere(both)[0])
        raise NotAPartialOrder(f"antisymmetry fails: {a} <= {b} and {b} <= {a}", (a, b))
    for a in range(n):
        # a <= b and b <= c must give a <= c
        reach = P[P[a]].any(axis=0)
        bad = np.flatnonzero(reach & ~P[a])
        if bad.size:
            c = int(bad[0])
            b = int(np.flatnonzero(P[a] & P[:, c])[0])
            raise NotAPartialOrder(f"transitivity fails: {a} <= {b} <= {c}", (a, b, c))


def _check_bound_table(P: np.ndarray, T: np.ndarray, upper: bool) -> None:
    """Check T[a][b] is the least upper (or greatest lower) bound of a, b."""
    n = P.shape[0]
    R = P if upper else P.T
    err = JoinNotLUB if upper else MeetNotGLB
    kind = "join" if upper else "meet"
    for a in range(n):
        t = T[a]
        is_bound = R[a, t] & R[np.arange(n), t]
        if not is_bound.all():
            b = int(np.flatnonzero(~is_bound)[0])
            raise err(f"{kind}({a},{b}) = {int(t[b])} is not a bound", (a, b))
        bounds = R[a][None, :] & R  # bounds[b, c]: c bounds both a and b
        tight = R[t]  # tight[b, c]: t[b] sits below c (dually above)
        bad = bounds & ~tight
        if bad.any():
            b, c = (int(v) for v in np.argwhere(bad)[0])
            raise err(f"{kind}({a},{b}) = {int(t[b])} is not tight; {c} is a better bound", (a, b))


def validate_lattice(leq, join_table, meet_table, names: Sequence[str] | None = None) -> Lattice:
    """Check a raw order relation plus join/meet tables and freeze them."""
    n = len(leq)
    if n > MAX_ELEMENTS:
        raise TooLarge(f"{n} elements exceeds the limit of {MAX_ELEMENTS}", (n,))
    if n == 0:
        raise NoBoundedStructure("a bounded lattice needs at least one element")
    P = _as_bool_matrix(leq, n)
    J = _as_index_table(join_table, n, "join")
    M = _as_index_table(meet_table, n, "meet")
    _check_partial_order(P)
    bottoms = np.flatnonzero(P.all(axis=1))
    tops = np.flatnonzero(P.all(axis=0))
    if not bottoms.size or not tops.size:
        raise NoBoundedStructure("order has no bottom or no top")
    _check_bound_table(P, J, upper=True)
    _check_bound_table(P, M, upper=False)
    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(x) for x in names)
    if len(names) != n or len(set(names)) != n:
        raise ValueError("element labels must be unique and one per element")
    return Lattice(
        n=n,
        names=names,
        leq=tuple(tuple(bool(v) for v in row) for row in P),
        join_table=tuple(tuple(int(v) for v in row) for row in J),
        meet_table=tuple(tuple(int(v) for v in row) for row in M),
        bottom=int(bottoms[0]),
        top=int(tops[0]),
    )


def lattice_from_order(leq, names: Sequence[str] | None = None) -> Lattice:
    """Derive join and meet tables from an order relation, then validate.

    Raises :class:`JoinNotLUB` / :class:`MeetNotGLB` naming the first pair
    without a least upper (greatest lower) bound.
    """
    n = len(leq)
    if n > MAX_ELEMENTS:
        raise TooLarge(f"{n} elements exceeds the limit of {MAX_ELEMENTS}", (n,))
    P = _as_bool_matrix(leq, n)
    _check_partial_order(P)
    J = np.zeros((n, n), dtype=np.int64)
    M = np.zeros((n, n), dtype=np.int64)
    for upper, T, err in ((True, J, JoinNotLUB), (False, M, MeetNotGLB)):
        R = P if upper else P.T
        for a in range(n):
            for b in range(a, n):
                cand = np.flatnonzero(R[a] & R[b])
                # the least bound is the candidate below every other candidate
                least = [c for c in cand if R[c, cand].all()]
                if not least:
                    kind = "join" if upper else "meet"
                    raise err(f"no {kind} for pair ({a},{b})", (a, b))
                T[a, b] = T[b, a] = least[0]
    return validate_lattice(P, J, M, names)


def big_join(L: Lattice, S: Iterable[int]) -> int:
    acc = L.bottom
    for x in S:
        acc = L.join_table[acc][x]
    return acc


def big_meet(L: Lattice, S: Iterable[int]) -> int:
    acc = L.top
    for x in S:
        acc = L.meet_table[acc][x]
    return acc


def meet_primes(L: Lattice) -> frozenset[int]:
    """Elements p != top such that x meet y <= p forces x <= p or y <= p."""
    P = L.order_array
    M = np.array(L.meet_table)
    out = []
    for p in range(L.n):
        if p == L.top:
            continue
        below = P[:, p]
        bad = P[M, p] & ~(below[:, None] | below[None, :])
        if not bad.any():
            out.append(p)
    return frozenset(out)


def complemented(L: Lattice) -> frozenset[int]:
    out = []
    for x in range(L.n):
        jx, mx = L.join_table[x], L.meet_table[x]
        if any(jx[y] == L.top and mx[y] == L.bottom for y in range(L.n)):
            out.append(x)
    return frozenset(out)


def complements(L: Lattice, x: int) -> list[int]:
    return [y for y in range(L.n) if L.join_table[x][y] == L.top and L.meet_table[x][y] == L.bottom]


def distributivity_counterexample(L: Lattice) -> tuple[int, int, int] | None:
    J = np.array(L.join_table)
    M = np.array(L.meet_table)
    for x in range(L.n):
        lhs = M[x][J]  # x ^ (y v z)
        rhs = J[M[x][:, None], M[x][None, :]]  # (x ^ y) v (x ^ z)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = (int(v) for v in bad[0])
            return (x, y, z)
    return None


def is_distributive(L: Lattice) -> bool:
    return distributivity_counterexample(L) is None


def minimal_in(L: Lattice, S: Iterable[int]) -> frozenset[int]:
    S = list(S)
    return frozenset(p for p in S if not any(q != p and L.leq[q][p] for q in S))


def maximal_in(L: Lattice, S: Iterable[int]) -> frozenset[int]:
    S = list(S)
    return frozenset(p for p in S if not any(q != p and L.leq[p][q] for q in S))


def coatoms(L: Lattice) -> frozenset[int]:
    return maximal_in(L, (x for x in range(L.n) if x != L.top))


def restrict(L: Lattice, elements: Sequence[int]) -> Lattice:
    """The subposet on ``elements`` (in the given order), re-indexed from 0.

    The result must itself be a lattice; its joins are computed in the
    restricted order and need not agree with the joins of ``L``.
    """
    idx = list(elements)
    P = [[L.leq[a][b] for b in idx] for a in idx]
    return lattice_from_order(P, [L.names[a] for a in idx])
