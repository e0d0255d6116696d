"""Commutative integral quantales on a finite lattice.

Everything is table lookup: the multiplication is an ``n x n`` table of
element indices over a validated :class:`~quantales.lattice.Lattice`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .lattice import (
    Lattice,
    Table,
    ValidationError,
    lattice_from_order,
)


class NotCommutative(ValidationError):
    axiom = "commutative"


class NotAssociative(ValidationError):
    axiom = "associative"


class NotIntegral(ValidationError):
    axiom = "integral"


class NotJoinDistributive(ValidationError):
    axiom = "join-distributive"


class InvalidExponent(ValueError):
    pass


class MorphismViolation(AssertionError):
    """An engine-built map failed to be a quantale morphism."""


@dataclass(frozen=True, eq=False)
class Quantale:
    lat: Lattice
    mul: Table

    @property
    def n(self) -> int:
        return self.lat.n

    @property
    def bottom(self) -> int:
        return self.lat.bottom

    @property
    def top(self) -> int:
        return self.lat.top

    @property
    def names(self) -> tuple[str, ...]:
        return self.lat.names

    def le(self, a: int, b: int) -> bool:
        return self.lat.leq[a][b]

    def join(self, a: int, b: int) -> int:
        return self.lat.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.lat.meet_table[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def label(self, x: int) -> str:
        return self.lat.names[x]

    @cached_property
    def residuation_table(self) -> Table:
        lat = self.lat
        rows = []
        for a in range(self.n):
            ma = self.mul[a]
            row = []
            for b in range(self.n):
                acc = lat.bottom
                for x in range(self.n):
                    if lat.leq[ma[x]][b]:
                        acc = lat.join_table[acc][x]
                row.append(acc)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def negations(self) -> tuple[int, ...]:
        return tuple(self.residuation_table[a][self.bottom] for a in range(self.n))

    @cached_property
    def power_chains(self) -> tuple[tuple[int, ...], ...]:
        """``power_chains[a]`` lists a, a^2, ... up to the first repeat."""
        chains = []
        for a in range(self.n):
            chain = [a]
            while True:
                nxt = self.mul[chain[-1]][a]
                if nxt == chain[-1]:
                    break
                chain.append(nxt)
            chains.append(tuple(chain))
        return tuple(chains)

    def __repr__(self) -> str:
        return f"Quantale(n={self.n})"


def validate_quantale(lat: Lattice, mul) -> Quantale:
    """Certify commutativity, integrality, associativity and join-distributivity, in that order."""
    n = lat.n
    T = np.asarray(mul)
    if T.shape != (n, n) or not np.issubdtype(T.dtype, np.integer):
        raise ValueError(f"multiplication must be an {n}x{n} table of element indices")
    if n and (T.min() < 0 or T.max() >= n):
        raise ValueError(f"multiplication holds an index outside 0..{n - 1}")
    T = T.astype(np.int64)
    bad = np.argwhere(T != T.T)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        raise NotCommutative(f"{a}*{b} != {b}*{a}", (a, b))
    bad = np.flatnonzero(T[:, lat.top] != np.arange(n))
    if bad.size:
        a = int(bad[0])
        raise NotIntegral(f"{a}*top != {a}", (a,))
    for a in range(n):
        lhs = T[T[a]]  # (ab)c as [b, c]
        rhs = T[a][T]  # a(bc) as [b, c]
        hit = np.argwhere(lhs != rhs)
        if hit.size:
            b, c = (int(v) for v in hit[0])
            raise NotAssociative(f"({a}{b}){c} != {a}({b}{c})", (a, b, c))
    J = np.array(lat.join_table)
    for a in range(n):
        lhs = T[a][J]  # a(b v c)
        rhs = J[T[a][:, None], T[a][None, :]]  # ab v ac
        hit = np.argwhere(lhs != rhs)
        if hit.size:
            b, c = (int(v) for v in hit[0])
            raise NotJoinDistributive(f"{a}({b} v {c}) != {a}{b} v {a}{c}", (a, b, c))
    # empty join: a * bottom = bottom
    bad = np.flatnonzero(T[:, lat.bottom] != lat.bottom)
    if bad.size:
        a = int(bad[0])
        raise NotJoinDistributive(f"{a}*bottom != bottom", (a, lat.bottom, lat.bottom))
    return Quantale(lat=lat, mul=tuple(tuple(int(v) for v in row) for row in T))


def frame_of(lat: Lattice) -> Quantale:
    """The quantale whose multiplication is the meet (valid iff ``lat`` is distributive)."""
    return validate_quantale(lat, lat.meet_table)


def residuation(Q: Quantale, a: int, b: int) -> int:
    """a -> b: the largest x with a*x <= b."""
    return Q.residuation_table[a][b]


def negation(Q: Quantale, a: int) -> int:
    return Q.negations[a]


def power(Q: Quantale, a: int, k: int) -> int:
    if k < 1:
        raise InvalidExponent(f"exponent must be >= 1, got {k}")
    chain = Q.power_chains[a]
    return chain[min(k, len(chain)) - 1]


def stabilization(Q: Quantale, a: int) -> tuple[int, int]:
    """Least k with a^k = a^(k+1), together with that stable power."""
    chain = Q.power_chains[a]
    return len(chain), chain[-1]


def stable_power(Q: Quantale, a: int) -> int:
    return Q.power_chains[a][-1]


def powers(Q: Quantale, a: int) -> tuple[int, ...]:
    """All distinct powers a, a^2, ..., ending at the stable one."""
    return Q.power_chains[a]


@dataclass(frozen=True, eq=False)
class Embedded:
    """A quantale carried by a subset of a parent's elements.

    ``elements[i]`` is the parent index of local element ``i``; ``local`` maps
    back. Names are inherited from the parent.
    """

    base: Quantale
    quantale: Quantale
    elements: tuple[int, ...]

    @cached_property
    def local(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def carrier(self) -> int:
        m = 0
        for x in self.elements:
            m |= 1 << x
        return m

    def to_base(self, xs) -> frozenset[int]:
        return frozenset(self.elements[i] for i in xs)


@dataclass(frozen=True, eq=False)
class IntervalQuantale(Embedded):
    a: int = 0


def embed_subquantale(
    Q: Quantale, elements: Sequence[int], product: Callable[[int, int], int]
) -> tuple[Quantale, tuple[int, ...]]:
    """Re-index a subset of Q carrying its restricted order and a given product."""
    elements = tuple(sorted(elements))
    loc = {x: i for i, x in enumerate(elements)}
    lat = Q.lat
    sub = lattice_from_order(
        [[lat.leq[a][b] for b in elements] for a in elements],
        [lat.names[a] for a in elements],
    )
    table = [[loc[product(a, b)] for b in elements] for a in elements]
    return validate_quantale(sub, table), elements


def interval_quantale(Q: Quantale, a: int) -> IntervalQuantale:
    """[a) with product x *_a y = xy v a."""
    carrier = [x for x in range(Q.n) if Q.le(a, x)]
    sub, elements = embed_subquantale(Q, carrier, lambda x, y: Q.join(Q.mul[x][y], a))
    iq = IntervalQuantale(base=Q, quantale=sub, elements=elements, a=a)
    loc = iq.local
    for x in elements:
        for y in elements:
            # [a) is a sublattice, so its joins are the parent's
            if sub.lat.join_table[loc[x]][loc[y]] != loc[Q.join(x, y)]:
                raise MorphismViolation(f"interval join differs at {x},{y}")
    return iq


def join_morphism_u(Q: Quantale, a: int, interval: IntervalQuantale | None = None) -> tuple[int, ...]:
    """The map x -> x v a into [a), certified as an integral quantale morphism.

    Returned as a tuple of parent indices.
    """
    iq = interval if interval is not None else interval_quantale(Q, a)
    loc = iq.local
    S = iq.quantale
    u = tuple(Q.join(x, a) for x in range(Q.n))
    if loc[u[Q.bottom]] != S.bottom:
        raise MorphismViolation("u does not preserve the empty join")
    if loc[u[Q.top]] != S.top:
        raise MorphismViolation("u does not preserve top")
    for x in range(Q.n):
        for y in range(Q.n):
            if loc[u[Q.join(x, y)]] != S.lat.join_table[loc[u[x]]][loc[u[y]]]:
                raise MorphismViolation(f"u does not preserve the join of {x},{y}")
            if loc[u[Q.mul[x][y]]] != S.mul[loc[u[x]]][loc[u[y]]]:
                raise MorphismViolation(f"u does not preserve the product of {x},{y}")
    return u


def cover_law_violations(Q: Quantale) -> list[str]:
    """Identities for pairs whose join is top, checked over every pair/triple."""
    out = []
    n, top = Q.n, Q.top
    J, M, T = Q.lat.join_table, Q.lat.meet_table, Q.mul
    for a in range(n):
        for b in range(n):
            if J[a][b] != top:
                continue
            if T[a][b] != M[a][b]:
                out.append(f"cover {a},{b}: product differs from meet")
            ca, cb = Q.power_chains[a], Q.power_chains[b]
            for k in range(1, max(len(ca), len(cb)) + 1):
                if J[power(Q, a, k)][power(Q, b, k)] != top:
                    out.append(f"cover {a},{b}: powers {k} no longer cover")
            for c in range(n):
                if J[a][c] == top and not (J[a][T[b][c]] == top and J[a][M[b][c]] == top):
                    out.append(f"covers {a},{b} and {a},{c}: a v bc or a v (b^c) not top")
                if Q.le(a, c) and J[a][T[b][c]] != c:
                    out.append(f"cover {a},{b}, {a}<={c}: a v bc != c")
    return out


def residuation_violations(Q: Quantale) -> list[str]:
    """Adjunction c <= a->b iff ac <= b, and ab <= a^b."""
    out = []
    R, T, P = Q.residuation_table, Q.mul, Q.lat.leq
    for a in range(Q.n):
        for b in range(Q.n):
            if not P[T[a][b]][Q.meet(a, b)]:
                out.append(f"{a}{b} not below {a}^{b}")
            for c in range(Q.n):
                if P[c][R[a][b]] != P[T[a][c]][b]:
                    out.append(f"adjunction fails at {a},{b},{c}")
    return out
