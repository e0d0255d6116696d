"""Prime, maximal and minimal spectra, radicals and the frame of radical elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Embedded, Quantale, embed_subquantale, interval_quantale, stable_power
from .lattice import big_join, big_meet, coatoms, minimal_in


class CharacterizationMismatch(AssertionError):
    """Two independent computations of the same spectrum disagree."""

    def __init__(self, message: str, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class RadicalFormulaMismatch(CharacterizationMismatch):
    pass


@dataclass(frozen=True)
class SpectrumReport:
    spec: frozenset[int]
    max: frozenset[int]
    min: frozenset[int]
    radical_map: tuple[int, ...]
    semiprime: bool
    jacobson: int
    radical_elements: frozenset[int]


@lru_cache(maxsize=512)
def m_primes(Q: Quantale) -> frozenset[int]:
    """p < top with ab <= p forcing a <= p or b <= p."""
    P = Q.lat.order_array
    T = np.array(Q.mul)
    out = []
    for p in range(Q.n):
        if p == Q.top:
            continue
        below = P[:, p]
        bad = P[T, p] & ~(below[:, None] | below[None, :])
        if not bad.any():
            out.append(p)
    return frozenset(out)


@lru_cache(maxsize=512)
def max_elements(Q: Quantale) -> frozenset[int]:
    if Q.n == 1:
        return frozenset()
    return coatoms(Q.lat)


def minimal_primes(Q: Quantale) -> frozenset[int]:
    """Minimal elements of the prime spectrum, straight from the order."""
    return minimal_in(Q.lat, m_primes(Q))


def is_minimal_by_annihilators(Q: Quantale, p: int) -> bool:
    """c <= p exactly when c -> rho(0) is not below p, for every c."""
    r0 = radical(Q, Q.bottom)
    R = Q.residuation_table
    return all(Q.le(c, p) == (not Q.le(R[c][r0], p)) for c in range(Q.n))


@lru_cache(maxsize=512)
def min_primes(Q: Quantale) -> frozenset[int]:
    by_order = minimal_primes(Q)
    by_annihilators = frozenset(p for p in m_primes(Q) if is_minimal_by_annihilators(Q, p))
    if by_order != by_annihilators:
        p = min(by_order ^ by_annihilators)
        raise CharacterizationMismatch(f"minimality of {Q.label(p)} disagrees between order and annihilators", (p,))
    return by_order


@lru_cache(maxsize=512)
def radical_map(Q: Quantale) -> tuple[int, ...]:
    spec = m_primes(Q)
    lat = Q.lat
    out = []
    for a in range(Q.n):
        by_primes = big_meet(lat, (p for p in spec if lat.leq[a][p]))
        by_powers = big_join(lat, (c for c in range(Q.n) if lat.leq[stable_power(Q, c)][a]))
        if by_primes != by_powers:
            raise RadicalFormulaMismatch(
                f"radical of {Q.label(a)}: primes give {Q.label(by_primes)}, powers give {Q.label(by_powers)}", (a,)
            )
        out.append(by_primes)
    return tuple(out)


def radical(Q: Quantale, a: int) -> int:
    return radical_map(Q)[a]


def radical_elements(Q: Quantale) -> frozenset[int]:
    rho = radical_map(Q)
    return frozenset(a for a in range(Q.n) if rho[a] == a)


def is_semiprime(Q: Quantale) -> bool:
    return radical(Q, Q.bottom) == Q.bottom


def jacobson(Q: Quantale) -> int:
    r = big_meet(Q.lat, max_elements(Q))
    if not Q.le(radical(Q, Q.bottom), r):
        raise CharacterizationMismatch("rho(0) is not below the Jacobson element")
    return r


@lru_cache(maxsize=512)
def radical_frame(Q: Quantale) -> Embedded:
    """R(A): radical elements with joins rho(a v b) and meet as product."""
    rho = radical_map(Q)
    sub, elements = embed_subquantale(Q, radical_elements(Q), Q.meet)
    loc = {x: i for i, x in enumerate(elements)}
    for x in elements:
        for y in elements:
            if sub.lat.join_table[loc[x]][loc[y]] != loc[rho[Q.join(x, y)]]:
                raise CharacterizationMismatch(f"join of radicals {x},{y} is not rho(x v y)", (x, y))
    return Embedded(base=Q, quantale=sub, elements=elements)


@lru_cache(maxsize=512)
def spectrum(Q: Quantale) -> SpectrumReport:
    rho = radical_map(Q)
    return SpectrumReport(
        spec=m_primes(Q),
        max=max_elements(Q),
        min=min_primes(Q),
        radical_map=rho,
        semiprime=rho[Q.bottom] == Q.bottom,
        jacobson=jacobson(Q),
        radical_elements=radical_elements(Q),
    )


def radical_law_violations(Q: Quantale) -> list[str]:
    """The closure-operator laws of the radical, checked on every pair."""
    out = []
    rho = radical_map(Q)
    J, M, T, top = Q.lat.join_table, Q.lat.meet_table, Q.mul, Q.top
    for a in range(Q.n):
        if not Q.le(a, rho[a]):
            out.append(f"{a} not below its radical")
        if rho[rho[a]] != rho[a]:
            out.append(f"radical not idempotent at {a}")
        if (rho[a] == top) != (a == top):
            out.append(f"radical of {a} is top but {a} is not")
        for k, ak in enumerate(Q.power_chains[a], start=1):
            if rho[ak] != rho[a]:
                out.append(f"radical of power {k} of {a} differs")
        for b in range(Q.n):
            rab = M[rho[a]][rho[b]]
            if not (rho[M[a][b]] == rab == rho[T[a][b]]):
                out.append(f"radical of meet/product of {a},{b}")
            if rho[J[a][b]] != rho[J[rho[a]][rho[b]]]:
                out.append(f"radical of join of {a},{b}")
            if (J[rho[a]][rho[b]] == top) != (J[a][b] == top):
                out.append(f"cover test through radicals at {a},{b}")
            if Q.le(a, b) and not Q.le(rho[a], rho[b]):
                out.append(f"radical not monotone at {a},{b}")
    return out


def spectrum_shape_violations(Q: Quantale) -> list[str]:
    """Containments between the spectra and the descent to radical quotients."""
    out = []
    rep = spectrum(Q)
    lat = Q.lat
    if not rep.max <= rep.spec:
        out.append("a maximal element is not prime")
    if not rep.min <= rep.spec:
        out.append("a minimal prime is not prime")
    for p in rep.spec:
        if not any(lat.leq[q][p] for q in rep.min):
            out.append(f"prime {p} lies above no minimal prime")
        if not any(lat.leq[p][m] for m in rep.max):
            out.append(f"prime {p} lies below no maximal element")
    if not lat.leq[rep.radical_map[Q.bottom]][rep.jacobson]:
        out.append("rho(0) above r(A)")
    if rep.semiprime:
        neg = Q.negations
        for p in rep.spec:
            by_negation = all(not lat.leq[neg[c]][p] for c in range(Q.n) if lat.leq[c][p])
            if by_negation != (p in rep.min):
                out.append(f"negation test for minimality of {p} disagrees")
    # the frame of radicals and the interval over rho(0) see the same points
    RA = radical_frame(Q)
    if RA.to_base(m_primes(RA.quantale)) != rep.spec:
        out.append("Spec(R(A)) differs from Spec(A)")
    if RA.to_base(max_elements(RA.quantale)) != rep.max:
        out.append("Max(R(A)) differs from Max(A)")
    for r in sorted(rep.radical_elements):
        iq = interval_quantale(Q, r)
        sub = iq.quantale
        if not is_semiprime(sub):
            out.append(f"interval over radical {r} is not semiprime")
        above = frozenset(p for p in rep.spec if lat.leq[r][p])
        if iq.to_base(m_primes(sub)) != above:
            out.append(f"Spec of interval over radical {r} is not V({r})")
        if r == rep.radical_map[Q.bottom]:
            if iq.to_base(max_elements(sub)) != rep.max:
                out.append("Max of interval over rho(0) differs")
            if iq.to_base(min_primes(sub)) != rep.min:
                out.append("Min of interval over rho(0) differs")
    return out
