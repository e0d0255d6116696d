"""Definitional brute-force oracles, independent of the engine's algorithms.

Every function reads only the raw order and multiplication tables and
follows the textbook definition by exhaustive search.
"""

from __future__ import annotations

from math import gcd


def le(Q, a, b):
    return Q.lat.leq[a][b]


def bigjoin(Q, xs):
    out = Q.bottom
    for x in xs:
        out = Q.lat.join_table[out][x]
    return out


def bigmeet(Q, xs):
    out = Q.top
    for x in xs:
        out = Q.lat.meet_table[out][x]
    return out


def m_primes(Q):
    T = Q.mul
    return frozenset(
        p
        for p in range(Q.n)
        if p != Q.top
        and all(le(Q, a, p) or le(Q, b, p) for a in range(Q.n) for b in range(Q.n) if le(Q, T[a][b], p))
    )


def maximal(Q):
    return frozenset(m for m in range(Q.n) if m != Q.top and all(x in (m, Q.top) for x in range(Q.n) if le(Q, m, x)))


def minimal_primes(Q):
    spec = m_primes(Q)
    return frozenset(p for p in spec if not any(q != p and le(Q, q, p) for q in spec))


def radical(Q, a):
    return bigmeet(Q, (p for p in m_primes(Q) if le(Q, a, p)))


def radical_by_powers(Q, a):
    """Join of all c with some power c^k below a."""

    def has_power_below(c):
        x, seen = c, set()
        while x not in seen:
            if le(Q, x, a):
                return True
            seen.add(x)
            x = Q.mul[x][c]
        return False

    return bigjoin(Q, (c for c in range(Q.n) if has_power_below(c)))


def boolean_center(Q):
    J, M = Q.lat.join_table, Q.lat.meet_table
    return frozenset(e for e in range(Q.n) if any(J[e][f] == Q.top and M[e][f] == Q.bottom for f in range(Q.n)))


def powers(Q, c):
    out, x = [], c
    while x not in out:
        out.append(x)
        x = Q.mul[x][c]
    return out


def is_hyperarchimedean(Q):
    B = boolean_center(Q)
    return all(any(x in B for x in powers(Q, c)) for c in range(Q.n))


def is_normal(Q):
    J, T = Q.lat.join_table, Q.mul
    for a in range(Q.n):
        for b in range(Q.n):
            if J[a][b] != Q.top:
                continue
            if not any(
                J[a][e] == Q.top and J[b][f] == Q.top and T[e][f] == Q.bottom for e in range(Q.n) for f in range(Q.n)
            ):
                return False
    return True


def is_b_normal(Q):
    """Covers split by a complemented pair e, not-e."""
    J, M = Q.lat.join_table, Q.lat.meet_table
    B = boolean_center(Q)
    for a in range(Q.n):
        for b in range(Q.n):
            if J[a][b] != Q.top:
                continue
            ok = False
            for e in B:
                for f in B:
                    if J[e][f] == Q.top and M[e][f] == Q.bottom and J[a][e] == Q.top and J[b][f] == Q.top:
                        ok = True
            if not ok:
                return False
    return True


def is_mp(Q):
    mins = minimal_primes(Q)
    return all(sum(le(Q, q, p) for q in mins) == 1 for p in m_primes(Q))


def annihilator(Q, c):
    return bigjoin(Q, (x for x in range(Q.n) if Q.mul[x][c] == Q.bottom))


def is_pure(Q, a):
    return all(Q.lat.join_table[a][annihilator(Q, c)] == Q.top for c in range(Q.n) if le(Q, c, a))


def is_pf(Q):
    return all(is_pure(Q, annihilator(Q, c)) for c in range(Q.n))


def is_semiprime(Q):
    return radical(Q, Q.bottom) == Q.bottom


def reticulation_size(Q):
    return len({radical(Q, a) for a in range(Q.n)})


def max_regular(Q):
    """Maximal proper joins of complemented elements."""
    # closing under binary joins reaches every join of a subset
    regular = {Q.bottom} | set(boolean_center(Q))
    while True:
        more = {Q.lat.join_table[a][b] for a in regular for b in regular} - regular
        if not more:
            break
        regular |= more
    proper = [r for r in regular if r != Q.top]
    return frozenset(r for r in proper if not any(q != r and le(Q, r, q) for q in proper))


# --- ideals of Z_n as literal subsets ---------------------------------------


def zn_ideal_sets(n):
    """All ideals of Z_n as frozensets of residues; each one is the multiples of a single residue."""
    ideals = set()
    for g in range(n):
        ideals.add(frozenset((k * g) % n for k in range(n)))
    return ideals


def zn_ideal_product(n, I, J):
    """Additive closure of all products ab, which in Z_n is the multiples of their gcd."""
    g = 0
    for x in {(a * b) % n for a in I for b in J}:
        g = gcd(g, x)
    return frozenset((k * g) % n for k in range(n))
