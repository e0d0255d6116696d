"""The reticulation L(A), the ideal transfer maps and the Boolean center.

On a finite quantale every ideal of the reticulation is principal, so ideals
are carried by their generator (:class:`PrincipalIdeal`). The lattice itself is
materialized on the radical elements of A with ``lam = rho``; a reticulation
is unique up to isomorphism, and every axiom is re-certified after the build.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .core import Quantale, frame_of, stable_power
from .lattice import Lattice, big_join, complemented, complements, distributivity_counterexample, mask, meet_primes, restrict
from .spectra import m_primes, radical_frame, radical_map


class AxiomFailure(AssertionError):
    def __init__(self, axiom: str, witness=()):
        super().__init__(f"reticulation axiom {axiom!r} fails at {tuple(witness)}")
        self.axiom = axiom
        self.witness = tuple(witness)


class BijectionFailure(AssertionError):
    pass


class BooleanTestMismatch(AssertionError):
    def __init__(self, message: str, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True)
class PrincipalIdeal:
    """The down-set of ``generator`` in the reticulation."""

    generator: int


@dataclass(frozen=True, eq=False)
class Reticulation:
    quantale: Quantale
    lattice: Lattice
    lam: tuple[int, ...]
    section: tuple[int, ...]

    @cached_property
    def frame(self) -> Quantale:
        """L(A) viewed as a frame, so spectrum and topology code apply to it."""
        return frame_of(self.lattice)

    @cached_property
    def lam_down(self) -> tuple[int, ...]:
        """Bitmask over A of the elements c with lam(c) <= x, per x in L."""
        L = self.lattice
        return tuple(mask(c for c in range(self.quantale.n) if L.leq[self.lam[c]][x]) for x in range(L.n))

    def ideal(self, generator: int) -> PrincipalIdeal:
        return PrincipalIdeal(generator)

    def ideals(self) -> list[PrincipalIdeal]:
        return [PrincipalIdeal(x) for x in range(self.lattice.n)]

    def contains(self, I: PrincipalIdeal, x: int) -> bool:
        return self.lattice.leq[x][I.generator]


@lru_cache(maxsize=512)
def build_reticulation(Q: Quantale) -> Reticulation:
    rho = radical_map(Q)
    carrier = sorted(set(rho))
    loc = {x: i for i, x in enumerate(carrier)}
    L = restrict(Q.lat, carrier)
    lam = tuple(loc[rho[a]] for a in range(Q.n))
    ret = Reticulation(quantale=Q, lattice=L, lam=lam, section=tuple(carrier))
    bad = distributivity_counterexample(L)
    if bad is not None:
        raise AxiomFailure("distributive", bad)
    J, M = L.join_table, L.meet_table
    for a in range(Q.n):
        sa = stable_power(Q, a)
        for b in range(Q.n):
            la, lb = lam[a], lam[b]
            lj = lam[Q.join(a, b)]
            if not L.leq[lj][J[la][lb]]:
                raise AxiomFailure("join-below", (a, b))
            if lj != J[la][lb]:
                raise AxiomFailure("join", (a, b))
            if lam[Q.mul[a][b]] != M[la][lb]:
                raise AxiomFailure("product", (a, b))
            if L.leq[la][lb] != Q.le(sa, b):
                raise AxiomFailure("power-order", (a, b))
    return ret


def star(ret: Reticulation, a: int) -> PrincipalIdeal:
    """a* = {lam(c) : c <= a}, returned through its generator."""
    Q, L = ret.quantale, ret.lattice
    below = [c for c in range(Q.n) if Q.le(c, a)]
    gen = big_join(L, (ret.lam[c] for c in below))
    if mask(ret.lam[c] for c in below) != L.down[gen]:
        raise AxiomFailure("star-is-principal-ideal", (a,))
    return PrincipalIdeal(gen)


def lower_star(ret: Reticulation, I: PrincipalIdeal) -> int:
    """I_* = join of all c with lam(c) in I."""
    Q = ret.quantale
    return big_join(Q.lat, (c for c in range(Q.n) if ret.lattice.leq[ret.lam[c]][I.generator]))


def spec_transfer_maps(ret: Reticulation) -> tuple[dict[int, int], dict[int, int]]:
    """u(p) = p* and v(P) = P_* between Spec(A) and the prime ideals of L(A).

    Prime ideals are keyed by their generator. Raises BijectionFailure unless
    the two maps are inverse order isomorphisms.
    """
    Q, L = ret.quantale, ret.lattice
    spec = m_primes(Q)
    primes_L = meet_primes(L)
    u = {p: star(ret, p).generator for p in spec}
    v = {P: lower_star(ret, PrincipalIdeal(P)) for P in primes_L}
    if set(u.values()) != primes_L:
        raise BijectionFailure("u does not land exactly on the prime ideals of L(A)")
    if set(v.values()) != spec:
        raise BijectionFailure("v does not land exactly on Spec(A)")
    for p in spec:
        if v[u[p]] != p:
            raise BijectionFailure(f"v(u({Q.label(p)})) != {Q.label(p)}")
        for q in spec:
            if Q.le(p, q) != L.leq[u[p]][u[q]]:
                raise BijectionFailure(f"u is not an order isomorphism at {Q.label(p)}, {Q.label(q)}")
    for P in primes_L:
        if u[v[P]] != P:
            raise BijectionFailure(f"u(v({L.names[P]})) != {L.names[P]}")
    return u, v


def annihilator(ret: Reticulation, I: PrincipalIdeal) -> PrincipalIdeal:
    """Ann(I) = {x : x ^ y = 0 for all y in I}, through its generator."""
    L = ret.lattice
    killers = [x for x in range(L.n) if L.meet_table[x][I.generator] == L.bottom]
    gen = big_join(L, killers)
    if mask(killers) != L.down[gen]:
        raise AxiomFailure("annihilator-is-principal-ideal", (I.generator,))
    return PrincipalIdeal(gen)


def is_pure(Q: Quantale, a: int) -> bool:
    """Every c <= a satisfies a v c^perp = top."""
    neg, J = Q.negations, Q.lat.join_table[a]
    return all(J[neg[c]] == Q.top for c in range(Q.n) if Q.le(c, a))


def is_sigma_ideal(ret: Reticulation, I: PrincipalIdeal) -> bool:
    L = ret.lattice
    g = I.generator
    return all(
        L.join_table[g][annihilator(ret, PrincipalIdeal(x)).generator] == L.top
        for x in range(L.n)
        if L.leq[x][g]
    )


def boolean_center_by_negation(Q: Quantale) -> frozenset[int]:
    neg, J = Q.negations, Q.lat.join_table
    return frozenset(a for a in range(Q.n) if J[a][neg[a]] == Q.top)


@lru_cache(maxsize=512)
def boolean_center(Q: Quantale) -> frozenset[int]:
    """Complemented elements, found both by search and by the negation test."""
    raw = complemented(Q.lat)
    by_negation = boolean_center_by_negation(Q)
    if raw != by_negation:
        a = min(raw ^ by_negation)
        raise BooleanTestMismatch(f"complement search and negation test disagree at {Q.label(a)}", (a,))
    ret = build_reticulation(Q)
    image = {ret.lam[e] for e in raw}
    if len(image) != len(raw) or image != complemented(ret.lattice):
        raise BooleanTestMismatch("lam does not map B(A) bijectively onto B(L(A))")
    return raw


def reticulation_law_violations(ret: Reticulation) -> list[str]:
    out = []
    Q, L = ret.quantale, ret.lattice
    lam, rho = ret.lam, radical_map(Q)
    r0 = rho[Q.bottom]
    semiprime = r0 == Q.bottom
    stars = [star(ret, a) for a in range(Q.n)]
    lowers = [lower_star(ret, I) for I in ret.ideals()]
    for a in range(Q.n):
        la = lam[a]
        if (la == L.top) != (a == Q.top):
            out.append(f"lam({a}) top iff {a} top")
        zero_power = stable_power(Q, a) == Q.bottom
        if (la == L.bottom) != zero_power:
            out.append(f"lam({a}) = 0 iff some power of {a} is 0")
        if (la == L.bottom) != Q.le(a, r0):
            out.append(f"lam({a}) = 0 iff {a} <= rho(0)")
        if semiprime and la == L.bottom and a != Q.bottom:
            out.append(f"semiprime but lam({a}) = 0")
        for ak in Q.power_chains[a]:
            if lam[ak] != la:
                out.append(f"lam of a power of {a} differs")
        for b in range(Q.n):
            if Q.le(a, b) and not L.leq[la][lam[b]]:
                out.append(f"lam not monotone at {a},{b}")
            if (rho[a] == rho[b]) != (la == lam[b]):
                out.append(f"lam({a}) = lam({b}) iff equal radicals")
        # star and lower star
        g = stars[a].generator
        if not Q.le(a, lowers[g]):
            out.append(f"{a} not below (a*)_*")
        if lowers[g] != rho[a]:
            out.append(f"(a*)_* != rho(a) at {a}")
        if stars[rho[a]].generator != g:
            out.append(f"a* != rho(a)* at {a}")
        if g != la:
            out.append(f"c* is not the principal ideal of lam(c) at {a}")
    for I in ret.ideals():
        low = lowers[I.generator]
        if stars[low].generator != I.generator:
            out.append(f"(I_*)* != I at {I.generator}")
        if rho[low] != low:
            out.append(f"I_* not radical at {I.generator}")
        for c in range(Q.n):
            if Q.le(c, low) != L.leq[lam[c]][I.generator]:
                out.append(f"c <= I_* iff lam(c) in I fails at {c},{I.generator}")
    primes_L = meet_primes(L)
    for p in m_primes(Q):
        g = stars[p].generator
        if lowers[g] != p:
            out.append(f"(p*)_* != p at {p}")
        if g not in primes_L:
            out.append(f"p* not a prime ideal at {p}")
        for c in range(Q.n):
            if Q.le(c, p) != L.leq[lam[c]][g]:
                out.append(f"c <= p iff lam(c) in p* fails at {c},{p}")
    spec = m_primes(Q)
    for P in primes_L:
        if lowers[P] not in spec:
            out.append(f"P_* not prime at {P}")
    # R(A) and the ideal lattice of L(A) are isomorphic frames
    RA = radical_frame(Q)
    phi = {a: stars[a].generator for a in RA.elements}
    psi = {x: lowers[x] for x in range(L.n)}
    if sorted(phi.values()) != list(range(L.n)):
        out.append("Phi is not a bijection")
    for a in RA.elements:
        if psi[phi[a]] != a:
            out.append(f"Psi(Phi({a})) != {a}")
    for x in range(L.n):
        if phi.get(psi[x]) != x:
            out.append(f"Phi(Psi({x})) != {x}")
    R = RA.quantale
    for i, a in enumerate(RA.elements):
        for j, b in enumerate(RA.elements):
            if phi[RA.elements[R.meet(i, j)]] != L.meet_table[phi[a]][phi[b]]:
                out.append(f"Phi does not preserve the meet of {a},{b}")
            if phi[RA.elements[R.join(i, j)]] != L.join_table[phi[a]][phi[b]]:
                out.append(f"Phi does not preserve the join of {a},{b}")
    if phi.get(Q.top) != L.top or phi.get(r0) != L.bottom:
        out.append("Phi does not preserve the bounds")
    for x in range(L.n):
        for y in range(L.n):
            if lowers[L.join_table[x][y]] != rho[Q.join(lowers[x], lowers[y])]:
                out.append(f"(I v J)_* != rho(I_* v J_*) at {x},{y}")
    return out


def boolean_law_violations(Q: Quantale) -> list[str]:
    out = []
    B = boolean_center(Q)
    ret = build_reticulation(Q)
    L = ret.lattice
    neg, R, T = Q.negations, Q.residuation_table, Q.mul
    J, M = Q.lat.join_table, Q.lat.meet_table
    for e in B:
        for a in range(Q.n):
            if M[a][e] != T[a][e]:
                out.append(f"a ^ e != ae at {a},{e}")
            if R[e][a] != J[neg[e]][a]:
                out.append(f"e -> a != e^perp v a at {e},{a}")
            for b in range(Q.n):
                if J[M[a][b]][e] != M[J[a][e]][J[b][e]]:
                    out.append(f"(a ^ b) v e != (a v e) ^ (b v e) at {a},{b},{e}")
    for a in range(Q.n):
        for b in range(Q.n):
            if J[a][b] != Q.top:
                continue
            if T[a][b] == Q.bottom and not (a in B and b in B):
                out.append(f"complementary pair {a},{b} outside B(A)")
            ca, cb = Q.power_chains[a], Q.power_chains[b]
            for k in range(max(len(ca), len(cb))):
                an, bn = ca[min(k, len(ca) - 1)], cb[min(k, len(cb) - 1)]
                if T[an][bn] == Q.bottom and not (an in B and bn in B):
                    out.append(f"powers {k + 1} of cover {a},{b} outside B(A)")
    BL = complemented(L)
    for c in range(Q.n):
        lifted = any(x in B for x in Q.power_chains[c])
        if (ret.lam[c] in BL) != lifted:
            out.append(f"lam({c}) complemented iff a power of {c} is")
    lam = ret.lam
    for e in B:
        if lam[neg[e]] not in complements(L, lam[e]):
            out.append(f"lam does not preserve the complement of {e}")
        for f in B:
            if lam[J[e][f]] != L.join_table[lam[e]][lam[f]] or lam[M[e][f]] != L.meet_table[lam[e]][lam[f]]:
                out.append(f"lam restricted to B(A) not a lattice map at {e},{f}")
    return out


def annihilator_law_violations(ret: Reticulation) -> list[str]:
    out = []
    Q = ret.quantale
    rho = radical_map(Q)
    r0 = rho[Q.bottom]
    semiprime = r0 == Q.bottom
    R, neg = Q.residuation_table, Q.negations
    for a in range(Q.n):
        ann = annihilator(ret, star(ret, a)).generator
        if ann != star(ret, R[a][r0]).generator:
            out.append(f"Ann(a*) != (a -> rho(0))* at {a}")
        if semiprime and ann != star(ret, neg[a]).generator:
            out.append(f"Ann(a*) != (a^perp)* at {a}")
        if is_pure(Q, a) and not is_sigma_ideal(ret, star(ret, a)):
            out.append(f"pure {a} but a* not a sigma-ideal")
    for I in ret.ideals():
        low = lower_star(ret, I)
        ann_low = lower_star(ret, annihilator(ret, I))
        if ann_low != R[low][r0]:
            out.append(f"Ann(I)_* != I_* -> rho(0) at {I.generator}")
        if semiprime and ann_low != neg[low]:
            out.append(f"Ann(I)_* != (I_*)^perp at {I.generator}")
        if semiprime and is_sigma_ideal(ret, I) and not is_pure(Q, low):
            out.append(f"sigma-ideal {I.generator} with impure I_*")
    return out
