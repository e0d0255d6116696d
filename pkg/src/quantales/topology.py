"""Finite topologies on the prime spectrum and the Pierce spectrum.

A topology is stored as its full family of open sets. Points are element
indices of the quantale, and every subset of points is an ``int`` bitmask over
those indices, so D(c), V(c) and the opens share one representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .core import Quantale
from .lattice import big_join, big_meet, mask, members
from .reticulation import boolean_center, build_reticulation, spec_transfer_maps
from .spectra import max_elements, min_primes, m_primes


class TopologyCertificationError(AssertionError):
    pass


class MaxRegularFailure(AssertionError):
    def __init__(self, p: int, message: str = ""):
        super().__init__(message or f"s_A({p}) is not max-regular")
        self.p = p


@dataclass(frozen=True, eq=False)
class FiniteTopology:
    ground: int
    opens: frozenset[int]

    @classmethod
    def from_subbasis(cls, ground: int, sets: Iterable[int]) -> "FiniteTopology":
        basis = {ground}
        frontier = {s & ground for s in sets}
        while frontier:
            basis |= frontier
            frontier = {a & b for a in basis for b in frontier} - basis
        opens = {0}
        for b in basis:
            opens |= {o | b for o in opens}
        return cls(ground, frozenset(opens))

    @cached_property
    def points(self) -> list[int]:
        return members(self.ground)

    @cached_property
    def closed(self) -> frozenset[int]:
        return frozenset(self.ground & ~o for o in self.opens)

    @cached_property
    def clopens(self) -> frozenset[int]:
        return self.opens & self.closed

    @cached_property
    def minimal_open(self) -> dict[int, int]:
        """U_x, the intersection of all opens containing x (itself open)."""
        out = {}
        for x in self.points:
            u = self.ground
            for o in self.opens:
                if (o >> x) & 1:
                    u &= o
            out[x] = u
        return out

    def hull(self, S: int) -> int:
        """Smallest open superset of S."""
        u = 0
        for x in members(S):
            u |= self.minimal_open[x]
        return u

    def is_open(self, S: int) -> bool:
        return S in self.opens

    def is_closed(self, S: int) -> bool:
        return (self.ground & ~S) in self.opens

    def __repr__(self) -> str:
        return f"FiniteTopology(points={len(self.points)}, opens={len(self.opens)})"


def closure(T: FiniteTopology, S: int) -> int:
    """x is in cl(S) iff its smallest neighbourhood meets S."""
    if S & ~T.ground:
        raise ValueError("subset is not contained in the ground set")
    return mask(x for x in T.points if T.minimal_open[x] & S)


def closure_by_closed_sets(T: FiniteTopology, S: int) -> int:
    """Intersection of all closed supersets of S."""
    acc = T.ground
    for C in T.closed:
        if S & ~C == 0:
            acc &= C
    return acc


def subspace(T: FiniteTopology, subset: int) -> FiniteTopology:
    if subset & ~T.ground:
        raise ValueError("subspace is not contained in the ground set")
    return FiniteTopology(subset, frozenset(o & subset for o in T.opens))


def discrete(ground: int) -> FiniteTopology:
    return FiniteTopology.from_subbasis(ground, (1 << x for x in members(ground)))


def d_set(Q: Quantale, spec: Iterable[int], c: int) -> int:
    return mask(p for p in spec if not Q.le(c, p))


def v_set(Q: Quantale, spec: Iterable[int], c: int) -> int:
    return mask(p for p in spec if Q.le(c, p))


@lru_cache(maxsize=512)
def _d_sets(Q: Quantale) -> tuple[int, ...]:
    spec = m_primes(Q)
    return tuple(d_set(Q, spec, c) for c in range(Q.n))


@lru_cache(maxsize=512)
def _v_sets(Q: Quantale) -> tuple[int, ...]:
    spec = m_primes(Q)
    return tuple(v_set(Q, spec, c) for c in range(Q.n))


@lru_cache(maxsize=512)
def zariski(Q: Quantale) -> FiniteTopology:
    T = FiniteTopology.from_subbasis(mask(m_primes(Q)), _d_sets(Q))
    if T.closed != frozenset(_v_sets(Q)):
        raise TopologyCertificationError("Zariski closed sets are not exactly the V(a)")
    return T


@lru_cache(maxsize=512)
def flat(Q: Quantale) -> FiniteTopology:
    return FiniteTopology.from_subbasis(mask(m_primes(Q)), _v_sets(Q))


@lru_cache(maxsize=512)
def patch(Q: Quantale) -> FiniteTopology:
    D, V = _d_sets(Q), _v_sets(Q)
    T = FiniteTopology.from_subbasis(mask(m_primes(Q)), {d & v for d in D for v in V})
    if not (zariski(Q).opens <= T.opens and flat(Q).opens <= T.opens):
        raise TopologyCertificationError("patch topology does not refine Zariski and flat")
    return T


def max_zariski(Q: Quantale) -> FiniteTopology:
    return subspace(zariski(Q), mask(max_elements(Q)))


def max_flat(Q: Quantale) -> FiniteTopology:
    return subspace(flat(Q), mask(max_elements(Q)))


def min_zariski(Q: Quantale) -> FiniteTopology:
    return subspace(zariski(Q), mask(min_primes(Q)))


def min_flat(Q: Quantale) -> FiniteTopology:
    return subspace(flat(Q), mask(min_primes(Q)))


@dataclass(frozen=True)
class SpaceProperties:
    T0: bool
    T1: bool
    hausdorff: bool
    discrete: bool
    zero_dimensional: bool
    normal_space: bool
    compact: bool = True
    compact_vacuous: bool = True

    @property
    def boolean_space(self) -> bool:
        return self.hausdorff and self.zero_dimensional and self.compact

    def as_dict(self) -> dict:
        return {
            "T0": self.T0,
            "T1": self.T1,
            "hausdorff": self.hausdorff,
            "discrete": self.discrete,
            "zero_dimensional": self.zero_dimensional,
            "normal_space": self.normal_space,
            "compact": self.compact,
            "compact_vacuous": self.compact_vacuous,
            "boolean_space": self.boolean_space,
        }


def is_normal_space(T: FiniteTopology) -> bool:
    """Disjoint closed sets have disjoint open neighbourhoods.

    For a closed C the closed sets avoiding C are exactly the subsets of
    X \\ hull(C), and hull is monotone, so one check per closed set suffices.
    """
    for C in T.closed:
        H = T.hull(C)
        if H & T.hull(T.ground & ~H):
            return False
    return True


def space_properties(T: FiniteTopology) -> SpaceProperties:
    pts = T.points
    U = T.minimal_open
    t0 = all(U[x] != U[y] for i, x in enumerate(pts) for y in pts[i + 1 :])
    t1 = all(U[x] == 1 << x for x in pts)
    hausdorff = all(not (U[x] & U[y]) for i, x in enumerate(pts) for y in pts[i + 1 :])
    disc = all(1 << x in T.opens for x in pts)
    clopens = T.clopens
    zero_dim = all(any((K >> x) & 1 and K & ~U[x] == 0 for K in clopens) for x in pts)
    return SpaceProperties(
        T0=t0, T1=t1, hausdorff=hausdorff, discrete=disc, zero_dimensional=zero_dim, normal_space=is_normal_space(T)
    )


def image(f: Mapping[int, int], S: int) -> int:
    return mask(f[x] for x in members(S))


def preimage(f: Mapping[int, int], S: int) -> int:
    return mask(x for x, y in f.items() if (S >> y) & 1)


def is_continuous(f: Mapping[int, int], source: FiniteTopology, target: FiniteTopology) -> bool:
    if set(f) != set(source.points) or any(not (target.ground >> y) & 1 for y in f.values()):
        raise ValueError("map does not go between the given ground sets")
    return all(preimage(f, O) in source.opens for O in target.opens)


def is_homeomorphism(f: Mapping[int, int], source: FiniteTopology, target: FiniteTopology) -> bool:
    if sorted(f.values()) != target.points:
        return False
    inverse = {y: x for x, y in f.items()}
    return is_continuous(f, source, target) and is_continuous(inverse, target, source)


def specialization(T: FiniteTopology) -> list[tuple[int, int]]:
    """Pairs (x, y) with x in cl{y}, x != y."""
    return [(x, y) for x in T.points for y in T.points if x != y and (T.minimal_open[x] >> y) & 1]


# --- Pierce spectrum --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PierceSpectrum:
    points: frozenset[int]
    regular: frozenset[int]
    topology: FiniteTopology
    s: dict[int, int]
    u_sets: dict[int, int]


def regular_elements(Q: Quantale) -> frozenset[int]:
    """Joins of subsets of B(A), the empty join included."""
    B = boolean_center(Q)
    reg = {Q.bottom}
    for e in B:
        reg |= {Q.join(r, e) for r in reg}
    return frozenset(reg)


@lru_cache(maxsize=512)
def pierce_spectrum(Q: Quantale) -> PierceSpectrum:
    B = sorted(boolean_center(Q))
    reg = regular_elements(Q)
    proper = [r for r in reg if r != Q.top]
    sp = frozenset(r for r in proper if not any(q != r and Q.le(r, q) for q in proper))
    u_sets = {e: mask(p for p in sp if not Q.le(e, p)) for e in B}
    T = FiniteTopology.from_subbasis(mask(sp), u_sets.values())
    s = {}
    for p in m_primes(Q):
        sp_p = big_join(Q.lat, (e for e in B if Q.le(e, p)))
        if sp_p not in sp:
            raise MaxRegularFailure(p)
        s[p] = sp_p
    if set(s.values()) != set(sp):
        raise MaxRegularFailure(-1, "s_A is not surjective onto Sp(A)")
    D, V, neg = _d_sets(Q), _v_sets(Q), Q.negations
    for e in B:
        pre = preimage(s, u_sets[e])
        if not (pre == D[e] == V[neg[e]]):
            raise MaxRegularFailure(-1, f"preimage of U({e}) is not D(e) = V(not e)")
    if s and not (is_continuous(s, zariski(Q), T) and is_continuous(s, flat(Q), T)):
        raise MaxRegularFailure(-1, "s_A is not continuous")
    if not space_properties(T).boolean_space:
        raise MaxRegularFailure(-1, "Sp(A) is not a Boolean space")
    return PierceSpectrum(points=sp, regular=reg, topology=T, s=s, u_sets=u_sets)


# --- law batteries ----------------------------------------------------------


def lambda_set(Q: Quantale, p: int) -> int:
    """Lambda(p): primes below p."""
    return mask(q for q in m_primes(Q) if Q.le(q, p))


def flat_closure_violations(Q: Quantale) -> list[str]:
    """cl_F{p} = Lambda(p) for each prime, and cl_F(S) = union of Lambda over every S."""
    out = []
    F = flat(Q)
    spec = sorted(m_primes(Q))
    lam = {p: lambda_set(Q, p) for p in spec}
    for p in spec:
        if closure(F, 1 << p) != lam[p]:
            out.append(f"flat closure of {{{p}}} is not Lambda({p})")
    for bits in range(1 << len(spec)):
        S = [spec[i] for i in range(len(spec)) if (bits >> i) & 1]
        union = 0
        for p in S:
            union |= lam[p]
        if closure(F, mask(S)) != union:
            out.append(f"flat closure of {S} is not the union of Lambda")
    return out


def topology_law_violations(Q: Quantale) -> list[str]:
    out = []
    spec = sorted(m_primes(Q))
    D, V = _d_sets(Q), _v_sets(Q)
    J, T = Q.lat.join_table, Q.mul
    for c in range(Q.n):
        for d in range(Q.n):
            if D[c] & D[d] != D[T[c][d]]:
                out.append(f"D({c}) & D({d}) != D({c}{d})")
            if V[c] & V[d] != V[J[c][d]]:
                out.append(f"V({c}) & V({d}) != V({c} v {d})")
            if V[c] | V[d] != V[T[c][d]]:
                out.append(f"V({c}) | V({d}) != V({c}{d})")
    Z, P = zariski(Q), patch(Q)
    if not space_properties(P).discrete:
        out.append("patch topology is not discrete")
    for bits in range(1 << len(spec)):
        S = [spec[i] for i in range(len(spec)) if (bits >> i) & 1]
        if closure(Z, mask(S)) != V[big_meet(Q.lat, S)]:
            out.append(f"Zariski closure of {S} is not V(meet S)")
    mx = mask(max_elements(Q))
    mf = space_properties(max_flat(Q))
    if not (mf.hausdorff and mf.zero_dimensional):
        out.append("Max_F is not Hausdorff and zero-dimensional")
    MF = max_flat(Q)
    for c in range(Q.n):
        if (V[c] & mx) not in MF.clopens:
            out.append(f"V({c}) restricted to Max is not clopen in Max_F")
    mz = space_properties(min_zariski(Q))
    if not (mz.hausdorff and mz.zero_dimensional):
        out.append("Min_Z is not zero-dimensional Hausdorff")
    if not space_properties(min_flat(Q)).T1:
        out.append("Min_F is not T1")
    return out


def transfer_homeomorphism_violations(Q: Quantale) -> list[str]:
    """u: Spec(A) -> prime ideals of L(A) is a homeomorphism for Zariski, flat and patch."""
    out = []
    ret = build_reticulation(Q)
    u, v = spec_transfer_maps(ret)
    LF = ret.frame
    for name, top_a, top_l in (("zariski", zariski, zariski), ("flat", flat, flat), ("patch", patch, patch)):
        TA, TL = top_a(Q), top_l(LF)
        if not is_homeomorphism(u, TA, TL):
            out.append(f"u is not a {name} homeomorphism")
        if not is_homeomorphism(v, TL, TA):
            out.append(f"v is not a {name} homeomorphism")
    DL, VL = _d_sets(LF), _v_sets(LF)
    DA, VA = _d_sets(Q), _v_sets(Q)
    for c in range(Q.n):
        x = ret.lam[c]
        if preimage(u, DL[x]) != DA[c] or preimage(u, VL[x]) != VA[c]:
            out.append(f"u^-1 of D/V(lam({c})) is not D/V({c})")
    return out
