"""Class predicates (hyperarchimedean, normal, B-normal, mp, PF) and the theorem registry.

Every registry entry evaluates each of its clauses straight from the
definitions and compares truth values; no clause is derived from another.
Registry ids are the public names used by ``quantales analyze --theorems``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable

import numpy as np

from .core import Quantale, interval_quantale
from .lattice import coatoms, complemented, mask, minimal_in
from .reticulation import (
    PrincipalIdeal,
    annihilator,
    boolean_center,
    build_reticulation,
    is_pure,
    is_sigma_ideal,
    spec_transfer_maps,
    star,
)
from .spectra import jacobson, m_primes, max_elements, min_primes, radical_frame, radical_map
from .topology import (
    FiniteTopology,
    flat,
    is_continuous,
    is_homeomorphism,
    patch,
    pierce_spectrum,
    space_properties,
    subspace,
    zariski,
)

RETRACTION_SPEC_LIMIT = 12
ALL_EQUAL = "all-equal"
MISMATCH = "MISMATCH"


class UnknownTheorem(KeyError):
    pass


class TheoremMismatch(AssertionError):
    def __init__(self, reports):
        ids = ", ".join(r.theorem_id for r in reports)
        super().__init__(f"clause truth values disagree in {ids}")
        self.reports = reports


# --- search helpers ---------------------------------------------------------


def _first(items, pred):
    """(True, None) if pred holds everywhere, else (False, first counterexample)."""
    for x in items:
        if not pred(x):
            return False, x
    return True, None


def _exists(items, pred):
    for x in items:
        if pred(x):
            return True, x
    return False, None


# --- class predicates -------------------------------------------------------


def _stable_powers_from_two(Q: Quantale, c: int) -> set[int]:
    chain = Q.power_chains[c]
    return set(chain[1:]) | {chain[-1]}


def hyperarchimedean_witness(Q: Quantale):
    """None if every c has some power c^n (n > 1) in B(A), else the first failing c."""
    B = boolean_center(Q)
    ok, c = _first(range(Q.n), lambda c: bool(_stable_powers_from_two(Q, c) & B))
    return None if ok else c


def is_hyperarchimedean(Q: Quantale) -> bool:
    return hyperarchimedean_witness(Q) is None


def _split_covers(Q: Quantale, candidates: list[int]):
    """First pair (a, b) with a v b = top that no e, f in ``candidates`` splits."""
    top, J = Q.top, Q.lat.join_table
    T = np.array(Q.mul)
    cand = np.array(candidates, dtype=np.int64)
    Jc = np.array(J)[:, cand] == top  # Jc[a, i]: a v cand[i] = top
    for a in range(Q.n):
        for b in range(a, Q.n):
            if J[a][b] != top:
                continue
            E, F = cand[Jc[a]], cand[Jc[b]]
            if not E.size or not F.size or not (T[np.ix_(E, F)] == Q.bottom).any():
                return (a, b)
    return None


def normal_witness(Q: Quantale):
    return _split_covers(Q, list(range(Q.n)))


def is_normal(Q: Quantale) -> bool:
    """Every cover a v b = top splits as a v e = b v f = top with ef = bottom."""
    return normal_witness(Q) is None


def b_normal_witness(Q: Quantale):
    return _split_covers(Q, sorted(boolean_center(Q)))


def is_b_normal(Q: Quantale) -> bool:
    """As :func:`is_normal` with the splitting elements taken from B(A)."""
    return b_normal_witness(Q) is None


def is_b_normal_literal(Q: Quantale) -> bool:
    """The unamended reading: for all c, d some e, f in B(A) give c v e = d v f = top and cd = bottom."""
    B = sorted(boolean_center(Q))
    J, T = Q.lat.join_table, Q.mul
    for c in range(Q.n):
        for d in range(Q.n):
            if T[c][d] != Q.bottom:
                return False
            if not any(J[c][e] == Q.top and J[d][f] == Q.top for e in B for f in B):
                return False
    return True


def minimal_primes_below(Q: Quantale, p: int) -> frozenset[int]:
    return frozenset(q for q in min_primes(Q) if Q.le(q, p))


def mp_witness(Q: Quantale):
    """First prime together with its minimal primes when there is not exactly one."""
    for p in sorted(m_primes(Q)):
        below = minimal_primes_below(Q, p)
        if len(below) != 1:
            return (p, tuple(sorted(below)))
    return None


def is_mp(Q: Quantale) -> bool:
    return mp_witness(Q) is None


def pf_witness(Q: Quantale):
    neg = Q.negations
    ok, c = _first(range(Q.n), lambda c: is_pure(Q, neg[c]))
    return None if ok else c


def is_pf(Q: Quantale) -> bool:
    """Every c^perp is pure."""
    return pf_witness(Q) is None


def is_semiprime(Q: Quantale) -> bool:
    return radical_map(Q)[Q.bottom] == Q.bottom


def is_zero_dimensional_frame(Q: Quantale) -> bool:
    """Every element is a join of complemented elements."""
    B = complemented(Q.lat)
    for a in range(Q.n):
        acc = Q.bottom
        for e in B:
            if Q.le(e, a):
                acc = Q.join(acc, e)
        if acc != a:
            return False
    return True


def is_boolean_lattice(Q: Quantale) -> bool:
    return len(complemented(Q.lat)) == Q.n


def is_normal_lattice(F: Quantale) -> bool:
    """x v y = 1 splits by u, v with x v u = y v v = 1 and u ^ v = 0 (F a frame)."""
    return is_normal(F)


def conormal_witness(F: Quantale):
    """First pair x ^ y = 0 not split by u, v with x ^ u = y ^ v = 0 and u v v = 1."""
    M, J = F.lat.meet_table, F.lat.join_table
    for x in range(F.n):
        for y in range(x, F.n):
            if M[x][y] != F.bottom:
                continue
            U = [u for u in range(F.n) if M[x][u] == F.bottom]
            V = [v for v in range(F.n) if M[y][v] == F.bottom]
            if not any(J[u][v] == F.top for u in U for v in V):
                return (x, y)
    return None


def is_conormal_lattice(F: Quantale) -> bool:
    return conormal_witness(F) is None


def find_retraction(
    source: FiniteTopology, target: FiniteTopology, allowed: Callable[[int, int], bool]
) -> dict[int, int] | None:
    """A continuous map source -> target fixing target pointwise, with allowed(p, image)."""
    fixed = set(target.points)
    free = [p for p in source.points if p not in fixed]
    options = [[m for m in target.points if allowed(p, m)] for p in free]
    for choice in itertools.product(*options):
        f = {m: m for m in fixed}
        f.update(zip(free, choice))
        if is_continuous(f, source, target):
            return f
    return None


# --- analysis context -------------------------------------------------------


class Analysis:
    """Everything a theorem clause may need, computed once per quantale."""

    def __init__(self, Q: Quantale):
        self.Q = Q
        self._intervals: dict[int, Quantale] = {}

    def interval(self, a: int) -> Quantale:
        if a not in self._intervals:
            self._intervals[a] = interval_quantale(self.Q, a).quantale
        return self._intervals[a]

    @cached_property
    def spec(self):
        return m_primes(self.Q)

    @cached_property
    def max(self):
        return max_elements(self.Q)

    @cached_property
    def min(self):
        return min_primes(self.Q)

    @cached_property
    def rho(self):
        return radical_map(self.Q)

    @cached_property
    def r0(self) -> int:
        return self.rho[self.Q.bottom]

    @cached_property
    def jac(self) -> int:
        return jacobson(self.Q)

    @cached_property
    def B(self):
        return boolean_center(self.Q)

    @cached_property
    def ret(self):
        return build_reticulation(self.Q)

    @cached_property
    def L(self):
        return self.ret.lattice

    @cached_property
    def LF(self) -> Quantale:
        return self.ret.frame

    @cached_property
    def uv(self):
        return spec_transfer_maps(self.ret)

    @cached_property
    def RA(self) -> Quantale:
        return radical_frame(self.Q).quantale

    @cached_property
    def Z(self):
        return zariski(self.Q)

    @cached_property
    def F(self):
        return flat(self.Q)

    @cached_property
    def P(self):
        return patch(self.Q)

    @cached_property
    def max_Z(self):
        return subspace(self.Z, mask(self.max))

    @cached_property
    def max_F(self):
        return subspace(self.F, mask(self.max))

    @cached_property
    def min_Z(self):
        return subspace(self.Z, mask(self.min))

    @cached_property
    def min_F(self):
        return subspace(self.F, mask(self.min))

    @cached_property
    def stars(self) -> tuple[int, ...]:
        return tuple(star(self.ret, a).generator for a in range(self.Q.n))

    def props(self, name: str):
        cache = self.__dict__.setdefault("_props", {})
        if name not in cache:
            cache[name] = space_properties(getattr(self, name))
        return cache[name]

    # class flags, cached
    @cached_property
    def hyper(self) -> bool:
        return is_hyperarchimedean(self.Q)

    @cached_property
    def normal(self) -> bool:
        return is_normal(self.Q)

    @cached_property
    def b_normal(self) -> bool:
        return is_b_normal(self.Q)

    @cached_property
    def mp(self) -> bool:
        return is_mp(self.Q)

    @cached_property
    def pf(self) -> bool:
        return is_pf(self.Q)

    @cached_property
    def semiprime(self) -> bool:
        return self.r0 == self.Q.bottom

    @cached_property
    def gamma(self) -> dict[int, int] | None:
        """p -> its unique maximal element above, when every prime has exactly one."""
        out = {}
        for p in self.spec:
            above = [m for m in self.max if self.Q.le(p, m)]
            if len(above) != 1:
                return None
            out[p] = above[0]
        return out

    @cached_property
    def spec_small(self) -> bool:
        return len(self.spec) <= RETRACTION_SPEC_LIMIT


# --- reports ----------------------------------------------------------------


@dataclass
class Clause:
    label: str
    value: Any
    vacuous: bool = False
    skipped: bool = False
    witness: Any = None
    note: str = ""

    def as_dict(self, Q: Quantale | None = None) -> dict:
        return {
            "label": self.label,
            "value": _render(self.value, Q),
            "vacuous": self.vacuous,
            "skipped": self.skipped,
            "witness": _render(self.witness, Q),
            "note": self.note,
        }


def _render(v, Q):
    if isinstance(v, (bool, type(None), str)):
        return v
    if isinstance(v, (frozenset, set)):
        return sorted((_render(x, Q) for x in v), key=str)
    if isinstance(v, (tuple, list)):
        return [_render(x, Q) for x in v]
    if isinstance(v, (int, np.integer)) and Q is not None and 0 <= int(v) < Q.n:
        return Q.label(int(v))
    return v if isinstance(v, (int, float)) else str(v)


@dataclass
class EquivalenceReport:
    theorem_id: str
    name: str
    shape: str
    applicable: bool
    hypothesis: str
    clauses: list[Clause]
    verdict: str
    vacuous_consistent: bool = True

    @property
    def vacuous_labels(self) -> list[str]:
        return [c.label for c in self.clauses if c.vacuous]

    def as_dict(self, Q: Quantale | None = None) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "name": self.name,
            "shape": self.shape,
            "applicable": self.applicable,
            "hypothesis": self.hypothesis,
            "verdict": self.verdict,
            "vacuous_consistent": self.vacuous_consistent,
            "clauses": [c.as_dict(Q) for c in self.clauses],
        }


@dataclass(frozen=True)
class Theorem:
    theorem_id: str
    name: str
    shape: str  # equiv | implies | assert
    evaluate: Callable[[Analysis], list[Clause]]
    hypothesis: str = ""
    guard: Callable[[Analysis], bool] | None = None
    converse_guard: Callable[[Analysis], bool] | None = None


def _verdict(th: Theorem, clauses: list[Clause], X: Analysis) -> tuple[str, bool]:
    live = [c for c in clauses if not c.vacuous and not c.skipped]
    vals = [c.value for c in live]
    if th.shape == "assert":
        ok = all(v is True for v in vals)
    elif th.shape == "implies":
        ok = not live or live[0].value is not True or all(v is True for v in vals[1:])
        if ok and th.converse_guard is not None and th.converse_guard(X):
            ok = all(v == vals[0] for v in vals)
    else:
        ok = all(v == vals[0] for v in vals)
    # a vacuous clause is true on every finite space; live clauses equivalent to it must be too
    vac_ok = True
    if th.shape == "equiv" and any(c.vacuous for c in clauses):
        vac_ok = all(v is True for v in vals if isinstance(v, bool))
    return (ALL_EQUAL if ok else MISMATCH), vac_ok


def _compact(label: str) -> Clause:
    return Clause(label, True, vacuous=True, note="every finite space is compact")


def _c(label: str, pair, note: str = "") -> Clause:
    ok, w = pair if isinstance(pair, tuple) else (pair, None)
    return Clause(label, bool(ok), witness=None if ok else w, note=note)


# --- clause builders ----------------------------------------------------------


def _distinct_pairs(S):
    S = sorted(S)
    return [(p, q) for p in S for q in S if p != q]


def _split_distinct_primes(X: Analysis, target: int):
    """For distinct primes p, q: some c not below p, d not below q with cd = target."""
    Q = X.Q
    T = np.array(Q.mul)
    P = Q.lat.order_array

    def ok(pq):
        p, q = pq
        C, D = np.flatnonzero(~P[:, p]), np.flatnonzero(~P[:, q])
        return bool((T[np.ix_(C, D)] == target).any())

    return _first(_distinct_pairs(X.spec), ok)


def _lattice_separates_primes(X: Analysis):
    """For distinct prime ideals of L(A): x outside one, y outside the other, x ^ y = 0."""
    L = X.L
    primes = [p for p in range(L.n) if p in _meet_primes(X)]

    def ok(MN):
        m, n = MN
        return any(
            L.meet_table[x][y] == L.bottom
            for x in range(L.n)
            if not L.leq[x][m]
            for y in range(L.n)
            if not L.leq[y][n]
        )

    return _first(_distinct_pairs(primes), ok)


def _meet_primes(X: Analysis):
    return m_primes(X.LF)


def _hyper_clauses(X: Analysis) -> list[Clause]:
    Q = X.Q
    w = hyperarchimedean_witness(Q)
    return [Clause("A is hyperarchimedean", w is None, witness=w)]


def _eval_hyper_char(X: Analysis):
    return _hyper_clauses(X) + [
        Clause("L(A) is a Boolean algebra", is_boolean_lattice(X.LF)),
        Clause("Spec(A) = Max(A)", X.spec == X.max, witness=sorted(X.spec - X.max) or None),
        Clause("[rho(0)) is hyperarchimedean", is_hyperarchimedean(X.interval(X.r0))),
        Clause("R(A) is a hyperarchimedean frame", is_hyperarchimedean(X.RA)),
        Clause("R(A) is a zero-dimensional frame", is_zero_dimensional_frame(X.RA)),
    ]


def _eval_lattice_boolean(X: Analysis):
    L = X.L
    return [
        Clause("L is a Boolean algebra", is_boolean_lattice(X.LF)),
        Clause("prime ideals of L are maximal", _meet_primes(X) == coatoms(L)),
        _c("distinct prime ideals separated by disjoint elements", _lattice_separates_primes(X)),
    ]


def _eval_prime_separation(X: Analysis):
    return [
        _c("distinct primes separated by c, d with cd = 0", _split_distinct_primes(X, X.Q.bottom)),
        _c("distinct prime ideals of L(A) separated by x ^ y = 0", _lattice_separates_primes(X)),
    ]


def _eval_hyper_separation(X: Analysis):
    return _hyper_clauses(X) + [
        Clause("L(A) is a Boolean algebra", is_boolean_lattice(X.LF)),
        _c("distinct prime ideals of L(A) separated by x ^ y = 0", _lattice_separates_primes(X)),
        _c("distinct primes separated by c, d with cd = 0", _split_distinct_primes(X, X.Q.bottom)),
    ]


def _eval_hyper_rho(X: Analysis):
    return _hyper_clauses(X) + [
        _c("distinct primes separated by c, d with cd = rho(0)", _split_distinct_primes(X, X.r0)),
    ]


def _eval_hyper_topological(X: Analysis):
    z, f = X.props("Z"), X.props("F")
    note = "compactness conjunct is vacuous"
    return _hyper_clauses(X) + [
        _c("distinct primes separated by c, d with cd = 0", _split_distinct_primes(X, X.Q.bottom)),
        Clause("Spec_Z is Hausdorff", z.hausdorff),
        Clause("Spec_Z is a Boolean space", z.boolean_space, note=note),
        Clause("Zariski = patch", X.Z.opens == X.P.opens),
        Clause("Spec_F is Hausdorff", f.hausdorff),
        Clause("Spec_F is a Boolean space", f.boolean_space, note=note),
        Clause("Zariski = flat", X.Z.opens == X.F.opens),
    ]


def _eval_max_flat_clopen(X: Analysis):
    Q, MF = X.Q, X.max_F
    mx = mask(X.max)
    return [
        _c(
            "V(c) restricted to Max is clopen in Max_F for every c",
            _first(range(Q.n), lambda c: (mask(p for p in X.max if Q.le(c, p)) & mx) in MF.clopens),
        )
    ]


def _eval_max_flat_props(X: Analysis):
    pr = X.props("max_F")
    return [Clause("Max_F is Hausdorff", pr.hausdorff), Clause("Max_F is zero-dimensional", pr.zero_dimensional)]


def _eval_max_flat_compact(X: Analysis):
    return [_compact("Max_F is compact"), Clause("[r(A)) is hyperarchimedean", is_hyperarchimedean(X.interval(X.jac)))]


def _eval_max_finer(X: Analysis):
    return [Clause("Max_F refines Max_Z", X.max_Z.opens <= X.max_F.opens)]


def _eval_max_coincide(X: Analysis):
    return [
        _compact("Max_F is compact"),
        Clause("Max_Z = Max_F", X.max_Z.opens == X.max_F.opens),
        Clause("[r(A)) is hyperarchimedean", is_hyperarchimedean(X.interval(X.jac))),
    ]


def _eval_normal_reticulation(X: Analysis):
    return [
        Clause("A is normal", X.normal, witness=normal_witness(X.Q)),
        Clause("L(A) is a normal lattice", is_normal_lattice(X.LF)),
    ]


def _max_retraction_clause(X: Analysis) -> Clause:
    label = "Max_Z has a continuous retraction from Spec_Z"
    if not X.spec_small:
        return Clause(label, None, skipped=True, note=f"|Spec| > {RETRACTION_SPEC_LIMIT}")
    f = find_retraction(X.Z, X.max_Z, lambda p, m: X.Q.le(p, m))
    return Clause(label, f is not None, witness=None if f is None else sorted(f.items()))


def _eval_normal_char(X: Analysis):
    Q = X.Q
    T = np.array(Q.mul)
    P = Q.lat.order_array
    U = X.Z.minimal_open

    def split_max(mn):
        m, n = mn
        C1, C2 = np.flatnonzero(~P[:, m]), np.flatnonzero(~P[:, n])
        return bool((T[np.ix_(C1, C2)] == Q.bottom).any())

    Z = X.Z
    return [
        Clause("A is normal", X.normal, witness=normal_witness(Q)),
        _c("distinct maximals separated by c1 c2 = 0", _first(_distinct_pairs(X.max), split_max)),
        _c("distinct maximals have disjoint Zariski neighbourhoods", _first(_distinct_pairs(X.max), lambda mn: not (U[mn[0]] & U[mn[1]]))),
        _c("each prime lies below a unique maximal", _first(sorted(X.spec), lambda p: sum(Q.le(p, m) for m in X.max) == 1)),
        Clause("Spec_Z is a normal space", X.props("Z").normal_space),
        _max_retraction_clause(X),
        _c(
            "Lambda(m) is Zariski closed for each maximal m",
            _first(sorted(X.max), lambda m: Z.is_closed(mask(p for p in X.spec if Q.le(p, m)))),
        ),
    ]


def _eval_gamma_flat(X: Analysis):
    g = X.gamma
    cont = g is not None and is_continuous(g, X.F, X.max_F)
    return [Clause("the retraction is flat continuous", cont), _compact("Max_F is compact")]


def _eval_normal_sufficient(X: Analysis):
    return [
        Clause("Max_Z is Hausdorff and rho(0) = r(A)", X.props("max_Z").hausdorff and X.r0 == X.jac),
        Clause("A is normal", X.normal),
    ]


def _eval_max_hausdorff(X: Analysis):
    return [
        Clause("Max_Z is Hausdorff", X.props("max_Z").hausdorff),
        Clause("[r(A)) is normal", is_normal(X.interval(X.jac))),
    ]


def _d_max(X: Analysis, e: int) -> int:
    return mask(m for m in X.max if not X.Q.le(e, m))


def _eval_max_clopens(X: Analysis):
    fam = frozenset(_d_max(X, e) for e in X.B)
    return [Clause("{D(e) & Max : e in B(A)} are the clopens of Max_Z", fam == X.max_Z.clopens)]


def _eval_b_normal_char(X: Analysis):
    Q = X.Q
    neg = Q.negations
    MZ = X.max_Z
    mz = X.props("max_Z")
    fam = {_d_max(X, e) for e in X.B}
    # a family is a basis iff every minimal neighbourhood is a union of members inside it
    basis = all(
        any((fb >> x) & 1 and fb & ~MZ.minimal_open[x] == 0 for fb in fam) for x in MZ.points
    ) and fam <= set(MZ.opens)
    ps = pierce_spectrum(Q)
    s_max = {m: ps.s[m] for m in X.max}
    homeo = len(set(s_max.values())) == len(s_max) and is_homeomorphism(s_max, MZ, ps.topology)
    return [
        Clause("A is B-normal", X.b_normal, witness=b_normal_witness(Q)),
        Clause("R(A) is a B-normal frame", is_b_normal(X.RA)),
        Clause("L(A) is a B-normal lattice", is_b_normal(X.LF)),
        _c(
            "distinct maximals p, q admit e in B(A) with e <= p and not e <= q",
            _first(_distinct_pairs(X.max), lambda pq: any(Q.le(e, pq[0]) and Q.le(neg[e], pq[1]) for e in X.B)),
        ),
        Clause("A is normal and Max_Z is zero-dimensional", X.normal and mz.zero_dimensional),
        Clause("A is normal and Max_Z is a Boolean space", X.normal and mz.boolean_space, note="compactness conjunct is vacuous"),
        Clause("{D(e) & Max : e in B(A)} is a basis of Max_Z", basis),
        Clause("s_A restricted to Max is a homeomorphism onto Sp(A)", homeo),
    ]


def _eval_b_normal_sufficient(X: Analysis):
    return [
        Clause("[r(A)) is hyperarchimedean", is_hyperarchimedean(X.interval(X.jac))),
        Clause("A is B-normal", X.b_normal),
    ]


def _ann_in_pstar(X: Analysis, c: int, p: int) -> bool:
    ret = X.ret
    ann = annihilator(ret, PrincipalIdeal(ret.lam[c])).generator
    return X.L.leq[ann][X.stars[p]]


def _eval_ann_prime(X: Analysis):
    Q = X.Q
    R = Q.residuation_table
    pairs = [(c, p) for c in range(Q.n) for p in sorted(X.spec)]
    return [
        Clause("pairs (c, p) with Ann(lam(c)) inside p*", frozenset(cp for cp in pairs if _ann_in_pstar(X, *cp))),
        Clause("pairs (c, p) with c -> rho(0) <= p", frozenset(cp for cp in pairs if Q.le(R[cp[0]][X.r0], cp[1]))),
    ]


def _eval_min_char(X: Analysis):
    Q, L, ret = X.Q, X.L, X.ret
    R = Q.residuation_table
    minimal_L = minimal_in(L, _meet_primes(X))

    def lattice_test(p):
        g = X.stars[p]
        return all(not _ann_in_pstar(X, c, p) for c in range(Q.n) if L.leq[ret.lam[c]][g])

    def residual_test(p):
        return all(Q.le(c, p) == (not Q.le(R[c][X.r0], p)) for c in range(Q.n))

    spec = sorted(X.spec)
    return [
        Clause("Min(A)", X.min),
        Clause("primes p with p* a minimal prime ideal", frozenset(p for p in spec if X.stars[p] in minimal_L)),
        Clause("primes p with Ann(lam(c)) outside p* whenever lam(c) in p*", frozenset(p for p in spec if lattice_test(p))),
        Clause("primes p with c <= p iff c -> rho(0) not <= p", frozenset(p for p in spec if residual_test(p))),
    ]


def _eval_min_semiprime(X: Analysis):
    Q = X.Q
    neg = Q.negations
    test = lambda p: all(not Q.le(neg[c], p) for c in range(Q.n) if Q.le(c, p))
    return [
        Clause("Min(A)", X.min),
        Clause("primes p with c^perp not <= p whenever c <= p", frozenset(p for p in sorted(X.spec) if test(p))),
    ]


def _eval_min_homeomorphic(X: Analysis):
    u, _ = X.uv
    LF = X.LF
    mins_L = minimal_in(X.L, _meet_primes(X))
    tz = subspace(zariski(LF), mask(mins_L))
    tf = subspace(flat(LF), mask(mins_L))
    u_min = {p: u[p] for p in X.min}
    return [
        Clause("u is a homeomorphism Min_Z(A) -> Min_Z(L(A))", is_homeomorphism(u_min, X.min_Z, tz)),
        Clause("u is a homeomorphism Min_F(A) -> Min_F(L(A))", is_homeomorphism(u_min, X.min_F, tf)),
    ]


def _eval_lattice_min_spaces(X: Analysis):
    LF, L = X.LF, X.L
    mins_L = mask(minimal_in(L, _meet_primes(X)))
    tz, tf = subspace(zariski(LF), mins_L), subspace(flat(LF), mins_L)
    M, J = L.meet_table, L.join_table

    def has_complement_like(x):
        return any(
            M[x][y] == L.bottom and all(M[J[x][y]][z] != L.bottom or z == L.bottom for z in range(L.n))
            for y in range(L.n)
        )

    return [
        Clause("Min_Z(L) = Min_F(L)", tz.opens == tf.opens),
        _compact("Min_Z(L) is compact"),
        Clause("Min_Z(L) is a Boolean space", space_properties(tz).boolean_space, note="compactness conjunct is vacuous"),
        _c("every x has y with x ^ y = 0 and Ann(x v y) = 0", _first(range(L.n), has_complement_like)),
    ]


def _eval_min_spaces(X: Analysis):
    Q = X.Q
    neg, T, J = Q.negations, Q.mul, Q.lat.join_table
    return [
        Clause("Min_Z = Min_F", X.min_Z.opens == X.min_F.opens),
        _compact("Min_Z is compact"),
        Clause("Min_Z is a Boolean space", X.props("min_Z").boolean_space, note="compactness conjunct is vacuous"),
        _c(
            "every c has d with cd = 0 and (c v d)^perp = 0",
            _first(range(Q.n), lambda c: any(T[c][d] == Q.bottom and neg[J[c][d]] == Q.bottom for d in range(Q.n))),
        ),
    ]


def _unique_min_prime_ideal(X: Analysis):
    L = X.L
    primes = _meet_primes(X)
    mins = minimal_in(L, primes)
    return _first(sorted(primes), lambda P: sum(L.leq[m][P] for m in mins) == 1)


def _eval_conormal_unique(X: Analysis):
    return [
        Clause("L(A) is conormal", is_conormal_lattice(X.LF), witness=conormal_witness(X.LF)),
        _c("each prime ideal of L(A) contains a unique minimal prime ideal", _unique_min_prime_ideal(X)),
    ]


def _mp_clause(X: Analysis) -> Clause:
    return Clause("A is an mp-quantale", X.mp, witness=mp_witness(X.Q))


def _eval_mp_conormal(X: Analysis):
    return [_mp_clause(X), Clause("L(A) is conormal", is_conormal_lattice(X.LF), witness=conormal_witness(X.LF))]


def _eval_mp_model(X: Analysis):
    return [_mp_clause(X), Clause("Id(L(A)) is an mp-frame", is_mp(X.LF))]


def _min_retraction(Q: Quantale, limit_ok: bool) -> Clause:
    label = "Min_F has a flat continuous retraction from Spec_F"
    if not limit_ok:
        return Clause(label, None, skipped=True, note=f"|Spec| > {RETRACTION_SPEC_LIMIT}")
    F = flat(Q)
    MF = subspace(F, mask(min_primes(Q)))
    f = find_retraction(F, MF, lambda p, m: Q.le(m, p))
    return Clause(label, f is not None, witness=None if f is None else sorted(f.items()))


def _eval_retraction_model(X: Analysis):
    a = _min_retraction(X.Q, X.spec_small)
    b = _min_retraction(X.LF, len(m_primes(X.LF)) <= RETRACTION_SPEC_LIMIT)
    b.label = "Min_F(L(A)) has a flat continuous retraction from Spec_F(L(A))"
    return [a, b]


def _eval_mp_char(X: Analysis):
    Q = X.Q
    F = X.F
    return [
        _mp_clause(X),
        _c("distinct minimal primes join to top", _first(_distinct_pairs(X.min), lambda pq: Q.join(*pq) == Q.top)),
        Clause("R(A) is an mp-frame", is_mp(X.RA)),
        Clause("[rho(0)) is an mp-quantale", is_mp(X.interval(X.r0))),
        _min_retraction(Q, X.spec_small),
        Clause("Spec_F is a normal space", X.props("F").normal_space),
        _c(
            "V(p) is flat closed for each minimal prime p",
            _first(sorted(X.min), lambda p: F.is_closed(mask(q for q in X.spec if Q.le(p, q)))),
        ),
    ]


def _eval_conormal_sigma(X: Analysis):
    ret, L = X.ret, X.L
    mins = minimal_in(L, _meet_primes(X))
    return [
        Clause("L(A) is conormal", is_conormal_lattice(X.LF)),
        _c(
            "Ann(x) is a sigma-ideal for every x",
            _first(range(L.n), lambda x: is_sigma_ideal(ret, annihilator(ret, PrincipalIdeal(x)))),
        ),
        _c("minimal prime ideals are sigma-ideals", _first(sorted(mins), lambda P: is_sigma_ideal(ret, PrincipalIdeal(P)))),
    ]


def _pf_clause(X: Analysis) -> Clause:
    return Clause("A is a PF-quantale", X.pf, witness=pf_witness(X.Q))


def _eval_pf_semiprime(X: Analysis):
    return [_pf_clause(X), Clause("A is semiprime", X.semiprime)]


def _eval_pf_conormal(X: Analysis):
    return [_pf_clause(X), Clause("L(A) is conormal", is_conormal_lattice(X.LF))]


def _eval_pf_char(X: Analysis):
    return [_pf_clause(X), Clause("A is a semiprime mp-quantale", X.semiprime and X.mp)]


def _min_pure_clause(X: Analysis) -> Clause:
    ok, w = _first(sorted(X.min), lambda p: is_pure(X.Q, p))
    return Clause("every minimal prime is pure", ok, witness=w)


def _eval_min_pure(X: Analysis):
    return [_min_pure_clause(X), _mp_clause(X)]


def _eval_pf_min_pure(X: Analysis):
    return [_pf_clause(X), _min_pure_clause(X)]


def _eval_pf_full(X: Analysis):
    Q = X.Q
    neg, T, J = Q.negations, Q.mul, Q.lat.join_table
    pairs = [(c, d) for c in range(Q.n) for d in range(Q.n)]
    return [
        _pf_clause(X),
        Clause("A is a semiprime mp-quantale", X.semiprime and X.mp),
        _c(
            "cd = 0 implies c^perp v d^perp = 1",
            _first(pairs, lambda cd: T[cd[0]][cd[1]] != Q.bottom or J[neg[cd[0]]][neg[cd[1]]] == Q.top),
        ),
        _c("(cd)^perp = c^perp v d^perp", _first(pairs, lambda cd: neg[T[cd[0]][cd[1]]] == J[neg[cd[0]]][neg[cd[1]]])),
        _c("every c^perp is pure", _first(range(Q.n), lambda c: is_pure(Q, neg[c]))),
    ]


_normal = lambda X: X.normal
_semiprime = lambda X: X.semiprime

REGISTRY: dict[str, Theorem] = {
    t.theorem_id: t
    for t in [
        Theorem("P6.2", "hyperarchimedean: algebraic characterizations", "equiv", _eval_hyper_char),
        Theorem("L6.3", "Boolean reticulation via prime ideals", "equiv", _eval_lattice_boolean),
        Theorem("P6.4", "prime separation in A and in L(A)", "equiv", _eval_prime_separation),
        Theorem("P6.5", "hyperarchimedean: prime separation", "equiv", _eval_hyper_separation),
        Theorem("C6.6", "hyperarchimedean: separation modulo rho(0)", "equiv", _eval_hyper_rho),
        Theorem("T6.8", "hyperarchimedean: topological characterizations", "equiv", _eval_hyper_topological),
        Theorem("L7.1", "V(c) is clopen in Max_F", "assert", _eval_max_flat_clopen),
        Theorem("P7.2", "Max_F is Hausdorff and zero-dimensional", "assert", _eval_max_flat_props),
        Theorem("T7.3", "Max_F compact iff [r(A)) hyperarchimedean", "equiv", _eval_max_flat_compact),
        Theorem("P7.4", "Max_F refines Max_Z", "assert", _eval_max_finer),
        Theorem("P7.5", "Max_Z = Max_F characterizations", "equiv", _eval_max_coincide),
        Theorem("P7.6", "normal iff normal reticulation", "equiv", _eval_normal_reticulation),
        Theorem("P7.7", "normal: characterizations", "equiv", _eval_normal_char),
        Theorem("T7.9", "flat continuity of the maximal retraction", "equiv", _eval_gamma_flat, "A is normal", _normal),
        Theorem("P7.10", "Hausdorff Max_Z with rho(0) = r(A) gives normality", "implies", _eval_normal_sufficient),
        Theorem("C7.11", "Max_Z Hausdorff iff [r(A)) normal", "equiv", _eval_max_hausdorff),
        Theorem("L7.12", "clopens of Max_Z come from B(A)", "assert", _eval_max_clopens, "A is normal", _normal),
        Theorem("T7.13", "B-normal: characterizations", "equiv", _eval_b_normal_char),
        Theorem(
            "C7.14", "hyperarchimedean [r(A)) gives B-normality", "implies", _eval_b_normal_sufficient,
            "A is normal", _normal,
        ),
        Theorem("L8.2", "annihilator containment vs residual below p", "equiv", _eval_ann_prime),
        Theorem("P8.3", "minimal primes: characterizations", "equiv", _eval_min_char),
        Theorem("C8.4", "minimal primes via negation", "equiv", _eval_min_semiprime, "A is semiprime", _semiprime),
        Theorem("L8.5", "minimal spectra transfer to L(A)", "assert", _eval_min_homeomorphic),
        Theorem("P8.7", "minimal prime ideal spaces of L(A)", "equiv", _eval_lattice_min_spaces),
        Theorem("T8.8", "Min_Z = Min_F characterizations", "equiv", _eval_min_spaces, "A is semiprime", _semiprime),
        Theorem("P8.9", "conormal iff unique minimal prime ideal", "equiv", _eval_conormal_unique),
        Theorem("C8.10", "mp iff conormal reticulation", "equiv", _eval_mp_conormal),
        Theorem("L8.12", "mp transfers along the reticulation", "equiv", _eval_mp_model),
        Theorem("P8.13", "flat retraction transfers along the reticulation", "equiv", _eval_retraction_model),
        Theorem("T8.14", "mp: characterizations", "equiv", _eval_mp_char),
        Theorem("P8.16", "conormal iff annihilators are sigma-ideals", "equiv", _eval_conormal_sigma),
        Theorem("L8.17", "PF implies semiprime", "implies", _eval_pf_semiprime),
        Theorem("P8.18", "PF implies conormal reticulation", "implies", _eval_pf_conormal),
        Theorem("T8.19", "PF iff semiprime mp", "equiv", _eval_pf_char),
        Theorem(
            "T8.20", "pure minimal primes vs mp", "implies", _eval_min_pure,
            "converse needs A semiprime", None, _semiprime,
        ),
        Theorem("C8.21", "PF iff pure minimal primes", "equiv", _eval_pf_min_pure, "A is semiprime", _semiprime),
        Theorem("T8.22", "PF: characterizations", "equiv", _eval_pf_full),
    ]
}


def theorem_ids() -> list[str]:
    return list(REGISTRY)


def verify_theorem(Q: Quantale, theorem_id: str, analysis: Analysis | None = None) -> EquivalenceReport:
    if theorem_id not in REGISTRY:
        raise UnknownTheorem(theorem_id)
    th = REGISTRY[theorem_id]
    X = analysis if analysis is not None else Analysis(Q)
    applicable = th.guard is None or bool(th.guard(X))
    clauses = th.evaluate(X)
    if applicable:
        verdict, vac_ok = _verdict(th, clauses, X)
    else:
        verdict, vac_ok = ALL_EQUAL, True
    return EquivalenceReport(
        theorem_id=th.theorem_id,
        name=th.name,
        shape=th.shape,
        applicable=applicable,
        hypothesis=th.hypothesis,
        clauses=clauses,
        verdict=verdict,
        vacuous_consistent=vac_ok,
    )


# --- aggregate --------------------------------------------------------------


@dataclass
class ClassReport:
    hyperarchimedean: bool
    normal: bool
    b_normal: bool
    b_normal_literal: bool
    mp: bool
    pf: bool
    semiprime: bool
    witnesses: dict[str, Any] = field(default_factory=dict)
    theorems: list[EquivalenceReport] = field(default_factory=list)

    def flags(self) -> dict[str, bool]:
        return {
            "hyperarchimedean": self.hyperarchimedean,
            "normal": self.normal,
            "b_normal": self.b_normal,
            "b_normal_literal": self.b_normal_literal,
            "mp": self.mp,
            "pf": self.pf,
            "semiprime": self.semiprime,
        }

    @property
    def mismatches(self) -> list[EquivalenceReport]:
        return [r for r in self.theorems if r.verdict != ALL_EQUAL]


def classify_all(
    Q: Quantale, theorems: list[str] | None = None, raise_on_mismatch: bool = True, analysis: Analysis | None = None
) -> ClassReport:
    X = analysis if analysis is not None else Analysis(Q)
    ids = theorem_ids() if theorems is None else list(theorems)
    reports = [verify_theorem(Q, t, X) for t in ids]
    rep = ClassReport(
        hyperarchimedean=X.hyper,
        normal=X.normal,
        b_normal=X.b_normal,
        b_normal_literal=is_b_normal_literal(Q),
        mp=X.mp,
        pf=X.pf,
        semiprime=X.semiprime,
        witnesses={
            "hyperarchimedean": hyperarchimedean_witness(Q),
            "normal": normal_witness(Q),
            "b_normal": b_normal_witness(Q),
            "mp": mp_witness(Q),
            "pf": pf_witness(Q),
            "semiprime": None if X.semiprime else X.r0,
        },
        theorems=reports,
    )
    if raise_on_mismatch and rep.mismatches:
        raise TheoremMismatch(rep.mismatches)
    return rep


@dataclass(frozen=True)
class FiniteScaleFact:
    label: str
    holds: bool
    detail: str = ""


def finite_scale_facts(Q: Quantale, analysis: Analysis | None = None) -> list[FiniteScaleFact]:
    """Coincidences forced by finiteness; each one makes some theorem clause degenerate."""
    X = analysis if analysis is not None else Analysis(Q)
    g = X.gamma
    return [
        FiniteScaleFact("Max_Z is discrete", X.props("max_Z").discrete, "T1 and finite"),
        FiniteScaleFact("Min_Z = Min_F", X.min_Z.opens == X.min_F.opens, "both discrete at finite scale"),
        FiniteScaleFact("normal iff B-normal", X.normal == X.b_normal, "Max_Z is always zero-dimensional"),
        FiniteScaleFact("[r(A)) is hyperarchimedean", is_hyperarchimedean(X.interval(X.jac)), "Max_F is compact"),
        FiniteScaleFact("patch topology is discrete", X.props("P").discrete, "finite Hausdorff"),
        FiniteScaleFact(
            "maximal retraction is flat continuous when normal",
            g is None or is_continuous(g, X.F, X.max_F),
            "Max_F is compact",
        ),
    ]
