"""Instance generators: ideals of Z_n, chains, downset frames, products, random search."""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import Quantale, frame_of, interval_quantale, validate_quantale
from .lattice import (
    JoinNotLUB,
    MAX_ELEMENTS,
    MeetNotGLB,
    NotAPartialOrder,
    TooLarge,
    ValidationError,
    lattice_from_order,
    validate_lattice,
)

MAX_POSET_POINTS = 12
MAX_RANDOM_SIZE = 8
RANDOM_NODE_BUDGET = 100_000


class BadModulus(ValueError):
    pass


class NotFound(LookupError):
    """The random search exhausted its budget without producing a quantale."""


class BadInstanceSpec(ValueError):
    pass


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=256)
def zn_ideals(n: int) -> Quantale:
    """Id(Z_n): the ideal dZ_n for each divisor d, labelled ``"dZ"``."""
    if not isinstance(n, int) or n < 2 or n > 10**6:
        raise BadModulus(f"modulus must be an integer in 2..10^6, got {n!r}")
    ds = divisors(n)
    loc = {d: i for i, d in enumerate(ds)}
    leq = [[d % e == 0 for e in ds] for d in ds]  # dZ <= eZ iff e | d
    join = [[loc[math.gcd(d, e)] for e in ds] for d in ds]
    meet = [[loc[d * e // math.gcd(d, e)] for e in ds] for d in ds]
    mul = [[loc[math.gcd(d * e, n)] for e in ds] for d in ds]
    lat = validate_lattice(leq, join, meet, [f"{d}Z" for d in ds])
    return validate_quantale(lat, mul)


def chain_frame(k: int) -> Quantale:
    if k < 2:
        raise ValueError(f"a chain frame needs at least 2 elements, got {k}")
    leq = [[i <= j for j in range(k)] for i in range(k)]
    return frame_of(lattice_from_order(leq, [str(i) for i in range(k)]))


def f5() -> Quantale:
    """The frame 0 < a, b < c < 1 with a v b = c."""
    names = ["0", "a", "b", "c", "1"]
    below = {"0": set(names), "a": {"a", "c", "1"}, "b": {"b", "c", "1"}, "c": {"c", "1"}, "1": {"1"}}
    leq = [[y in below[x] for y in names] for x in names]
    return frame_of(lattice_from_order(leq, names))


def _poset_matrix(points: int, relations) -> np.ndarray:
    """Reflexive-transitive closure of ``relations``; rejects cycles."""
    if points > MAX_POSET_POINTS:
        raise TooLarge(f"{points} points exceeds the downset limit of {MAX_POSET_POINTS}", (points,))
    P = np.eye(points, dtype=bool)
    for a, b in relations:
        if not (0 <= a < points and 0 <= b < points):
            raise NotAPartialOrder(f"relation {a}<{b} names a point outside 0..{points - 1}", (a, b))
        P[a, b] = True
    for k in range(points):
        P |= P[:, [k]] & P[[k], :]
    both = P & P.T & ~np.eye(points, dtype=bool)
    if both.any():
        a, b = (int(v) for v in np.argwhere(both)[0])
        raise NotAPartialOrder(f"relations form a cycle through {a} and {b}", (a, b))
    return P


def _downsets(P: np.ndarray) -> list[int]:
    k = P.shape[0]
    down = [sum(1 << j for j in range(k) if P[j, i]) for i in range(k)]
    out = []
    for m in range(1 << k):
        if all(not (m >> i) & 1 or (down[i] & ~m) == 0 for i in range(k)):
            out.append(m)
    return out


def _set_label(m: int) -> str:
    pts = [str(i) for i in range(m.bit_length()) if (m >> i) & 1]
    return "{" + ",".join(pts) + "}"


def downset_frame(points: int, relations=()) -> Quantale:
    """Downsets of a finite poset under inclusion; ``relations`` are pairs a < b."""
    P = _poset_matrix(points, relations)
    ds = _downsets(P)
    if len(ds) > MAX_ELEMENTS:
        raise TooLarge(f"{len(ds)} downsets exceeds {MAX_ELEMENTS}", (len(ds),))
    loc = {m: i for i, m in enumerate(ds)}
    leq = [[(a & ~b) == 0 for b in ds] for a in ds]
    join = [[loc[a | b] for b in ds] for a in ds]
    meet = [[loc[a & b] for b in ds] for a in ds]
    return frame_of(validate_lattice(leq, join, meet, [_set_label(m) for m in ds]))


def boolean_frame(k: int) -> Quantale:
    return downset_frame(k, ())


def product(Q1: Quantale, Q2: Quantale) -> Quantale:
    n1, n2 = Q1.n, Q2.n
    if n1 * n2 > MAX_ELEMENTS:
        raise TooLarge(f"product has {n1 * n2} elements, limit {MAX_ELEMENTS}", (n1 * n2,))
    pairs = [(a, b) for a in range(n1) for b in range(n2)]

    def idx(a, b):
        return a * n2 + b

    leq = [[Q1.le(a, c) and Q2.le(b, d) for c, d in pairs] for a, b in pairs]
    join = [[idx(Q1.join(a, c), Q2.join(b, d)) for c, d in pairs] for a, b in pairs]
    meet = [[idx(Q1.meet(a, c), Q2.meet(b, d)) for c, d in pairs] for a, b in pairs]
    mul = [[idx(Q1.mul[a][c], Q2.mul[b][d]) for c, d in pairs] for a, b in pairs]
    names = [f"({Q1.label(a)},{Q2.label(b)})" for a, b in pairs]
    return validate_quantale(validate_lattice(leq, join, meet, names), mul)


def _random_lattice(rng: random.Random, size: int):
    """Bottom 0, top size-1, random order among the rest; retried until a lattice."""
    for _ in range(1000):
        mids = range(1, size - 1)
        rel = [(0, i) for i in range(1, size)] + [(i, size - 1) for i in mids]
        density = rng.random()
        rel += [(i, j) for i in mids for j in mids if i < j and rng.random() < density]
        P = _poset_matrix(size, rel)
        try:
            return lattice_from_order(P, [str(i) for i in range(size)])
        except (JoinNotLUB, MeetNotGLB):
            continue
    raise NotFound("no lattice found")


def _search_multiplication(rng: random.Random, lat, budget: list[int]):
    """Randomized backtracking over commutative, integral, monotone, sub-meet tables."""
    n = lat.n
    bot, top = lat.bottom, lat.top
    T = [[-1] * n for _ in range(n)]
    for a in range(n):
        T[a][top] = T[top][a] = a
        T[a][bot] = T[bot][a] = bot
    free = [(a, b) for a in range(n) for b in range(a, n) if T[a][b] < 0]
    leq, J, M = lat.leq, lat.join_table, lat.meet_table

    def consistent(a, b):
        v = T[a][b]
        for c in range(n):
            for x, y in ((a, b), (b, a)):
                # monotone in the second argument
                w = T[x][c]
                if w >= 0:
                    if leq[y][c] and not leq[v][w]:
                        return False
                    if leq[c][y] and not leq[w][v]:
                        return False
                # x(y v c) = xy v xc
                w2, w3 = T[x][c], T[x][J[y][c]]
                if w2 >= 0 and w3 >= 0 and w3 != J[v][w2]:
                    return False
        return True

    def place(i):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if i == len(free):
            try:
                return validate_quantale(lat, T)
            except ValidationError:
                return None
        a, b = free[i]
        cands = [v for v in range(n) if leq[v][M[a][b]]]
        rng.shuffle(cands)
        for v in cands:
            T[a][b] = T[b][a] = v
            if consistent(a, b):
                got = place(i + 1)
                if got is not None:
                    return got
        T[a][b] = T[b][a] = -1
        return None

    return place(0)


def random_quantale(seed: int, size: int) -> Quantale:
    """Deterministic seeded search; raises NotFound once the node budget is spent."""
    if not 2 <= size <= MAX_RANDOM_SIZE:
        raise ValueError(f"random size must be in 2..{MAX_RANDOM_SIZE}, got {size}")
    rng = random.Random(f"{seed}:{size}")
    budget = [RANDOM_NODE_BUDGET]
    while budget[0] > 0:
        lat = _random_lattice(rng, size)
        Q = _search_multiplication(rng, lat, budget)
        if Q is not None:
            return Q
    raise NotFound(f"no quantale of size {size} for seed {seed} within {RANDOM_NODE_BUDGET} nodes")


# --- poset enumeration ----------------------------------------------------


def posets_up_to_iso(points: int) -> list[tuple[tuple[int, int], ...]]:
    """All partial orders on ``points`` points up to isomorphism, as cover relations a < b."""
    pairs = [(a, b) for a in range(points) for b in range(points) if a < b]
    seen = set()
    out = []
    perms = list(itertools.permutations(range(points)))
    # every poset has a linear extension, so orders with a < b only on index order cover all classes
    for bits in range(1 << len(pairs)):
        rel = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
        P = np.eye(points, dtype=bool)
        for a, b in rel:
            P[a, b] = True
        closed = P.copy()
        for k in range(points):
            closed |= closed[:, [k]] & closed[[k], :]
        if not (closed == P).all():
            continue
        key = min(tuple(P[np.ix_(p, p)].flatten()) for p in map(list, perms))
        if key in seen:
            continue
        seen.add(key)
        covers = tuple(
            (a, b) for a, b in rel if not any(P[a, c] and P[c, b] for c in range(points) if c not in (a, b))
        )
        out.append(covers)
    return out


# --- instance specs -------------------------------------------------------

KINDS = ("zn_ideals", "chain_frame", "downset_frame", "boolean_frame", "f5", "product", "interval", "random")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    params: dict = field(default_factory=dict, hash=False, compare=True)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadInstanceSpec(f"unknown instance kind {self.kind!r}")

    def build(self) -> Quantale:
        p = self.params
        try:
            if self.kind == "zn_ideals":
                return zn_ideals(int(p["n"]))
            if self.kind == "chain_frame":
                return chain_frame(int(p["k"]))
            if self.kind == "boolean_frame":
                return boolean_frame(int(p["k"]))
            if self.kind == "f5":
                return f5()
            if self.kind == "downset_frame":
                return downset_frame(int(p["points"]), [tuple(r) for r in p.get("relations", ())])
            if self.kind == "random":
                return random_quantale(int(p["seed"]), int(p["size"]))
            if self.kind == "product":
                return product(InstanceSpec.from_dict(p["left"]).build(), InstanceSpec.from_dict(p["right"]).build())
            if self.kind == "interval":
                return _interval_of(InstanceSpec.from_dict(p["base"]).build(), str(p["at"]))
        except KeyError as exc:
            raise BadInstanceSpec(f"{self.kind} is missing parameter {exc}") from None
        raise BadInstanceSpec(self.kind)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params}

    @classmethod
    def from_dict(cls, d: dict) -> "InstanceSpec":
        if not isinstance(d, dict) or "kind" not in d:
            raise BadInstanceSpec(f"not an instance spec: {d!r}")
        return cls(d["kind"], dict(d.get("params", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "InstanceSpec":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        p = self.params
        if self.kind == "zn_ideals":
            return f"zn:{p['n']}"
        if self.kind == "chain_frame":
            return f"chain:{p['k']}"
        if self.kind == "boolean_frame":
            return f"boolean:{p['k']}"
        if self.kind == "f5":
            return "f5"
        if self.kind == "downset_frame":
            rel = ",".join(f"{a}<{b}" for a, b in p.get("relations", ()))
            return f"downset:{p['points']}:{rel}"
        if self.kind == "random":
            return f"random:{p['seed']}:{p['size']}"
        if self.kind == "product":
            return f"({InstanceSpec.from_dict(p['left'])})*({InstanceSpec.from_dict(p['right'])})"
        return f"interval:{p['at']}:{InstanceSpec.from_dict(p['base'])}"


def _interval_of(Q: Quantale, at: str) -> Quantale:
    from .spectra import jacobson, radical

    if at == "rho0":
        a = radical(Q, Q.bottom)
    elif at == "jacobson":
        a = jacobson(Q)
    elif at in Q.names:
        a = Q.names.index(at)
    else:
        raise BadInstanceSpec(f"interval point {at!r} is neither rho0, jacobson nor an element label")
    return interval_quantale(Q, a).quantale


def _split_product(text: str) -> list[str] | None:
    depth, parts, start = 0, [], 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if not parts:
        return None
    parts.append(text[start:])
    return parts


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(text) - 1:
                return text
        text = text[1:-1].strip()
    return text


def parse_spec(text: str) -> InstanceSpec:
    """Parse ``zn:12``, ``chain:3``, ``f5``, ``boolean:2``, ``downset:3:0<2,1<2``,
    ``random:SEED:SIZE``, ``interval:rho0:<spec>`` or ``A*B``."""
    text = _strip_parens(text)
    parts = _split_product(text)
    if parts is not None:
        specs = [parse_spec(p) for p in parts]
        acc = specs[0]
        for s in specs[1:]:
            acc = InstanceSpec("product", {"left": acc.to_dict(), "right": s.to_dict()})
        return acc
    head, _, rest = text.partition(":")
    try:
        if head == "zn":
            return InstanceSpec("zn_ideals", {"n": int(rest)})
        if head == "chain":
            return InstanceSpec("chain_frame", {"k": int(rest)})
        if head == "boolean":
            return InstanceSpec("boolean_frame", {"k": int(rest)})
        if head == "f5" and not rest:
            return InstanceSpec("f5", {})
        if head == "downset":
            pts, _, rels = rest.partition(":")
            relations = []
            for r in filter(None, rels.split(",")):
                a, b = r.split("<")
                relations.append([int(a), int(b)])
            return InstanceSpec("downset_frame", {"points": int(pts), "relations": relations})
        if head == "random":
            seed, size = rest.split(":")
            return InstanceSpec("random", {"seed": int(seed), "size": int(size)})
        if head == "interval":
            at, _, base = rest.partition(":")
            return InstanceSpec("interval", {"at": at, "base": parse_spec(base).to_dict()})
    except ValueError as exc:
        raise BadInstanceSpec(f"cannot parse instance spec {text!r}: {exc}") from None
    raise BadInstanceSpec(f"cannot parse instance spec {text!r}")


def build(text: str) -> Quantale:
    return parse_spec(text).build()


# --- families -------------------------------------------------------------


def family_specs(kind: str, max_size: int | None = None, seed: int = 0, seeds: int = 200) -> list[InstanceSpec]:
    """Named instance families; ``max_size`` bounds the family parameter where it applies."""
    if kind == "zn":
        top = max_size if max_size is not None else 100
        return [InstanceSpec("zn_ideals", {"n": n}) for n in range(2, top + 1)]
    if kind == "chain":
        top = max_size if max_size is not None else 8
        return [InstanceSpec("chain_frame", {"k": k}) for k in range(2, top + 1)]
    if kind == "downset":
        top = max_size if max_size is not None else 5
        return [
            InstanceSpec("downset_frame", {"points": k, "relations": [list(r) for r in rels]})
            for k in range(1, top + 1)
            for rels in posets_up_to_iso(k)
        ]
    if kind == "random":
        top = max_size if max_size is not None else 6
        sizes = list(range(2, top + 1))
        return [InstanceSpec("random", {"seed": s, "size": sizes[s % len(sizes)]}) for s in range(seed, seed + seeds)]
    if kind == "f5":
        return [InstanceSpec("f5", {})]
    if kind == "product":
        return product_specs()
    raise BadInstanceSpec(f"unknown family {kind!r}")


PRODUCT_FACTORS = (
    "chain:2",
    "chain:3",
    "chain:5",
    "f5",
    "zn:4",
    "zn:6",
    "zn:8",
    "zn:9",
    "zn:12",
    "zn:30",
    "boolean:2",
    "downset:3:0<2,1<2",
    "downset:3:0<1,0<2",
    "downset:4:0<2,1<2,1<3",
    "random:7:5",
    "random:11:6",
)


def product_specs() -> list[InstanceSpec]:
    """Pairwise products over a fixed factor base (unordered pairs, squares included)."""
    out = []
    for a, b in itertools.combinations_with_replacement(PRODUCT_FACTORS, 2):
        out.append(parse_spec(f"({a})*({b})"))
    return out
