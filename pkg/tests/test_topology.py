from itertools import combinations

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantales.instances import chain_frame, f5, zn_ideals
from quantales.lattice import members
from quantales.spectra import m_primes
from quantales.topology import (
    FiniteTopology,
    closure,
    closure_by_closed_sets,
    d_set,
    discrete,
    flat,
    flat_closure_violations,
    is_continuous,
    is_homeomorphism,
    lambda_set,
    max_flat,
    max_zariski,
    min_flat,
    min_zariski,
    patch,
    pierce_spectrum,
    space_properties,
    specialization,
    subspace,
    topology_law_violations,
    transfer_homeomorphism_violations,
    v_set,
    zariski,
)


def labels(Q, m):
    return {Q.label(x) for x in members(m)}


# brute-force separation oracles over all open and closed sets


def hausdorff_oracle(T):
    return all(
        any((U >> x) & 1 and (V >> y) & 1 and not U & V for U in T.opens for V in T.opens)
        for x, y in combinations(T.points, 2)
    )


def t0_oracle(T):
    return all(any(((U >> x) & 1) != ((U >> y) & 1) for U in T.opens) for x, y in combinations(T.points, 2))


def t1_oracle(T):
    return all(
        any((U >> x) & 1 and not (U >> y) & 1 for U in T.opens) for x in T.points for y in T.points if x != y
    )


def normal_oracle(T):
    for C in T.closed:
        for D in T.closed:
            if C & D:
                continue
            if not any(C & ~U == 0 and D & ~V == 0 and not U & V for U in T.opens for V in T.opens):
                return False
    return True


def zero_dim_oracle(T):
    return all(
        any((K >> x) & 1 and K & ~U == 0 for K in T.clopens) for U in T.opens for x in members(U)
    )


@st.composite
def topologies(draw):
    k = draw(st.integers(1, 5))
    ground = (1 << k) - 1
    sub = draw(st.lists(st.integers(0, ground), max_size=6))
    return FiniteTopology.from_subbasis(ground, sub)


@settings(max_examples=150, deadline=None)
@given(topologies())
def test_properties_match_definitions(T):
    # opens are closed under union and intersection
    for U in T.opens:
        for V in T.opens:
            assert U | V in T.opens and U & V in T.opens
    p = space_properties(T)
    assert p.T0 == t0_oracle(T)
    assert p.T1 == t1_oracle(T)
    assert p.hausdorff == hausdorff_oracle(T)
    assert p.normal_space == normal_oracle(T)
    assert p.zero_dimensional == zero_dim_oracle(T)
    assert p.compact and p.compact_vacuous
    for S in range(T.ground + 1):
        assert closure(T, S) == closure_by_closed_sets(T, S)


def test_discrete_and_subspace():
    T = discrete(0b111)
    assert len(T.opens) == 8
    assert space_properties(T).boolean_space
    S = subspace(T, 0b101)
    assert S.opens == frozenset({0, 0b001, 0b100, 0b101})
    with pytest.raises(ValueError):
        subspace(T, 0b1000)


def test_sierpinski_from_three_chain():
    Q = chain_frame(3)
    Z = zariski(Q)
    p = space_properties(Z)
    assert p.T0 and not p.T1 and not p.hausdorff
    # the closed point is the maximal prime
    assert closure(Z, 1 << 1) == 1 << 1
    assert closure(Z, 1 << 0) == 0b11
    assert specialization(Z) == [(1, 0)]


def test_zariski_closed_sets_are_v_sets(small_family):
    for name, Q in small_family:
        spec = m_primes(Q)
        Z = zariski(Q)
        assert Z.closed == {v_set(Q, spec, a) for a in range(Q.n)}, name
        assert all(Z.is_open(d_set(Q, spec, a)) for a in range(Q.n)), name
        F = flat(Q)
        assert all(F.is_open(v_set(Q, spec, a)) for a in range(Q.n)), name
        P = patch(Q)
        assert Z.opens <= P.opens and F.opens <= P.opens, name


def test_flat_closure_is_lambda(small_family):
    for name, Q in small_family:
        assert flat_closure_violations(Q) == [], name
        F = flat(Q)
        for p in m_primes(Q):
            assert closure(F, 1 << p) == lambda_set(Q, p), name


def test_finite_spaces_are_alexandrov(small_family):
    for name, Q in small_family:
        assert space_properties(patch(Q)).discrete, name
        assert space_properties(max_zariski(Q)).discrete, name
        assert min_zariski(Q).opens == min_flat(Q).opens, name
        assert space_properties(max_flat(Q)).hausdorff, name


def test_law_batteries(small_family):
    for name, Q in small_family:
        assert topology_law_violations(Q) == [], name
        assert transfer_homeomorphism_violations(Q) == [], name


def test_continuity_and_homeomorphism():
    T = FiniteTopology.from_subbasis(0b11, [0b01])
    ident = {0: 0, 1: 1}
    assert is_homeomorphism(ident, T, T)
    assert is_continuous(ident, discrete(0b11), T)
    assert not is_continuous(ident, T, discrete(0b11))


def test_pierce_spectrum_z12():
    Q = zn_ideals(12)
    ps = pierce_spectrum(Q)
    assert {Q.label(x) for x in ps.points} == {"3Z", "4Z"}
    assert {Q.label(p): Q.label(e) for p, e in ps.s.items()} == {"2Z": "4Z", "3Z": "3Z"}
    assert space_properties(ps.topology).boolean_space


def test_pierce_spectrum_f5_and_chain():
    Q = f5()
    assert {Q.label(x) for x in pierce_spectrum(Q).points} == {"0"}
    assert pierce_spectrum(chain_frame(4)).points == frozenset({0})


def test_pierce_points_match_oracle(small_family):
    for name, Q in small_family:
        assert pierce_spectrum(Q).points == oracles.max_regular(Q), name
