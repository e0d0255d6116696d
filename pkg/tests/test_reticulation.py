import oracles

from quantales.classify import is_boolean_lattice
from quantales.instances import chain_frame, f5, zn_ideals
from quantales.lattice import complemented, is_distributive, meet_primes
from quantales.reticulation import (
    PrincipalIdeal,
    annihilator,
    annihilator_law_violations,
    boolean_center,
    boolean_center_by_negation,
    boolean_law_violations,
    build_reticulation,
    is_pure,
    is_sigma_ideal,
    lower_star,
    reticulation_law_violations,
    spec_transfer_maps,
    star,
)
from quantales.spectra import m_primes, radical


def test_z12_reticulation_is_square():
    Q = zn_ideals(12)
    ret = build_reticulation(Q)
    assert ret.lattice.n == 4
    assert complemented(ret.lattice) == frozenset(range(4))
    # lam identifies elements with equal radicals
    i2, i4 = Q.names.index("2Z"), Q.names.index("4Z")
    assert ret.lam[i2] == ret.lam[i4]
    assert ret.lam[Q.names.index("6Z")] == ret.lam[Q.names.index("12Z")] == ret.lattice.bottom


def test_z12_boolean_center():
    Q = zn_ideals(12)
    assert {Q.label(e) for e in boolean_center(Q)} == {"1Z", "3Z", "4Z", "12Z"}


def test_chain_reticulation_is_chain():
    Q = chain_frame(4)
    ret = build_reticulation(Q)
    assert ret.lattice.n == 4
    assert not is_boolean_lattice(ret.frame)


def test_star_lower_star_round_trip_on_radicals():
    Q = zn_ideals(36)
    ret = build_reticulation(Q)
    for a in range(Q.n):
        assert lower_star(ret, star(ret, a)) == radical(Q, a)


def test_transfer_maps_are_inverse():
    Q = f5()
    ret = build_reticulation(Q)
    u, v = spec_transfer_maps(ret)
    assert set(u) == m_primes(Q)
    assert set(v) == meet_primes(ret.lattice)
    assert all(v[u[p]] == p for p in u)


def test_annihilator_in_f5():
    Q = f5()
    ret = build_reticulation(Q)
    a = Q.names.index("a")
    ann = annihilator(ret, PrincipalIdeal(ret.lam[a]))
    assert ret.section[ann.generator] == Q.names.index("b")


def test_pure_elements():
    Q = zn_ideals(12)
    pure = {Q.label(x) for x in range(Q.n) if is_pure(Q, x)}
    # in a finite ring, pure ideals are the ones generated by idempotents
    assert pure == {"1Z", "3Z", "4Z", "12Z"}


def test_sigma_ideals_of_boolean_lattice():
    ret = build_reticulation(zn_ideals(30))
    assert all(is_sigma_ideal(ret, PrincipalIdeal(g)) for g in range(ret.lattice.n))


def test_engine_against_oracles(small_family):
    for name, Q in small_family:
        ret = build_reticulation(Q)
        assert is_distributive(ret.lattice), name
        assert ret.lattice.n == oracles.reticulation_size(Q), name
        assert boolean_center(Q) == boolean_center_by_negation(Q) == oracles.boolean_center(Q), name
        rad = [oracles.radical(Q, a) for a in range(Q.n)]
        for a in range(Q.n):
            for b in range(Q.n):
                assert (ret.lam[a] == ret.lam[b]) == (rad[a] == rad[b]), (name, a, b)


def test_law_batteries(small_family):
    for name, Q in small_family:
        ret = build_reticulation(Q)
        assert reticulation_law_violations(ret) == [], name
        assert boolean_law_violations(Q) == [], name
        assert annihilator_law_violations(ret) == [], name
        spec_transfer_maps(ret)
