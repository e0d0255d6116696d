import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantales.core import (
    InvalidExponent,
    NotAssociative,
    NotCommutative,
    NotIntegral,
    NotJoinDistributive,
    cover_law_violations,
    frame_of,
    interval_quantale,
    join_morphism_u,
    negation,
    power,
    residuation,
    residuation_violations,
    stabilization,
    validate_quantale,
)
from quantales.instances import chain_frame, f5, random_quantale, zn_ideals
from quantales.lattice import lattice_from_order


def chain_lattice(k):
    return lattice_from_order([[i <= j for j in range(k)] for i in range(k)])


def test_two_chain_forced_table():
    L = chain_lattice(2)
    Q = validate_quantale(L, [[0, 0], [0, 1]])
    assert Q.times(1, 1) == 1 and Q.times(0, 1) == 0


def test_not_integral():
    with pytest.raises(NotIntegral):
        validate_quantale(chain_lattice(2), [[0, 0], [0, 0]])


def test_not_commutative():
    L = chain_lattice(3)
    with pytest.raises(NotCommutative) as exc:
        validate_quantale(L, [[0, 0, 0], [1, 0, 1], [0, 1, 2]])
    assert exc.value.witness == (0, 1)


def test_not_join_distributive():
    # on the square 0 < a, b < 1 with a*a = 0: a(a v b) = a but aa v ab = 0
    sq = lattice_from_order([[True] * 4, [False, True, False, True], [False, False, True, True], [False] * 3 + [True]])
    with pytest.raises(NotJoinDistributive) as exc:
        validate_quantale(sq, [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]])
    assert exc.value.witness[0] == 1


def test_non_associative_mutation_of_z12():
    Q = zn_ideals(12)
    T = [list(r) for r in Q.mul]
    i2, i6 = Q.names.index("2Z"), Q.names.index("6Z")
    T[i2][i2] = i6  # 2Z * 2Z is 4Z
    with pytest.raises(NotAssociative) as exc:
        validate_quantale(Q.lat, T)
    assert len(exc.value.witness) == 3


def test_index_out_of_range():
    with pytest.raises(ValueError):
        validate_quantale(chain_lattice(2), [[0, 5], [5, 1]])


def test_frame_negation_is_pseudocomplement():
    Q = f5()
    names = Q.names
    a, b = names.index("a"), names.index("b")
    assert negation(Q, a) == b and negation(Q, b) == a
    assert negation(Q, Q.bottom) == Q.top


def test_powers_in_z12():
    Q = zn_ideals(12)
    i2, i4 = Q.names.index("2Z"), Q.names.index("4Z")
    assert power(Q, i2, 2) == i4
    assert power(Q, i2, 5) == i4
    assert stabilization(Q, i2) == (2, i4)
    with pytest.raises(InvalidExponent):
        power(Q, i2, 0)


def test_residuation_adjunction_z12():
    Q = zn_ideals(12)
    assert residuation_violations(Q) == []
    i2, i6 = Q.names.index("2Z"), Q.names.index("6Z")
    assert Q.label(residuation(Q, i2, i6)) == "3Z"


def test_interval_morphism():
    Q = zn_ideals(12)
    i6 = Q.names.index("6Z")
    iq = interval_quantale(Q, i6)
    assert sorted(Q.label(x) for x in iq.elements) == sorted(["1Z", "2Z", "3Z", "6Z"])
    u = join_morphism_u(Q, i6, iq)
    assert Q.label(u[Q.names.index("4Z")]) == "2Z"


def test_frame_of_distributive_lattice():
    Q = frame_of(chain_lattice(4))
    assert Q.mul == Q.lat.meet_table


def test_join_morphism_certifies():
    Q = chain_frame(3)
    for a in range(Q.n):
        join_morphism_u(Q, a)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6))
def test_random_instances_satisfy_cover_and_adjunction(seed, size):
    try:
        Q = random_quantale(seed, size)
    except LookupError:
        return
    assert cover_law_violations(Q) == []
    assert residuation_violations(Q) == []
