import oracles
import pytest

from quantales.classify import (
    ALL_EQUAL,
    TheoremMismatch,
    UnknownTheorem,
    classify_all,
    finite_scale_facts,
    find_retraction,
    is_b_normal,
    is_b_normal_literal,
    is_hyperarchimedean,
    is_mp,
    is_normal,
    is_pf,
    is_semiprime,
    mp_witness,
    theorem_ids,
    verify_theorem,
)
from quantales.instances import build, chain_frame, f5, zn_ideals
from quantales.topology import zariski, max_zariski

GOLDEN_FLAGS = {
    "zn:12": dict(hyperarchimedean=True, normal=True, b_normal=True, mp=True, pf=False, semiprime=False),
    "f5": dict(hyperarchimedean=False, normal=True, b_normal=True, mp=False, pf=False, semiprime=True),
    "chain:3": dict(hyperarchimedean=False, normal=True, b_normal=True, mp=True, pf=True, semiprime=True),
}


@pytest.mark.parametrize("text", sorted(GOLDEN_FLAGS))
def test_golden_flags(text):
    flags = classify_all(build(text), theorems=[]).flags()
    for k, v in GOLDEN_FLAGS[text].items():
        assert flags[k] is v, k


def test_f5_mp_witness_is_c():
    Q = f5()
    p, mins = mp_witness(Q)
    assert Q.label(p) == "c"
    assert {Q.label(m) for m in mins} == {"a", "b"}


def test_predicates_match_oracles(small_family):
    for name, Q in small_family:
        assert is_hyperarchimedean(Q) == oracles.is_hyperarchimedean(Q), name
        assert is_normal(Q) == oracles.is_normal(Q), name
        assert is_b_normal(Q) == oracles.is_b_normal(Q), name
        assert is_mp(Q) == oracles.is_mp(Q), name
        assert is_pf(Q) == oracles.is_pf(Q), name
        assert is_semiprime(Q) == oracles.is_semiprime(Q), name


def test_literal_b_normal_reading_never_holds(small_family):
    assert not any(is_b_normal_literal(Q) for _, Q in small_family)


def test_every_theorem_on_golden_instances():
    for text in GOLDEN_FLAGS:
        rep = classify_all(build(text))
        assert [r.theorem_id for r in rep.theorems] == theorem_ids()
        assert all(r.verdict == ALL_EQUAL and r.vacuous_consistent for r in rep.theorems)


def test_chain_hyperarchimedean_topology_clauses_all_false():
    rep = verify_theorem(chain_frame(3), "T6.8")
    assert rep.verdict == ALL_EQUAL
    assert all(c.value is False for c in rep.clauses)


def test_f5_mp_characterization_all_false_with_witness():
    rep = verify_theorem(f5(), "T8.14")
    assert rep.verdict == ALL_EQUAL
    assert all(c.value is False for c in rep.clauses)
    assert rep.clauses[0].witness is not None


def test_compactness_clauses_flagged_vacuous():
    rep = verify_theorem(zn_ideals(12), "T7.3")
    vac = [c for c in rep.clauses if c.vacuous]
    assert vac and all("compact" in c.label for c in vac)


def test_guarded_theorem_reports_hypothesis():
    rep = verify_theorem(zn_ideals(12), "C8.4")
    assert not rep.applicable and rep.verdict == ALL_EQUAL
    assert "semiprime" in rep.hypothesis


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem):
        verify_theorem(f5(), "T99.9")


def test_mismatch_raises(monkeypatch):
    from quantales import classify

    th = classify.REGISTRY["P7.6"]
    fake = classify.Theorem(th.theorem_id, th.name, "equiv", lambda X: [classify.Clause("x", True), classify.Clause("y", False)])
    monkeypatch.setitem(classify.REGISTRY, "P7.6", fake)
    with pytest.raises(TheoremMismatch):
        classify_all(f5(), theorems=["P7.6"])
    rep = classify_all(f5(), theorems=["P7.6"], raise_on_mismatch=False)
    assert [r.theorem_id for r in rep.mismatches] == ["P7.6"]


def test_finite_scale_facts_hold(small_family):
    for name, Q in small_family:
        assert all(f.holds for f in finite_scale_facts(Q)), name


def test_retraction_onto_max_of_chain():
    Q = chain_frame(4)
    r = find_retraction(zariski(Q), max_zariski(Q), lambda p, m: Q.le(p, m))
    assert r == {0: 2, 1: 2, 2: 2}


def test_full_registry_over_small_family(small_family):
    for name, Q in small_family:
        rep = classify_all(Q, raise_on_mismatch=False)
        assert rep.mismatches == [], (name, [r.theorem_id for r in rep.mismatches])
        assert all(r.vacuous_consistent for r in rep.theorems), name
