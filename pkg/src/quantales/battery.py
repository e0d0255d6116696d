"""Exhaustive law batteries grouped the way the batch runner reports them."""

from __future__ import annotations

from .core import Quantale, cover_law_violations, join_morphism_u, residuation_violations
from .reticulation import (
    annihilator_law_violations,
    boolean_law_violations,
    build_reticulation,
    reticulation_law_violations,
    spec_transfer_maps,
)
from .spectra import radical_law_violations, radical_map, spectrum_shape_violations
from .topology import flat_closure_violations, pierce_spectrum, topology_law_violations, transfer_homeomorphism_violations


def axiom_violations(Q: Quantale) -> list[str]:
    """Cover identities, residuation, radical calculus, lambda laws and Boolean-center laws."""
    ret = build_reticulation(Q)
    out = cover_law_violations(Q) + residuation_violations(Q) + radical_law_violations(Q)
    out += spectrum_shape_violations(Q) + reticulation_law_violations(ret)
    out += boolean_law_violations(Q) + annihilator_law_violations(ret)
    # x -> x v rho(0) must be a morphism onto [rho(0))
    join_morphism_u(Q, radical_map(Q)[Q.bottom])
    return out


def duality_violations(Q: Quantale) -> list[str]:
    """u/v order isomorphisms, their homeomorphism property, and the topology laws."""
    spec_transfer_maps(build_reticulation(Q))
    out = transfer_homeomorphism_violations(Q) + topology_law_violations(Q)
    pierce_spectrum(Q)
    return out


def all_violations(Q: Quantale) -> dict[str, list[str]]:
    return {
        "axioms": axiom_violations(Q),
        "duality": duality_violations(Q),
        "flat_closure": flat_closure_violations(Q),
    }
