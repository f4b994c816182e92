import functools

import pytest
from hypothesis import given, strategies as st

from arrhomotopy.arrangements import boolean_arrangement
from arrhomotopy.flags import (DeformationRequired, FlagComplex, PresentationError, g_presentation,
                               match_rank2)
from arrhomotopy.os_algebra import relation_generators
from arrhomotopy.registry import parse_input

from strategies import braid

_BASES = {"ex_pres_B": lambda: parse_input("ex_pres_B"), "braid4": lambda: braid(4),
          "braid5": lambda: braid(5), "boolean4": lambda: boolean_arrangement(4)}


@functools.lru_cache(maxsize=None)
def complex_for(name, infinity):
    b = _BASES[name]()
    return FlagComplex(b.matroid, infinity, b.rank - 1)


def test_flag_space_dims_match_decone():
    fc = complex_for("ex_pres_B", 0)
    assert [s.dim for s in fc.spaces] == [1, 8, 24, 32, 16]


def test_f_kills_os_relations():
    fc = complex_for("ex_pres_B", 0)
    for p in range(1, 4):
        sp = fc.spaces[p]
        rels = relation_generators(fc.os, p)
        for fl in fc.lattice.all_flags(p):
            for r in rels:
                assert sum(c * sp.f_value(fl, s) for s, c in r.items()) == 0


def test_exchange_relation_holds():
    """sum over G between F_{i-1} and F_{i+1} of the flag with F_i replaced by G is zero."""
    fc = complex_for("ex_pres_B", 0)
    p = 3
    sp = fc.spaces[p]
    for fl in fc.lattice.all_flags(p):
        for i in range(p - 1):
            lo = fl[i - 1] if i else ()
            total = [0] * sp.dim
            for g in fc.lattice.covers(lo, i + 1, inside=fl[i + 1]):
                for k, c in sp.coordinates(fl[:i] + (g,) + fl[i + 1:]).items():
                    total[k] += c
            assert not any(total)


@given(st.sampled_from(sorted(_BASES)), st.data())
def test_boundary_squares_to_zero(name, data):
    b = _BASES[name]()
    inf = data.draw(st.integers(0, b.n - 1))
    fc = complex_for(name, inf)
    p = data.draw(st.integers(2, fc.top))
    basis = fc.spaces[p].basis
    flag = basis[data.draw(st.integers(0, len(basis) - 1))]
    assert fc.boundary_squared(flag) == {}


def test_presentation_counts():
    pres = g_presentation(parse_input("ex_pres_A"), parse_input("ex_pres_B"), 3)
    assert pres.counts() == {"x": 9, "y": 32, "holonomy": 60, "flag": 16, "central": 32}
    ys = [b for n, b in pres.generators if n.startswith("y")]
    assert set(ys) == {(2, 1)}


def test_presentation_json_schema():
    js = g_presentation(parse_input("ex_pres_A"), parse_input("ex_pres_B"), 3).to_json()
    assert {"name", "bidegree"} <= set(js["generators"][0])
    assert {r["type"] for r in js["relations"]} == {"holonomy", "flag", "central"}
    assert all(len(t["bracket"]) == 2 for r in js["relations"] for t in r["terms"])


def test_flag_relations_have_four_terms():
    pres = g_presentation(parse_input("ex_pres_A"), parse_input("ex_pres_B"), 3)
    flag = [t for k, t in pres.relations if k == "flag"]
    assert all(len(t) == 4 for t in flag)


def test_rank_two_matching_is_identity_for_registry_pair():
    a, b = parse_input("ex_pres_A"), parse_input("ex_pres_B")
    phi = match_rank2(a.matroid, b.matroid)
    assert sorted(phi) == list(range(9))


def test_deformation_needed_for_non_two_generic():
    with pytest.raises(DeformationRequired):
        g_presentation(parse_input("ex_pres_A"), None, 3)


def test_wrong_range_is_refused():
    with pytest.raises(PresentationError):
        g_presentation(parse_input("ex_2gen7_a"), None, 4)
