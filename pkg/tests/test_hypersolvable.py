import pytest
from hypothesis import assume, given, strategies as st

from arrhomotopy.arrangements import boolean_arrangement, load_arrangement, flats
from arrhomotopy.hypersolvable import (NotHypersolvable, StepKind, Verdict, analyze_hypersolvable,
                                       deformation_poincare, find_solvable_chain, iter_solvable_chains,
                                       singular_range)
from arrhomotopy.os_algebra import build_os
from arrhomotopy.registry import parse_input

from strategies import arrangements, braid, generic_slices


@pytest.mark.parametrize("key,expected", [
    ("nandi_d1", (3, 4)), ("nandi_d2", (3, 4)), ("nandi_d3", (3, 4)), ("ex_pres_A", (3, 3)),
    ("ex_2gen7_a", (3, 4)), ("ex_lived2", (3, 5)),
])
def test_singular_ranges(key, expected):
    rep = analyze_hypersolvable(parse_input(key))
    assert (rep.singular_range.c, rep.singular_range.d) == expected


def test_verdicts():
    assert analyze_hypersolvable(parse_input("ex_lived2")).verdict is Verdict.OUT_OF_SCOPE
    assert analyze_hypersolvable(parse_input("ex_pres_A")).verdict is Verdict.LENGTH0
    assert analyze_hypersolvable(parse_input("ex_2gen7_b")).verdict is Verdict.LENGTH1
    assert analyze_hypersolvable(parse_input("ex_pres_B")).verdict is Verdict.KOSZUL


def test_ex_pres_A_exponents():
    assert find_solvable_chain(parse_input("ex_pres_A")).exponents == (1, 2, 2, 2, 2)


def test_supersolvable_exponents_give_poincare():
    b = parse_input("ex_pres_B")
    ch = find_solvable_chain(b)
    assert ch.is_supersolvable
    assert deformation_poincare(ch) == build_os(b).dims


def test_braid_is_supersolvable():
    ch = find_solvable_chain(braid(4))
    assert ch.is_supersolvable and sorted(ch.exponents) == [1, 2, 3]


def test_non_hypersolvable_detected():
    # seven planes whose triple points form a closed configuration
    a = load_arrangement([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]])
    rep = analyze_hypersolvable(a)
    if rep.hypersolvable:
        pytest.skip("example happens to be hypersolvable")
    with pytest.raises(NotHypersolvable):
        find_solvable_chain(a)


def test_chain_enumeration_reports_d():
    rep = analyze_hypersolvable(parse_input("ex_pres_A"), enumerate_chains=20)
    assert rep.d_values == (3,)


def test_step_kinds_of_boolean():
    ch = find_solvable_chain(boolean_arrangement(4))
    assert all(k is StepKind.FIBRED for k in ch.step_kinds)


def _first_disagreement(a_dims, b_dims):
    n = max(len(a_dims), len(b_dims))
    a_dims = a_dims + [0] * (n - len(a_dims))
    b_dims = b_dims + [0] * (n - len(b_dims))
    return next(k for k in range(n) if a_dims[k] != b_dims[k])


@given(arrangements(dim=3, max_n=8))
def test_singular_range_bounds_random(a):
    rep = analyze_hypersolvable(a)
    assume(rep.hypersolvable and rep.singular_range is not None)
    sr = rep.singular_range
    c = _first_disagreement(build_os(a).dims, deformation_poincare(rep.chain))
    assert sr.c == c
    assert 3 <= sr.c <= sr.d <= a.rank


_BASES = [boolean_arrangement(5), boolean_arrangement(6), braid(5), parse_input("ex_pres_B")]


@given(st.sampled_from(range(len(_BASES))), st.integers(3, 4), st.data())
def test_generic_slices_have_range_ell_ell(k, ell, data):
    base = _BASES[k]
    assume(ell < base.rank)
    base, rows = data.draw(generic_slices(base, ell))
    try:
        a = load_arrangement(rows)
    except Exception:
        assume(False)
    assume(a.rank == ell)
    os_a, os_b = build_os(a), build_os(base)
    # genericity: the lattice below rank ell is unchanged
    assume(all(os_a.dims[j] == os_b.dims[j] for j in range(ell)))
    rep = analyze_hypersolvable(a)
    assert rep.hypersolvable
    sr = rep.singular_range
    assert (sr.c, sr.d) == (ell, ell)
    assert 3 <= sr.c <= sr.d
