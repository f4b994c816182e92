import pytest
from hypothesis import assume, given, strategies as st

from arrhomotopy.homotopy import (HypothesisNotSatisfied, JComplex, QuadraticClosure, hilbert_M_closed_form,
                                  hilbert_U, homotopy_module_dims, homotopy_module_dims_strand,
                                  linear_strand_complex, m_support, SupportVerdict)
from arrhomotopy.hypersolvable import Verdict, analyze_hypersolvable
from arrhomotopy.kernel import homology_dims
from arrhomotopy.os_algebra import build_os
from arrhomotopy.quadratic import enveloping_of_holonomy
from arrhomotopy.registry import parse_input

from strategies import arrangements


def _m(key, p_max):
    a = parse_input(key)
    os = build_os(a)
    return homotopy_module_dims(os, enveloping_of_holonomy(os, p_max + 2), Verdict.LENGTH1, p_max)


def test_supersolvable_M_vanishes():
    t = _m("ex_pres_B", 2)
    assert t.nonzero() == {}


def test_two_routes_agree_on_small_tables():
    for key in ("ex_2gen7_a", "ex_pres_A"):
        a = parse_input(key)
        os = build_os(a)
        R = enveloping_of_holonomy(os, 6)
        j = homotopy_module_dims(os, R, Verdict.LENGTH1, 1)
        s = homotopy_module_dims_strand(os, R, 1, 5)
        assert j.nonzero() == s.nonzero()


def test_ex_pres_A_closed_form_matches_computation():
    t = _m("ex_pres_A", 2)
    closed = hilbert_M_closed_form([2, 2, 2, 2], 3).expand(2).to_list()
    assert t.row(3) == closed == [32, 240, 1152]
    assert t.support_q() == [3]


def test_closed_form_refuses_wrong_range():
    from arrhomotopy.hypersolvable import SingularRange
    with pytest.raises(HypothesisNotSatisfied):
        hilbert_M_closed_form([1, 1, 1], 3, SingularRange(3, 4))


def test_U_of_first_two_generic_example():
    a = parse_input("ex_2gen7_a")
    os = build_os(a)
    R = enveloping_of_holonomy(os, 4)
    M = homotopy_module_dims(os, R, Verdict.LENGTH1, 2)
    U = hilbert_U(R.dims, M, Verdict.LENGTH1)
    assert U[2, 1] == 5 and U[2, 2] == 2
    assert [U[p, 0] for p in range(5)] == R.dims[:5]


def test_U_refuses_out_of_scope():
    with pytest.raises(HypothesisNotSatisfied):
        hilbert_U([1, 1, 1], _m("ex_pres_B", 0), Verdict.OUT_OF_SCOPE)


def test_support_verdicts():
    a = parse_input("ex_lived2")
    os = build_os(a)
    R = enveloping_of_holonomy(os, 4)
    t = homotopy_module_dims(os, R, Verdict.OUT_OF_SCOPE, 2)
    rep = m_support(t, Verdict.OUT_OF_SCOPE)
    assert rep.support == (3, 4, 5)
    assert rep.verdict is SupportVerdict.NOT_APPLICABLE
    assert t.row(3) == [5, 17, 36]


def test_formal_label_without_certificate():
    os = build_os(parse_input("ex_pres_A"))
    t = homotopy_module_dims(os, enveloping_of_holonomy(os, 2), None, 0)
    assert t.formal and t.to_json()["label"].startswith("formal")


def test_closure_minus_ideal_is_os_algebra():
    os = build_os(parse_input("nandi_d2"))
    J = QuadraticClosure(os, 4)
    assert [b - j for b, j in zip(J.b_dims, J.j_dims)] == os.dims[:5]


@given(arrangements(dim=3, max_n=6), st.integers(2, 4))
def test_linear_strand_and_J_complexes_square_to_zero(a, t):
    os = build_os(a)
    R = enveloping_of_holonomy(os, t)
    cx = linear_strand_complex(os, R, t, check=True)
    h = homology_dims(cx)
    assert sum((-1) ** i * x for i, x in enumerate(h)) == cx.euler_characteristic()
    J = QuadraticClosure(os, 5)
    JComplex(J, R).complex(t, check=True)
