from math import comb

from hypothesis import assume, given

from arrhomotopy.arrangements import boolean_arrangement
from arrhomotopy.hypersolvable import analyze_hypersolvable
from arrhomotopy.os_algebra import build_os, quadratic_closure_dims
from arrhomotopy.quadratic import (build_degreewise, enveloping_of_holonomy, holonomy_presentation,
                                   koszul_numerics_check)
from arrhomotopy.registry import parse_input
from arrhomotopy.series import TruncatedSeries

from strategies import arrangements, braid


def test_free_algebra_dims():
    assert build_degreewise(2, [], 4).dims == [1, 2, 4, 8, 16]


def test_polynomial_ring_from_commutators():
    rels = [{(i, j): 1, (j, i): -1} for i in range(3) for j in range(i + 1, 3)]
    assert build_degreewise(3, rels, 5).dims == [comb(p + 2, 2) for p in range(6)]


def test_boolean_holonomy_is_abelian():
    R = enveloping_of_holonomy(build_os(boolean_arrangement(4)), 4)
    assert R.dims == [comb(p + 3, 3) for p in range(5)]


def test_two_generic_holonomy_is_abelian():
    R = enveloping_of_holonomy(build_os(parse_input("ex_2gen7_a")), 4)
    assert R.dims == [1, 7, 28, 84, 210]


def test_pure_braid_group_lcs():
    # 1 / ((1 - t)(1 - 2t)(1 - 3t))
    R = enveloping_of_holonomy(build_os(braid(4)), 4)
    expected = TruncatedSeries([1, -6, 11, -6], 4).inverse().to_list()
    assert R.dims == expected


def test_left_and_right_multiplication_agree_on_words():
    R = enveloping_of_holonomy(build_os(braid(4)), 3)
    # (x_a x_b) x_c computed two ways
    for a in range(3):
        for b in range(3):
            for c in range(3):
                ab = R.multiply_word({0: 1}, 0, [a, b], side="left")   # x_b x_a
                lhs = R.multiply_word(ab, 2, [c], side="right")       # x_b x_a x_c
                bc = R.multiply_word({0: 1}, 0, [c], side="left")
                rhs = R.multiply_word(bc, 1, [a, b], side="left")     # x_b x_a x_c
                assert lhs == rhs


def test_holonomy_presentation_relations():
    pres = holonomy_presentation(parse_input("ex_pres_A"))
    # each rank-2 flat F contributes |F| relations
    sizes = {}
    for i, f in pres.relations:
        sizes[f] = sizes.get(f, 0) + 1
    assert all(v == len(f) for f, v in sizes.items())


def test_ex_pres_A_closure_dims():
    os = build_os(parse_input("ex_pres_A"))
    assert quadratic_closure_dims(os, 3)[:3] == [1, 9, 32]


@given(arrangements(dim=3, max_n=7))
def test_koszul_numerics_for_supersolvable(a):
    rep = analyze_hypersolvable(a)
    assume(rep.hypersolvable and rep.chain.is_supersolvable)
    os = build_os(a)
    R = enveloping_of_holonomy(os, 4)
    assert koszul_numerics_check(os.dims, R.dims, 4)
