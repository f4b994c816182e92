import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from arrhomotopy.kernel import (Echelon, FiniteComplex, NotAComplex, RankStrategy, SparseMatrix, exact_rank,
                                homology_dims, modular_rank, nullspace, rank)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))


@given(matrices())
def test_rank_matches_sympy(rows):
    m = SparseMatrix.from_dense(rows)
    expected = sympy.Matrix(rows).rank()
    assert exact_rank(m) == expected
    assert rank(m, RankStrategy(seed=7)) == expected


def test_rational_entries_and_transpose():
    m = SparseMatrix.from_dense([[Fraction(1, 2), 1], [1, 2]])
    assert exact_rank(m) == 1
    assert exact_rank(m.transpose()) == 1
    assert modular_rank(m, 1_000_003) == 1


def test_modular_rank_can_drop():
    # rank 2 over Q, rank 1 mod 5
    m = SparseMatrix.from_dense([[1, 2], [3, 1]])
    assert exact_rank(m) == 2
    assert modular_rank(m, 5) == 1


def test_strategy_is_deterministic():
    assert RankStrategy(seed=3).primes == RankStrategy(seed=3).primes
    assert RankStrategy(seed=3).primes != RankStrategy(seed=4).primes


@given(matrices())
def test_nullspace(rows):
    m = SparseMatrix.from_dense(rows)
    ns = nullspace(m)
    assert len(ns) == m.shape[1] - exact_rank(m)
    for v in ns:
        for row in rows:
            assert sum(row[j] * v.get(j, 0) for j in range(len(row))) == 0


def test_echelon_reduce_and_coordinates():
    e = Echelon()
    e.add({0: 1, 1: 1})
    e.add({1: 1, 2: 1})
    assert e.contains({0: 1, 1: 2, 2: 1})
    assert not e.contains({2: 1})
    assert len(e) == 2


def test_not_a_complex_is_detected():
    d0 = SparseMatrix.from_dense([[1], [0]])
    d1 = SparseMatrix.from_dense([[1, 0]])
    with pytest.raises(NotAComplex):
        FiniteComplex([1, 2, 1], [d0, d1])


def _unimodular(n, rng):
    m = sympy.eye(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            m[i, :] = m[i, :] + rng.randint(-2, 2) * m[j, :]
    return m


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 3)), min_size=1, max_size=6),
       st.integers(0, 10**6))
def test_euler_characteristic_identity(blocks, seed):
    """Random complexes: sums of k -> k pieces plus homology, conjugated by unimodular maps."""
    rng = random.Random(seed)
    length = 4
    homology = [rng.randint(0, 2) for _ in range(length)]
    pieces = [(min(i, length - 2), k) for i, k in blocks]
    dims = list(homology)
    for i, k in pieces:
        dims[i] += k
        dims[i + 1] += k
    diffs = []
    offsets = [homology[i] for i in range(length)]
    fill = list(offsets)
    cols_at = {}
    for i, k in pieces:
        cols_at.setdefault(i, []).append((fill[i], fill[i + 1], k))
        fill[i] += k
        fill[i + 1] += k
    basechange = [_unimodular(d, rng) if d else None for d in dims]
    for i in range(length - 1):
        d = sympy.zeros(dims[i + 1], dims[i])
        for src, tgt, k in cols_at.get(i, []):
            for a in range(k):
                d[tgt + a, src + a] = 1
        if dims[i] and dims[i + 1]:
            d = basechange[i + 1] * d * basechange[i].inv()
        diffs.append(SparseMatrix(dims[i + 1], dims[i],
                                  [(r, c, int(d[r, c])) for r in range(dims[i + 1]) for c in range(dims[i]) if d[r, c]]))
    cx = FiniteComplex(dims, diffs)
    h = homology_dims(cx)
    assert sum((-1) ** i * x for i, x in enumerate(h)) == cx.euler_characteristic()
    assert h == homology
