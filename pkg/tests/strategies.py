"""Hypothesis strategies for small arrangements."""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from arrhomotopy.arrangements import load_arrangement, matrix_rank


def _primitive(v):
    """Normalize a normal vector up to scaling so parallel rows compare equal."""
    lead = next(x for x in v if x)
    return tuple(Fraction(x, lead) for x in v)


@st.composite
def arrangements(draw, dim=3, min_n=3, max_n=7, entries=(-2, -1, 0, 1, 2)):
    """A central essential arrangement of distinct hyperplanes in C^dim."""
    vec = st.tuples(*[st.sampled_from(entries)] * dim).filter(any)
    rows = draw(st.lists(vec, min_size=min_n, max_size=max_n, unique_by=_primitive))
    if matrix_rank(rows) < dim:
        rows = [tuple(int(i == j) for j in range(dim)) for i in range(dim)] + \
               [r for r in rows if _primitive(r) not in {_primitive(tuple(int(i == j) for j in range(dim)))
                                                          for i in range(dim)}]
    return load_arrangement(rows)


def braid(k: int):
    """x_i - x_j for 0 <= i < j < k, in C^k (rank k - 1, supersolvable)."""
    rows = []
    for i, j in itertools.combinations(range(k), 2):
        rows.append(tuple(1 if t == i else -1 if t == j else 0 for t in range(k)))
    return load_arrangement(rows)


@st.composite
def generic_slices(draw, base, ell):
    """Restrict ``base`` (normals in C^m) along a random linear map C^ell -> C^m."""
    m = base.ambient_dim
    cols = draw(st.lists(st.tuples(*[st.integers(-9, 9)] * ell), min_size=m, max_size=m))
    rows = [tuple(sum(Fraction(a) * c[j] for a, c in zip(h, cols)) for j in range(ell)) for h in base.normals]
    return base, rows
