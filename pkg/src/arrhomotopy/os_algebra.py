"""Orlik–Solomon algebras via nbc bases and circuit straightening.

Monomials ``e_S`` are indexed by tuples sorted by hyperplane index; the linear
order passed to :func:`build_os` only decides which sets are broken circuits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arrangements import Arrangement, Matroid, _mask, as_matroid
from .kernel import Echelon, SparseMatrix, rank

Vector = dict[tuple[int, ...], Fraction | int]


def sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``seq``, and the sorted tuple; sign 0 on repeats."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0, ()
    inv = sum(1 for a, b in itertools.combinations(s, 2) if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(s))


def wedge(s: Sequence[int], t: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return sort_sign(tuple(s) + tuple(t))


def _add(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class OSElement:
    degree: int
    coords: Mapping[tuple[int, ...], Fraction | int] = field(default_factory=dict)

    def __add__(self, other: "OSElement") -> "OSElement":
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        acc = dict(self.coords)
        for k, v in other.coords.items():
            _add(acc, k, v)
        return OSElement(self.degree, acc)

    def scale(self, c) -> "OSElement":
        return OSElement(self.degree, {k: v * c for k, v in self.coords.items() if v * c})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        return isinstance(other, OSElement) and self.degree == other.degree and dict(self.coords) == dict(other.coords)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coords.items())))


class OSAlgebra:
    """The OS algebra of a matroid with respect to a linear order.

    If ``infinity`` is given, that element is placed first in the order and
    the algebra is taken modulo ``e_infinity``; this is the OS algebra of the
    decone at ``infinity``.
    """

    def __init__(self, matroid: Matroid, order: Sequence[int] | None = None, infinity: int | None = None):
        n = matroid.ground_size
        order = list(range(n)) if order is None else list(order)
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the ground set")
        if infinity is not None:
            order.remove(infinity)
            order.insert(0, infinity)
        self.matroid = matroid
        self.order = tuple(order)
        self.infinity = infinity
        self._pos = {h: k for k, h in enumerate(order)}
        self.generators = tuple(h for h in range(n) if h != infinity)
        self.broken = tuple(
            (_mask(c) & ~(1 << min(c, key=self._pos.__getitem__)), c) for c in matroid.circuits
        )
        self.rank = matroid.rank - (1 if infinity is not None else 0)
        self.nbc_basis: dict[int, list[tuple[int, ...]]] = {0: [()]}
        level = [()]
        for k in range(1, self.rank + 1):
            nxt = set()
            for s in level:
                for h in self.generators:
                    if h in s:
                        continue
                    t = tuple(sorted(s + (h,)))
                    if t not in nxt and self._is_nbc(t):
                        nxt.add(t)
            level = sorted(nxt)
            self.nbc_basis[k] = level
        self._index = {k: {s: i for i, s in enumerate(b)} for k, b in self.nbc_basis.items()}
        self._straighten = lru_cache(maxsize=None)(self._straighten_uncached)

    # -- basis ------------------------------------------------------------
    def _is_nbc(self, s: tuple[int, ...]) -> bool:
        m = _mask(s)
        if not self.matroid.rank_of_mask(m) == len(s):
            return False
        return not any(b & m == b for b, _ in self.broken)

    @property
    def dims(self) -> list[int]:
        return [len(self.nbc_basis[k]) for k in range(self.rank + 1)]

    def dim(self, k: int) -> int:
        return len(self.nbc_basis.get(k, ())) if k >= 0 else 0

    def index(self, s: tuple[int, ...]) -> int:
        return self._index[len(s)][s]

    # -- straightening ----------------------------------------------------
    def _straighten_uncached(self, s: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction | int], ...]:
        if self.infinity is not None and self.infinity in s:
            return ()
        m = _mask(s)
        if self.matroid.rank_of_mask(m) < len(s):
            return ()
        for b, circ in self.broken:
            if b & m == b:
                break
        else:
            return ((s, 1),)
        # d(e_C) = sum_q (-1)^q e_{C - c_q} = 0 solves for e_{C - min}
        low = min(circ, key=self._pos.__getitem__)
        j = circ.index(low)
        rest = tuple(x for x in s if x not in circ)
        out: Vector = {}
        for q, cq in enumerate(circ):
            if q == j:
                continue
            coef = -((-1) ** (q - j))
            face = tuple(x for x in circ if x != cq)
            sign_t, _ = sort_sign(tuple(x for x in circ if x != low) + rest)
            sign_f, tgt = sort_sign(face + rest)
            if not sign_f:
                continue
            for k, v in self._straighten(tgt):
                _add(out, k, coef * sign_t * sign_f * v)
        return tuple(sorted(out.items()))

    def monomial(self, seq: Sequence[int]) -> Vector:
        """``e_{seq[0]} ... e_{seq[-1]}`` in nbc coordinates."""
        sign, s = sort_sign(seq)
        if not sign:
            return {}
        return {k: sign * v for k, v in self._straighten(s)}

    def element(self, coords: Mapping[tuple[int, ...], object]) -> OSElement:
        """Straighten an arbitrary combination of sorted monomials of one degree."""
        deg = {len(k) for k in coords}
        if len(deg) > 1:
            raise ValueError("mixed degrees")
        acc: Vector = {}
        for s, c in coords.items():
            for k, v in self.monomial(s).items():
                _add(acc, k, v * c)
        return OSElement(deg.pop() if deg else 0, acc)

    def gen(self, i: int) -> OSElement:
        return self.element({(i,): 1})


def build_os(m: Matroid | Arrangement, order: Sequence[int] | None = None) -> OSAlgebra:
    return OSAlgebra(as_matroid(m), order)


def decone_os(m: Matroid | Arrangement, at: int) -> OSAlgebra:
    """OS algebra of the decone at hyperplane ``at`` (quotient by ``e_at``)."""
    return OSAlgebra(as_matroid(m), None, infinity=at)


def poincare_polynomial(a: OSAlgebra) -> list[int]:
    return a.dims


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(f"{c}*{var}")
        else:
            terms.append(f"{c}*{var}^{k}")
    return " + ".join(terms) if terms else "0"


def os_multiply(x: OSElement, y: OSElement, a: OSAlgebra) -> OSElement:
    deg = x.degree + y.degree
    acc: Vector = {}
    if deg <= a.rank:
        for s, cs in x.coords.items():
            for t, ct in y.coords.items():
                for k, v in a.monomial(s + t).items():
                    _add(acc, k, cs * ct * v)
    return OSElement(deg, acc)


# ---------------------------------------------------------------------------
# relation spaces and the quadratic closure


def exterior_basis(gens: Sequence[int], k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(sorted(gens), k))


def relation_generators(a: OSAlgebra, k: int) -> list[Vector]:
    """Spanning set of I_k = ker(E_k -> A_k): ``e_S - straighten(e_S)`` for non-nbc S."""
    out = []
    nbc = a._index.get(k, {})
    for s in exterior_basis(a.generators, k):
        if s in nbc:
            continue
        v: Vector = {s: 1}
        for t, c in a.monomial(s).items():
            _add(v, t, -c)
        out.append(v)
    return out


def quadratic_relation_space(a: OSAlgebra) -> list[Vector]:
    """A basis of I_2 inside E_2 (keys are sorted pairs)."""
    return relation_generators(a, 2)


def ideal_in_degree(rel2: Iterable[Vector], gens: Sequence[int], k: int) -> Echelon:
    """Echelon basis of (I_2)_k = I_2 ∧ E_{k-2}, columns indexed by k-subsets."""
    ech = Echelon()
    if k < 2:
        return ech
    basis = {s: i for i, s in enumerate(exterior_basis(gens, k))}
    rel2 = list(rel2)
    for u in exterior_basis(gens, k - 2):
        for r in rel2:
            v: dict[int, Fraction | int] = {}
            for s, c in r.items():
                sign, t = wedge(s, u)
                if sign:
                    _add(v, basis[t], sign * c)
            if v:
                ech.add(v)
    return ech


def quadratic_closure_dims(a: OSAlgebra, max_deg: int | None = None) -> list[int]:
    """dim B_k for B = E/(I_2), k = 0..max_deg (default: number of generators)."""
    n = len(a.generators)
    max_deg = n if max_deg is None else max_deg
    rel2 = quadratic_relation_space(a)
    out = []
    for k in range(max_deg + 1):
        ek = len(exterior_basis(a.generators, k))
        out.append(ek - len(ideal_in_degree(rel2, a.generators, k)))
    return out


def os_matrix(a: OSAlgebra, k: int) -> SparseMatrix:
    """Matrix of E_k -> A_k (rows nbc sets, columns k-subsets)."""
    cols = exterior_basis(a.generators, k)
    entries = []
    for j, s in enumerate(cols):
        for t, c in a.monomial(s).items():
            entries.append((a.index(t), j, c))
    return SparseMatrix(a.dim(k), len(cols), entries)


def check_dims_against_rank(a: OSAlgebra, k: int) -> bool:
    """The straightening map is onto A_k (a sanity check used by tests)."""
    return rank(os_matrix(a, k)) == a.dim(k)
