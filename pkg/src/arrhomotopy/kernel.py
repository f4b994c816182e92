"""Exact sparse linear algebra over the rationals.

Matrices are stored row-wise as ``{row: {col: value}}`` with no explicit
zeros.  Ranks are computed either by exact elimination over ``Fraction`` or
modulo a prime; the default strategy runs two independent ~62-bit primes and
falls back to exact elimination if they disagree.
"""

from __future__ import annotations

import heapq
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import isprime, prevprime

log = logging.getLogger(__name__)

Rational = Fraction


class PrimeDividesDenominator(ValueError):
    """Raised when a prime cannot be used to reduce a rational matrix."""


class NotAComplex(ValueError):
    """Raised when consecutive differentials do not compose to zero."""


def _as_rational(x) -> Fraction | int:
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


class SparseMatrix:
    """Immutable sparse matrix with rational entries.

    ``entries`` may be any iterable of ``(row, col, value)`` triples; duplicate
    positions are rejected and zero values are dropped.
    """

    __slots__ = ("rows", "cols", "_data", "_nnz")

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int, object]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data: dict[int, dict[int, Fraction | int]] = {}
        for i, j, v in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) out of range for {rows}x{cols} matrix")
            row = data.setdefault(i, {})
            if j in row:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            v = _as_rational(v)
            if v:
                row[j] = v
        self.rows = rows
        self.cols = cols
        self._data = {i: r for i, r in data.items() if r}
        self._nnz = sum(len(r) for r in self._data.values())

    @classmethod
    def from_row_dicts(cls, rows: int, cols: int, data: Mapping[int, Mapping[int, object]]) -> "SparseMatrix":
        """Fast constructor from a row mapping; zeros are dropped, indices trusted."""
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        clean: dict[int, dict[int, Fraction | int]] = {}
        for i, r in data.items():
            cr = {j: v for j, v in r.items() if v}
            if cr:
                clean[i] = cr
        m._data = clean
        m._nnz = sum(len(r) for r in clean.values())
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r)))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return self._nnz

    def row_dicts(self) -> dict[int, dict[int, Fraction | int]]:
        """A copy of the row mapping."""
        return {i: dict(r) for i, r in self._data.items()}

    def entries(self) -> list[tuple[int, int, Fraction | int]]:
        return [(i, j, v) for i in sorted(self._data) for j, v in sorted(self._data[i].items())]

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self._data.get(i, {}).get(j, 0)

    def to_dense(self) -> list[list[Fraction | int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        t: dict[int, dict[int, Fraction | int]] = {}
        for i, r in self._data.items():
            for j, v in r.items():
                t.setdefault(j, {})[i] = v
        return SparseMatrix.from_row_dicts(self.cols, self.rows, t)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict[int, dict[int, Fraction | int]] = {}
        odata = other._data
        for i, r in self._data.items():
            acc: dict[int, Fraction | int] = {}
            for k, a in r.items():
                orow = odata.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return SparseMatrix.from_row_dicts(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return self._nnz == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._nnz))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self._nnz})"


# ---------------------------------------------------------------------------
# elimination


def _eliminate_mod_p(rows: list[dict[int, int]], p: int) -> int:
    """Rank of a list of sparse rows over GF(p).  Rows are consumed.

    Left-looking elimination: each incoming row is reduced by the pivot rows
    in insertion order (a pivot row never contains an earlier pivot column,
    so the heap order guarantees termination).  The pivot of a new row is its
    entry in the globally sparsest column, a cheap Markowitz surrogate.
    """
    colcount: dict[int, int] = {}
    for r in rows:
        for c in r:
            colcount[c] = colcount.get(c, 0) + 1
    rows.sort(key=len)
    pivots: dict[int, dict[int, int]] = {}
    ptime: dict[int, int] = {}
    for r in rows:
        heap = [(ptime[c], c) for c in r if c in ptime]
        if heap:
            heapq.heapify(heap)
            while heap:
                _, c = heapq.heappop(heap)
                v = r.get(c)
                if not v:
                    continue
                for col, val in pivots[c].items():
                    nv = (r.get(col, 0) - v * val) % p
                    if nv:
                        if col not in r and col in ptime:
                            heapq.heappush(heap, (ptime[col], col))
                        r[col] = nv
                    else:
                        r.pop(col, None)
        if not r:
            continue
        c = min(r, key=lambda k: (colcount.get(k, 0), k))
        inv = pow(r[c], -1, p)
        if inv != 1:
            r = {k: (v * inv) % p for k, v in r.items()}
        ptime[c] = len(pivots)
        pivots[c] = r
    return len(pivots)


def _eliminate_exact(rows: list[dict[int, Fraction | int]]) -> int:
    """Rank over Q of a list of sparse rows, same scheme as the modular path."""
    colcount: dict[int, int] = {}
    for r in rows:
        for c in r:
            colcount[c] = colcount.get(c, 0) + 1
    rows.sort(key=len)
    pivots: dict[int, dict[int, Fraction | int]] = {}
    ptime: dict[int, int] = {}
    for r in rows:
        heap = [(ptime[c], c) for c in r if c in ptime]
        if heap:
            heapq.heapify(heap)
            while heap:
                _, c = heapq.heappop(heap)
                v = r.get(c)
                if not v:
                    continue
                for col, val in pivots[c].items():
                    nv = r.get(col, 0) - v * val
                    if nv:
                        if col not in r and col in ptime:
                            heapq.heappush(heap, (ptime[col], col))
                        r[col] = nv
                    else:
                        r.pop(col, None)
        if not r:
            continue
        c = min(r, key=lambda k: (colcount.get(k, 0), k))
        piv = r[c]
        if piv != 1:
            r = {k: _as_rational(Fraction(v) / piv) for k, v in r.items()}
        ptime[c] = len(pivots)
        pivots[c] = r
    return len(pivots)


def _oriented_rows(m: SparseMatrix) -> list[dict]:
    # eliminate along the shorter side; rank is transpose-invariant
    if m.rows <= m.cols:
        return list(m.row_dicts().values())
    return list(m.transpose().row_dicts().values())


def reduce_mod(m: SparseMatrix, prime: int) -> list[dict[int, int]]:
    """Rows of ``m`` reduced modulo ``prime``."""
    out = []
    inv_cache: dict[int, int] = {}
    for r in _oriented_rows(m):
        rr = {}
        for c, v in r.items():
            if isinstance(v, Fraction):
                d = v.denominator
                if d % prime == 0:
                    raise PrimeDividesDenominator(f"prime {prime} divides a denominator ({d})")
                inv = inv_cache.get(d)
                if inv is None:
                    inv = inv_cache[d] = pow(d, -1, prime)
                x = (v.numerator * inv) % prime
            else:
                x = v % prime
            if x:
                rr[c] = x
        if rr:
            out.append(rr)
    return out


def modular_rank(m: SparseMatrix, prime: int) -> int:
    """Rank of ``m`` reduced modulo ``prime`` (never larger than the rational rank)."""
    if m.is_zero():
        return 0
    return _eliminate_mod_p(reduce_mod(m, prime), prime)


def exact_rank(m: SparseMatrix) -> int:
    if m.is_zero():
        return 0
    return _eliminate_exact(_oriented_rows(m))


def random_prime(rng: random.Random, bits: int = 62) -> int:
    """A random prime just below ``2**bits``."""
    while True:
        p = prevprime((1 << bits) - rng.randrange(1 << (bits - 8)))
        if isprime(p):
            return p


@dataclass
class RankStrategy:
    """How ranks are computed.

    ``exact`` forces elimination over Q.  Otherwise two primes drawn from a
    generator seeded with ``seed`` must agree; a disagreement triggers an
    exact recomputation.
    """

    exact: bool = False
    seed: int = 0
    primes: tuple[int, int] = field(init=False)

    def __post_init__(self):
        rng = random.Random(self.seed)
        p1 = random_prime(rng)
        p2 = random_prime(rng)
        while p2 == p1:
            p2 = random_prime(rng)
        self.primes = (p1, p2)

    def rank(self, m: SparseMatrix) -> int:
        if m.is_zero():
            return 0
        if self.exact:
            return exact_rank(m)
        try:
            r1 = modular_rank(m, self.primes[0])
            r2 = modular_rank(m, self.primes[1])
        except PrimeDividesDenominator:
            log.warning("prime divides a denominator; using exact elimination")
            return exact_rank(m)
        if r1 == r2:
            return r1
        log.warning("modular ranks disagree (%d vs %d); using exact elimination", r1, r2)
        return exact_rank(m)


_DEFAULT = RankStrategy()


def rank(m: SparseMatrix, strategy: RankStrategy | None = None) -> int:
    """Rank of ``m`` over Q."""
    return (strategy or _DEFAULT).rank(m)


# ---------------------------------------------------------------------------
# reduced echelon bases (small, exact)


class Echelon:
    """Incrementally maintained reduced row echelon basis over Q.

    Vectors are sparse dicts ``{col: value}``.  Every stored row has pivot 1
    and all pivot columns are cleared in every other row, so the coordinates
    of a vector in the span are read off at the pivot columns.  ``prefer_high``
    picks the largest column of a new row as its pivot, leaving low columns
    free (used to select lexicographically small quotient bases).
    """

    def __init__(self, prefer_high: bool = False):
        self.prefer_high = prefer_high
        self.rows: dict[int, dict[int, Fraction | int]] = {}
        self.order: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return list(self.order)

    def reduce(self, v: Mapping[int, object]) -> dict[int, Fraction | int]:
        r = {k: _as_rational(x) for k, x in v.items() if x}
        for c in [c for c in r if c in self.rows]:
            a = r.get(c)
            if not a:
                continue
            for col, val in self.rows[c].items():
                nv = r.get(col, 0) - a * val
                if nv:
                    r[col] = _as_rational(nv)
                else:
                    r.pop(col, None)
        return r

    def add(self, v: Mapping[int, object]) -> int | None:
        """Add ``v`` to the span; returns the new pivot column or None."""
        r = self.reduce(v)
        if not r:
            return None
        c = max(r) if self.prefer_high else min(r)
        piv = r[c]
        if piv != 1:
            r = {k: _as_rational(Fraction(x) / piv) for k, x in r.items()}
        # clear the new pivot column from existing rows
        for pc, row in self.rows.items():
            a = row.get(c)
            if a:
                for col, val in r.items():
                    nv = row.get(col, 0) - a * val
                    if nv:
                        row[col] = _as_rational(nv)
                    else:
                        row.pop(col, None)
        self.rows[c] = r
        self.order.append(c)
        return c

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping[int, object]) -> dict[int, Fraction | int]:
        """Coordinates ``{pivot: coeff}`` of a vector assumed to lie in the span."""
        return {c: _as_rational(v[c]) for c in self.rows if v.get(c)}


def nullspace(m: SparseMatrix) -> list[dict[int, Fraction | int]]:
    """Basis of the right nullspace of ``m`` over Q, as sparse column vectors."""
    ech = Echelon()
    for r in m.row_dicts().values():
        ech.add(r)
    free = [j for j in range(m.cols) if j not in ech.rows]
    basis = []
    for f in free:
        vec: dict[int, Fraction | int] = {f: 1}
        for c, row in ech.rows.items():
            a = row.get(f)
            if a:
                vec[c] = _as_rational(-a)
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class FiniteComplex:
    """Cochain complex ``C_0 -> C_1 -> ... -> C_k`` of finite-dimensional spaces.

    ``differentials[i]`` maps term ``i`` to term ``i + 1`` and therefore has
    shape ``(dims[i + 1], dims[i])``.
    """

    dims: tuple[int, ...]
    differentials: tuple[SparseMatrix, ...]

    def __init__(self, dims: Sequence[int], differentials: Sequence[SparseMatrix], check: bool = True):
        dims = tuple(int(d) for d in dims)
        differentials = tuple(differentials)
        if len(differentials) > max(len(dims) - 1, 0):
            raise ValueError("too many differentials for the given terms")
        for i, d in enumerate(differentials):
            if d.shape != (dims[i + 1], dims[i]):
                raise ValueError(f"differential {i} has shape {d.shape}, expected {(dims[i + 1], dims[i])}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "differentials", differentials)
        if check:
            for i in range(len(differentials) - 1):
                if not (differentials[i + 1] @ differentials[i]).is_zero():
                    raise NotAComplex(f"d_{i + 1} . d_{i} != 0")

    def differential(self, i: int) -> SparseMatrix | None:
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return None

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


def homology_dims(c: FiniteComplex, strategy: RankStrategy | None = None) -> list[int]:
    """``dim H_i = d_i - rank(d_i) - rank(d_{i-1})`` for every term."""
    ranks = [rank(d, strategy) for d in c.differentials]
    ranks += [0] * (len(c.dims) - len(ranks))
    out = []
    for i, d in enumerate(c.dims):
        out.append(d - ranks[i] - (ranks[i - 1] if i > 0 else 0))
    return out
