"""Central hyperplane arrangements, matroids and their intersection lattices.

Hyperplanes are indexed ``0..n-1`` in input order.  Subsets of hyperplanes are
handled as sorted tuples at the API surface and as bitmasks internally.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

EXHAUSTIVE_CHECK_LIMIT = 12


class ArrangementError(ValueError):
    pass


def _mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << i
    return m


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def matrix_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a small dense rational matrix (rows = vectors)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if a:
                f = a / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


# ---------------------------------------------------------------------------
# matroids


class Matroid:
    """A matroid on ``range(ground_size)`` given by its circuits.

    The rank function is derived from the circuits: a set is independent iff
    it contains no circuit, and rank is computed greedily.
    """

    def __init__(self, ground_size: int, circuits: Iterable[Iterable[int]], rank: int | None = None,
                 check: bool = True):
        self.ground_size = n = int(ground_size)
        cs = sorted({tuple(sorted(set(c))) for c in circuits}, key=lambda c: (len(c), c))
        for c in cs:
            if not c:
                raise ArrangementError("the empty set cannot be a circuit")
            if c[0] < 0 or c[-1] >= n:
                raise ArrangementError(f"circuit {c} not contained in ground set of size {n}")
        self.circuits: tuple[tuple[int, ...], ...] = tuple(cs)
        self._cmasks = tuple(_mask(c) for c in cs)
        self._rank_cache: dict[int, int] = {}
        full = self.rank_of_mask((1 << n) - 1)
        if rank is not None and rank != full:
            raise ArrangementError(f"declared rank {rank} but circuits give rank {full}")
        self.rank = full
        if check:
            self._check_axioms()

    def _check_axioms(self) -> None:
        masks = self._cmasks
        for a, b in itertools.combinations(masks, 2):
            if a & b == a or a & b == b:
                raise ArrangementError("circuits are not pairwise incomparable")
        if self.ground_size > EXHAUSTIVE_CHECK_LIMIT:
            log.warning("circuit elimination not checked exhaustively for n=%d > %d",
                        self.ground_size, EXHAUSTIVE_CHECK_LIMIT)
            return
        for a, b in itertools.combinations(masks, 2):
            common = a & b
            if not common:
                continue
            union = a | b
            for e in _members(common):
                rest = union & ~(1 << e)
                if not self._contains_circuit(rest):
                    raise ArrangementError("circuit elimination axiom fails")

    def _contains_circuit(self, mask: int) -> bool:
        return any(c & mask == c for c in self._cmasks)

    def is_independent(self, s: Iterable[int]) -> bool:
        return not self._contains_circuit(_mask(s))

    def rank_of_mask(self, mask: int) -> int:
        r = self._rank_cache.get(mask)
        if r is None:
            indep = 0
            r = 0
            for e in _members(mask):
                trial = indep | (1 << e)
                if not self._contains_circuit(trial):
                    indep = trial
                    r += 1
            self._rank_cache[mask] = r
        return r

    def rank_of(self, s: Iterable[int]) -> int:
        return self.rank_of_mask(_mask(s))

    def closure(self, s: Iterable[int]) -> tuple[int, ...]:
        m = _mask(s)
        r = self.rank_of_mask(m)
        for e in range(self.ground_size):
            if not m >> e & 1 and self.rank_of_mask(m | (1 << e)) == r:
                m |= 1 << e
        return _members(m)

    def is_simple(self) -> bool:
        return all(len(c) >= 3 for c in self.circuits)

    def two_generic(self) -> bool:
        return two_generic(self)

    def __eq__(self, other):
        return (isinstance(other, Matroid) and self.ground_size == other.ground_size
                and self.circuits == other.circuits)

    def __hash__(self):
        return hash((self.ground_size, self.circuits))

    def __repr__(self):
        return f"Matroid(n={self.ground_size}, rank={self.rank}, circuits={len(self.circuits)})"


def two_generic(m: "Matroid | Arrangement") -> bool:
    """True iff no three elements are dependent, i.e. every circuit has size >= 4."""
    if isinstance(m, Arrangement):
        m = m.matroid
    return all(len(c) >= 4 for c in m.circuits)


def uniform_matroid(rank: int, n: int) -> Matroid:
    return Matroid(n, itertools.combinations(range(n), rank + 1), check=False)


def matroid_from_block_design(blocks: Sequence[Iterable[int]], n: int) -> Matroid:
    """Rank-4 matroid whose dependent sets contain a block or have >= 5 elements.

    Circuits are the blocks together with the 5-subsets containing no block.
    Blocks are 0-based index sets of size 4.
    """
    bl = []
    for b in blocks:
        b = tuple(sorted(set(b)))
        if len(b) != 4:
            raise ArrangementError(f"block {b} does not have size 4")
        if b[0] < 0 or b[-1] >= n:
            raise ArrangementError(f"block {b} not contained in ground set of size {n}")
        bl.append(b)
    bmasks = [_mask(b) for b in bl]
    circuits = list(bl)
    for s in itertools.combinations(range(n), 5):
        m = _mask(s)
        if not any(b & m == b for b in bmasks):
            circuits.append(s)
    return Matroid(n, circuits)


# ---------------------------------------------------------------------------
# arrangements


def _normalize(row: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lead = next(x for x in row if x != 0)
    return tuple(Fraction(x) / lead for x in row)


@dataclass(frozen=True)
class Arrangement:
    """A central arrangement of ``n`` hyperplanes in C^ell given by normals."""

    ambient_dim: int
    normals: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"H{i + 1}" for i in range(len(self.normals))))
        if len(self.labels) != len(self.normals):
            raise ArrangementError("one label per hyperplane required")

    @property
    def n(self) -> int:
        return len(self.normals)

    @cached_property
    def matroid(self) -> Matroid:
        return Matroid(self.n, self._circuits(), check=False)

    @property
    def rank(self) -> int:
        return matrix_rank(self.normals)

    def rank_of(self, s: Iterable[int]) -> int:
        return matrix_rank([self.normals[i] for i in s])

    def _circuits(self) -> list[tuple[int, ...]]:
        n, r = self.n, self.rank
        circuits = []
        cmasks: list[int] = []
        for k in range(1, r + 2):
            for s in itertools.combinations(range(n), k):
                m = _mask(s)
                if any(c & m == c for c in cmasks):
                    continue
                if self.rank_of(s) < k:
                    circuits.append(s)
                    cmasks.append(m)
        return circuits

    def __repr__(self):
        return f"Arrangement(n={self.n}, ell={self.ambient_dim})"


def load_arrangement(coeff_rows: Sequence[Sequence[object]], labels: Sequence[str] | None = None) -> Arrangement:
    """Build an arrangement from rows of linear-form coefficients.

    Normals are scaled so their first nonzero coordinate is 1; zero rows and
    proportional (duplicate) rows are rejected.
    """
    rows = [tuple(Fraction(x) for x in r) for r in coeff_rows]
    if not rows:
        raise ArrangementError("empty arrangement")
    ell = len(rows[0])
    seen: dict[tuple[Fraction, ...], int] = {}
    normals = []
    for i, r in enumerate(rows):
        if len(r) != ell:
            raise ArrangementError(f"row {i} has {len(r)} entries, expected {ell}")
        if not any(r):
            raise ArrangementError(f"zero row at index {i}")
        nr = _normalize(r)
        if nr in seen:
            raise ArrangementError(f"duplicate hyperplane: rows {seen[nr]} and {i}")
        seen[nr] = i
        normals.append(nr)
    return Arrangement(ell, tuple(normals), tuple(labels) if labels else ())


def boolean_arrangement(n: int) -> Arrangement:
    return load_arrangement([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                            [f"x{i + 1}" for i in range(n)])


# ---------------------------------------------------------------------------
# cone / decone


@dataclass(frozen=True)
class AffineArrangement:
    """Affine hyperplanes ``a . x + b = 0`` in C^dim; rows are ``(a_1..a_dim, b)``."""

    dim: int
    rows: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.rows)


def cone(a: AffineArrangement | Arrangement, label: str = "H0") -> Arrangement:
    """Homogenize with a new last coordinate; the hyperplane at infinity comes first."""
    if isinstance(a, Arrangement):
        a = AffineArrangement(a.ambient_dim, tuple(tuple(r) + (Fraction(0),) for r in a.normals), a.labels)
    d = a.dim
    inf = tuple([Fraction(0)] * d + [Fraction(1)])
    labels = (label,) + (tuple(a.labels) if a.labels else tuple(f"H{i + 1}" for i in range(a.n)))
    return load_arrangement([inf] + [tuple(r) for r in a.rows], labels)


@dataclass(frozen=True)
class Decone:
    """An affine arrangement together with the hyperplane sent to infinity."""

    affine: AffineArrangement
    at: int
    kept: tuple[int, ...]


def decone(a: Arrangement, at: int) -> Decone:
    """Send hyperplane ``at`` to infinity (it becomes the last coordinate = 1)."""
    if not 0 <= at < a.n:
        raise IndexError(f"hyperplane index {at} out of range 0..{a.n - 1}")
    h = a.normals[at]
    ell = a.ambient_dim
    # change coordinates so that h becomes the last coordinate function
    piv = next(j for j in range(ell) if h[j] != 0)
    basis = [tuple(Fraction(int(i == j)) for j in range(ell)) for i in range(ell) if i != piv]
    # linear forms f restricted to {h = 1}: write f = sum_i c_i y_i + c_h h in coords (y, h)
    # where y are the coordinates other than piv
    rows = []
    kept = []
    for k, f in enumerate(a.normals):
        if k == at:
            continue
        c_h = f[piv] / h[piv]
        coeffs = [f[j] - c_h * h[j] for j in range(ell) if j != piv]
        rows.append(tuple(coeffs) + (c_h,))
        kept.append(k)
    del basis
    labels = tuple(a.labels[k] for k in kept)
    return Decone(AffineArrangement(ell - 1, tuple(rows), labels), at, tuple(kept))


# ---------------------------------------------------------------------------
# lattice


@dataclass(frozen=True)
class Flat:
    hyperplanes: tuple[int, ...]
    rank: int


@dataclass
class IntersectionLattice:
    flats_by_rank: dict[int, list[Flat]] = field(default_factory=dict)

    def __getitem__(self, k: int) -> list[Flat]:
        return self.flats_by_rank.get(k, [])

    def sizes(self, k: int) -> list[int]:
        return [len(f.hyperplanes) for f in self[k]]


def as_matroid(x: "Arrangement | Matroid") -> Matroid:
    return x.matroid if isinstance(x, Arrangement) else x


def flats(x: "Arrangement | Matroid", max_rank: int) -> IntersectionLattice:
    """All flats of rank <= ``max_rank``, by iterated closure."""
    m = as_matroid(x)
    max_rank = min(max_rank, m.rank)
    lat = IntersectionLattice({0: [Flat((), 0)]})
    current = {()}
    for k in range(1, max_rank + 1):
        nxt: set[tuple[int, ...]] = set()
        for f in current:
            fm = set(f)
            for h in range(m.ground_size):
                if h in fm:
                    continue
                nxt.add(m.closure(f + (h,)))
        lat.flats_by_rank[k] = [Flat(f, k) for f in sorted(nxt)]
        current = nxt
    return lat


def rank2_flats(x: "Arrangement | Matroid") -> list[tuple[int, ...]]:
    return [f.hyperplanes for f in flats(x, 2)[2]]
