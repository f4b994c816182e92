"""Solvable extensions, hypersolvable chains and the singular range."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .arrangements import Arrangement, IntersectionLattice, Matroid, _mask, as_matroid, flats
from .os_algebra import OSAlgebra, build_os
from .series import poly_from_roots


class StepKind(str, enum.Enum):
    FIBRED = "Fibred"
    SINGULAR = "Singular"


class Verdict(str, enum.Enum):
    KOSZUL = "Koszul"
    LENGTH0 = "Length0"
    LENGTH1 = "Length1"
    OUT_OF_SCOPE = "OutOfScope"

    @property
    def applicable(self) -> bool:
        return self is not Verdict.OUT_OF_SCOPE


class Collinearity:
    """Lookup of the rank-2 flat spanned by each pair of hyperplanes."""

    def __init__(self, x: "Arrangement | Matroid | IntersectionLattice", n: int | None = None):
        if isinstance(x, IntersectionLattice):
            fl = [f.hyperplanes for f in x[2]]
            if n is None:
                n = 1 + max((h for f in fl for h in f), default=-1)
        else:
            m = as_matroid(x)
            n = m.ground_size
            fl = [f.hyperplanes for f in flats(m, 2)[2]]
        self.n = n
        self.flats = fl
        self._of: dict[tuple[int, int], int] = {}
        self.through: list[list[int]] = [[] for _ in range(n)]
        for k, f in enumerate(fl):
            for a, b in itertools.combinations(f, 2):
                self._of[(a, b)] = k
            for h in f:
                self.through[h].append(k)
        self.masks = [_mask(f) for f in fl]

    def flat(self, a: int, b: int) -> tuple[int, ...]:
        return self.flats[self._of[(a, b) if a < b else (b, a)]]

    def flat_mask(self, a: int, b: int) -> int:
        return self.masks[self._of[(a, b) if a < b else (b, a)]]

    def collinear(self, a: int, b: int, c: int) -> bool:
        return len({a, b, c}) == 3 and bool(self.flat_mask(a, b) >> c & 1)


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class ExtensionCheck:
    ok: bool
    condition: int | None = None
    witness: tuple[int, ...] = ()
    f: dict | None = None

    def __bool__(self):
        return self.ok


def is_solvable_extension(sub: Iterable[int], full: Iterable[int], col: Collinearity,
                          rank_of=None) -> ExtensionCheck:
    """Check the three solvable-extension conditions; a failing triple is returned as witness.

    ``rank_of`` (a function on index sets) is required for condition (3)
    whenever at least three hyperplanes are added.
    """
    sub = sorted(set(sub))
    full = sorted(set(full))
    subm = _mask(sub)
    if subm & ~_mask(full):
        raise ValueError("sub must be contained in full")
    new = [h for h in full if not subm >> h & 1]
    # (1) no new H collinear with two old ones
    for h in new:
        for k in col.through[h]:
            inside = col.masks[k] & subm
            if _popcount(inside) >= 2:
                a, b = [x for x in col.flats[k] if subm >> x & 1][:2]
                return ExtensionCheck(False, 1, (h, a, b))
    # (2) each new pair has exactly one old partner
    f: dict[tuple[int, int], int] = {}
    for h, g in itertools.combinations(new, 2):
        inside = col.flat_mask(h, g) & subm
        if _popcount(inside) != 1:
            return ExtensionCheck(False, 2, (h, g))
        f[(h, g)] = inside.bit_length() - 1
    # (3) images of new triples span rank <= 2
    if len(new) >= 3:
        if rank_of is None:
            raise ValueError("rank oracle required for condition (3)")
        for h, g, k in itertools.combinations(new, 3):
            if rank_of({f[(h, g)], f[(h, k)], f[(g, k)]}) > 2:
                return ExtensionCheck(False, 3, (h, g, k))
    return ExtensionCheck(True, f=f)


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class SolvableChain:
    stages: tuple[tuple[int, ...], ...]
    step_kinds: tuple[StepKind, ...]
    step_sizes: tuple[int, ...]
    stage_ranks: tuple[int, ...]

    @property
    def exponents(self) -> tuple[int, ...]:
        return (1,) + self.step_sizes

    @property
    def is_supersolvable(self) -> bool:
        return all(k is StepKind.FIBRED for k in self.step_kinds)

    def to_json(self) -> dict:
        return {
            "stages": [list(s) for s in self.stages],
            "step_kinds": [k.value for k in self.step_kinds],
            "step_sizes": list(self.step_sizes),
            "stage_ranks": list(self.stage_ranks),
        }


class NotHypersolvable(Exception):
    """Raised (or returned) when exhaustive chain search fails."""


class _ChainSearch:
    def __init__(self, m: Matroid):
        self.m = m
        self.n = m.ground_size
        self.col = Collinearity(m)
        self.full = (1 << self.n) - 1
        self.failed: set[int] = set()

    def blocks(self, s: int) -> list[int] | None:
        """Candidate next blocks from stage ``s``; None if the stage is dead."""
        col, n = self.col, self.n
        rest = [h for h in range(n) if not s >> h & 1]
        for h in rest:
            for k in col.through[h]:
                if _popcount(col.masks[k] & s) >= 2:
                    return None
        adj = {h: set() for h in rest}
        for h, g in itertools.combinations(rest, 2):
            if _popcount(col.flat_mask(h, g) & s) == 1:
                adj[h].add(g)
                adj[g].add(h)
        seen: set[int] = set()
        out = []
        for h in rest:
            if h in seen:
                continue
            comp = {h}
            todo = [h]
            while todo:
                x = todo.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        todo.append(y)
            seen |= comp
            if all(len(adj[x]) == len(comp) - 1 for x in comp):
                out.append(_mask(comp))
        return sorted(out, key=lambda b: (b & -b).bit_length())

    def closed2(self, s: int) -> bool:
        col = self.col
        members = [h for h in range(self.n) if s >> h & 1]
        for a, b in itertools.combinations(members, 2):
            fm = col.flat_mask(a, b)
            if fm & ~s:
                return False
        return True

    def extend(self, s: int, block: int) -> bool:
        sub = [h for h in range(self.n) if s >> h & 1]
        full = [h for h in range(self.n) if (s | block) >> h & 1]
        return bool(is_solvable_extension(sub, full, self.col, self.m.rank_of))

    def chains(self, start: int) -> Iterator[list[int]]:
        yield from self._dfs(1 << start, [1 << start])

    def _dfs(self, s: int, path: list[int]) -> Iterator[list[int]]:
        if s == self.full:
            yield list(path)
            return
        if s in self.failed:
            return
        found = False
        for b in self.blocks(s) or ():
            t = s | b
            if t != self.full and not self.closed2(t):
                continue
            if not self.extend(s, b):
                continue
            path.append(t)
            for ch in self._dfs(t, path):
                found = True
                yield ch
            path.pop()
        if not found:
            self.failed.add(s)


def _make_chain(m: Matroid, masks: Sequence[int]) -> SolvableChain:
    n = m.ground_size
    stages = tuple(tuple(h for h in range(n) if s >> h & 1) for s in masks)
    ranks = tuple(m.rank_of_mask(s) for s in masks)
    kinds = []
    for r0, r1 in zip(ranks, ranks[1:]):
        if r1 == r0 + 1:
            kinds.append(StepKind.FIBRED)
        elif r1 == r0:
            kinds.append(StepKind.SINGULAR)
        else:  # pragma: no cover - excluded by the extension conditions
            raise AssertionError(f"rank jumped from {r0} to {r1}")
    sizes = tuple(len(b) - len(a) for a, b in zip(stages, stages[1:]))
    return SolvableChain(stages, tuple(kinds), sizes, ranks)


def iter_solvable_chains(x: "Arrangement | Matroid", limit: int | None = None) -> Iterator[SolvableChain]:
    m = as_matroid(x)
    search = _ChainSearch(m)
    count = 0
    for start in range(m.ground_size):
        for masks in search.chains(start):
            yield _make_chain(m, masks)
            count += 1
            if limit is not None and count >= limit:
                return


def find_solvable_chain(x: "Arrangement | Matroid") -> SolvableChain:
    """First chain in the deterministic search order; raises NotHypersolvable."""
    for ch in iter_solvable_chains(x, limit=1):
        return ch
    raise NotHypersolvable("no chain of solvable extensions exists")


def deformation_poincare(ch: SolvableChain) -> list[int]:
    """Coefficients of prod_j (1 + d_j t) over the chain exponents."""
    return poly_from_roots(ch.exponents)


@dataclass(frozen=True)
class SingularRange:
    c: int
    d: int

    @property
    def length(self) -> int:
        return self.d - self.c

    def to_json(self):
        return [self.c, self.d]


SUPERSOLVABLE = None


def singular_range(ch: SolvableChain, os: OSAlgebra) -> SingularRange | None:
    """The pair (c, d), or None for a supersolvable chain."""
    last = None
    for i, k in enumerate(ch.step_kinds):
        if k is StepKind.SINGULAR:
            last = i
    if last is None:
        return SUPERSOLVABLE
    b = deformation_poincare(ch)
    a = os.dims
    c = next(k for k in range(len(b)) if b[k] != (a[k] if k < len(a) else 0))
    d = ch.stage_ranks[last]
    if not 3 <= c <= d:
        raise AssertionError(f"singular range ({c},{d}) violates 3 <= c <= d")
    return SingularRange(c, d)


def hypothesis_verdict(sr: SingularRange | None) -> Verdict:
    if sr is None:
        return Verdict.KOSZUL
    if sr.length == 0:
        return Verdict.LENGTH0
    if sr.length == 1:
        return Verdict.LENGTH1
    return Verdict.OUT_OF_SCOPE


@dataclass(frozen=True)
class HypersolvableReport:
    chain: SolvableChain | None
    singular_range: SingularRange | None
    verdict: Verdict
    d_values: tuple[int, ...] = ()

    @property
    def hypersolvable(self) -> bool:
        return self.chain is not None

    def to_json(self) -> dict:
        return {
            "hypersolvable": self.hypersolvable,
            "chain": self.chain.to_json() if self.chain else None,
            "exponents": list(self.chain.exponents) if self.chain else None,
            "singular_range": self.singular_range.to_json() if self.singular_range else None,
            "verdict": self.verdict.value,
            "observed_d_values": list(self.d_values),
        }


def analyze_hypersolvable(x: "Arrangement | Matroid", os: OSAlgebra | None = None,
                          enumerate_chains: int = 0) -> HypersolvableReport:
    """Chain, singular range and verdict; optionally the d values seen over several chains."""
    m = as_matroid(x)
    os = os or build_os(m)
    try:
        ch = find_solvable_chain(m)
    except NotHypersolvable:
        return HypersolvableReport(None, None, Verdict.OUT_OF_SCOPE)
    sr = singular_range(ch, os)
    ds: tuple[int, ...] = ()
    if enumerate_chains:
        seen = set()
        for other in iter_solvable_chains(m, enumerate_chains):
            r = singular_range(other, os)
            if r is not None:
                seen.add(r.d)
        ds = tuple(sorted(seen))
    return HypersolvableReport(ch, sr, hypothesis_verdict(sr), ds)
