"""Truncated power series, rational-function expansion, rescaling and PBW inversion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence


class SeriesError(ValueError):
    pass


class TruncationError(SeriesError):
    pass


class NotPBWSeries(SeriesError):
    pass


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def poly_mul(a: Sequence, b: Sequence, order: int | None = None) -> list:
    n = len(a) + len(b) - 1 if a and b else 0
    if order is not None:
        n = min(n, order + 1)
    out = [0] * n
    for i, x in enumerate(a):
        if not x or i >= n:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += x * y
    return out


def poly_from_roots(ds: Iterable[int]) -> list[int]:
    """Coefficients of prod (1 + d t)."""
    out = [1]
    for d in ds:
        out = poly_mul(out, [1, d])
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})."""

    coefficients: tuple
    order: int

    def __init__(self, coefficients: Iterable, order: int | None = None):
        cs = [_norm(c) for c in coefficients]
        if order is None:
            order = len(cs) - 1
        cs = (cs + [0] * (order + 1))[: order + 1]
        object.__setattr__(self, "coefficients", tuple(cs))
        object.__setattr__(self, "order", order)

    def __getitem__(self, k: int):
        return self.coefficients[k] if 0 <= k <= self.order else 0

    def __len__(self):
        return self.order + 1

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self[k] + other[k] for k in range(n + 1)], n)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(poly_mul(self.coefficients, other.coefficients, n), n)

    def inverse(self) -> "TruncatedSeries":
        if self[0] == 0:
            raise SeriesError("series with zero constant term is not invertible")
        inv = [Fraction(1) / Fraction(self[0])]
        for k in range(1, self.order + 1):
            s = sum(self[j] * inv[k - j] for j in range(1, k + 1))
            inv.append(-s * inv[0])
        return TruncatedSeries(inv, self.order)

    def to_list(self) -> list:
        return list(self.coefficients)


@dataclass(frozen=True)
class RationalFunctionRep:
    numerator: tuple
    denominator: tuple

    def __init__(self, numerator: Iterable, denominator: Iterable):
        num = tuple(_norm(c) for c in numerator)
        den = tuple(_norm(c) for c in denominator)
        if not den or den[0] == 0:
            raise SeriesError("denominator must have nonzero constant term")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def expand(self, order: int) -> TruncatedSeries:
        return expand_rational(self, order)

    def __str__(self):
        return f"({_fmt(self.numerator)})/({_fmt(self.denominator)})"


def _fmt(cs: Sequence, var: str = "t") -> str:
    parts = []
    for k, c in enumerate(cs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if k == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def expand_rational(r: RationalFunctionRep, order: int) -> TruncatedSeries:
    num = TruncatedSeries(r.numerator, order)
    den = TruncatedSeries(r.denominator, order)
    return num * den.inverse()


def one_minus_power(d: int, e: int) -> list[int]:
    """Coefficients of (1 - d t)^e for e >= 0."""
    return [comb(e, k) * (-d) ** k for k in range(e + 1)]


# ---------------------------------------------------------------------------
# bigraded tables


@dataclass
class BigradedTable:
    """Dimensions indexed by (p, q), known exactly for p <= p_complete (all q).

    Absent keys inside the complete range are zero.
    """

    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    p_complete: int = 0

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        if p > self.p_complete:
            raise TruncationError(f"bidegree ({p},{q}) lies beyond p = {self.p_complete}")
        return self.entries.get((p, q), 0)

    def row(self, q: int, p_max: int | None = None) -> list[int]:
        p_max = self.p_complete if p_max is None else p_max
        return [self[p, q] for p in range(p_max + 1)]

    def support_q(self) -> list[int]:
        return sorted({q for (p, q), v in self.entries.items() if v and p <= self.p_complete})

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}


def rescale_collapse(table: BigradedTable, q: int, degree_bound: int) -> TruncatedSeries:
    """Series in u with u^s coefficient sum of U^a_b over 2qa + (2q+1)b = s."""
    if q < 1:
        raise SeriesError("rescaling parameter must be >= 1")
    need = degree_bound // (2 * q)
    if need > table.p_complete:
        missing = [(a, b) for a in range(table.p_complete + 1, need + 1)
                   for b in range((degree_bound - 2 * q * a) // (2 * q + 1) + 1)]
        raise TruncationError(
            f"rescaling to degree {degree_bound} needs bidegrees with p <= {need}, "
            f"table is complete only for p <= {table.p_complete}; missing {missing}"
        )
    out = [0] * (degree_bound + 1)
    for a in range(need + 1):
        for b in range((degree_bound - 2 * q * a) // (2 * q + 1) + 1):
            out[2 * q * a + (2 * q + 1) * b] += table[a, b]
    return TruncatedSeries(out, degree_bound)


# ---------------------------------------------------------------------------
# PBW


def _pbw_factor(i: int, e: int, order: int) -> TruncatedSeries:
    """(1 + u^i)^e for odd i, (1 - u^i)^(-e) for even i; e may be negative."""
    cs = [0] * (order + 1)
    for k in range(order // i + 1):
        if i % 2:
            c = _gen_binom(e, k)
        else:
            c = _gen_binom(-e, k) * (-1) ** k
        cs[k * i] = c
    return TruncatedSeries(cs, order)


def _gen_binom(e: int, k: int) -> int:
    num = 1
    for j in range(k):
        num *= e - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    return num // den


def pbw_expand(e: Mapping[int, int], order: int) -> TruncatedSeries:
    out = TruncatedSeries([1], order)
    for i, ei in sorted(e.items()):
        if ei and i <= order:
            out = out * _pbw_factor(i, ei, order)
    return out


def pbw_lie_ranks(s: TruncatedSeries) -> dict[int, int]:
    """Invert the graded PBW product degree by degree."""
    if s[0] != 1:
        raise NotPBWSeries("constant term must be 1")
    cur = s
    ranks: dict[int, int] = {}
    for i in range(1, s.order + 1):
        e = cur[i]
        if Fraction(e).denominator != 1 or e < 0:
            raise NotPBWSeries(f"degree {i} would need rank {e}")
        e = int(e)
        ranks[i] = e
        if e:
            cur = cur * _pbw_factor(i, -e, s.order)
    return ranks


def loop_to_pi(loop_ranks: Mapping[int, int]) -> dict[int, int]:
    """pi_{k+1}(Y) = pi_k(Omega Y)."""
    return {k + 1: v for k, v in loop_ranks.items()}
