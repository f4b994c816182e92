"""The homotopy module M = Ext_B(J, k) and the Hilbert series of U(g).

Grading: ``M^p_q`` is the part of Tor_p^B(J, k) in total degree ``p + q``.
Since B is Koszul with dual R, this is the homology of ``J ⊗ R*`` at the term
``J_q ⊗ (R_p)*``, with differential ``sum_k (e_k ·) ⊗ (· x_k)^T``.

The linear strand ``A ⊗ R*`` (terms ``A_s ⊗ (R_P)*``) computes
``k ⊕ M[-1]``: ``M^p_q`` sits at ``P = p + 1``, ``s = q - 1``.  Both routes
are implemented; the J route is the default because its terms are much
smaller.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hypersolvable import SingularRange, Verdict
from .kernel import Echelon, FiniteComplex, RankStrategy, SparseMatrix, homology_dims, rank
from .os_algebra import (OSAlgebra, _add, exterior_basis, ideal_in_degree, quadratic_relation_space,
                         relation_generators, wedge)
from .quadratic import GradedQuadraticAlgebra
from .series import BigradedTable, RationalFunctionRep, SeriesError, poly_from_roots

log = logging.getLogger(__name__)


class HypothesisNotSatisfied(Exception):
    pass


# ---------------------------------------------------------------------------
# B = E/(I_2) and J = I/(I_2)


class QuadraticClosure:
    """Degreewise bases of B = E/(I_2) and of J = ker(B -> A)."""

    def __init__(self, os: OSAlgebra, max_deg: int):
        self.os = os
        self.gens = os.generators
        n = len(self.gens)
        self.max_deg = max_deg = min(max_deg, n)
        rel2 = quadratic_relation_space(os)
        self.ebasis: list[list[tuple[int, ...]]] = []
        self.eindex: list[dict[tuple[int, ...], int]] = []
        self.b_dims: list[int] = []
        self.j_pivots: list[list[int]] = []
        self.j_rows: list[list[dict]] = []
        self.i2: list[Echelon] = []
        for q in range(max_deg + 1):
            eb = exterior_basis(self.gens, q)
            eidx = {s: i for i, s in enumerate(eb)}
            ech = ideal_in_degree(rel2, self.gens, q)
            self.b_dims.append(len(eb) - len(ech))
            # J rows are kept reduced modulo (I_2), so they vanish on its pivots
            jech = Echelon()
            for v in relation_generators(os, q):
                jech.add(ech.reduce({eidx[s]: x for s, x in v.items()}))
            piv = jech.pivots
            self.ebasis.append(eb)
            self.eindex.append(eidx)
            self.i2.append(ech)
            self.j_pivots.append(piv)
            self.j_rows.append([jech.rows[c] for c in piv])
            if self.b_dims[-1] - len(piv) != os.dim(q):
                raise AssertionError(f"dim B_{q} - dim J_{q} != dim A_{q}")
        self._lambda: dict[int, list[list[dict[int, Fraction | int]]]] = {}

    @property
    def j_dims(self) -> list[int]:
        return [len(p) for p in self.j_pivots]

    def j_dim(self, q: int) -> int:
        if q < 0:
            return 0
        if q > self.max_deg:
            raise ValueError(f"J built only to degree {self.max_deg}")
        return len(self.j_pivots[q])

    def left_mult(self, q: int) -> list[list[dict[int, Fraction | int]]]:
        """``lam[k][j]`` = coordinates of e_{gens[k]} · (J basis j) in J_{q+1}."""
        if q in self._lambda:
            return self._lambda[q]
        out = []
        tgt_piv = self.j_pivots[q + 1] if q + 1 <= self.max_deg else []
        tgt_pos = {c: i for i, c in enumerate(tgt_piv)}
        eb = self.ebasis[q]
        eidx1 = self.eindex[q + 1] if q + 1 <= self.max_deg else {}
        i2 = self.i2[q + 1] if q + 1 <= self.max_deg else None
        for g in self.gens:
            cols = []
            for row in self.j_rows[q]:
                img: dict[int, Fraction | int] = {}
                for col, c in row.items():
                    sign, t = wedge((g,), eb[col])
                    if sign:
                        _add(img, eidx1[t], sign * c)
                if i2 is not None and len(i2):
                    img = i2.reduce(img)
                cols.append({tgt_pos[c]: v for c, v in img.items() if c in tgt_pos})
            out.append(cols)
        self._lambda[q] = out
        return out


def _os_left_mult(os: OSAlgebra, s: int) -> list[list[dict[int, Fraction | int]]]:
    out = []
    for g in os.generators:
        cols = []
        for mono in os.nbc_basis.get(s, []):
            cols.append({os.index(t): v for t, v in os.monomial((g,) + mono).items()})
        out.append(cols)
    return out


def _tensor_dual_differential(lam: Sequence[Sequence[dict]], rho: Sequence[Sequence[dict]],
                              dim_src_left: int, dim_tgt_left: int, dim_p: int, dim_p1: int) -> SparseMatrix:
    """Matrix of sum_k lam_k ⊗ rho_k^T from X_q ⊗ (R_p)* to X_{q+1} ⊗ (R_{p-1})*.

    ``lam[k][j]`` is the image of source basis j; ``rho[k][r']`` is the image
    in R_p of basis r' of R_{p-1}.
    """
    rows: dict[int, dict[int, Fraction | int]] = {}
    for lk, rk in zip(lam, rho):
        pairs = [(r1, r, x) for r1, vec in enumerate(rk) for r, x in vec.items()]
        if not pairs:
            continue
        for j, img in enumerate(lk):
            for j1, a in img.items():
                base_row = j1 * dim_p1
                base_col = j * dim_p
                for r1, r, x in pairs:
                    row = rows.setdefault(base_row + r1, {})
                    col = base_col + r
                    v = row.get(col, 0) + a * x
                    if v:
                        row[col] = v
                    else:
                        row.pop(col, None)
    return SparseMatrix.from_row_dicts(dim_tgt_left * dim_p1, dim_src_left * dim_p, rows)


class JComplex:
    """The complexes J ⊗ R*, one per total degree."""

    def __init__(self, closure: QuadraticClosure, R: GradedQuadraticAlgebra):
        self.J = closure
        self.R = R

    def differential(self, t: int, q: int) -> SparseMatrix:
        """J_q ⊗ (R_{t-q})* -> J_{q+1} ⊗ (R_{t-q-1})*."""
        p = t - q
        J, R = self.J, self.R
        src = J.j_dim(q) * (R.dim(p) if p >= 0 else 0)
        if p <= 0 or q + 1 > J.max_deg or src == 0:
            tgt = (J.j_dim(q + 1) if q + 1 <= J.max_deg else 0) * (R.dim(p - 1) if p >= 1 else 0)
            return SparseMatrix.zero(tgt, src)
        return _tensor_dual_differential(J.left_mult(q), R.right[p], J.j_dim(q), J.j_dim(q + 1),
                                         R.dim(p), R.dim(p - 1))

    def term_dim(self, t: int, q: int) -> int:
        p = t - q
        if p < 0 or q < 0 or q > self.J.max_deg:
            return 0
        return self.J.j_dim(q) * self.R.dim(p)

    def complex(self, t: int, check: bool = True) -> FiniteComplex:
        """Whole complex at total degree t, terms indexed by q = 0..min(t, max_deg)."""
        qs = range(0, min(t, self.J.max_deg) + 1)
        dims = [self.term_dim(t, q) for q in qs]
        diffs = [self.differential(t, q) for q in qs[:-1]]
        return FiniteComplex(dims, diffs, check=check)


def linear_strand_complex(os: OSAlgebra, R: GradedQuadraticAlgebra, t: int, check: bool = True) -> FiniteComplex:
    """A ⊗ R* at internal degree t; term s is A_s ⊗ (R_{t-s})*."""
    if t > R.p_max:
        raise ValueError(f"R built to degree {R.p_max}; internal degree {t} needs degree {t}")
    ss = range(0, min(t, os.rank) + 1)
    dims = [os.dim(s) * R.dim(t - s) for s in ss]
    diffs = []
    for s in ss[:-1]:
        p = t - s
        diffs.append(_tensor_dual_differential(_os_left_mult(os, s), R.right[p], os.dim(s), os.dim(s + 1),
                                               R.dim(p), R.dim(p - 1)))
    return FiniteComplex(dims, diffs, check=check)


# ---------------------------------------------------------------------------
# tables


@dataclass
class MTable(BigradedTable):
    q_max: int = 0
    formal: bool = False
    route: str = "J"

    def to_json(self) -> dict:
        rows = {str(q): self.row(q) for q in range(self.q_max + 1) if any(self.row(q))}
        return {"M": rows, "p_max": self.p_complete, "q_max": self.q_max,
                "label": "formal linear-strand homology" if self.formal else "homotopy module"}


def _rank_job(args):
    m, strategy = args
    return rank(m, strategy)


def _ranks(mats: Sequence[SparseMatrix], strategy: RankStrategy | None, jobs: int) -> list[int]:
    if jobs > 1 and len(mats) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_rank_job, [(m, strategy) for m in mats]))
    return [rank(m, strategy) for m in mats]


def homotopy_module_dims(os: OSAlgebra, R: GradedQuadraticAlgebra, verdict: Verdict | None, p_max: int,
                         q_max: int | None = None, strategy: RankStrategy | None = None, jobs: int = 1,
                         closure: QuadraticClosure | None = None) -> MTable:
    """dim M^p_q for 0 <= p <= p_max and q <= q_max (default rank + 1)."""
    q_max = os.matroid.rank + 1 if q_max is None else q_max
    if R.p_max < p_max + 1:
        raise ValueError(f"R must be built to degree {p_max + 1}")
    formal = verdict is None
    if formal:
        log.warning("no hypersolvability certificate: reporting formal linear-strand homology")
    J = closure or QuadraticClosure(os, q_max + 1)
    cx = JComplex(J, R)
    needed: dict[tuple[int, int], None] = {}
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            if cx.term_dim(p + q, q):
                needed[(p + q, q)] = None
                needed[(p + q, q - 1)] = None
    keys = [k for k in needed if k[1] >= 0]
    mats = [cx.differential(t, q) for t, q in keys]
    rk = dict(zip(keys, _ranks(mats, strategy, jobs)))
    entries = {}
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            d = cx.term_dim(p + q, q)
            if d:
                entries[(p, q)] = d - rk.get((p + q, q), 0) - rk.get((p + q, q - 1), 0)
    return MTable(entries, p_max, q_max=q_max, formal=formal, route="J")


def homotopy_module_dims_strand(os: OSAlgebra, R: GradedQuadraticAlgebra, p_max: int, q_max: int | None = None,
                                strategy: RankStrategy | None = None) -> MTable:
    """The same table read off the linear strand A ⊗ R* (cross-check route)."""
    q_max = os.matroid.rank + 1 if q_max is None else q_max
    entries = {}
    for t in range(1, p_max + q_max + 1):
        if t > R.p_max:
            raise ValueError(f"R must be built to degree {p_max + q_max}")
        h = homology_dims(linear_strand_complex(os, R, t, check=False), strategy)
        for s, v in enumerate(h):
            p, q = t - s - 1, s + 1
            if 0 <= p <= p_max and q <= q_max and v:
                entries[(p, q)] = v
    return MTable(entries, p_max, q_max=q_max, route="A")


class SupportVerdict(str, enum.Enum):
    APPLICABLE = "Applicable"
    NOT_APPLICABLE = "NotApplicable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SupportReport:
    support: tuple[int, ...]
    verdict: SupportVerdict
    p_max: int

    def to_json(self):
        return {"support": list(self.support), "verdict": self.verdict.value, "truncation_p_max": self.p_max}


def m_support(table: MTable, certificate: Verdict | None = None) -> SupportReport:
    """Observed support of M (a lower bound) and whether M lives in two adjacent degrees."""
    sup = tuple(table.support_q())
    if sup and sup[-1] - sup[0] >= 2:
        v = SupportVerdict.NOT_APPLICABLE
    elif certificate is not None and certificate.applicable:
        v = SupportVerdict.APPLICABLE
    else:
        v = SupportVerdict.UNKNOWN
    return SupportReport(sup, v, table.p_complete)


# ---------------------------------------------------------------------------
# Hilbert series


def hilbert_M_closed_form(exponents: Sequence[int], ell: int, sr: SingularRange | None = None) -> RationalFunctionRep:
    """h(R',t) sum_{i=0}^{m-ell} (-1)^i beta_{i+ell} t^i for B' = prod_{j>=2}(1 + d_j t).

    ``exponents`` are d_2..d_m of the deconed deformation.
    """
    if sr is not None and (sr.c, sr.d) != (ell, ell):
        raise HypothesisNotSatisfied(f"singular range ({sr.c},{sr.d}) is not ({ell},{ell})")
    beta = poly_from_roots(exponents)
    m = len(exponents)
    num = [(-1) ** i * beta[i + ell] for i in range(m - ell + 1)] if m >= ell else [0]
    den = [1]
    for d in exponents:
        den = [a - d * b for a, b in zip(den + [0], [0] + den)]
    return RationalFunctionRep(num or [0], den)


def hilbert_U(r_dims: Sequence[int], M: BigradedTable, verdict: Verdict | SupportVerdict | None,
              p_max: int | None = None) -> BigradedTable:
    """h(R,t) (1 - t^2 u^-2 h(M))^-1, complete for p <= M.p_complete + 2."""
    ok = verdict in (Verdict.KOSZUL, Verdict.LENGTH0, Verdict.LENGTH1, SupportVerdict.APPLICABLE)
    if not ok:
        raise HypothesisNotSatisfied(f"hypothesis not satisfied (verdict {getattr(verdict, 'value', verdict)})")
    top = M.p_complete + 2 if p_max is None else min(p_max, M.p_complete + 2)
    if len(r_dims) <= top:
        raise SeriesError(f"R dims needed through degree {top}")
    X = {(p + 2, q - 2): v for (p, q), v in M.nonzero().items() if p + 2 <= top}
    for (p, q) in X:
        if q < 0:
            raise SeriesError(f"M^{p - 2}_{q + 2} would land in negative u-degree")
    S: dict[tuple[int, int], int] = {(0, 0): 1}
    for _ in range(top // 2 + 1):
        nxt: dict[tuple[int, int], int] = {(0, 0): 1}
        for (a, b), x in X.items():
            for (c, d), y in S.items():
                if a + c <= top:
                    nxt[(a + c, b + d)] = nxt.get((a + c, b + d), 0) + x * y
        S = nxt
    U: dict[tuple[int, int], int] = {}
    for (a, b), y in S.items():
        for p in range(top - a + 1):
            if r_dims[p]:
                U[(a + p, b)] = U.get((a + p, b), 0) + r_dims[p] * y
    return BigradedTable({k: v for k, v in U.items() if v}, top)
