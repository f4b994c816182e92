"""End-to-end analysis of one input, with hypothesis gates and truncation metadata."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from functools import cached_property

from .arrangements import Arrangement, Matroid, as_matroid
from .flags import PresentationError, g_presentation
from .homotopy import MTable, homotopy_module_dims, hilbert_U, m_support
from .hypersolvable import HypersolvableReport, analyze_hypersolvable
from .kernel import RankStrategy
from .os_algebra import OSAlgebra, build_os, format_polynomial
from .quadratic import GradedQuadraticAlgebra, enveloping_of_holonomy
from .series import BigradedTable, loop_to_pi, pbw_lie_ranks, rescale_collapse

log = logging.getLogger(__name__)

DEFAULT_P_MAX = 4


class GateRefusal(Exception):
    """A stage whose hypotheses are not met; carries a structured reason."""

    def __init__(self, stage: str, reason: str):
        self.stage = stage
        self.reason = reason
        super().__init__(f"{stage}: {reason}")

    def to_json(self) -> dict:
        return {"stage": self.stage, "reason": self.reason}


def input_seed(x: "Arrangement | Matroid") -> int:
    """Deterministic seed derived from the combinatorial data of the input."""
    m = as_matroid(x)
    h = hashlib.sha256(repr((m.ground_size, sorted(tuple(sorted(c)) for c in m.circuits))).encode())
    return int.from_bytes(h.digest()[:8], "big")


def labels_of(x: "Arrangement | Matroid") -> tuple[str, ...]:
    if isinstance(x, Arrangement):
        return x.labels
    return tuple(str(i + 1) for i in range(as_matroid(x).ground_size))


@dataclass
class Options:
    p_max: int | None = None
    exact: bool = False
    seed: int | None = None
    jobs: int = 1
    rescale: int | None = None
    degree: int | None = None
    chains: int = 0


def table_rows(t: BigradedTable) -> dict[str, list[int]]:
    """Rows indexed by p, listing the q = 0.. entries."""
    out = {}
    for p in range(t.p_complete + 1):
        qs = [q for (a, q) in t.entries if a == p]
        top = max(qs, default=-1)
        out[str(p)] = [t[p, q] for q in range(top + 1)]
    return out


class Session:
    """Lazily computed invariants of one input, shared between CLI commands."""

    def __init__(self, x: "Arrangement | Matroid", name: str = "<input>", opts: Options | None = None):
        self.x = x
        self.name = name
        self.opts = opts or Options()
        self.matroid = as_matroid(x)
        self.labels = labels_of(x)
        seed = self.opts.seed if self.opts.seed is not None else input_seed(x)
        self.strategy = RankStrategy(exact=self.opts.exact, seed=seed)

    @property
    def p_max(self) -> int:
        return DEFAULT_P_MAX if self.opts.p_max is None else self.opts.p_max

    @cached_property
    def os(self) -> OSAlgebra:
        return build_os(self.matroid)

    @cached_property
    def hyper(self) -> HypersolvableReport:
        return analyze_hypersolvable(self.matroid, self.os, enumerate_chains=self.opts.chains)

    def R(self, degree: int) -> GradedQuadraticAlgebra:
        cur = self.__dict__.get("_R")
        if cur is None or cur.p_max < degree:
            cur = enveloping_of_holonomy(self.os, degree)
            self.__dict__["_R"] = cur
        return cur

    def M(self, p_max: int | None = None) -> MTable:
        p_max = self.p_max if p_max is None else p_max
        cache = self.__dict__.setdefault("_M", {})
        have = [t for k, t in cache.items() if k >= p_max]
        if have:
            t = have[0]
            return MTable({k: v for k, v in t.entries.items() if k[0] <= p_max}, p_max,
                          q_max=t.q_max, formal=t.formal, route=t.route)
        rep = self.hyper
        verdict = rep.verdict if rep.hypersolvable else None
        t = homotopy_module_dims(self.os, self.R(p_max + 2), verdict, p_max, strategy=self.strategy,
                                 jobs=self.opts.jobs)
        cache[p_max] = t
        return t

    def U(self, p_max: int | None = None) -> BigradedTable:
        """U table complete for p <= p_max + 2, where p_max bounds the M table."""
        rep = self.hyper
        if not rep.hypersolvable:
            raise GateRefusal("U", "not hypersolvable: no certificate for the spectral sequence collapse")
        if not rep.verdict.applicable:
            sr = rep.singular_range
            raise GateRefusal("U", f"singular range ({sr.c},{sr.d}) has length >= 2 (verdict {rep.verdict.value})")
        p_max = self.p_max if p_max is None else p_max
        M = self.M(p_max)
        r = self.R(p_max + 2)
        return hilbert_U(r.dims, M, rep.verdict)

    def pi_ranks(self, q: int, degree: int) -> dict:
        need = degree // (2 * q)
        p_m = max(need - 2, 0)
        if self.opts.p_max is not None:
            p_m = max(p_m, self.opts.p_max)
        U = self.U(p_m)
        s = rescale_collapse(U, q, degree)
        loop = pbw_lie_ranks(s)
        return {
            "rescale": q,
            "degree": degree,
            "u_series": [int(c) for c in s.to_list()],
            "loop_ranks": {str(k): v for k, v in loop.items() if v},
            "pi_ranks": {str(k): v for k, v in loop_to_pi(loop).items() if v},
            "truncation": {"u_degree": degree, "pi_max": degree + 1},
        }

    def presentation(self, deformation: "Arrangement | Matroid | None", ell: int | None,
                     infinity: int | None = None):
        try:
            return g_presentation(self.x, deformation, ell, infinity=infinity)
        except PresentationError as e:
            raise GateRefusal("presentation", str(e)) from None


@dataclass
class Report:
    input: dict
    poincare: dict
    hypersolvable: dict
    M: dict | None = None
    support: dict | None = None
    U: dict | None = None
    presentation: dict | None = None
    pi: dict | None = None
    refusals: list[dict] = field(default_factory=list)
    truncation: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "input": self.input, "poincare": self.poincare, "hypersolvable": self.hypersolvable,
            "M": self.M, "support": self.support, "U": self.U, "presentation": self.presentation,
            "pi": self.pi, "refusals": self.refusals, "truncation": self.truncation,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        return cls(**d)


def analyze(s: Session, deformation: "Arrangement | Matroid | None" = None, ell: int | None = None) -> Report:
    m = s.matroid
    dims = s.os.dims
    rep = Report(
        input={"name": s.name, "kind": "arrangement" if isinstance(s.x, Arrangement) else "matroid",
               "n": m.ground_size, "rank": m.rank},
        poincare={"coefficients": list(dims), "text": format_polynomial(dims)},
        hypersolvable=s.hyper.to_json(),
    )
    p_max = s.p_max
    if s.opts.rescale is not None and s.opts.degree is not None:
        p_max = max(p_max, s.opts.degree // (2 * s.opts.rescale) - 2)
    M = s.M(p_max)
    rep.M = M.to_json()
    rep.support = m_support(M, s.hyper.verdict if s.hyper.hypersolvable else None).to_json()
    rep.truncation = {"M_p_max": M.p_complete, "M_q_max": M.q_max}
    try:
        U = s.U(p_max)
        rep.U = {"U": table_rows(U), "p_complete": U.p_complete}
        rep.truncation["U_p_complete"] = U.p_complete
    except GateRefusal as e:
        rep.refusals.append(e.to_json())
    if deformation is not None or ell is not None:
        try:
            rep.presentation = s.presentation(deformation, ell).to_json()
        except GateRefusal as e:
            rep.refusals.append(e.to_json())
    if s.opts.rescale is not None and s.opts.degree is not None:
        if rep.U is None:
            rep.refusals.append({"stage": "pi", "reason": "no U table"})
        else:
            rep.pi = s.pi_ranks(s.opts.rescale, s.opts.degree)
            rep.truncation["u_degree"] = s.opts.degree
    return rep
