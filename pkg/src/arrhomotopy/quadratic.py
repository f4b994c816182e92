"""Quadratic algebras T(V)/(W) built degree by degree, and the holonomy algebra.

A degree-p basis element is a column ``(i, b)`` of ``V ⊗ R_{p-1}`` left over
after reducing by the relations ``sum_ij w_ij x_i ⊗ (x_j · a)``.  Pivots are
chosen at the largest column, so lexicographically small words survive as
the quotient basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arrangements import Arrangement, IntersectionLattice, Matroid, as_matroid, flats
from .kernel import Echelon, SparseMatrix, nullspace
from .os_algebra import OSAlgebra, _add, quadratic_relation_space

Tensor2 = Mapping[tuple[int, int], object]
SparseVec = dict[int, Fraction | int]


def _apply(op: Sequence[SparseVec], v: Mapping[int, object]) -> SparseVec:
    """Apply a linear map given column-wise (``op[b]`` = image of basis vector b)."""
    out: SparseVec = {}
    for b, c in v.items():
        for k, x in op[b].items():
            _add(out, k, c * x)
    return out


@dataclass
class GradedQuadraticAlgebra:
    generator_count: int
    relation_space: list[dict[tuple[int, int], Fraction | int]]
    dims: list[int] = field(default_factory=list)
    # words[p][b] = (i, b') meaning x_i * (basis element b' of degree p-1)
    words: list[list[tuple[int, int]]] = field(default_factory=list)
    # left[p][i][b] = x_i * b for b in degree p-1, as a vector in degree p
    left: list[list[list[SparseVec]]] = field(default_factory=list)
    right: list[list[list[SparseVec]]] = field(default_factory=list)

    @property
    def p_max(self) -> int:
        return len(self.dims) - 1

    def dim(self, p: int) -> int:
        if p < 0:
            return 0
        if p > self.p_max:
            raise ValueError(f"algebra built only to degree {self.p_max}, degree {p} requested")
        return self.dims[p]

    def word(self, p: int, b: int) -> tuple[int, ...]:
        out = []
        while p > 0:
            i, b = self.words[p][b]
            out.append(i)
            p -= 1
        return tuple(out)

    def left_matrix(self, p: int, i: int) -> SparseMatrix:
        """x_i · (−): degree p-1 -> degree p."""
        return _to_matrix(self.left[p][i], self.dim(p))

    def right_matrix(self, p: int, i: int) -> SparseMatrix:
        """(−) · x_i: degree p-1 -> degree p."""
        return _to_matrix(self.right[p][i], self.dim(p))

    def multiply_word(self, v: Mapping[int, object], p: int, gens: Sequence[int], side: str = "right") -> SparseVec:
        ops = self.right if side == "right" else self.left
        cur = dict(v)
        for k, i in enumerate(gens):
            cur = _apply(ops[p + k + 1][i], cur)
        return cur


def _to_matrix(cols: Sequence[SparseVec], rows: int) -> SparseMatrix:
    return SparseMatrix(rows, len(cols), [(r, c, x) for c, v in enumerate(cols) for r, x in v.items()])


def build_degreewise(n: int, relations: Iterable[Tensor2], p_max: int) -> GradedQuadraticAlgebra:
    """T(V)/(W) with dim V = n up to degree ``p_max``."""
    W = [dict((k, v) for k, v in w.items() if v) for w in relations]
    W = [w for w in W if w]
    alg = GradedQuadraticAlgebra(n, W)
    alg.dims.append(1)
    alg.words.append([()])
    alg.left.append([])
    alg.right.append([])
    if p_max >= 1:
        alg.dims.append(n)
        alg.words.append([(i, 0) for i in range(n)])
        unit = [[{i: 1}] for i in range(n)]
        alg.left.append(unit)
        alg.right.append([[dict(v) for v in col] for col in unit])
    for p in range(2, p_max + 1):
        d1 = alg.dims[p - 1]
        ech = Echelon(prefer_high=True)
        for a in range(alg.dims[p - 2]):
            for w in W:
                vec: SparseVec = {}
                for (i, j), c in w.items():
                    for b, x in alg.left[p - 1][j][a].items():
                        _add(vec, i * d1 + b, c * x)
                if vec:
                    ech.add(vec)
        basis = [col for col in range(n * d1) if col not in ech.rows]
        idx = {col: k for k, col in enumerate(basis)}
        left_p = []
        for i in range(n):
            cols = []
            for b in range(d1):
                col = i * d1 + b
                row = ech.rows.get(col)
                if row is None:
                    cols.append({idx[col]: 1})
                else:
                    cols.append({idx[k]: -v for k, v in row.items() if k != col})
            left_p.append(cols)
        alg.dims.append(len(basis))
        alg.words.append([divmod(col, d1) for col in basis])
        alg.left.append(left_p)
        # (x_j * b') * x_i = x_j * (b' * x_i)
        right_p = []
        for i in range(n):
            cols = []
            for j, bb in alg.words[p - 1]:
                cols.append(_apply(left_p[j], alg.right[p - 1][i][bb]))
            right_p.append(cols)
        alg.right.append(right_p)
    return alg


# ---------------------------------------------------------------------------
# holonomy


@dataclass(frozen=True)
class HolonomyPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[int, tuple[int, ...]], ...]  # (i, F): [x_i, sum_{j in F} x_j]

    def as_tensors(self, index: Mapping[int, int] | None = None) -> list[dict[tuple[int, int], int]]:
        out = []
        for i, fl in self.relations:
            w: dict[tuple[int, int], int] = {}
            for j in fl:
                if j == i:
                    continue
                a, b = (index[i], index[j]) if index else (i, j)
                _add(w, (a, b), 1)
                _add(w, (b, a), -1)
            out.append(w)
        return out

    def format(self) -> list[str]:
        lines = []
        for i, fl in self.relations:
            s = " + ".join(self.generators[j] for j in fl)
            lines.append(f"[{self.generators[i]}, {s}]")
        return lines


def holonomy_presentation(x: "Arrangement | Matroid | IntersectionLattice", labels: Sequence[str] | None = None,
                          n: int | None = None) -> HolonomyPresentation:
    if isinstance(x, IntersectionLattice):
        fl = [f.hyperplanes for f in x[2]]
        n = n if n is not None else 1 + max(h for f in fl for h in f)
    else:
        m = as_matroid(x)
        n = m.ground_size
        fl = [f.hyperplanes for f in flats(m, 2)[2]]
    labels = tuple(labels) if labels else tuple(f"x{i + 1}" for i in range(n))
    rels = tuple((i, f) for f in fl for i in f)
    return HolonomyPresentation(labels, rels)


def holonomy_relation_space(os: OSAlgebra) -> list[dict[tuple[int, int], Fraction | int]]:
    """Basis of the annihilator of I_2 inside the commutators [x_i, x_j]."""
    gens = os.generators
    pos = {h: k for k, h in enumerate(gens)}
    pairs = list(itertools.combinations(range(len(gens)), 2))
    pidx = {pr: k for k, pr in enumerate(pairs)}
    rel2 = quadratic_relation_space(os)
    rows = []
    for r in rel2:
        rows.append({pidx[(pos[s[0]], pos[s[1]])]: c for s, c in r.items()})
    mat = SparseMatrix.from_row_dicts(len(rows), len(pairs), dict(enumerate(rows)))
    out = []
    for v in nullspace(mat):
        w: dict[tuple[int, int], Fraction | int] = {}
        for k, c in v.items():
            i, j = pairs[k]
            w[(i, j)] = c
            w[(j, i)] = -c
        out.append(w)
    return out


def enveloping_of_holonomy(os: OSAlgebra, p_max: int) -> GradedQuadraticAlgebra:
    """R = U(h) = B^!, with generators numbered by position in ``os.generators``."""
    return build_degreewise(len(os.generators), holonomy_relation_space(os), p_max)


def koszul_numerics_check(b_dims: Sequence[int], r_dims: Sequence[int], p_max: int) -> bool:
    """True iff h(B,t) h(R,-t) = 1 + O(t^{p_max+1})."""
    for p in range(p_max + 1):
        s = sum((b_dims[k] if k < len(b_dims) else 0) * (-1) ** (p - k) * r_dims[p - k] for k in range(p + 1))
        if s != (1 if p == 0 else 0):
            return False
    return True
