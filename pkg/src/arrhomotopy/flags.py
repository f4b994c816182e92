"""Flag spaces of a deconed supersolvable arrangement and the presentation of g_A
for generic slices.

The decone B' is handled combinatorially: its flats are the flats of B that
avoid the hyperplane ``infinity``, and its OS algebra is B's modulo
``e_infinity``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .arrangements import Arrangement, Matroid, as_matroid, flats, two_generic
from .hypersolvable import (Collinearity, SingularRange, analyze_hypersolvable, find_solvable_chain)
from .os_algebra import OSAlgebra, _add, build_os, decone_os, relation_generators, sort_sign
from .quadratic import enveloping_of_holonomy, holonomy_presentation

FlagT = tuple[tuple[int, ...], ...]


class PresentationError(ValueError):
    pass


class DeformationRequired(PresentationError):
    pass


@dataclass(frozen=True)
class Flag:
    flats: FlagT

    def __post_init__(self):
        for a, b in zip(self.flats, self.flats[1:]):
            if not set(a) < set(b):
                raise ValueError("flag flats must be strictly increasing")

    def __len__(self):
        return len(self.flats)


class DeconeLattice:
    """Flats of B' (flats of B not containing ``infinity``), ranks 0..top."""

    def __init__(self, m: Matroid, infinity: int, top: int):
        self.matroid = m
        self.infinity = infinity
        top = min(top, m.rank - 1)
        lat = flats(m, top)
        self.by_rank: dict[int, list[tuple[int, ...]]] = {
            k: [f.hyperplanes for f in lat[k] if infinity not in f.hyperplanes] for k in range(top + 1)
        }
        self.top = top
        self._sets = {k: [frozenset(f) for f in v] for k, v in self.by_rank.items()}

    def closure(self, s: Iterable[int]) -> tuple[int, ...]:
        return self.matroid.closure(s)

    def covers(self, lo: tuple[int, ...], k: int, inside: tuple[int, ...] | None = None,
               avoid: int | None = None) -> list[tuple[int, ...]]:
        """Rank-k flats G with lo < G (< inside), optionally avoiding one hyperplane."""
        lo_s = frozenset(lo)
        in_s = frozenset(inside) if inside is not None else None
        out = []
        for f, fs in zip(self.by_rank.get(k, []), self._sets.get(k, [])):
            if not lo_s <= fs:
                continue
            if in_s is not None and not fs < in_s:
                continue
            if avoid is not None and avoid in fs:
                continue
            out.append(f)
        return out

    def all_flags(self, p: int) -> list[FlagT]:
        out: list[FlagT] = [()]
        for k in range(1, p + 1):
            nxt = []
            for fl in out:
                lo = fl[-1] if fl else ()
                for g in self.covers(lo, k):
                    nxt.append(fl + (g,))
            out = nxt
        return out


class FlagSpace:
    """fl_p with its nbc-flag basis and the rewriting map through f."""

    def __init__(self, lattice: DeconeLattice, os: OSAlgebra, p: int):
        self.lattice = lattice
        self.os = os
        self.p = p
        self.nbc = list(os.nbc_basis.get(p, []))
        self.basis: list[FlagT] = [self.nbc_flag(s) for s in self.nbc]
        self.index = {f: k for k, f in enumerate(self.basis)}
        mat = sympy.Matrix([[self.f_value(b, s) for s in self.nbc] for b in self.basis]) if self.basis else None
        if mat is not None and mat.rank() != len(self.basis):
            raise PresentationError(f"nbc flags of length {p} are not independent under f")
        # coordinates c of a flag satisfy c^T V = f(F), V rows = f(basis)
        self._inv = mat.inv() if mat is not None else None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def nbc_flag(self, s: Sequence[int]) -> FlagT:
        """Intersect the hyperplanes of ``s`` from right to left."""
        hs = sorted(s, key=self.os._pos.__getitem__)
        out = []
        for k in range(1, len(hs) + 1):
            out.append(self.lattice.closure(hs[len(hs) - k:]))
        return tuple(out)

    @staticmethod
    def f_value(flag: FlagT, s: Sequence[int]) -> int:
        """f(flag)(e_S) = det[s_b in F_a - F_{a-1}], S sorted by index."""
        perm = []
        for h in s:
            level = next((a for a, fa in enumerate(flag) if h in fa), None)
            if level is None:
                return 0
            perm.append(level)
        sign, _ = sort_sign(perm)
        return sign

    def f_vector(self, flag: FlagT) -> list[int]:
        return [self.f_value(flag, s) for s in self.nbc]

    def coordinates(self, flag: FlagT) -> dict[int, Fraction | int]:
        if flag in self.index:
            return {self.index[flag]: 1}
        v = sympy.Matrix([self.f_vector(flag)])
        c = v * self._inv
        out = {}
        for k, x in enumerate(c):
            if x != 0:
                x = Fraction(int(x.p), int(x.q))
                out[k] = x.numerator if x.denominator == 1 else x
        return out


def flag_minus(flag: FlagT, i: int, lattice: DeconeLattice) -> tuple[int, list[FlagT]]:
    """The sign and flags summed in F - i."""
    p = len(flag)
    j = next(a for a, fa in enumerate(flag) if i in fa) + 1  # 1-based level
    prefix = flag[: j - 1]
    chains: list[FlagT] = [prefix]
    for k in range(j, p):
        nxt = []
        for ch in chains:
            lo = ch[-1] if ch else ()
            for g in lattice.covers(lo, k, inside=flag[k], avoid=i):
                nxt.append(ch + (g,))
        chains = nxt
    return (-1) ** (j - 1), chains


class FlagComplex:
    """Flag spaces fl_0..fl_top with boundary F -> sum_i (F - i) ⊗ x_i."""

    def __init__(self, m: Matroid, infinity: int, top: int):
        self.matroid = m
        self.infinity = infinity
        self.lattice = DeconeLattice(m, infinity, top)
        self.os = OSAlgebra(m, None, infinity=infinity)
        self.top = min(top, self.os.rank)
        self.spaces = [FlagSpace(self.lattice, self.os, p) for p in range(self.top + 1)]
        self.gens = self.os.generators
        self._gpos = {h: k for k, h in enumerate(self.gens)}

    def boundary(self, flag: FlagT) -> dict[int, dict[int, Fraction | int]]:
        """``{hyperplane i: coordinates of F - i in fl_{p-1}}``."""
        p = len(flag)
        target = self.spaces[p - 1]
        out: dict[int, dict[int, Fraction | int]] = {}
        for i in flag[-1]:
            sign, chains = flag_minus(flag, i, self.lattice)
            acc: dict[int, Fraction | int] = {}
            for ch in chains:
                for k, c in target.coordinates(ch).items():
                    _add(acc, k, sign * c)
            if acc:
                out[i] = acc
        return out

    def basis_boundary(self, p: int, b: int) -> dict[int, dict[int, Fraction | int]]:
        return self.boundary(self.spaces[p].basis[b])

    def boundary_squared(self, flag: FlagT, R=None, order: str = "left") -> dict:
        """The image of F under the composite boundary, in fl_{p-2} ⊗ R'_2.

        ``order`` "left" pairs (F - i) - k with x_k x_i, "right" with x_i x_k.
        """
        if R is None:
            R = enveloping_of_holonomy(self.os, 2)
        acc: dict[tuple[int, int], Fraction | int] = {}
        p = len(flag)
        for i, coords in self.boundary(flag).items():
            for b, c in coords.items():
                for k, coords2 in self.basis_boundary(p - 1, b).items():
                    # x_k x_i in R'_2: left-multiply x_i by x_k
                    a, z = (self._gpos[k], self._gpos[i]) if order == "left" else (self._gpos[i], self._gpos[k])
                    for r, v in R.left[2][a][z].items():
                        for b2, c2 in coords2.items():
                            _add(acc, (b2, r), c * c2 * v)
        return acc


# ---------------------------------------------------------------------------
# presentations


@dataclass
class LiePresentation:
    generators: list[tuple[str, tuple[int, int]]] = field(default_factory=list)
    relations: list[tuple[str, list[tuple[Fraction | int, tuple[str, str]]]]] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {"x": 0, "y": 0, "holonomy": 0, "flag": 0, "central": 0}
        for name, _ in self.generators:
            out["x" if name.startswith("x") else "y"] += 1
        for kind, _ in self.relations:
            out[kind] += 1
        return out

    def to_json(self) -> dict:
        def num(c):
            return c if isinstance(c, int) else str(c)
        return {
            "generators": [{"name": n, "bidegree": list(b)} for n, b in self.generators],
            "relations": [{"type": kind, "terms": [{"coef": num(c), "bracket": list(br)} for c, br in terms]}
                          for kind, terms in self.relations],
        }

    def format(self) -> list[str]:
        lines = [f"{n} : {b}" for n, b in self.generators]
        for kind, terms in self.relations:
            body = ""
            for c, (a, b) in terms:
                sign = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                body += f" {sign} {mag}[{a},{b}]"
            body = body[3:] if body.startswith(" + ") else "-" + body[3:]
            lines.append(f"{kind}: {body}")
        return lines


def boolean_deformation(n: int) -> Matroid:
    return Matroid(n, [], check=False)


def match_rank2(a: Matroid, b: Matroid) -> dict[int, int]:
    """A bijection of ground sets preserving rank-2 flats (identity preferred)."""
    if a.ground_size != b.ground_size:
        raise PresentationError("arrangements have different sizes")
    ca, cb = Collinearity(a), Collinearity(b)
    n = a.ground_size

    def consistent(phi: dict[int, int], x: int) -> bool:
        for y in phi:
            if y == x:
                continue
            fa, fb = ca.flat(x, y), cb.flat(phi[x], phi[y])
            if len(fa) != len(fb):
                return False
            fbs = set(fb)
            if any(z in phi and phi[z] not in fbs for z in fa):
                return False
            inv = {v: k for k, v in phi.items()}
            if any(z in inv and inv[z] not in fa for z in fb):
                return False
        return True

    ident = {i: i for i in range(n)}
    if all(consistent(ident, x) for x in range(n)):
        return ident

    def search(phi: dict[int, int], used: set[int]) -> dict[int, int] | None:
        x = len(phi)
        if x == n:
            return dict(phi)
        for y in range(n):
            if y in used:
                continue
            phi[x] = y
            if consistent(phi, x):
                used.add(y)
                got = search(phi, used)
                if got:
                    return got
                used.discard(y)
            del phi[x]
        return None

    got = search({}, set())
    if got is None:
        raise PresentationError("no bijection identifies the rank-2 lattices")
    return got


def g_presentation(a: "Arrangement | Matroid", b: "Arrangement | Matroid | None", ell: int | None = None,
                   infinity: int | None = None, a_labels: Sequence[str] | None = None,
                   b_labels: Sequence[str] | None = None) -> LiePresentation:
    """Generators and relations of g_A for a generic slice A of a supersolvable B."""
    ma = as_matroid(a)
    ell = ma.rank if ell is None else ell
    if ell != ma.rank:
        raise PresentationError(f"ell = {ell} but the arrangement has rank {ma.rank}")
    if ell < 3:
        raise PresentationError("generic slices need rank >= 3")
    rep = analyze_hypersolvable(ma)
    sr = rep.singular_range
    if sr is None:
        raise PresentationError("arrangement is supersolvable: g equals the holonomy Lie algebra, no y-generators")
    if (sr.c, sr.d) != (ell, ell):
        raise PresentationError(f"singular range ({sr.c},{sr.d}) is not ({ell},{ell}); not a generic slice")
    if b is None:
        if not two_generic(ma):
            raise DeformationRequired("deformation lattice required: supply the supersolvable deformation")
        mb = boolean_deformation(ma.ground_size)
    else:
        mb = as_matroid(b)
    if find_solvable_chain(mb).is_supersolvable is False:
        raise PresentationError("the deformation is not supersolvable")
    phi = match_rank2(ma, mb)
    inv = {v: k for k, v in phi.items()}
    if infinity is None:
        infinity = find_solvable_chain(mb).stages[0][0]
    if isinstance(a, Arrangement) and a_labels is None:
        a_labels = a.labels
    if isinstance(b, Arrangement) and b_labels is None:
        b_labels = b.labels
    a_labels = list(a_labels) if a_labels else [f"{i + 1}" for i in range(ma.ground_size)]
    b_labels = list(b_labels) if b_labels else [f"{i + 1}" for i in range(mb.ground_size)]

    fc = FlagComplex(mb, infinity, ell + 1)
    top, rel = fc.spaces[ell], fc.spaces[ell + 1]
    xname = [f"x_{lab}" for lab in a_labels]

    def yname(k: int) -> str:
        return "y_{" + ",".join(b_labels[h] for h in top.nbc[k]) + "}"

    pres = LiePresentation()
    for nm in xname:
        pres.generators.append((nm, (1, 0)))
    for k in range(top.dim):
        pres.generators.append((yname(k), (2, ell - 2)))
    hol = holonomy_presentation(ma)
    for i, fl in hol.relations:
        terms = [(1, (xname[i], xname[j])) for j in fl if j != i]
        pres.relations.append(("holonomy", terms))
    for bflag in rel.basis:
        terms = []
        for i, coords in sorted(fc.boundary(bflag).items()):
            for k, c in sorted(coords.items()):
                terms.append((c, (xname[inv[i]], yname(k))))
        pres.relations.append(("flag", terms))
    for k in range(top.dim):
        pres.relations.append(("central", [(1, (xname[i], yname(k))) for i in range(ma.ground_size)]))
    return pres
