"""Readers for ``.arr``, ``.mat`` and ``.blocks`` files.

``.arr``      ``arr <n> <ell>`` then n rows of ell rationals.
``affine``    ``affine <n> <dim>`` then n rows ``a_1 .. a_dim b`` for
              ``a . x + b = 0``; the result is coned (infinity first).
``.mat``      ``matroid <n> <rank>`` then lines ``circuit i1 i2 ...`` (1-based).
``.blocks``   ``blocks <n>`` then one block per line, four letters a-j.

``#`` starts a comment.  A row may carry a label after ``;``.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .arrangements import (AffineArrangement, Arrangement, ArrangementError, Matroid, cone, load_arrangement,
                           matroid_from_block_design)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + msg)


def parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"malformed rational {tok!r}") from e


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def parse_text(text: str, source: str = "<input>") -> "Arrangement | Matroid":
    it = iter(_lines(text))
    try:
        lineno, header = next(it)
    except StopIteration:
        raise ParseError("empty input", None, source) from None
    head = header.split()
    kind = head[0].lower()
    try:
        nums = [int(x) for x in head[1:]]
    except ValueError:
        raise ParseError(f"bad header {header!r}", lineno, source) from None
    body = list(it)
    try:
        if kind in ("arr", "affine"):
            if len(nums) != 2:
                raise ParseError(f"header must be '{kind} <n> <dim>'", lineno, source)
            n, dim = nums
            width = dim if kind == "arr" else dim + 1
            rows, labels = [], []
            for k, line in body:
                data, _, label = line.partition(";")
                toks = data.split()
                if len(toks) != width:
                    raise ParseError(f"expected {width} entries, found {len(toks)}", k, source)
                try:
                    rows.append([parse_rational(t) for t in toks])
                except ValueError as e:
                    raise ParseError(str(e), k, source) from None
                labels.append(label.strip() or f"H{len(rows)}")
            if len(rows) != n:
                raise ParseError(f"header announces {n} rows, found {len(rows)}", None, source)
            if kind == "arr":
                return load_arrangement(rows, labels)
            aff = AffineArrangement(dim, tuple(tuple(r) for r in rows), tuple(labels))
            return cone(aff, "inf")
        if kind == "matroid":
            if len(nums) != 2:
                raise ParseError("header must be 'matroid <n> <rank>'", lineno, source)
            n, rk = nums
            circuits = []
            for k, line in body:
                toks = line.split()
                if toks[0].lower() != "circuit":
                    raise ParseError(f"expected 'circuit', found {toks[0]!r}", k, source)
                try:
                    c = [int(t) - 1 for t in toks[1:]]
                except ValueError:
                    raise ParseError("circuit entries must be integers", k, source) from None
                if any(not 0 <= x < n for x in c):
                    raise ParseError(f"circuit entry out of range 1..{n}", k, source)
                circuits.append(c)
            return Matroid(n, circuits, rank=rk)
        if kind == "blocks":
            if len(nums) != 1:
                raise ParseError("header must be 'blocks <n>'", lineno, source)
            n = nums[0]
            blocks = []
            for k, line in body:
                letters = "".join(line.split())
                if len(letters) != 4 or any(not ("a" <= ch <= "j") for ch in letters.lower()):
                    raise ParseError(f"block {line!r} must be four letters a-j", k, source)
                blocks.append([ord(ch) - ord("a") for ch in letters.lower()])
            return matroid_from_block_design(blocks, n)
    except ArrangementError as e:
        raise ParseError(str(e), None, source) from None
    raise ParseError(f"unknown file kind {kind!r}", lineno, source)


def read_file(path: str | Path) -> "Arrangement | Matroid":
    p = Path(path)
    return parse_text(p.read_text(), str(p))
