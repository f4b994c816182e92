"""Builtin arrangements and matroids used as worked examples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .arrangements import Arrangement, Matroid, boolean_arrangement
from .fileio import parse_text, read_file


@dataclass(frozen=True)
class ExampleRegistryEntry:
    key: str
    kind: str
    data: str
    provenance: str

    def load(self) -> "Arrangement | Matroid":
        return parse_text(self.data, self.key)


_ENTRIES = [
    ExampleRegistryEntry("ex_2gen7_a", "arrangement", """
arr 7 4
1 0 0 0  ; x
0 1 0 0  ; y
0 0 1 0  ; z
0 0 0 1  ; w
1 1 1 0  ; x+y+z
0 1 1 1  ; y+z+w
1 -1 1 1 ; x-y+z+w
""", "two-generic rank-4 arrangement xyzw(x+y+z)(y+z+w)(x-y+z+w)"),
    ExampleRegistryEntry("ex_2gen7_b", "arrangement", """
arr 7 4
1 0 0 0  ; x
0 1 0 0  ; y
0 0 1 0  ; z
0 0 0 1  ; w
1 1 1 0  ; x+y+z
0 1 1 1  ; y+z+w
1 -1 1 -1 ; x-y+z-w
""", "two-generic rank-4 arrangement xyzw(x+y+z)(y+z+w)(x-y+z-w)"),
    ExampleRegistryEntry("ex_lived2", "arrangement", """
arr 8 5
1 0 0 0 0  ; x
0 1 0 0 0  ; y
0 0 1 0 0  ; z
1 0 0 -1 0 ; x-w
0 1 0 -1 0 ; y-w
0 0 1 -1 0 ; z-w
1 0 0 0 -1 ; x-u
0 1 0 0 -1 ; y-u
""", "xyz(x-w)(y-w)(z-w)(x-u)(y-u), a non-collapsing spectral sequence"),
    ExampleRegistryEntry("ex_pres_A", "arrangement", """
arr 9 3
1 0 0   ; x
0 1 0   ; y
0 0 1   ; z
1 0 -1  ; x-z
0 1 -1  ; y-z
2 -1 -4 ; 2x-y-4z
2 -1 -5 ; 2x-y-5z
1 5 2   ; x+5y+2z
1 5 1   ; x+5y+z
""", "generic slice xyz(x-z)(y-z)(2x-y-4z)(2x-y-5z)(x+5y+2z)(x+5y+z)"),
    ExampleRegistryEntry("ex_pres_B", "arrangement", """
affine 8 4
1 0 0 0 0   ; v
0 1 0 0 0   ; w
0 0 1 0 0   ; x
0 0 0 1 0   ; y
0 0 1 0 -1  ; x-1
0 0 0 1 -1  ; y-1
1 0 0 0 -1  ; v-1
0 1 0 0 -1  ; w-1
""", "cone of vwxy(x-1)(y-1)(v-1)(w-1), the supersolvable deformation of ex_pres_A"),
    ExampleRegistryEntry("nandi_d1", "matroid", """
blocks 10
abcd
abef
aceg
adhi
bchi
bdgj
cdfj
afhj
agij
behj
bfgi
ceij
cfgh
defi
degh
""", "Nandi block design D1, parameters (10,15,6,4,2)"),
    ExampleRegistryEntry("nandi_d2", "matroid", """
blocks 10
abcd
abef
aceg
adhi
bcij
bdgh
cdfj
afhj
agij
behj  # printed as aehj, which is not a 2-design
bfgi
cehi
cfgh
defi
degj
""", "Nandi block design D2, parameters (10,15,6,4,2)"),
    ExampleRegistryEntry("nandi_d3", "matroid", """
blocks 10
abcd
abef
acgh
adij
bcij
bdgh
cdef
aegi
afhj
behj
bfgi
cehi
cfgj
degj
dfhi
""", "Nandi block design D3, parameters (10,15,6,4,2)"),
]

REGISTRY: dict[str, ExampleRegistryEntry] = {e.key: e for e in _ENTRIES}


class UnknownInput(KeyError):
    def __str__(self):
        return self.args[0]


def available_keys() -> list[str]:
    return sorted(REGISTRY) + ["boolean:<n>"]


def parse_input(spec: str) -> "Arrangement | Matroid":
    """A registry key, ``boolean:<n>``, or a path to an input file."""
    if spec in REGISTRY:
        return REGISTRY[spec].load()
    if spec.startswith("boolean:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError:
            raise UnknownInput(f"bad boolean size in {spec!r}") from None
        if n < 1:
            raise UnknownInput("boolean arrangement needs n >= 1")
        return boolean_arrangement(n)
    from pathlib import Path

    if Path(spec).is_file():
        return read_file(spec)
    raise UnknownInput(f"unknown input {spec!r}; available keys: {', '.join(available_keys())}")
