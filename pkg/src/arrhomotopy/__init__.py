"""Exact invariants of hyperplane arrangements: OS algebras, holonomy, the
homotopy module and the homotopy Lie algebra of generic slices."""

from .arrangements import Arrangement, Matroid, cone, decone, load_arrangement
from .flags import g_presentation
from .homotopy import hilbert_M_closed_form, hilbert_U, homotopy_module_dims
from .hypersolvable import analyze_hypersolvable, find_solvable_chain
from .os_algebra import build_os, decone_os
from .pipeline import Options, Session, analyze
from .quadratic import enveloping_of_holonomy, holonomy_presentation
from .registry import parse_input
from .series import pbw_lie_ranks, rescale_collapse

__all__ = [
    "Arrangement", "Matroid", "Options", "Session", "analyze", "analyze_hypersolvable", "build_os", "cone",
    "decone", "decone_os", "enveloping_of_holonomy", "find_solvable_chain", "g_presentation",
    "hilbert_M_closed_form", "hilbert_U", "holonomy_presentation", "homotopy_module_dims", "load_arrangement",
    "parse_input", "pbw_lie_ranks", "rescale_collapse",
]
