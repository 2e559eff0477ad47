"""Normal-ordering engine for the quantum vector-space algebra, its cone and
hyperboloid quotients, the multi-copy algebra and the kernel algebras."""

from .poly import MPoly, TAGS
from .engine import CAlgebra, QUOTIENTS
from .element import Element, KernelAlgebra
from .words import LetterAlgebra
from .render import render, to_json
from .api import (algebra, kernel_algebra, z, zs, x, zeta, zetas, xi, letter,
                  multiply, star, quotient_project, check_centrality, word,
                  expand_x_to_letters, generators)

__all__ = [
    "MPoly", "TAGS", "CAlgebra", "LetterAlgebra", "QUOTIENTS", "Element", "KernelAlgebra",
    "render", "to_json", "algebra", "kernel_algebra", "z", "zs", "x", "zeta",
    "zetas", "xi", "letter", "multiply", "star", "quotient_project",
    "check_centrality", "word", "expand_x_to_letters", "generators",
]
