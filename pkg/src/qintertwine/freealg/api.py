"""Convenience constructors and the user-level operations of the engine."""

from functools import lru_cache

from .element import Element, KernelAlgebra
from .engine import CAlgebra
from .poly import MPoly

__all__ = [
    "algebra", "kernel_algebra", "z", "zs", "x", "zeta", "zetas", "xi", "letter",
    "multiply", "star", "quotient_project", "check_centrality", "word",
    "expand_x_to_letters", "generators",
]


@lru_cache(maxsize=None)
def algebra(n, quotient="free", field=None):
    """Shared :class:`CAlgebra` instance (so caches are reused)."""
    return CAlgebra(n, quotient, field)


@lru_cache(maxsize=None)
def kernel_algebra(n, left="free", right="free", field=None):
    """``F2 (x) F1^op`` with both factors of rank ``n``."""
    return KernelAlgebra(algebra(n, left, field), algebra(n, right, field))


def _is_kernel(alg):
    return isinstance(alg, KernelAlgebra)


def _left_mono(alg, key, poly=None):
    if _is_kernel(alg):
        mid = MPoly.const(alg.nvars, alg.field) if poly is None else alg.embed_left(poly)
        return Element(alg, {(key, alg.right.unit_key): mid})
    return Element.mono(alg, key, poly)


def _right_mono(alg, key, poly=None):
    mid = MPoly.const(alg.nvars, alg.field) if poly is None else alg.embed_right(poly)
    return Element(alg, {(alg.left.unit_key, key): mid})


def z(alg, k):
    """The letter z_k (first tensor factor in a kernel algebra)."""
    base = alg.left if _is_kernel(alg) else alg
    return _left_mono(alg, base.letter_key("z", k))


def zs(alg, k):
    """The letter z_k*."""
    base = alg.left if _is_kernel(alg) else alg
    return _left_mono(alg, base.letter_key("s", k))


def x(alg, j, power=1):
    base = alg.left if _is_kernel(alg) else alg
    return _left_mono(alg, base.unit_key, base.project(base.x(j, power)))


def zeta(alg, k):
    """zeta_k = 1 (x) z_k in a kernel algebra."""
    return _right_mono(alg, alg.right.letter_key("z", k))


def zetas(alg, k):
    return _right_mono(alg, alg.right.letter_key("s", k))


def xi(alg, j, power=1):
    R = alg.right
    return _right_mono(alg, R.unit_key, R.project(R.x(j, power)))


def letter(alg, kind, k):
    """Dispatch on a letter name: 'z', 's' (z*), 'x', 'zeta', 'zetas', 'xi'."""
    return {"z": z, "s": zs, "x": x, "zeta": zeta, "zetas": zetas, "xi": xi}[kind](alg, k)


def word(alg, letters):
    """Product of a sequence of (kind, index) letters, left to right."""
    out = Element.scalar(alg)
    for kind, k in letters:
        out = out * letter(alg, kind, k)
    return out


def generators(alg):
    """All letters generating ``alg`` (z, z* and, for kernels, zeta, zeta*)."""
    base = alg.left if _is_kernel(alg) else alg
    gens = []
    for k in range(base.n + 1):
        gens.append((f"z{k}", z(alg, k)))
        gens.append((f"z{k}*", zs(alg, k)))
    if _is_kernel(alg):
        for k in range(alg.right.n + 1):
            gens.append((f"zeta{k}", zeta(alg, k)))
            gens.append((f"zeta{k}*", zetas(alg, k)))
    return gens


def multiply(lhs, rhs):
    if lhs.alg is not rhs.alg and not lhs.alg.same_as(rhs.alg):
        raise ValueError("mismatched ambient algebras")
    return lhs * rhs


def star(e):
    return e.star()


def quotient_project(e, target):
    """Image of an element of the free algebra in the cone or hyperboloid."""
    alg = e.alg
    value = {"cone": 0, "hyperboloid": 1}[target]
    if _is_kernel(alg):
        if alg.left.quotient != "free":
            raise ValueError("left factor is not free")
        new = kernel_algebra(alg.left.n, target, alg.right.quotient, alg.field)
        return Element(new, {k: m.subs_const(0, value) for k, m in e.terms.items()})
    if alg.quotient != "free":
        raise ValueError("element is not in the free algebra")
    new = algebra(alg.n, target, alg.field)
    return Element(new, {k: m.subs_const(0, value) for k, m in e.terms.items()})


def check_centrality(c):
    """``(True, None)`` if ``c`` commutes with every generator, else
    ``(False, (name, commutator))`` for the first offending generator."""
    for name, g in generators(c.alg):
        comm = c * g - g * c
        if comm:
            return False, (name, comm)
    return True, None


def expand_x_to_letters(alg, j):
    """x_j written as a linear combination of two-letter words (the definition)."""
    n = alg.n if not _is_kernel(alg) else alg.left.n
    terms = []
    if j == 0:
        terms.append((1, (("z", 0), ("s", 0))))
        for k in range(1, n + 1):
            terms.append((-1, (("z", k), ("s", k))))
    else:
        for k in range(j, n + 1):
            terms.append((1, (("z", k), ("s", k))))
    return terms
