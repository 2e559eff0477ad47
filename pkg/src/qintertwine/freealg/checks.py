"""Soundness checks for the normal-ordering engine.

* ``bracketing_check``: a random word in the generators reduces to the same
  normal form whatever the order of the multiplications.
* ``overlap_check``: every product of three generators (letters and the
  central/x variables) is associative, the exhaustive length-3 overlap test.
* ``basis_roundtrip_check``: multiplying out the letters of a normal-form
  monomial gives back that monomial (times the expected power of q), i.e.
  the normal form is unique.
* ``associativity_check``: ``(a b) c = a (b c)`` on random elements.
"""

from .api import generators, x, xi
from .element import Element, KernelAlgebra

__all__ = ["random_word", "random_element", "bracketing_check", "overlap_check",
           "basis_roundtrip_check", "associativity_check"]


def _gens(alg, with_x=True):
    gens = list(generators(alg))
    if with_x:
        base = alg.left if isinstance(alg, KernelAlgebra) else alg
        for j in range(base.nvars):
            gens.append((f"x{j}", x(alg, j)))
        if isinstance(alg, KernelAlgebra):
            for j in range(alg.right.nvars):
                gens.append((f"xi{j}", xi(alg, j)))
    return gens


def random_word(rng, alg, length):
    gens = _gens(alg, with_x=False)
    return [gens[rng.randrange(len(gens))] for _ in range(length)]


def _fold(elems, split):
    """Product of ``elems`` bracketed by ``split(lo, hi) -> mid``."""
    def go(lo, hi):
        if hi - lo == 1:
            return elems[lo]
        m = split(lo, hi)
        return go(lo, m) * go(m, hi)
    return go(0, len(elems))


def bracketing_check(rng, alg, trials=50, max_len=8):
    """List of words (by name) whose left fold, right fold and a random
    bracketing disagree."""
    bad = []
    for _ in range(trials):
        w = random_word(rng, alg, rng.randrange(1, max_len + 1))
        elems = [e for _, e in w]
        left = _fold(elems, lambda lo, hi: hi - 1)
        right = _fold(elems, lambda lo, hi: lo + 1)
        rand = _fold(elems, lambda lo, hi: rng.randrange(lo + 1, hi))
        if not (left == right == rand):
            bad.append([nm for nm, _ in w])
    return bad


def overlap_check(alg):
    """All triples ``(a, b, c)`` of generators with ``(ab)c != a(bc)``."""
    gens = _gens(alg)
    bad = []
    for na, a in gens:
        for nb, b in gens:
            ab = a * b
            for nc, c in gens:
                if ab * c != a * (b * c):
                    bad.append((na, nb, nc))
    return bad


def basis_roundtrip_check(alg, monomials):
    """Monomials ``(z*)^I f z^J`` for which the product of their factors,
    multiplied in the printed order, is not a scalar multiple of the monomial."""
    from .api import z, zs
    bad = []
    for m in monomials:
        ((key, mid),) = m.terms.items()
        I, J = key
        prod = Element.scalar(alg)
        for k, e in enumerate(I):
            for _ in range(e):
                prod = prod * zs(alg, k)
        prod = prod * Element.middle(alg, mid)
        for k, e in enumerate(J):
            for _ in range(e):
                prod = prod * z(alg, k)
        if set(prod.terms) != {key} or len(prod.terms[key].terms) != len(mid.terms):
            bad.append(m)
    return bad


def random_element(rng, alg, n_terms=3, max_len=3):
    """Sum of a few random words with small integer coefficients."""
    out = Element(alg)
    f = alg.field
    for _ in range(n_terms):
        w = random_word(rng, alg, rng.randrange(0, max_len + 1))
        e = Element.scalar(alg)
        for _, g in w:
            e = e * g
        out = out + e.scale(f.convert(rng.randrange(1, 4)))
    return out


def associativity_check(rng, alg, trials=20, max_len=3):
    """Number of random triples with ``(a b) c != a (b c)``."""
    bad = 0
    for _ in range(trials):
        a, b, c = (random_element(rng, alg, max_len=max_len) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad += 1
    return bad

