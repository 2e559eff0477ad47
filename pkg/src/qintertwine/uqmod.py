"""The quantum group U_q sl(n+1) (type A_n) and its action on the algebras.

Generators are ``X_i^+``, ``X_i^-``, ``K_i^+``, ``K_i^-`` for ``i = 1..n``.
Conventions used throughout the package:

* coproduct ``Delta(K) = K (x) K`` and
  ``Delta(X_i^+-) = K_i^+ (x) X_i^+- + X_i^+- (x) K_i^-``, i.e.
  ``X(f1 f2) = K^+(f1) X(f2) + X(f1) K^-(f2)``;
* antipode ``S(K^+-) = K^-+``, ``S(X^+-) = -q^-+1 X^+-``;
* involution ``(X_i^+-)* = (-1)^{delta_i1} X_i^-+`` and ``(K^+-)* = K^+-``.
  (Sending ``K^+`` to ``K^-`` instead is not compatible with
  ``K X K^-1 = q^{a/2} X`` for real q; it is available as
  ``star_hopf(a, k_swap=True)`` for comparison.)

Action on letters (``K_i^+ z_j = q^{(delta_{i,j+1} - delta_ij)/2} z_j``, the
adjoint letters carrying the inverse weight)::

    X_i^+ z_j  = delta_ij z_{j-1}
    X_i^- z_j  = delta_{i,j+1} z_{j+1}
    X_i^+ z_j* = -(-1)^{delta_i1} q^-1 delta_{i,j+1} z_{j+1}*
    X_i^- z_j* = -(-1)^{delta_i1} q    delta_ij     z_{j-1}*

and on a coefficient ``f(x)`` of a normal form::

    X_i^+ f = q^{1/2} z_i* (B_i f)(x_0, .., x_i, q^2 x_{i+1}, ..) z_{i-1}
    X_i^- f = -(-1)^{delta_i1} q^{3/2} z_{i-1}* (B_i f)(.. same ..) z_i
    K_i^+- f = f

where ``B_i`` is the q-difference operator in the variable ``x_i``.  The
normal-form action is checked against the slow route that expands every
``x_j`` into letters and applies the Leibniz rule (``leibniz_oracle``).
"""

import itertools
from collections import namedtuple

from .freealg.element import Element, KernelAlgebra, _add_into
from .freealg.engine import CAlgebra
from .freealg.poly import MPoly
from .freealg.words import LetterAlgebra
from .scalar import SYMBOLIC, qbinom

__all__ = [
    "HopfGenerator", "HopfWord", "X_plus", "X_minus", "K_plus", "K_minus",
    "all_generators", "cartan", "antipode", "star_hopf", "counit", "coproduct",
    "act", "act_generator", "leibniz_oracle", "defining_relations",
    "verify_module_relations", "normal_monomials", "check_module_algebra",
    "check_star_compatibility", "MIDDLE_PLUS_EXP", "MIDDLE_MINUS_EXP",
]

KINDS = ("X+", "X-", "K+", "K-")

# exponents of q^(1/2) in the coefficient action; see module docstring
MIDDLE_PLUS_EXP = 1
MIDDLE_MINUS_EXP = 3


class HopfGenerator(namedtuple("HopfGenerator", "kind index")):
    """One of X_i^+, X_i^-, K_i^+, K_i^-."""

    __slots__ = ()

    def __new__(cls, kind, index):
        if kind not in KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        if not isinstance(index, int) or index < 1:
            raise ValueError("generator index must be a positive integer")
        return super().__new__(cls, kind, index)

    def __str__(self):
        base = "X" if self.kind[0] == "X" else "K"
        return f"{base}{self.index}{self.kind[1]}"


def cartan(i, j):
    """Cartan matrix of type A."""
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


class HopfWord:
    """A finite linear combination of products of generators."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field=None):
        self.field = field or SYMBOLIC
        self.terms = {}
        for w, c in (terms or {}).items():
            c = self.field.convert(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def gen(cls, g, c=1, field=None):
        return cls({(g,): c}, field)

    @classmethod
    def one(cls, field=None):
        return cls({(): 1}, field)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, self.field.zero) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return HopfWord(out, self.field)

    def __neg__(self):
        return HopfWord({w: -c for w, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field.convert(c)
        return HopfWord({w: c * v for w, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, HopfWord):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = out.get(w, self.field.zero) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return HopfWord(out, self.field)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k):
        out = HopfWord.one(self.field)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, HopfWord) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: [tuple(g) for g in kv[0]]):
            body = " ".join(str(g) for g in w) or "1"
            parts.append(body if c == 1 else f"({c}) {body}")
        return " + ".join(parts)


def X_plus(i, c=1):
    return HopfWord.gen(HopfGenerator("X+", i), c)


def X_minus(i, c=1):
    return HopfWord.gen(HopfGenerator("X-", i), c)


def K_plus(i, c=1):
    return HopfWord.gen(HopfGenerator("K+", i), c)


def K_minus(i, c=1):
    return HopfWord.gen(HopfGenerator("K-", i), c)


def all_generators(n):
    return [HopfGenerator(k, i) for i in range(1, n + 1) for k in KINDS]


# -- Hopf structure -----------------------------------------------------------------

def _antipode_gen(g, inverse, field):
    q = field.spow(2)
    if g.kind == "K+":
        return {(HopfGenerator("K-", g.index),): field.one}
    if g.kind == "K-":
        return {(HopfGenerator("K+", g.index),): field.one}
    # S(X^+-) = -q^-+1 X^+- ;  S^-1(X^+-) = -q^+-1 X^+-
    plus = g.kind == "X+"
    c = (q if plus else field.one / q) if inverse else (field.one / q if plus else q)
    return {(g,): -c}


def antipode(a, inverse=False):
    """S(a) or S^-1(a): generator-wise and anti-multiplicative."""
    f = a.field
    out = HopfWord({}, f)
    for w, c in a.terms.items():
        acc = HopfWord.one(f)
        for g in reversed(w):
            acc = acc * HopfWord(_antipode_gen(g, inverse, f), f)
        out = out + acc.scale(c)
    return out


def star_hopf(a, k_swap=False):
    """The antilinear anti-automorphism of U_q su(n,1)."""
    f = a.field
    out = HopfWord({}, f)
    for w, c in a.terms.items():
        acc = HopfWord.one(f)
        for g in reversed(w):
            if g.kind[0] == "K":
                k = g.kind
                if k_swap:
                    k = "K-" if k == "K+" else "K+"
                img = {(HopfGenerator(k, g.index),): f.one}
            else:
                sign = -1 if g.index == 1 else 1
                img = {(HopfGenerator("X-" if g.kind == "X+" else "X+", g.index),): f.convert(sign)}
            acc = acc * HopfWord(img, f)
        out = out + acc.scale(c.conjugate() if hasattr(c, "conjugate") else c)
    return out


def counit(a):
    """epsilon(a): K -> 1, X -> 0."""
    total = a.field.zero
    for w, c in a.terms.items():
        if all(g.kind[0] == "K" for g in w):
            total = total + c
    return total


def coproduct(g):
    """``Delta(g)`` as a list of (left generator or None, right generator or None)."""
    if g.kind[0] == "K":
        return [(g, g)]
    i = g.index
    return [(HopfGenerator("K+", i), g), (g, HopfGenerator("K-", i))]


# -- action on letters -----------------------------------------------------------------

def _weight(i, kind, k):
    """Exponent of q^(1/2) in K_i^+ on the letter (kind, k)."""
    e = (1 if i == k + 1 else 0) - (1 if i == k else 0)
    return e if kind == "z" else -e


def _letter_image(g, kind, k, n, field):
    """``g`` applied to a single letter: (coefficient, (kind', k')) or None."""
    i = g.index
    sign = -1 if i == 1 else 1
    if g.kind == "X+":
        if kind == "z":
            return (field.one, ("z", k - 1)) if k == i else None
        if i == k + 1 and k < n:
            return (field.spow(-2) * (-sign), ("s", k + 1))
        return None
    if g.kind == "X-":
        if kind == "z":
            return (field.one, ("z", k + 1)) if i == k + 1 else None
        if k == i:
            return (field.spow(2) * (-sign), ("s", k - 1))
        return None
    raise AssertionError


def _word_weight(i, steps, sign):
    return sign * sum(_weight(i, kind, k) for kind, k in steps if kind != "M")


# -- action on CAlgebra normal forms -----------------------------------------------------

class _Side:
    """How the variables of one algebra sit inside a (possibly larger) middle."""

    def __init__(self, alg, offset=0, total=None):
        self.alg = alg
        self.offset = offset
        self.total = alg.nvars if total is None else total

    def poly(self, P):
        if self.offset == 0 and self.total == P.nv:
            return P
        return P.embed(self.offset, self.total)

    def shift(self, vec):
        return (0,) * self.offset + tuple(vec) + (0,) * (self.total - self.offset - len(vec))


def _act_C(g, key, mid, side):
    """[(key', mid')] for the generator ``g`` on the monomial (z*)^I mid z^J."""
    alg = side.alg
    f = alg.field
    n = alg.n
    if g.index > n:
        raise ValueError(f"generator index {g.index} exceeds rank {n}")
    if g.kind in ("K+", "K-"):
        left, right = alg.letters(key)
        e = _word_weight(g.index, left + right, 1 if g.kind == "K+" else -1)
        return [(key, mid.scale(f.spow(e)))]
    i = g.index
    left, right = alg.letters(key)
    steps = left + (("M", 1),) + right
    out = []

    def emit(c0, new_steps, m):
        c, k2, P, sh = alg.trace(alg.unit_key, tuple(new_steps))
        if not c:
            return
        out.append((k2, m.shifted(side.shift(sh[1])).times_poly(side.poly(P)).scale(c * c0)))

    for p, (kind, k) in enumerate(steps):
        if kind == "M":
            continue
        img = _letter_image(g, kind, k, n, f)
        if img is None:
            continue
        c, letter = img
        e = _word_weight(i, steps[:p], 1) + _word_weight(i, steps[p + 1:], -1)
        emit(c * f.spow(e), steps[:p] + (letter,) + steps[p + 1:], mid)
    # the coefficient function itself
    Bf = mid.B(side.offset + i)
    if Bf:
        dil = [0] * (i + 1) + [1] * (n - i)
        Bf = Bf.shifted(side.shift(dil))
        pm = steps.index(("M", 1))
        e = _word_weight(i, steps[:pm], 1) + _word_weight(i, steps[pm + 1:], -1)
        if g.kind == "X+":
            c0 = f.spow(MIDDLE_PLUS_EXP + e)
            mid_steps = (("s", i), ("M", 1), ("z", i - 1))
        else:
            c0 = f.spow(MIDDLE_MINUS_EXP + e) * (1 if i == 1 else -1)
            mid_steps = (("s", i - 1), ("M", 1), ("z", i))
        emit(c0, steps[:pm] + mid_steps + steps[pm + 1:], Bf)
    return out


def _act_words(g, key, mid, alg):
    """Generator on a sorted word of the multi-copy algebra (middle inert)."""
    f = alg.field
    n = alg.n
    i = g.index
    steps = [("s" if s else "z", j) for s, a, j in key]
    if g.kind in ("K+", "K-"):
        e = _word_weight(i, steps, 1 if g.kind == "K+" else -1)
        return [(key, mid.scale(f.spow(e)))]
    out = []
    for p, (s, a, j) in enumerate(key):
        img = _letter_image(g, steps[p][0], j, n, f)
        if img is None:
            continue
        c, (kind2, j2) = img
        e = _word_weight(i, steps[:p], 1) + _word_weight(i, steps[p + 1:], -1)
        w = key[:p] + ((kind2 == "s", a, j2),) + key[p + 1:]
        for w2, c2 in alg.nf(w).items():
            out.append((w2, mid.scale(c * c2 * f.spow(e))))
    return out


def act_generator(g, e, side="left"):
    """Apply one generator to an element (of a CAlgebra, a LetterAlgebra, or
    one tensor factor of a kernel algebra)."""
    alg = e.alg
    out = {}
    if isinstance(alg, KernelAlgebra):
        if side == "left":
            fac = alg.left
            sd = _Side(fac, 0, alg.nvars) if isinstance(fac, CAlgebra) else None
        else:
            fac = alg.right
            sd = _Side(fac, alg.nL, alg.nvars)
        for (kL, kR), mid in e.terms.items():
            k = kL if side == "left" else kR
            res = _act_C(g, k, mid, sd) if sd is not None else _act_words(g, k, mid, fac)
            for k2, m2 in res:
                _add_into(out, (k2, kR) if side == "left" else (kL, k2), m2)
        return Element(alg, out)
    if isinstance(alg, CAlgebra):
        sd = _Side(alg)
        for k, mid in e.terms.items():
            for k2, m2 in _act_C(g, k, mid, sd):
                _add_into(out, k2, m2)
        return Element(alg, out)
    if isinstance(alg, LetterAlgebra):
        for k, mid in e.terms.items():
            for k2, m2 in _act_words(g, k, mid, alg):
                _add_into(out, k2, m2)
        return Element(alg, out)
    raise TypeError(f"no action on {alg!r}")


def act(a, e, side="left"):
    """The module action of a HopfWord (or single generator) on an element."""
    if isinstance(a, HopfGenerator):
        return act_generator(a, e, side)
    total = Element(e.alg)
    for w, c in a.terms.items():
        v = e
        for g in reversed(w):
            v = act_generator(g, v, side)
            if not v:
                break
        total = total + v.scale(e.alg.field.convert(c))
    return total


# -- slow oracle ------------------------------------------------------------------------------

def _x_words(alg, j):
    from .freealg.api import expand_x_to_letters
    return [(c, tuple(("z" if kd == "z" else "s", k) for kd, k in w))
            for c, w in expand_x_to_letters(alg, j)]


def leibniz_oracle(g, e):
    """Act by expanding every x_j into letter pairs and applying the Leibniz
    rule letter by letter, then renormalizing.  Polynomial middles only."""
    alg = e.alg
    if not isinstance(alg, CAlgebra):
        raise TypeError("the oracle works on CAlgebra elements")
    f = alg.field
    total = Element(alg)
    xw = [_x_words(alg, j) for j in range(alg.nvars)]
    for key, mid in e.terms.items():
        left, right = alg.letters(key)
        for (alpha, tag), c in mid.terms.items():
            if tag is not None:
                raise ValueError("the oracle needs polynomial coefficients")
            factors = [xw[j] for j, a in enumerate(alpha) for _ in range(a)]
            for choice in itertools.product(*factors):
                coeff = c
                middle = ()
                for cc, w in choice:
                    coeff = coeff * f.convert(cc)
                    middle += w
                word = left + middle + right
                total = total + _act_plain_word(g, word, alg).scale(coeff)
    return total


def _act_plain_word(g, word, alg):
    f = alg.field
    n = alg.n
    i = g.index
    out = Element(alg)
    if g.kind in ("K+", "K-"):
        c, k2, P, _ = alg.trace(alg.unit_key, word)
        e = _word_weight(i, word, 1 if g.kind == "K+" else -1)
        return Element.mono(alg, k2, P).scale(c * f.spow(e)) if c else out
    for p, (kind, k) in enumerate(word):
        img = _letter_image(g, kind, k, n, f)
        if img is None:
            continue
        c, letter = img
        e = _word_weight(i, word[:p], 1) + _word_weight(i, word[p + 1:], -1)
        c2, k2, P, _ = alg.trace(alg.unit_key, word[:p] + (letter,) + word[p + 1:])
        if c2:
            out = out + Element.mono(alg, k2, P).scale(c * c2 * f.spow(e))
    return out


# -- relations ---------------------------------------------------------------------------------

def defining_relations(n, field=None, serre_exponent=-1):
    """``[(name, HopfWord)]`` whose action must vanish.

    ``serre_exponent`` selects the middle coefficient ``q^e (1 + q^2)`` of the
    quadratic Serre relations; ``-1`` gives the usual ``q + q^-1``.
    """
    f = field or SYMBOLIC
    q = f.spow(2)
    qq = f.spow(1)  # q^(1/2)
    one = HopfWord.one(f)
    rels = []
    for i in range(1, n + 1):
        rels.append((f"K{i}+K{i}- = 1", K_plus(i) * K_minus(i) - one))
        rels.append((f"K{i}-K{i}+ = 1", K_minus(i) * K_plus(i) - one))
        for j in range(1, n + 1):
            if i < j:
                rels.append((f"K{i}+K{j}+ = K{j}+K{i}+", K_plus(i) * K_plus(j) - K_plus(j) * K_plus(i)))
                rels.append((f"K{i}-K{j}- = K{j}-K{i}-", K_minus(i) * K_minus(j) - K_minus(j) * K_minus(i)))
            a = cartan(i, j)
            for s, X in ((1, X_plus), (-1, X_minus)):
                sym = "+" if s == 1 else "-"
                rels.append((f"K{i}+X{j}{sym} = q^({s * a}/2) X{j}{sym}K{i}+",
                             K_plus(i) * X(j) - (X(j) * K_plus(i)).scale(qq ** (s * a))))
                rels.append((f"K{i}-X{j}{sym} = q^({-s * a}/2) X{j}{sym}K{i}-",
                             K_minus(i) * X(j) - (X(j) * K_minus(i)).scale(qq ** (-s * a))))
            comm = X_plus(i) * X_minus(j) - X_minus(j) * X_plus(i)
            if i == j:
                rhs = (K_plus(i) ** 2 - K_minus(i) ** 2).scale(f.one / (q - f.one / q))
                comm = comm - rhs
            rels.append((f"[X{i}+, X{j}-]", comm))
            if i != j:
                m = 1 - a
                for X, sym in ((X_plus, "+"), (X_minus, "-")):
                    rel = HopfWord({}, f)
                    for k in range(m + 1):
                        if m == 2:
                            c = f.convert(qbinom(2, k, q * q)) * (q ** (serre_exponent * k * (m - k)))
                        else:
                            c = f.one
                        rel = rel + (X(i) ** (m - k) * X(j) * X(i) ** k).scale(c * (-1) ** k)
                    rels.append((f"Serre X{i}{sym},X{j}{sym}", rel))
    return rels


def normal_monomials(alg, degree_cap):
    """All normal-form monomials (z*)^I x^alpha z^J of total degree <= cap,
    counting letters once and x-variables twice."""
    n1 = alg.n + 1
    free_vars = [j for j in range(alg.nvars) if not (j == 0 and alg.quotient != "free")]
    out = []
    for d_letters in range(degree_cap + 1):
        for IJ in _compositions(2 * n1, d_letters):
            I, J = IJ[:n1], IJ[n1:]
            if any(a and b for a, b in zip(I, J)):
                continue
            rest = (degree_cap - d_letters) // 2
            for dx in range(rest + 1):
                for ex in _compositions(len(free_vars), dx):
                    alpha = [0] * alg.nvars
                    for v, e in zip(free_vars, ex):
                        alpha[v] = e
                    mid = MPoly.monomial(alg.nvars, alg.field, tuple(alpha))
                    out.append(Element.mono(alg, (tuple(I), tuple(J)), mid))
    return out


def _compositions(k, total):
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(k - 1, total - first):
            yield (first,) + rest


def verify_module_relations(n, degree_cap, quotient="free", field=None, serre_exponent=-1):
    """Check every defining relation acts as zero on all monomials of degree
    <= cap.  Returns ``{relation name: (ok, first failing monomial or None)}``."""
    from .freealg.api import algebra
    alg = algebra(n, quotient, field)
    monos = normal_monomials(alg, degree_cap)
    report = {}
    for name, rel in defining_relations(n, alg.field, serre_exponent):
        bad = None
        for m in monos:
            if act(rel, m):
                bad = m
                break
        report[name] = (bad is None, bad)
    return report


# -- axioms ---------------------------------------------------------------------------------------

def check_module_algebra(g, e1, e2, side="left"):
    """``g(e1 e2) - sum Delta(g) (e1 (x) e2)``; zero iff the q-Leibniz rule holds."""
    lhs = act_generator(g, e1 * e2, side)
    rhs = Element(e1.alg)
    for a, b in coproduct(g):
        rhs = rhs + act_generator(a, e1, side) * act_generator(b, e2, side)
    return lhs - rhs


def check_star_compatibility(a, e, k_swap=False):
    """``(a e)* - S(a)* e*``; zero iff the action is compatible with the involutions."""
    if isinstance(a, HopfGenerator):
        a = HopfWord.gen(a)
    return act(a, e).star() - act(star_hopf(antipode(a), k_swap), e.star())
