"""Letter-level rewriting for the multi-copy algebra.

Letters are ``(starred, a, j)``: copy ``a`` (1..N), index ``j`` (0..n).  The
normal words are sorted: all starred letters first, then unstarred ones,
each block ordered by ``(a, j)``.  Inside one copy the relations are those
of the single-copy algebra; between copies ``a < b`` they are the exchange
relations, solved for the out-of-order product:

* unstarred/unstarred (from R'), for a < b::

      z_{a i} z_{b i} = q z_{b i} z_{a i}
      z_{a i} z_{b j} = z_{b j} z_{a i}                              (i > j)
      z_{a i} z_{b j} - z_{b j} z_{a i} = (q - q^-1) z_{b i} z_{a j}   (i < j)

  and their images under the involution for the starred letters;

* unstarred/starred, for a != b::

      z_{a i} z*_{b j} = T q z*_{b j} z_{a i}                        (i != j)
      z_{a i} z*_{b i} = T z*_{b i} z_{a i}
                         + (-1)^{delta_{i0}} T (1 - q^2) sum_{k>i} q^{2(i-k)} z*_{b k} z_{a k}

  This one-parameter family is exactly what local confluence together
  with compatibility with the quantum group action allows; ``T = q^-1``
  (``mixed_exponent=-1``, the default) is the member for which the
  kernels ``K_a`` quasi-commute as required.

For ``N = 1`` this is an independent (word-level, PBW-basis) model of the
single-copy algebra, used as an oracle for the x-variable engine.
"""

import itertools

from .poly import MPoly

__all__ = ["LetterAlgebra"]


class LetterAlgebra:
    """Sorted-word normal forms for ``N`` copies of rank ``n``."""

    kind = "words"

    def __init__(self, n, N=1, field=None, mixed_exponent=-1):
        from ..scalar import SYMBOLIC
        self.n, self.N = n, N
        self.field = field or SYMBOLIC
        self.nvars = 0
        self.unit_key = ()
        self._nf = {}
        self._const = MPoly.const(0, self.field)
        self.mixed_exponent = mixed_exponent
        self._mixed = self.field.spow(2 * mixed_exponent)

    def same_as(self, other):
        return (isinstance(other, LetterAlgebra) and (self.n, self.N) == (other.n, other.N)
                and self.field == other.field)

    def __repr__(self):
        return f"LetterAlgebra(n={self.n}, N={self.N})"

    # -- letters -------------------------------------------------------------
    @staticmethod
    def order(letter):
        starred, a, j = letter
        return (0 if starred else 1, a, j)

    def all_letters(self):
        return [(s, a, j) for s in (True, False)
                for a in range(1, self.N + 1) for j in range(self.n + 1)]

    def out_of_order(self, u, v):
        return self.order(u) > self.order(v)

    def rule(self, u, v):
        """Rewrite of the out-of-order pair ``u v`` as [(c, word)]."""
        f = self.field
        sp = f.spow
        q, qi = sp(2), sp(-2)
        su, au, iu = u
        sv, av, iv = v
        if not su and sv:
            # unstarred before starred
            if au == av:
                i, j = iu, iv
                if i != j:
                    return [(q, (v, u))]
                sign = -1 if i == 0 else 1
                out = [(f.one, (v, u))]
                c = (sp(-4) - f.one) * sign
                for k in range(i + 1, self.n + 1):
                    out.append((c, ((False, au, k), (True, au, k))))
                return out
            # copies differ: u = z_{a i}, v = z*_{b j}
            a, i, b, j = au, iu, av, iv
            T = self._mixed
            if i != j:
                return [(q * T, (v, u))]
            sign = -1 if i == 0 else 1
            out = [(T, (v, u))]
            c0 = (f.one - sp(4)) * T * sign
            for k in range(i + 1, self.n + 1):
                out.append((c0 * sp(4 * (i - k)), ((True, b, k), (False, a, k))))
            return out
        if su and sv:
            if au == av:
                # z_i* z_j* with i > j
                return [(q, (v, u))]
            # z*_{b j} z*_{a i} with b > a
            b, a, j, i = au, av, iu, iv
            if i == j:
                return [(q, (v, u))]
            if i > j:
                return [(f.one, (v, u))]
            return [(f.one, (v, u)), (q - qi, ((True, a, j), (True, b, i)))]
        if not su and not sv:
            if au == av:
                # z_j z_i with j > i
                return [(qi, (v, u))]
            # z_{b beta} z_{a alpha} with b > a
            b, a, beta, alpha = au, av, iu, iv
            if alpha == beta:
                return [(qi, (v, u))]
            if alpha > beta:
                return [(f.one, (v, u))]
            return [(f.one, (v, u)), (qi - q, ((False, b, alpha), (False, a, beta)))]
        raise AssertionError("starred after unstarred is always in order")

    # -- normal forms ----------------------------------------------------------
    def first_disorder(self, w):
        for i in range(len(w) - 1):
            if self.out_of_order(w[i], w[i + 1]):
                return i
        return None

    def rewrite_at(self, w, i):
        """One rewriting step at position ``i`` -> [(c, word)]."""
        return [(c, w[:i] + r + w[i + 2:]) for c, r in self.rule(w[i], w[i + 1])]

    def nf(self, w):
        """Normal form of a word as a dict {sorted word: coefficient}."""
        w = tuple(w)
        res = self._nf.get(w)
        if res is not None:
            return res
        i = self.first_disorder(w)
        if i is None:
            res = {w: self.field.one}
        else:
            res = {}
            for c, w2 in self.rewrite_at(w, i):
                for w3, c3 in self.nf(w2).items():
                    v = res.get(w3, self.field.zero) + c * c3
                    if v:
                        res[w3] = v
                    else:
                        res.pop(w3, None)
        self._nf[w] = res
        return res

    def nf_combination(self, combo):
        """Normal form of a linear combination [(c, word)]."""
        res = {}
        for c, w in combo:
            for w2, c2 in self.nf(w).items():
                v = res.get(w2, self.field.zero) + c * c2
                if v:
                    res[w2] = v
                else:
                    res.pop(w2, None)
        return res

    # -- algebra-object protocol ----------------------------------------------------
    def mono_mul(self, k1, k2):
        return tuple((c, w, self._const, (), ()) for w, c in self.nf(k1 + k2).items())

    def star_mono(self, key):
        rev = tuple((not s, a, j) for s, a, j in reversed(key))
        return tuple((c, w, self._const, ()) for w, c in self.nf(rev).items())

    def letter_key(self, kind, k, a=1):
        return (((kind == "s"), a, k),)

    def degree(self, key, middle=None):
        return len(key)

    def word_letters(self, key):
        out = []
        for (s, a, j), grp in itertools.groupby(key):
            e = len(list(grp))
            name = f"z[{a},{j}]" + ("*" if s else "")
            out.append(name if e == 1 else f"{name}^{e}")
        return out

    # -- diamond check ------------------------------------------------------------
    def overlaps(self):
        """All words ``u v w`` where both ``u v`` and ``v w`` are reducible."""
        L = self.all_letters()
        for u in L:
            for v in L:
                if not self.out_of_order(u, v):
                    continue
                for w in L:
                    if self.out_of_order(v, w):
                        yield (u, v, w)

    def check_local_confluence(self):
        """Return the list of overlaps whose two reduction orders disagree."""
        bad = []
        for word in self.overlaps():
            left = self.nf_combination(self.rewrite_at(word, 0))
            right = self.nf_combination(self.rewrite_at(word, 1))
            if left != right:
                bad.append((word, left, right))
        return bad
