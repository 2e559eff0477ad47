"""Elements of the algebras and of the kernel algebras F2 (x) F1^op.

An element is a dict ``key -> middle``.  For a single algebra the key is a
monomial key of that algebra; for a kernel algebra it is a pair
``(left_key, right_key)`` and the middle is a function of the variables
of both factors (x first, then xi).
"""

from .poly import MPoly

__all__ = ["Element", "KernelAlgebra"]


def _add_into(out, key, mid):
    cur = out.get(key)
    if cur is None:
        if mid:
            out[key] = mid
    else:
        s = cur + mid
        if s:
            out[key] = s
        else:
            del out[key]


class Element:
    """Finite sum of normal-ordered monomials over an algebra object."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {}
        for k, m in (terms or {}).items():
            if m:
                self.terms[k] = m

    # -- constructors ------------------------------------------------------------
    @classmethod
    def scalar(cls, alg, c=None):
        return cls(alg, {alg.unit_key: MPoly.const(alg.nvars, alg.field, c)})

    @classmethod
    def mono(cls, alg, key, middle=None):
        if middle is None:
            middle = MPoly.const(alg.nvars, alg.field)
        return cls(alg, {key: middle})

    @classmethod
    def middle(cls, alg, mid):
        return cls(alg, {alg.unit_key: mid})

    def zero(self):
        return Element(self.alg)

    # -- arithmetic ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Element):
            if other.alg is not self.alg and not self.alg.same_as(other.alg):
                raise ValueError("elements belong to different algebras")
            return other
        return Element.scalar(self.alg, self.alg.field.convert(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, m in other.terms.items():
            _add_into(out, k, m)
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {k: -m for k, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        return Element(self.alg, {k: m.scale(c) for k, m in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(self.alg.field.convert(other))
        other = self._coerce(other)
        alg = self.alg
        out = {}
        for k1, m1 in self.terms.items():
            for k2, m2 in other.terms.items():
                for c, key, P, s1, s2 in alg.mono_mul(k1, k2):
                    mid = m1.shifted(s1).times_poly(m2.shifted(s2)).times_poly(P).scale(c)
                    _add_into(out, key, mid)
        return Element(alg, out)

    def __rmul__(self, other):
        return self.scale(self.alg.field.convert(other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Element.scalar(self.alg)
        for _ in range(k):
            result = result * self
        return result

    def star(self):
        """The antilinear anti-automorphism extending the letter involution."""
        alg = self.alg
        out = {}
        for k, m in self.terms.items():
            mc = m.conj()
            for c, key, P, sh in alg.star_mono(k):
                _add_into(out, key, mc.shifted(sh).times_poly(P).scale(c))
        return Element(alg, out)

    def map_middles(self, fn):
        return Element(self.alg, {k: fn(m) for k, m in self.terms.items()})

    # -- comparison ----------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Element):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return False
        return not (self - other).terms

    def __hash__(self):
        raise TypeError("Element is not hashable")

    def degree(self):
        return max((self.alg.degree(k, m) for k, m in self.terms.items()), default=0)

    def __repr__(self):
        from .render import render
        return render(self)

    def __str__(self):
        from .render import render
        return render(self)


class KernelAlgebra:
    """The algebra ``L (x) R^op``: products are ``(a(x)b)(c(x)d) = ac (x) db``.

    ``L`` and ``R`` are algebra objects (e.g. :class:`CAlgebra`); the right
    factor stores its part as an ordinary normal form of ``R`` and only
    multiplies in the opposite order.
    """

    kind = "kernel"

    def __init__(self, left, right):
        if left.field != right.field:
            raise ValueError("factors must share the coefficient field")
        self.left, self.right = left, right
        self.field = left.field
        self.nL, self.nR = left.nvars, right.nvars
        self.nvars = self.nL + self.nR
        self.unit_key = (left.unit_key, right.unit_key)
        self.n = getattr(left, "n", None)
        self._mm = {}
        self._sm = {}

    def same_as(self, other):
        return (isinstance(other, KernelAlgebra) and self.left.same_as(other.left)
                and self.right.same_as(other.right))

    def __repr__(self):
        return f"KernelAlgebra({self.left!r}, {self.right!r}^op)"

    def embed_left(self, P):
        return P.embed(0, self.nvars)

    def embed_right(self, P):
        return P.embed(self.nL, self.nvars)

    def mono_mul(self, k1, k2):
        key = (k1, k2)
        res = self._mm.get(key)
        if res is not None:
            return res
        (a, b), (c, d) = k1, k2
        out = []
        for cL, kL, PL, sa, sc in self.left.mono_mul(a, c):
            for cR, kR, PR, td, tb in self.right.mono_mul(d, b):
                P = self.embed_left(PL) * self.embed_right(PR)
                out.append((cL * cR, (kL, kR), P, sa + tb, sc + td))
        res = self._mm[key] = tuple(out)
        return res

    def star_mono(self, key):
        """``(a (x) b)* = a* (x) theta(b)`` where theta is the right factor's
        twisted involution (see ``right.theta_mono``)."""
        res = self._sm.get(key)
        if res is not None:
            return res
        a, b = key
        out = []
        for cL, kL, PL, sL in self.left.star_mono(a):
            for cR, kR, PR, sR in self.right.theta_mono(b):
                P = self.embed_left(PL) * self.embed_right(PR)
                out.append((cL * cR, (kL, kR), P, sL + sR))
        res = self._sm[key] = tuple(out)
        return res

    def degree(self, key, middle=None):
        d = self.left.degree(key[0]) + self.right.degree(key[1])
        if middle is not None:
            d += 2 * middle.degree()
        return d
