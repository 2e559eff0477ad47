"""Normal ordering in the algebra generated by z_0..z_n and their adjoints.

A monomial is ``(z*)^I f(x) z^J`` with ``I . J = 0``; the key of the
monomial is the pair ``(I, J)`` and ``f`` is a middle coefficient.  Right
multiplication of a monomial by a single letter always produces a single
monomial key again, so the whole product is described by

* a scalar ``c``,
* the new key,
* a polynomial ``P(x)`` that appears from eliminated ``z_k z_k*`` pairs,
* for every middle coefficient that took part, the dilation vector that
  was applied to it while letters were moved across it.

That description does not depend on the middles themselves, so it is
cached per pair of keys and reused for every kind of coefficient (plain
polynomials, tagged series, lattice functions).

Letter rules used (i < j unless stated)::

    z_i z_j = q z_j z_i          z_i z_j* = q z_j* z_i   (i != j)
    z_j* z_i* = q z_i* z_j*
    z_k z_k* = x_k - x_{k+1},    z_k* z_k = x_k - q^-2 x_{k+1}   (k > 0)
    z_0 z_0* = x_0 + x_1,        z_0* z_0 = x_0 + q^-2 x_1
    z_i f(x) = f(x_0..x_i, q^2 x_{i+1}, ..., q^2 x_n) z_i
    z_i* f(x) = f(x_0..x_i, q^-2 x_{i+1}, ...) z_i*
"""

from functools import lru_cache

from .poly import MPoly

__all__ = ["CAlgebra", "QUOTIENTS"]

QUOTIENTS = ("free", "cone", "hyperboloid")


class CAlgebra:
    """The algebra C^{n+1}_{q,q^-1} or one of its quotients (cone x_0 = 0,
    hyperboloid x_0 = 1) over a coefficient field."""

    kind = "C"

    def __init__(self, n, quotient="free", field=None):
        from ..scalar import SYMBOLIC
        if n < 1:
            raise ValueError("rank n must be >= 1")
        if quotient not in QUOTIENTS:
            raise ValueError(f"unknown quotient {quotient!r}")
        self.n = n
        self.quotient = quotient
        self.field = field or SYMBOLIC
        self.nvars = n + 1
        self.unit_key = ((0,) * (n + 1), (0,) * (n + 1))
        self._zero_shift = (0,) * (n + 1)
        self._hg = {}
        self.mono_mul = lru_cache(maxsize=None)(self._mono_mul)
        self.trace = lru_cache(maxsize=None)(self._trace)

    def __repr__(self):
        return f"CAlgebra(n={self.n}, {self.quotient}, {self.field!r})"

    def same_as(self, other):
        return (isinstance(other, CAlgebra) and self.n == other.n
                and self.quotient == other.quotient and self.field == other.field)

    # -- small helpers ---------------------------------------------------------
    def x(self, j, power=1):
        return MPoly.var(self.nvars, self.field, j, power)

    def one_poly(self):
        return MPoly.const(self.nvars, self.field)

    def project(self, p):
        """Apply the quotient relation for x_0 to a coefficient polynomial."""
        if self.quotient == "cone":
            return p.subs_const(0, 0)
        if self.quotient == "hyperboloid":
            return p.subs_const(0, 1)
        return p

    def _pair_poly(self, k, starred_first, scale):
        """``z_k* z_k`` (starred_first) or ``z_k z_k*`` with x_m -> q^(2 scale_m) x_m."""
        key = (k, starred_first, scale)
        p = self._hg.get(key)
        if p is not None:
            return p
        f, n = self.field, self.n
        qm2 = f.spow(-4)
        if k == 0:
            p = self.x(0) + (self.x(1).scale(qm2) if starred_first else self.x(1))
        else:
            p = self.x(k)
            if k < n:
                nxt = self.x(k + 1)
                p = p - (nxt.scale(qm2) if starred_first else nxt)
        p = self.project(p.shifted(scale))
        self._hg[key] = p
        return p

    # -- the trace of a word -------------------------------------------------------
    def _trace(self, start, steps):
        """Multiply the monomial ``start`` (whose middle is placeholder 0) on the
        right by ``steps``; each step is ``('z', k)``, ``('s', k)`` (for z_k*) or
        ``('M', pid)`` for a middle placeholder.

        Returns ``(c, key, P, shifts)`` where ``shifts[pid]`` is the dilation
        applied to placeholder ``pid``; the resulting monomial is
        ``(z*)^I [c P sigma_0(M_0) sigma_1(M_1) ...] z^J``.
        """
        f = self.field
        n1 = self.n + 1
        I, J = list(start[0]), list(start[1])
        c = f.one
        P = None  # None means the constant 1
        shifts = {0: [0] * n1}
        qexp = 0  # accumulated power of q

        def dilate(vec):
            nonlocal P
            if P is not None:
                P = P.shifted(tuple(vec))
            for sv in shifts.values():
                for m in range(n1):
                    sv[m] += vec[m]

        for kind, k in steps:
            if kind == "z":
                above = sum(J[k + 1:])
                if I[k] == 0:
                    qexp -= above
                    J[k] += 1
                else:
                    qexp += -above + sum(J[:k]) - sum(I[k + 1:])
                    I[k] -= 1
                    dilate([0] * (k + 1) + [-1] * (n1 - k - 1))
                    h = self._pair_poly(k, True, self._zero_shift)
                    P = h if P is None else h * P
                    if not P:
                        return (f.zero, self.unit_key, MPoly(self.nvars, f), {})
            elif kind == "s":
                if J[k] == 0:
                    qexp += sum(J) + sum(I[k + 1:])
                    I[k] += 1
                    dilate([0] * (k + 1) + [1] * (n1 - k - 1))
                else:
                    qexp += sum(J[k + 1:])
                    J[k] -= 1
                    scale, acc = [], 0
                    for m in range(n1):
                        scale.append(acc)
                        if m <= k:
                            acc += J[m]
                    g = self._pair_poly(k, False, tuple(scale))
                    P = g if P is None else P * g
                    if not P:
                        return (f.zero, self.unit_key, MPoly(self.nvars, f), {})
            elif kind == "M":
                acc, sv = 0, []
                for m in range(n1):
                    sv.append(acc)
                    acc += J[m]
                shifts[k] = sv
            else:
                raise ValueError(f"bad step {kind!r}")
        c = f.spow(2 * qexp)
        if P is None:
            P = self.one_poly()
        return (c, (tuple(I), tuple(J)), P, {p: tuple(v) for p, v in shifts.items()})

    @staticmethod
    def letters(key):
        """Word of the monomial ``key`` split as (starred part, unstarred part)."""
        I, J = key
        left = tuple(("s", k) for k, e in enumerate(I) for _ in range(e))
        right = tuple(("z", k) for k, e in enumerate(J) for _ in range(e))
        return left, right

    def _mono_mul(self, k1, k2):
        left, right = self.letters(k2)
        c, key, P, sh = self.trace(k1, left + (("M", 1),) + right)
        if not c:
            return ()
        return ((c, key, P, sh[0], sh[1]),)

    def star_mono(self, key):
        """``((z*)^I M z^J)^*`` as ``[(c, key', P, shift)]`` acting on conj(M)."""
        I, J = key
        left = tuple(("s", k) for k in reversed(range(self.n + 1)) for _ in range(J[k]))
        right = tuple(("z", k) for k in reversed(range(self.n + 1)) for _ in range(I[k]))
        c, k2, P, sh = self.trace(self.unit_key, left + (("M", 1),) + right)
        if not c:
            return ()
        return ((c, k2, P, sh[1]),)

    def letter_key(self, kind, k):
        e = [0] * (self.n + 1)
        e[k] = 1
        zero = (0,) * (self.n + 1)
        return (tuple(e), zero) if kind == "s" else (zero, tuple(e))

    def degree(self, key, middle=None):
        d = sum(key[0]) + sum(key[1])
        if middle is not None:
            d += 2 * middle.degree()
        return d

    def theta_mono(self, key):
        """The twisted involution ``z_j -> q^(2(j-n)) z_j*`` (anti-multiplicative,
        antilinear, involutive) used on the second factor of a kernel."""
        I, J = key
        n = self.n
        e = sum(2 * (j - n) * J[j] for j in range(n + 1)) - sum(2 * (j - n) * I[j] for j in range(n + 1))
        base = self.star_mono(key)
        if not e:
            return base
        w = self.field.spow(2 * e)
        return tuple((c * w, k, P, sh) for c, k, P, sh in base)
