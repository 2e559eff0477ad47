"""Commutative coefficient functions f(x) sitting in the middle of a monomial.

:class:`MPoly` is a finite sum ``sum c * x**alpha * G(q**(2k) x)`` where
``alpha`` is an integer exponent vector (negative entries allowed, they
appear after q-differencing) and ``G`` is an optional registered function
("tag") evaluated at a q^2-shifted argument.  Untagged terms are ordinary
Laurent polynomials; the tags carry the infinite products of the series
module and the formal lattice functions of the Radon module.

The operations the normal-ordering engine needs are closed on this class:
sums, products, the dilations ``x_m -> q^(2 k_m) x_m``, substitution of a
constant for ``x_0`` and the partial q-difference operator ``B_i``.
"""

__all__ = ["MPoly", "TagRegistry", "TAGS"]


class TagRegistry:
    """Global table of named functions usable as tags.

    A tag function receives the list of (numeric) variable values and
    returns a number.  Registration is keyed by an id chosen by the caller
    so that results are reproducible.
    """

    def __init__(self):
        self._fns = {}

    def register(self, tid, fn):
        self._fns[tid] = fn
        return tid

    def __call__(self, tid, values):
        return self._fns[tid](values)

    def __contains__(self, tid):
        return tid in self._fns


TAGS = TagRegistry()


class MPoly:
    """Sparse polynomial-with-tags in ``nv`` commuting variables over a field."""

    __slots__ = ("terms", "nv", "field")

    def __init__(self, nv, field, terms=None):
        self.nv = nv
        self.field = field
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, nv, field, c=None):
        c = field.one if c is None else field.convert(c) if not _is_elem(c, field) else c
        if not c:
            return cls(nv, field)
        return cls(nv, field, {((0,) * nv, None): c})

    @classmethod
    def var(cls, nv, field, i, power=1):
        ex = [0] * nv
        ex[i] = power
        return cls(nv, field, {(tuple(ex), None): field.one})

    @classmethod
    def monomial(cls, nv, field, exps, c=None, tag=None):
        c = field.one if c is None else c
        return cls(nv, field, {(tuple(exps), tag): c} if c else {})

    @classmethod
    def tagged(cls, nv, field, tid, c=None):
        return cls.monomial(nv, field, (0,) * nv, c, (tid, (0,) * nv))

    # -- basic protocol -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def copy(self):
        return MPoly(self.nv, self.field, dict(self.terms))

    def _new(self, terms):
        return MPoly(self.nv, self.field, terms)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nv, self.field, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nv, self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return self._new({})
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w:
                out[k] = w
        return self._new(out)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if hasattr(other, "times_poly"):
                return other.times_poly(self)
            return self.scale(other)
        if len(other.terms) == 1 and not self.nv == 0:
            ((ok, oc),) = other.terms.items()
            if ok[1] is None and not any(ok[0]):
                return self.scale(oc)
        out = {}
        for (a1, t1), c1 in self.terms.items():
            for (a2, t2), c2 in other.terms.items():
                if t1 is not None and t2 is not None:
                    raise ValueError("product of two tagged functions is not representable")
                key = (tuple(x + y for x, y in zip(a1, a2)), t1 if t2 is None else t2)
                c = c1 * c2
                v = out.get(key)
                if v is None:
                    out[key] = c
                else:
                    v = v + c
                    if v:
                        out[key] = v
                    else:
                        del out[key]
        return self._new(out)

    def __rmul__(self, other):
        return self.scale(other)

    times_poly = __mul__

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nv, self.field, other)
        if self.nv != other.nv:
            return False
        return self.terms == other.terms

    def conj(self):
        """Complex conjugation (coefficients and tags are real)."""
        return self

    def is_const(self):
        return all(t is None and not any(a) for a, t in self.terms)

    def const_value(self):
        if not self.terms:
            return self.field.zero
        if not self.is_const():
            raise ValueError("not a constant")
        return self.terms[((0,) * self.nv, None)]

    def is_polynomial(self):
        return all(t is None and min(a, default=0) >= 0 for a, t in self.terms)

    # -- engine operations -------------------------------------------------------
    def shifted(self, vec):
        """``f(q^(2 vec_0) x_0, ..., q^(2 vec_m) x_m, ...)``."""
        if not any(vec):
            return self
        sp = self.field.spow
        out = {}
        for (a, t), c in self.terms.items():
            d = sum(v * e for v, e in zip(vec, a))
            if t is not None:
                t = (t[0], tuple(x + y for x, y in zip(t[1], vec)))
            out[(a, t)] = c * sp(4 * d) if d else c
        return self._new(out)

    def B(self, i):
        """Partial q-difference ``(f(..q^2 x_i..) - f(x)) / ((q^2 - 1) x_i)``."""
        f = self.field
        sp = f.spow
        inv = None
        out = {}

        def put(key, c):
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)

        for (a, t), c in self.terms.items():
            b = list(a)
            b[i] -= 1
            b = tuple(b)
            if t is None:
                if a[i] == 0:
                    continue
                put((b, None), c * _qint2(f, a[i]))
            else:
                if inv is None:
                    inv = f.one / (sp(4) - f.one)
                sh = list(t[1])
                sh[i] += 1
                put((b, (t[0], tuple(sh))), c * sp(4 * a[i]) * inv)
                put((b, t), -c * inv)
        return self._new(out)

    def subs_const(self, i, value):
        """Substitute the constant ``value`` (0 or 1) for variable ``i``."""
        out = {}
        for (a, t), c in self.terms.items():
            if a[i] == 0:
                key = (a, t)
            elif value == 0:
                continue
            else:
                b = list(a)
                b[i] = 0
                key = (tuple(b), t)
            v = out.get(key)
            v = c if v is None else v + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return self._new(out)

    def embed(self, offset, nv):
        """Re-index into ``nv`` variables starting at ``offset``."""
        if offset == 0 and nv == self.nv:
            return self
        pad_l, pad_r = (0,) * offset, (0,) * (nv - offset - self.nv)
        out = {}
        for (a, t), c in self.terms.items():
            if t is not None:
                t = (t[0], pad_l + t[1] + pad_r)
            out[(pad_l + a + pad_r, t)] = c
        return MPoly(nv, self.field, out)

    def restrict(self, offset, length):
        """Inverse of :meth:`embed` for a polynomial supported on a block."""
        out = {}
        for (a, t), c in self.terms.items():
            if any(a[:offset]) or any(a[offset + length:]):
                raise ValueError("polynomial uses variables outside the block")
            if t is not None:
                t = (t[0], t[1][offset:offset + length])
            out[(a[offset:offset + length], t)] = c
        return MPoly(length, self.field, out)

    def map_coeffs(self, fn, field=None):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = v
        return MPoly(self.nv, field or self.field, out)

    def evaluate(self, values, tags=TAGS):
        """Numeric value at ``values`` (one number per variable)."""
        total = 0
        for (a, t), c in self.terms.items():
            v = self.field.convert(c) if not _is_num(c) else c
            for x, e in zip(values, a):
                if e:
                    v = v * x ** e
            if t is not None:
                pt = [x * self.field.qpow(2 * s) if s else x for x, s in zip(values, t[1])]
                v = v * tags(t[0], pt)
            total = total + v
        return total

    def degree(self):
        return max((sum(a) for a, _ in self.terms), default=0)

    def __repr__(self):
        return f"MPoly({self.nv}, {self.terms})"


def _is_num(c):
    return isinstance(c, (int, float, complex)) or type(c).__name__ in ("Fraction", "mpf", "mpc")


def _is_elem(c, field):
    from ..scalar import Scalar
    if field.name == "symbolic":
        return isinstance(c, Scalar)
    return _is_num(c)


def _qint2(field, a):
    """``(q^(2a) - 1)/(q^2 - 1)`` for integer a, computed without division."""
    sp = field.spow
    if a > 0:
        acc = field.zero
        for j in range(a):
            acc = acc + sp(4 * j)
        return acc
    acc = field.zero
    for j in range(a, 0):
        acc = acc - sp(4 * j)
    return acc
