"""Exact coefficient arithmetic.

Coefficients live in the field Q(s) of rational functions in the square
root ``s = q**(1/2)`` of the deformation parameter.  Half-integer powers of
``q`` are unavoidable (the Cartan generators act on the letters by
``q**(+-1/2)``), and working over ``s`` keeps every identity in a single
variable.  A value is stored as ``s**e * num(s) / den(s)`` with
``num(0) != 0``, ``den(0) != 0`` and ``den`` monic, which makes equality
syntactic and multiplication by powers of ``q`` free.

Besides the symbolic field there are two numeric "fields" with the same
small interface (``zero``, ``one``, ``spow``, ``qpow``, ``convert``):

* :class:`RationalField` -- exact rational arithmetic at ``q = r**D``;
* :class:`FloatField` -- floating point (or mpmath) arithmetic.

The rewriting engine is written against that interface only.
"""

from fractions import Fraction
import math
import numbers

from flint import fmpq, fmpq_poly

__all__ = [
    "Scalar", "SymbolicField", "RationalField", "FloatField", "SYMBOLIC",
    "Q", "qpoch", "qbinom", "LaurentU", "as_fraction",
]

_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def as_fraction(v):
    """Convert an ``fmpq``/int/Fraction to :class:`fractions.Fraction`."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, fmpq):
        return Fraction(int(v.p), int(v.q))
    return Fraction(v)


def _low_order(p):
    """Index of the lowest nonzero coefficient of a nonzero polynomial."""
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            return k
    raise ZeroDivisionError("zero polynomial")


class Scalar:
    """Element of Q(s), s = q^(1/2), in canonical form.

    >>> q = Scalar.qpow(1)
    >>> (1 - q**2) / (1 - q)
    1 + q
    """

    __slots__ = ("e", "num", "den", "_hash")

    def __init__(self, value=0, _raw=None):
        if _raw is not None:
            self.e, self.num, self.den = _raw
        else:
            if isinstance(value, Scalar):
                self.e, self.num, self.den = value.e, value.num, value.den
            else:
                fr = as_fraction(value)
                self.e = 0
                self.num = fmpq_poly([fmpq(fr.numerator, fr.denominator)]) if fr else _ZERO_POLY
                self.den = _ONE_POLY
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def _make(cls, e, num, den):
        """Normalise ``s**e * num/den`` (den nonzero)."""
        if num.is_zero():
            return cls(_raw=(0, _ZERO_POLY, _ONE_POLY))
        k = _low_order(num)
        if k:
            num = num.right_shift(k)
            e += k
        if den.degree() > 0:
            k = _low_order(den)
            if k:
                den = den.right_shift(k)
                e -= k
            if den.degree() > 0:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return cls(_raw=(e, num, den))

    @classmethod
    def spow(cls, k):
        """``s**k = q**(k/2)``."""
        return cls(_raw=(int(k), _ONE_POLY, _ONE_POLY))

    @classmethod
    def qpow(cls, k):
        """``q**k`` for an integer or half-integer ``k``."""
        k2 = Fraction(k) * 2
        if k2.denominator != 1:
            raise ValueError("only half-integer powers of q are representable")
        return cls.spow(int(k2))

    @classmethod
    def from_s_coeffs(cls, coeffs, e=0):
        """``s**e * sum(coeffs[i] * s**i)``."""
        return cls._make(e, fmpq_poly([fmpq(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                                       for c in coeffs]), _ONE_POLY)

    # -- predicates ----------------------------------------------------
    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        """True when the value is a Laurent polynomial in s."""
        return self.den.degree() == 0

    def is_rational(self):
        return self.e == 0 and self.num.degree() <= 0 and self.den.degree() == 0

    def to_fraction(self):
        if self.num.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return as_fraction(self.num[0])

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        e = min(self.e, other.e)
        a = self.num.left_shift(self.e - e) if self.e != e else self.num
        b = other.num.left_shift(other.e - e) if other.e != e else other.num
        if self.den.degree() == 0 and other.den.degree() == 0:
            return Scalar._make(e, a + b, _ONE_POLY)
        if self.den == other.den:
            return Scalar._make(e, a + b, self.den)
        return Scalar._make(e, a * other.den + b * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_raw=(self.e, -self.num, self.den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return Scalar(0)
        e = self.e + other.e
        if other.num.degree() == 0 and other.den.degree() == 0:
            return Scalar(_raw=(e, self.num * other.num[0], self.den))
        if self.num.degree() == 0 and self.den.degree() == 0:
            return Scalar(_raw=(e, other.num * self.num[0], other.den))
        if self.den.degree() == 0 and other.den.degree() == 0:
            return Scalar(_raw=(e, self.num * other.num, _ONE_POLY))
        return Scalar._make(e, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar._make(-self.e, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.num.degree() == 0 and self.den.degree() == 0:
            return Scalar(_raw=(self.e * k, fmpq_poly([self.num[0] ** k]), _ONE_POLY))
        result, base = Scalar(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        """q is real, so complex conjugation is the identity."""
        return self

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.e == other.e and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.e, tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    # -- specialisation ---------------------------------------------------
    def at_s(self, s):
        """Evaluate at a numeric value of ``s`` (Fraction gives exact result)."""
        if isinstance(s, Fraction):
            sv = fmpq(s.numerator, s.denominator)
            val = as_fraction(self.num(sv)) / as_fraction(self.den(sv))
            return val * s ** self.e
        return _horner(self.num.coeffs(), s) / _horner(self.den.coeffs(), s) * s ** self.e

    def at_q(self, q):
        """Evaluate at a numeric q (float/mpf); odd powers of s use sqrt(q)."""
        if isinstance(q, Fraction):
            return self.at_s(math.sqrt(q))
        return self.at_s(q ** 0.5)

    # -- printing --------------------------------------------------------
    def _laurent_terms(self, poly):
        out = []
        for k, c in enumerate(poly.coeffs()):
            if c != 0:
                out.append((as_fraction(c), self.e + k if poly is self.num else k))
        return out

    def __str__(self):
        if not self:
            return "0"
        num = _format_poly(self.num, self.e)
        if self.den.degree() == 0:
            return num
        den = _format_poly(self.den, 0)
        return f"({num})/({den})"

    def __repr__(self):
        return str(self)

    def needs_parens(self):
        """True if the printed form is a sum (for use inside products)."""
        if self.den.degree() != 0:
            return False
        return sum(1 for c in self.num.coeffs() if c != 0) > 1


def _horner(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        c = as_fraction(c)
        acc = acc * x + (c if isinstance(x, Fraction) else (x * 0 + c.numerator) / c.denominator)
    return acc


def _format_qpow(s_exp):
    """Render q**(s_exp/2)."""
    if s_exp == 0:
        return ""
    if s_exp % 2 == 0:
        k = s_exp // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^({s_exp}/2)"


def _format_poly(poly, e):
    parts = []
    for k, c in enumerate(poly.coeffs()):
        if c == 0:
            continue
        c = as_fraction(c)
        mon = _format_qpow(e + k)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mon:
            body = str(a)
        elif a == 1:
            body = mon
        else:
            body = f"{a}*{mon}"
        parts.append((sign, body))
    text = ""
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            text = body if sign == "+" else "-" + body
        else:
            text += f" {sign} {body}"
    return text


Q = Scalar.qpow(1)


# ---------------------------------------------------------------------------
# coefficient fields

class SymbolicField:
    """Exact arithmetic in Q(q^(1/2))."""

    name = "symbolic"
    exact = True

    def __init__(self):
        self.zero = Scalar(0)
        self.one = Scalar(1)
        self._cache = {}

    def spow(self, k):
        v = self._cache.get(k)
        if v is None:
            v = self._cache[k] = Scalar.spow(k)
        return v

    def qpow(self, k):
        return self.spow(int(Fraction(k) * 2))

    def convert(self, v):
        if isinstance(v, Scalar):
            return v
        return Scalar(v)

    def q(self):
        return self.qpow(1)

    def __eq__(self, other):
        return isinstance(other, SymbolicField)

    def __hash__(self):
        return hash("symbolic")

    def __repr__(self):
        return "SymbolicField()"


SYMBOLIC = SymbolicField()


class RationalField:
    """Exact rational arithmetic at ``q = r**D`` (D even).

    Powers ``q**(a/D)`` are exact rationals, so lattice points
    ``q**(2(m + beta))`` are exact whenever ``2*beta*D`` is an integer.
    """

    exact = True

    def __init__(self, r, D=2):
        r = Fraction(r)
        if D % 2 or D <= 0:
            raise ValueError("D must be a positive even integer")
        if not 0 < r < 1:
            raise ValueError("need 0 < r < 1")
        self.r, self.D = r, D
        self.zero, self.one = Fraction(0), Fraction(1)
        self.name = f"rational(r={r},D={D})"
        self._cache = {}

    @classmethod
    def for_beta(cls, r, beta):
        """Smallest field in which ``q**(2*beta)`` is rational."""
        beta = Fraction(beta)
        return cls(r, 2 * beta.denominator)

    @property
    def qval(self):
        return self.r ** self.D

    def spow(self, k):
        v = self._cache.get(k)
        if v is None:
            v = self._cache[k] = self.r ** (k * self.D // 2)
        return v

    def qpow(self, k):
        ex = Fraction(k) * self.D
        if ex.denominator != 1:
            raise ValueError(f"q^{k} is not rational in {self.name}")
        return self.r ** int(ex)

    def convert(self, v):
        if isinstance(v, Scalar):
            return v.at_s(self.r ** (self.D // 2))
        return Fraction(v)

    def q(self):
        return self.qval

    def __eq__(self, other):
        return isinstance(other, RationalField) and (self.r, self.D) == (other.r, other.D)

    def __hash__(self):
        return hash((self.r, self.D))

    def __repr__(self):
        return f"RationalField({self.r}, {self.D})"


class FloatField:
    """Floating point arithmetic at numeric q (float or mpmath number)."""

    exact = False

    def __init__(self, q):
        if not 0 < q < 1:
            raise ValueError("need 0 < q < 1")
        self.qval = q
        self.s = q ** 0.5 if isinstance(q, float) else q.sqrt() if hasattr(q, "sqrt") else q ** 0.5
        self.zero = q * 0
        self.one = self.zero + 1
        self.name = f"float(q={q})"

    def spow(self, k):
        return self.s ** k

    def qpow(self, k):
        return self.qval ** k

    def convert(self, v):
        if isinstance(v, Scalar):
            return v.at_s(self.s)
        if isinstance(v, Fraction):
            return self.one * v.numerator / v.denominator
        return self.one * v

    def q(self):
        return self.qval

    def __eq__(self, other):
        # a float field and an mpmath field at equal q are different fields
        return isinstance(other, FloatField) and type(self.qval) is type(other.qval) and self.qval == other.qval

    def __hash__(self):
        return hash(("float", type(self.qval).__name__, self.qval))

    def __repr__(self):
        return f"FloatField({self.qval})"


# ---------------------------------------------------------------------------
# q-Pochhammer symbols and q-binomials

def _is_symbolic(*vals):
    return any(isinstance(v, Scalar) for v in vals)


def qpoch(a, t, k, tol=0.0, report=False):
    """The q-Pochhammer symbol ``(a; t)_k``.

    ``k`` may be ``math.inf`` in numeric mode; the product is then cut once a
    factor differs from 1 by less than ``tol`` (and, with ``report=True``, the
    number of factors used is returned as well).
    """
    if k == math.inf:
        if _is_symbolic(a, t):
            raise ValueError("infinite q-Pochhammer symbol needs numeric arguments")
        if not abs(t) < 1:
            raise ValueError("infinite q-Pochhammer symbol needs |t| < 1")
        if not tol > 0:
            raise ValueError("tol must be positive for an infinite product")
        prod, term, j = 1.0 * (a * 0 + 1), a, 0
        while abs(term) >= tol or j == 0:
            prod *= 1 - term
            term *= t
            j += 1
            if j > 100000:
                raise ArithmeticError("q-Pochhammer product did not converge")
        return (prod, j) if report else prod
    if k < 0 or int(k) != k:
        raise ValueError("k must be a nonnegative integer or inf")
    prod = 1
    term = a
    for _ in range(int(k)):
        prod = (1 - term) * prod
        term = term * t
    if isinstance(prod, int) and _is_symbolic(a, t):
        prod = Scalar(prod)
    return (prod, int(k)) if report else prod


def qbinom(m, n, t):
    """The t-binomial ``(t;t)_m / ((t;t)_n (t;t)_{m-n})``.

    Computed by the t-Pascal rule so the result is visibly a polynomial.
    """
    if n < 0 or m < 0 or n > m:
        raise ValueError("need 0 <= n <= m")
    n = min(n, m - n)
    one = t * 0 + 1
    row = [one]
    tp = [one]
    for _ in range(m):
        tp.append(tp[-1] * t)
    for r in range(1, m + 1):
        new = [one]
        for j in range(1, min(r, n) + 1):
            left = row[j - 1]
            right = row[j] if j < len(row) else 0 * one
            new.append(left + tp[j] * right)
        row = new
    return row[n]


# ---------------------------------------------------------------------------
# truncated Laurent series in u = q^(2 lambda)

class LaurentU:
    """Truncated Laurent series ``sum c_m u**m`` with m in ``[lo, hi]``."""

    __slots__ = ("coeffs", "lo", "hi", "clipped")

    def __init__(self, coeffs=None, window=(-64, 64), clipped=False):
        self.lo, self.hi = window
        self.coeffs = {}
        self.clipped = clipped
        for m, c in (coeffs or {}).items():
            if not self.lo <= m <= self.hi:
                raise ValueError(f"exponent {m} outside window {window}")
            if c:
                self.coeffs[m] = c

    @property
    def window(self):
        return (self.lo, self.hi)

    @classmethod
    def monomial(cls, m, c=1, window=(-64, 64)):
        return cls({m: c}, window)

    def _check(self, other):
        if self.window != other.window:
            raise ValueError("LaurentU windows differ")

    def __add__(self, other):
        if not isinstance(other, LaurentU):
            other = LaurentU({0: other}, self.window)
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return LaurentU(out, self.window, self.clipped or other.clipped)

    __radd__ = __add__

    def scale(self, c):
        return LaurentU({m: v * c for m, v in self.coeffs.items()}, self.window, self.clipped)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentU):
            return self.scale(other)
        self._check(other)
        out, clipped = {}, self.clipped or other.clipped
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 + m2
                if self.lo <= m <= self.hi:
                    out[m] = out.get(m, 0) + c1 * c2
                else:
                    clipped = True
        return LaurentU(out, self.window, clipped)

    __rmul__ = __mul__

    def __call__(self, u):
        return sum((c * u ** m for m, c in self.coeffs.items()), 0 * u)

    def __getitem__(self, m):
        return self.coeffs.get(m, 0)

    def negative_support(self, tol=0.0):
        return sorted(m for m, c in self.coeffs.items() if m < 0 and abs(c) > tol)

    def __repr__(self):
        body = " + ".join(f"({c})*u^{m}" for m, c in sorted(self.coeffs.items()))
        return f"LaurentU[{self.lo},{self.hi}]({body or '0'})"
