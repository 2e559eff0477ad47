"""Basic hypergeometric series and the real powers of the Poisson kernel.

The kernel ``P = K1 K2`` is considered in the hyperboloid (x) cone kernel
algebra, where ``t = 1`` and ``tau = 0``.  There ``K1 K2 = q^2 K2 K1``, so
``P^lam = q^{lam(lam+1)} K2^lam K1^lam`` and both powers are expanded by
the q-binomial theorem in the quasi-commuting summands::

    K1 = a + c + b,   a = z_0 zeta_0*,  c = -z_n zeta_n*,  b = -K'
    K2 = B + C + A,   A = z_0* zeta_0,  C = -q^{-2n} z_n* zeta_n,  B = -K''

(``ab = q^2 ba`` etc.).  The central pieces ``A^{lam-m1} a^{lam-m2}`` are
then rewritten as

    q^{lam(lam+1)} A^{lam-m1} a^{lam-m2}
        = q^{m(2 lam-m+1)} A^{m-m1} xi_1^{lam-m} R_{lam-m}(x_1) a^{m-m2},

``m = max(m1, m2)``, ``R_s(x) = (-q^{-2s} x; q^2)_inf / (-x; q^2)_inf``.

For symbolic ``lam`` every coefficient is a Laurent polynomial in
``u = q^{2 lam}`` (class :class:`UPoly`) and ``xi_1^lam R_{lam-m}(x_1)`` is
carried by the tag ``("G", m)`` of the coefficient functions; a tag shift
by ``sigma`` in ``x_1`` and ``tau`` in ``xi_1`` means
``u^tau xi_1^lam R_{lam-m}(q^{2 sigma} x_1)``.
"""

import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .freealg.api import kernel_algebra, xi, z, zeta, zetas, zs
from .freealg.element import Element, _add_into
from .freealg.poly import MPoly
from .scalar import SYMBOLIC, FloatField, Scalar, qbinom, qpoch

__all__ = [
    "UField", "UPoly", "PhiSpec", "PhiValue", "phi_eval", "qbinomial_expand",
    "check_qbinomial", "poisson_power_exact", "poisson_power_series",
    "PoissonPowerSeries", "spherical_zonal", "pfaff_sides", "R_ratio",
    "f000000_closed_form", "const_derived", "const_literal", "check_central_rewrite",
    "summands", "series_residual", "intertwining_residual", "semigroup_residual",
]


# ---------------------------------------------------------------------------
# Laurent polynomials in u = q^(2 lam)

class UPoly:
    """Finite Laurent polynomial ``sum c_e u^e`` over a base field."""

    __slots__ = ("c", "F")

    def __init__(self, coeffs, F):
        self.F = F
        self.c = {e: v for e, v in coeffs.items() if v}

    def _lift(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly({0: self.F.base.convert(other)}, self.F)

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out[e] + v if e in out else v
        return UPoly(out, self.F)

    __radd__ = __add__

    def __neg__(self):
        return UPoly({e: -v for e, v in self.c.items()}, self.F)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            v = self.F.base.convert(other)
            return UPoly({e: c * v for e, c in self.c.items()}, self.F)
        out = {}
        for e1, c1 in self.c.items():
            for e2, c2 in other.c.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return UPoly(out, self.F)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if len(other.c) != 1:
            raise ZeroDivisionError("only division by a monomial in u is supported")
        ((e0, c0),) = other.c.items()
        inv = self.F.base.one / c0
        return UPoly({e - e0: c * inv for e, c in self.c.items()}, self.F)

    def __pow__(self, k):
        out = self.F.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return False
        return not (self - other).c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items(), key=lambda kv: kv[0])))

    def conjugate(self):
        return self

    def at(self, uval):
        """Value at a number (or base element) ``u``."""
        total = self.F.base.zero
        for e, v in self.c.items():
            total = total + v * uval ** e
        return total

    def at_lambda(self, lam):
        """Exact value at ``u = q^{2 lam}`` for integer (or half-integer) ``lam``."""
        sp = self.F.base.spow
        total = self.F.base.zero
        for e, v in self.c.items():
            total = total + v * sp(int(4 * lam * e))
        return total

    def exponents(self):
        return sorted(self.c)

    def __str__(self):
        if not self.c:
            return "0"
        return " + ".join(f"({v})*u^{e}" for e, v in sorted(self.c.items()))

    __repr__ = __str__


class UField:
    """Coefficient field protocol for :class:`UPoly` (used by the engine)."""

    def __init__(self, base=None):
        self.base = base or SYMBOLIC
        self.exact = self.base.exact
        self.name = f"u[{self.base.name}]"
        self.zero = UPoly({}, self)
        self.one = UPoly({0: self.base.one}, self)

    def spow(self, k):
        return UPoly({0: self.base.spow(k)}, self)

    def qpow(self, k):
        return UPoly({0: self.base.qpow(k)}, self)

    def convert(self, v):
        if isinstance(v, UPoly):
            return v
        return UPoly({0: self.base.convert(v)}, self)

    def u(self, e=1, c=None):
        return UPoly({e: self.base.one if c is None else c}, self)

    def q(self):
        return self.qpow(1)

    def __eq__(self, other):
        return isinstance(other, UField) and self.base == other.base

    def __hash__(self):
        return hash(("u", self.base))

    def __repr__(self):
        return f"UField({self.base!r})"


# ---------------------------------------------------------------------------
# basic hypergeometric series

@dataclass
class PhiSpec:
    """``_{r+1}Phi_{r+j}(num; den; base, x)``.

    ``terminating=True`` sums exactly until a numerator Pochhammer vanishes;
    with inexact parameters the vanishing is not exact, so ``n_terms`` can
    fix the number of terms instead.  Otherwise the sum is numeric and stops
    once the terms drop below ``tol`` relative to the partial sum.
    """

    num: tuple
    den: tuple
    base: object
    x: object
    terminating: bool = False
    max_terms: int = 2000
    tol: float = 1e-17
    n_terms: int = None


PhiValue = namedtuple("PhiValue", "value terms tail")


def phi_eval(spec):
    """Sum the series; the m-th term carries ``((-1)^m base^{m(m-1)/2})^j``
    with ``j = len(den) - len(num) + 1``.  Returns :class:`PhiValue`."""
    num, den, p, x = tuple(spec.num), tuple(spec.den), spec.base, spec.x
    j = len(den) - len(num) + 1
    if j < 0:
        raise ValueError("need at least r+1 numerator and r denominator parameters")
    one = p * 0 + 1
    term = one
    total = term
    pm = one  # p^m
    small = 0
    if spec.n_terms is not None:
        if spec.n_terms > spec.max_terms:
            raise ValueError("n_terms exceeds max_terms")
    for m in range(spec.max_terms):
        if spec.n_terms is not None and m + 1 >= spec.n_terms:
            return PhiValue(total, spec.n_terms, 0)
        top = one
        for a in num:
            top = top * (1 - a * pm)
        if not top:
            return PhiValue(total, m + 1, 0)
        bot = (1 - p * pm)
        for b in den:
            bot = bot * (1 - b * pm)
        if not bot:
            raise ZeroDivisionError(f"denominator Pochhammer vanishes at m={m + 1}")
        term = term * top / bot * x * ((-pm) ** j if j else one)
        total = total + term
        pm = pm * p
        if not spec.terminating:
            if abs(term) <= spec.tol * abs(total):
                small += 1
                if small >= 3:
                    return PhiValue(total, m + 2, abs(term))
            else:
                small = 0
    if spec.terminating:
        raise ValueError("series did not terminate; no numerator parameter base^-l")
    raise ArithmeticError(f"no convergence within {spec.max_terms} terms (partial sum {total})")


def qbinomial_expand(m, field=None):
    """``[(j, (q^2;q^2)_m / ((q^2;q^2)_j (q^2;q^2)_{m-j}))]`` for ``j = 0..m``."""
    f = field or SYMBOLIC
    q2 = f.spow(4)
    return [(j, qbinom(m, j, q2)) for j in range(m + 1)]


def check_qbinomial(m, field=None):
    """``(a + b)^m - sum_j coeff_j b^j a^{m-j}`` for ``a = z_0 zeta_0*``,
    ``b = -z_1 zeta_1*`` (rank one, ``ab = q^2 ba``)."""
    f = field or SYMBOLIC
    KA = kernel_algebra(1, "free", "free", f)
    a = z(KA, 0) * zetas(KA, 0)
    b = -(z(KA, 1) * zetas(KA, 1))
    if a * b != (b * a).scale(f.spow(4)):
        raise AssertionError("generators do not q^2-commute")
    rhs = Element(KA)
    for j, c in qbinomial_expand(m, f):
        rhs = rhs + (b ** j * a ** (m - j)).scale(c)
    return (a + b) ** m - rhs


# ---------------------------------------------------------------------------
# the infinite-product ratio

def R_ratio(s, x, q, tol=1e-30):
    """``R_s(x) = (-q^{-2s} x; q^2)_inf / (-x; q^2)_inf`` (numeric).

    For integer ``s >= 0`` this is the polynomial ``prod_{k=1}^s (1 + q^{-2k} x)``.
    """
    if isinstance(s, int) and s >= 0:
        out = 1 + 0 * q
        for k in range(1, s + 1):
            out = out * (1 + q ** (-2 * k) * x)
        return out
    q2 = q * q
    return qpoch(-q ** (-2 * s) * x, q2, math.inf, tol) / qpoch(-x, q2, math.inf, tol)


def _R_poly(nv, field, s, idx, sigma):
    """``R_s(q^{2 sigma} x_idx)`` as a polynomial (integer ``s >= 0``)."""
    out = MPoly.const(nv, field)
    for k in range(1, s + 1):
        out = out * MPoly.const(nv, field) + out * MPoly.var(nv, field, idx).scale(
            field.spow(4 * (sigma - k)))
    return out


# ---------------------------------------------------------------------------
# the expansion coefficients

def _poch_u(F, qexp, uexp, step, k):
    """``(q^qexp u^uexp ; q^step)_k`` as a UPoly."""
    out = F.one
    for j in range(k):
        out = out * (F.one - F.u(uexp, F.base.spow(2 * (qexp + j * step))))
    return out


def _poch_q(f, qexp, step, k):
    out = f.one
    for j in range(k):
        out = out * (f.one - f.spow(2 * (qexp + j * step)))
    return out


def _c1(F, k, i):
    """Coefficient of ``a^{lam-i-k} c^i b^k`` in ``K1^lam``."""
    f = F.base
    num = _poch_u(F, 0, 1, -2, k) * _poch_u(F, -2 * k, 1, -2, i)
    den = _poch_q(f, 2, 2, k) * _poch_q(f, 2, 2, i)
    return num * (f.spow(4 * (i + k) ** 2) / den) * F.u(-(i + k))


def _c2(F, k, i):
    """Coefficient of ``B^k C^i A^{lam-i-k}`` in ``K2^lam``."""
    f = F.base
    num = _poch_u(F, 0, -1, 2, k) * _poch_u(F, 2 * k, -1, 2, i)
    den = _poch_q(f, -2, -2, k) * _poch_q(f, -2, -2, i)
    return num * (f.spow(4 * k * i) / den)


def const_derived(F, i1, i2, l1, l2):
    """Coefficient of the displayed product in f_{l1 l2}, divided by
    ``q^{lam(lam+1)}``, as obtained from the two q-binomial expansions."""
    return _c2(F, l1, i1) * _c1(F, l2, i2) * (-1) ** l2


def const_literal(F, i1, i2, l1, l2):
    """An alternative reading of the constant with different exponents and
    parameters.  It does not reproduce the integer powers; kept as a negative
    control."""
    f = F.base
    q2 = lambda e: f.spow(4 * e)  # noqa: E731  (q^(2e))
    num = (_poch_u(F, 0, -1, 2, l1) * _poch_u(F, 0, -1, 2, l2)
           * _poch_u(F, 2 * l1, -1, 2, i1) * _poch_u(F, -2 * l1, -1, 2, i2))
    den = _poch_q(f, 2, 2, l1) * _poch_q(f, 2, 2, l2) * _poch_q(f, 2, 2, i1) * _poch_q(f, 2, 2, i2)
    e2 = (l1 * (l1 + 1) - l2 * (l2 + 1) + i1 * (i1 + 1) - i2 * (i2 + 1)
          + 2 * i1 * l1 + 2 * i2 * l2 + 2 * (i2 + l2) ** 2)
    sign = (-1) ** (l1 + l2 + i1 + i2)
    return num * (f.spow(2 * e2) * sign / den)


# ---------------------------------------------------------------------------
# kernels in the hyperboloid (x) cone algebra

def summands(KA):
    """``{name: element}`` for the quasi-commuting summands a, b, c, A, B, C."""
    f = KA.field
    n = KA.left.n
    Kp = Element(KA)
    Kpp = Element(KA)
    for j in range(1, n):
        Kp = Kp + z(KA, j) * zetas(KA, j)
        Kpp = Kpp + (zs(KA, j) * zeta(KA, j)).scale(f.spow(-4 * j))
    return {
        "a": z(KA, 0) * zetas(KA, 0), "b": -Kp, "c": -(z(KA, n) * zetas(KA, n)),
        "A": zs(KA, 0) * zeta(KA, 0), "B": -Kpp,
        "C": -(zs(KA, n) * zeta(KA, n)).scale(f.spow(-4 * n)),
        "Kp": Kp, "Kpp": Kpp,
    }


@lru_cache(maxsize=None)
def _exact_P(n, field):
    KA = kernel_algebra(n, "hyperboloid", "cone", field)
    s = summands(KA)
    K1 = s["a"] + s["b"] + s["c"]
    K2 = s["A"] + s["B"] + s["C"]
    return K1 * K2


def poisson_power_exact(lam, n, field=None):
    """``P^lam`` for integer ``lam >= 0`` by repeated multiplication in the
    hyperboloid (x) cone kernel algebra."""
    if not isinstance(lam, int) or lam < 0:
        raise ValueError("lam must be a nonnegative integer")
    return _exact_P(n, field or SYMBOLIC) ** lam


class _Powers:
    def __init__(self, e):
        self.p = [Element.scalar(e.alg), e]

    def __getitem__(self, k):
        while len(self.p) <= k:
            self.p.append(self.p[-1] * self.p[1])
        return self.p[k]


class PoissonPowerSeries:
    """``P^lam = sum_{l1,l2} (-K'')^{l1} f_{l1 l2} (K')^{l2}``, truncated at
    ``l1, l2 <= L`` and ``i1, i2 <= I``, with symbolic ``u = q^{2 lam}``.

    ``constant="literal"`` uses :func:`const_literal` instead of the derived
    constant (for comparison only).  ``f[(l1, l2)]`` is an element of the hyperboloid (x) cone algebra over
    :class:`UField`; its coefficient functions carry the ``("G", m)`` tags.
    """

    def __init__(self, n, caps=(2, 2), field=None, constant="derived"):
        L, I = caps
        const = {"derived": const_derived, "literal": const_literal}[constant]
        if L < 0 or I < 0:
            raise ValueError("caps must be nonnegative")
        if n == 1:
            L = 0  # K' = K'' = 0 in rank one
        self.n, self.caps = n, (L, I)
        self.base = field or SYMBOLIC
        self.F = UField(self.base)
        self.KA = kernel_algebra(n, "hyperboloid", "cone", self.F)
        KA, F = self.KA, self.F
        s = self.s = summands(KA)
        Ap, ap, Cp, cp = _Powers(s["A"]), _Powers(s["a"]), _Powers(s["C"]), _Powers(s["c"])
        nv = KA.nvars
        self.ix1, self.ixi1 = 1, KA.nL + 1
        self.f = {}
        for l1 in range(L + 1):
            for l2 in range(L + 1):
                acc = Element(KA)
                for i1 in range(I + 1):
                    for i2 in range(I + 1):
                        m1, m2 = l1 + i1, l2 + i2
                        m = max(m1, m2)
                        coef = const(F, i1, i2, l1, l2) * F.u(m, self.base.spow(2 * m * (1 - m)))
                        ex = [0] * nv
                        ex[self.ixi1] = -m
                        mid = MPoly.monomial(nv, F, ex, coef, (("G", m), (0,) * nv))
                        acc = acc + Cp[i1] * Ap[m - m1] * Element.middle(KA, mid) * ap[m - m2] * cp[i2]
                self.f[(l1, l2)] = acc
        self._kernel = None

    def kernel(self):
        """The truncated series assembled as one element."""
        if self._kernel is None:
            KA, s = self.KA, self.s
            mK, Kp = _Powers(-s["Kpp"]), _Powers(s["Kp"])
            out = Element(KA)
            for (l1, l2), fl in self.f.items():
                out = out + mK[l1] * fl * Kp[l2]
            self._kernel = out
        return self._kernel

    # -- integer specialisation ---------------------------------------------------------
    def specialize(self, lam, element=None):
        """Exact value at integer ``lam >= 0`` as an element of the
        hyperboloid (x) cone algebra over the base field."""
        if not isinstance(lam, int) or lam < 0:
            raise ValueError("lam must be a nonnegative integer")
        e = self.kernel() if element is None else element
        KB = kernel_algebra(self.n, "hyperboloid", "cone", self.base)
        out = {}
        for key, mid in e.terms.items():
            _add_into(out, key, self._spec_mid(mid, lam, KB.nvars))
        return Element(KB, out)

    def _spec_mid(self, mid, lam, nv):
        f = self.base
        out = MPoly(nv, f)
        for (ex, tag), c in mid.terms.items():
            cv = c.at_lambda(lam)
            if not cv:
                continue
            if tag is None:
                out = out + MPoly.monomial(nv, f, ex, cv)
                continue
            (kind, m), sh = tag
            if kind != "G":
                raise ValueError(f"unknown tag {tag!r}")
            if lam < m:
                raise ArithmeticError(f"nonzero coefficient on G_{m} at lam={lam}")
            ex = list(ex)
            ex[self.ixi1] += lam
            cv = cv * f.spow(4 * lam * sh[self.ixi1])
            out = out + MPoly.monomial(nv, f, ex, cv) * _R_poly(nv, f, lam - m, self.ix1, sh[self.ix1])
        return out

    # -- numeric evaluation ------------------------------------------------------------------
    def eval_middle(self, mid, lam, values, q=None):
        """``mid / xi_1^lam`` at numeric ``values`` (one per variable)."""
        q = q if q is not None else self.base.qval
        fl = FloatField(q) if not isinstance(self.base, FloatField) else self.base
        u = q ** (2 * lam)
        total = 0 * q
        for (ex, tag), c in mid.terms.items():
            v = sum((fl.convert(cc) * u ** e for e, cc in c.c.items()), 0 * q)
            for xv, e in zip(values, ex):
                if e:
                    v = v * xv ** e
            if tag is not None:
                (kind, m), sh = tag
                v = v * u ** sh[self.ixi1] * R_ratio(lam - m, values[self.ix1] * q ** (2 * sh[self.ix1]), q)
            total = total + v
        return total

    def point(self, x1, xn=None, y=1.0):
        """Variable vector with ``x_0 = 1``, ``xi_1 = 1``, ``xi_n = y``; other
        variables are set to the values of x_1/x_n and xi_1/xi_n."""
        n = self.n
        xn = x1 if xn is None else xn
        xs = [1.0] + [x1] + [xn] * (n - 1)
        if n == 1:
            xis = [0.0, 1.0]
        else:
            xis = [0.0, 1.0] + [y] * (n - 1)
        return xs + xis

    def slot(self, l1, l2, j0=0, jn=0, k0=0, kn=0):
        """``f_{l1 l2 j0 jn k0 kn}`` as a coefficient function (times xi_1^lam),
        relative to ``A^{j0} C^{jn} [.] a^{k0} (z_n zeta_n*)^{kn}``."""
        if j0 * k0 or jn * kn:
            raise ValueError("slot indices need j0 k0 = jn kn = 0")
        if (l1, l2) not in self.f:
            raise ValueError("slot outside the truncation caps")
        KA, F, s = self.KA, self.F, self.s
        nv = KA.nvars
        ph = Element.middle(KA, MPoly.tagged(nv, F, ("ref",)))
        ref = _Powers(s["A"])[j0] * _Powers(s["C"])[jn] * ph * _Powers(s["a"])[k0] * _Powers(-s["c"])[kn]
        if len(ref.terms) != 1:
            raise ValueError("reference monomial is not a single term")
        ((key, rmid),) = ref.terms.items()
        if len(rmid.terms) != 1:
            raise ValueError("reference coefficient is not a monomial")
        ((rex, (_, rsh)), rc) = next(iter(rmid.terms.items()))
        g = self.f[(l1, l2)].terms.get(key)
        if g is None:
            return MPoly(nv, F)
        inv = MPoly.monomial(nv, F, [-e for e in rex], F.one / rc)
        return (g * inv).shifted(tuple(-v for v in rsh))


def poisson_power_series(lam, n, caps=(2, 2), field=None):
    """Build the truncated series; for integer ``lam`` the specialised
    element is returned, otherwise the :class:`PoissonPowerSeries` (whose
    numeric evaluation takes ``lam`` as an argument)."""
    S = PoissonPowerSeries(n, caps, field)
    if lam == "u":
        return S
    if isinstance(lam, int):
        return S.specialize(lam)
    S.lam = lam
    return S


# ---------------------------------------------------------------------------
# closed forms

def f000000_closed_form(lam, x1, xn, y, n, q, exponent_shift=None):
    """``R_lam(x_1) 2Phi2(q^-2lam, q^-2lam; q^2, -q^-2lam x_1; q^2, -q^{2(lam+e)} x_n y)``
    with ``e = 2 - n`` (default)."""
    e = 2 - n if exponent_shift is None else exponent_shift
    ui = q ** (-2 * lam)
    spec = PhiSpec((ui, ui), (q * q, -ui * x1), q * q, -q ** (2 * (lam + e)) * xn * y)
    return R_ratio(lam, x1, q) * phi_eval(spec).value


def spherical_zonal(l, x, q=None):
    """The terminating ``2Phi1(q^{2(l+1)}, q^-2l; q^2; q^2, -q x)``; exact when
    ``q`` and ``x`` are exact (``q`` defaults to the formal variable)."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    if q is None:
        q = Scalar.qpow(1)
        x = x if isinstance(x, Scalar) else Scalar(x)
    elif isinstance(q, (int, Fraction)):
        q, x = Fraction(q), Fraction(x)
    exact = isinstance(q, (Fraction, Scalar))
    spec = PhiSpec((q ** (2 * (l + 1)), q ** (-2 * l)), (q * q,), q * q, -q * x, terminating=True,
                   n_terms=None if exact else l + 1)
    return phi_eval(spec).value


def pfaff_sides(l, x, q):
    """``(lhs, rhs)``: the 2Phi2 form (rank one, ``lam = -l-1``, ``x_1 = q x``)
    and the terminating 2Phi1 form of the zonal spherical function."""
    a = q ** (2 * (l + 1))
    x1 = q * x
    spec = PhiSpec((a, a), (q * q, -a * x1), q * q, -q ** (-2 * l) * x1)
    lhs = R_ratio(-l - 1, x1, q) * phi_eval(spec).value
    return lhs, spherical_zonal(l, x, q)


# ---------------------------------------------------------------------------
# the central rewriting step

def check_central_rewrite(lam, m1, m2, n, field=None):
    """Residual of the rewriting of ``q^{lam(lam+1)} A^{lam-m1} a^{lam-m2}``
    (integer ``lam``, ``m1, m2 <= lam``)."""
    f = field or SYMBOLIC
    KA = kernel_algebra(n, "hyperboloid", "cone", f)
    s = summands(KA)
    m = max(m1, m2)
    lhs = (s["A"] ** (lam - m1) * s["a"] ** (lam - m2)).scale(f.spow(2 * lam * (lam + 1)))
    nv = KA.nvars
    mid = _R_poly(nv, f, lam - m, 1, 0) * MPoly.var(nv, f, KA.nL + 1, lam - m)
    rhs = (s["A"] ** (m - m1) * Element.middle(KA, mid) * s["a"] ** (m - m2)).scale(
        f.spow(2 * m * (2 * lam - m + 1)))
    return lhs - rhs


# ---------------------------------------------------------------------------
# numeric invariants of the truncated series

def _low_keys(e, max_degree):
    return [(k, m) for k, m in e.terms.items() if e.alg.degree(k) <= max_degree]


def series_residual(S, elem, lam, points, max_degree=4, q=None):
    """Largest ``|coefficient / xi_1^lam|`` of ``elem`` over keys of degree
    ``<= max_degree`` at the given variable vectors."""
    worst = 0
    for _, mid in _low_keys(elem, max_degree):
        for pt in points:
            worst = max(worst, abs(S.eval_middle(mid, lam, pt, q)))
    return worst


def intertwining_residual(S, lam, points, max_degree=4, generators=None):
    """``max |(a (x) 1 - 1 (x) S^-1(a)) P^lam|`` over generators, on keys of
    degree ``<= max_degree`` (interior of the truncation), at ``points``."""
    from .uqmod import HopfWord, act, all_generators, antipode
    K = S.kernel()
    out = {}
    for g in generators or all_generators(S.n):
        r = act(g, K, "left") - act(antipode(HopfWord.gen(g, field=K.alg.field), inverse=True), K, "right")
        out[g] = series_residual(S, r, lam, points, max_degree)
    return out


def semigroup_residual(S, lam, m, points, max_degree=2):
    """Compare ``P^lam P^m`` with ``P^{lam+m}`` (both from the series ``S``)
    on keys of degree ``<= max_degree``; returns the largest difference.
    The points must have ``xi_1 = 1`` (as produced by ``S.point``)."""
    K = S.kernel()
    prod = K * poisson_power_exact(m, S.n, S.F)
    worst = 0
    keys = {k for k, _ in _low_keys(prod, max_degree)} | {k for k, _ in _low_keys(K, max_degree)}
    zero = MPoly(S.KA.nvars, S.F)
    for k in keys:
        a, b = prod.terms.get(k, zero), K.terms.get(k, zero)
        for pt in points:
            va = S.eval_middle(a, lam, pt)
            vb = S.eval_middle(b, lam + m, pt)
            worst = max(worst, abs(va - vb))
    return worst
