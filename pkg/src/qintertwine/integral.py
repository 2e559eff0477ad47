"""Basic functions on the lattice, the invariant integral and the
principal-series representations.

Lattice points are ``x_k = q^{2(m_k + beta)}`` with integers
``m_1 < m_2 < ... < m_n`` (so ``x_1 > ... > x_n``); a point is stored as the
tuple ``m``.  A basic function is an element of the cone or hyperboloid
algebra whose coefficient functions are finitely supported lattice
functions (:class:`LatticeFn`); the normal-ordering engine only needs
dilations, pointwise products and the q-difference operators, which act
on the support directly.

The invariant integral is ``(1-q^2)^n sum_m f_00(x(m)) x_1 ... x_n``.

The representation ``pi_eps^{(beta, phi)}`` acts on finitely supported
functions of ``j = (j_1, ..., j_n)``, ``j_1`` any integer and
``j_2, ..., j_n >= 1``, with ``x_k = q^{2(beta + j_1 + ... + j_k)}``::

    pi(z_n) psi(j) = e^{-i phi} q^{beta + m_n} psi(j)
    pi(z_k) psi(j) = e^{-i phi} q^{beta + m_k} sqrt(1 - q^{2 j_{k+1}}) psi(j + e_{k+1})   (0 < k < n)
    pi(z_0) psi(j) = sqrt(eps + q^{2(j_1 + beta)}) psi(j + e_1)
    pi(f)   psi(j) = f(x(j)) psi(j)

(``m_k = j_1 + ... + j_k``).  The square roots make ``z_k z_k*`` act as
``x_k - x_{k+1}`` and ``z_0 z_0*`` as ``eps + x_1``; coefficients are kept
exact in :class:`SqrtNum`.
"""

import math
from fractions import Fraction
from itertools import combinations

from .freealg.api import algebra
from .freealg.element import Element
from .freealg.poly import MPoly
from .scalar import RationalField
from .uqmod import HopfGenerator, HopfWord, act, antipode

__all__ = [
    "Lattice", "LatticeFn", "basic_function", "random_basic_function", "integrate",
    "integration_by_parts_check", "random_partner", "inner_product", "SqrtNum", "PiRep", "pi_apply",
    "check_pi_relations", "trace_formula_check",
]


# ---------------------------------------------------------------------------
# the lattice

class Lattice:
    """The truncated lattice: ``m_k`` in ``[-M, M]``, strictly increasing."""

    def __init__(self, n, beta=Fraction(0), M=8, r=Fraction(1, 2), field=None):
        self.n, self.M = n, M
        self.beta = Fraction(beta)
        if not 0 <= self.beta < 1:
            raise ValueError("beta must lie in [0, 1)")
        self.field = field or RationalField.for_beta(r, self.beta)
        self.q2 = self.field.spow(4)

    def x(self, m):
        """The coordinates ``(x_1, ..., x_n)`` of the point ``m``."""
        return tuple(self.field.qpow(2 * (mk + self.beta)) for mk in m)

    def contains(self, m):
        return all(a < b for a, b in zip(m, m[1:]))

    def points(self, margin=0):
        lo, hi = -self.M + margin, self.M - margin
        return [m for m in combinations(range(lo, hi + 1), self.n)]

    def is_interior(self, m, margin):
        return self.contains(m) and all(-self.M + margin <= mk <= self.M - margin for mk in m)


class LatticeFn:
    """Finitely supported function of the lattice point ``m`` (coefficient
    protocol of the engine: dilations, products, q-differences)."""

    __slots__ = ("lat", "vals", "x0", "nv")

    def __init__(self, lat, vals=None, x0=1):
        self.lat = lat
        self.x0 = x0
        self.nv = lat.n + 1
        self.vals = {m: v for m, v in (vals or {}).items() if v}

    def _new(self, vals):
        return LatticeFn(self.lat, vals, self.x0)

    def __bool__(self):
        return bool(self.vals)

    def __add__(self, other):
        if isinstance(other, MPoly):
            if other:
                raise ValueError("cannot add a polynomial to a finitely supported function")
            return self
        out = dict(self.vals)
        for m, v in other.vals.items():
            out[m] = out.get(m, 0) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -v for m, v in self.vals.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({m: v * c for m, v in self.vals.items()})

    def conj(self):
        return self

    def degree(self):
        return 0

    def shifted(self, vec):
        """``f(q^{2 vec_1} x_1, ...)``; entry 0 of ``vec`` (for x_0) is ignored."""
        s = tuple(vec[1:])
        if not any(s):
            return self
        return self._new({tuple(a - b for a, b in zip(m, s)): v for m, v in self.vals.items()})

    def _poly_at(self, P, m):
        return P.evaluate((self.x0,) + self.lat.x(m))

    def times_poly(self, other):
        if isinstance(other, LatticeFn):
            return self._new({m: v * other.vals[m] for m, v in self.vals.items() if m in other.vals})
        if other.is_const():
            return self.scale(other.const_value())
        return self._new({m: v * self._poly_at(other, m) for m, v in self.vals.items()})

    __mul__ = times_poly

    def B(self, i):
        """``(f(.. q^2 x_i ..) - f(x)) / ((q^2 - 1) x_i)``."""
        if i == 0:
            return self._new({})
        e = [0] * self.lat.n
        e[i - 1] = 1
        e = tuple(e)
        pts = set(self.vals) | {tuple(a - b for a, b in zip(m, e)) for m in self.vals}
        q2 = self.lat.q2
        out = {}
        for m in pts:
            up = self.vals.get(tuple(a + b for a, b in zip(m, e)), 0)
            d = up - self.vals.get(m, 0)
            if d:
                out[m] = d / ((q2 - 1) * self.lat.x(m)[i - 1])
        return self._new(out)

    def support(self):
        return set(self.vals)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return not self.vals and not other
        return not (self - other).vals

    def __repr__(self):
        return f"LatticeFn({self.vals})"


def basic_function(lat, quotient, coeffs):
    """``sum (z*)^I f_IJ z^J`` from ``{(I, J): {m: value}}`` (I, J tuples of
    length n+1 with I.J = 0)."""
    alg = algebra(lat.n, quotient, lat.field)
    x0 = 1 if quotient == "hyperboloid" else 0
    terms = {}
    for (I, J), vals in coeffs.items():
        if any(a and b for a, b in zip(I, J)):
            raise ValueError("need I . J = 0")
        fn = LatticeFn(lat, vals, x0)
        if fn:
            terms[(tuple(I), tuple(J))] = fn
    return Element(alg, terms)


def random_partner(rng, lat, g, margin=3):
    """A basic function ``f2`` for which ``int g f2`` can be nonzero: the
    involution of ``g`` with fresh random lattice values."""
    alg = g.alg
    pts = lat.points(margin)
    x0 = 1 if alg.quotient == "hyperboloid" else 0
    terms = {}
    for key in g.terms:
        vals = {m: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for m in rng.sample(pts, min(3, len(pts)))}
        terms[key] = LatticeFn(lat, vals, x0)
    return Element(alg, terms).star()


def random_basic_function(rng, lat, quotient, margin=3, n_keys=3, n_points=3, max_deg=1):
    """Random basic function with support at interior lattice points."""
    n = lat.n
    pts = lat.points(margin)
    coeffs = {}
    for _ in range(n_keys):
        I = [0] * (n + 1)
        J = [0] * (n + 1)
        for k in range(n + 1):
            d = rng.randint(0, max_deg)
            if d:
                (I if rng.random() < 0.5 else J)[k] = d
        vals = coeffs.setdefault((tuple(I), tuple(J)), {})
        for m in rng.sample(pts, min(n_points, len(pts))):
            vals[m] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return basic_function(lat, quotient, coeffs)


# ---------------------------------------------------------------------------
# the invariant integral

def integrate(f, lat, strict=True):
    """``(1-q^2)^n sum f_00(x) x_1...x_n`` over lattice points.

    With ``strict`` a value of ``f_00`` at a non-lattice point (``m`` not
    strictly increasing) or outside the truncation window raises.
    """
    mid = f.terms.get(f.alg.unit_key)
    if mid is None:
        return lat.field.zero
    total = lat.field.zero
    for m, v in mid.vals.items():
        if not lat.contains(m):
            if strict:
                raise ValueError(f"f_00 is nonzero off the lattice at {m}")
            continue
        if strict and not lat.is_interior(m, 0):
            raise ValueError(f"support point {m} outside the truncation window")
        w = v
        for xk in lat.x(m):
            w = w * xk
        total = total + w
    return total * (1 - lat.q2) ** lat.n


def integration_by_parts_check(a, f1, f2, lat):
    """``int (a f1) f2 - int f1 (S(a) f2)`` (zero for invariant integrals)."""
    if isinstance(a, HopfGenerator):
        a = HopfWord.gen(a, field=lat.field)
    lhs = integrate(act(a, f1) * f2, lat)
    rhs = integrate(f1 * act(antipode(a), f2), lat)
    return lhs - rhs


def inner_product(f1, f2, lat):
    """``(f1, f2) = int f2* f1``."""
    return integrate(f2.star() * f1, lat)


# ---------------------------------------------------------------------------
# exact numbers with square roots and a formal phase

def _is_square(fr):
    fr = Fraction(fr)
    if fr < 0:
        return False
    a, b = fr.numerator, fr.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    return ra * ra == a and rb * rb == b


def _sqrt_exact(fr):
    fr = Fraction(fr)
    return Fraction(math.isqrt(fr.numerator), math.isqrt(fr.denominator))


class SqrtNum:
    """``sum c * sqrt(R) * w^k`` with rational ``c``, ``R > 0`` and the phase
    ``w = e^{-i phi}``; radicands are grouped by square classes, so the zero
    test is exact."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        self.t = {}
        for (k, R), c in (terms or {}).items():
            self._put(k, Fraction(R), Fraction(c))

    @classmethod
    def const(cls, c):
        return cls({(0, 1): c})

    @classmethod
    def sqrt(cls, R, phase=0):
        R = Fraction(R)
        if R < 0:
            raise ValueError("negative radicand")
        if not R:
            return cls()
        return cls({(phase, R): 1})

    def _put(self, k, R, c):
        if not c:
            return
        if _is_square(R):
            c, R = c * _sqrt_exact(R), Fraction(1)
        else:
            for (k2, R2) in self.t:
                if k2 == k and _is_square(R * R2):
                    c, R = c * _sqrt_exact(R * R2) / R2, R2
                    break
        v = self.t.get((k, R), 0) + c
        if v:
            self.t[(k, R)] = v
        else:
            self.t.pop((k, R), None)

    def __bool__(self):
        return bool(self.t)

    def __add__(self, other):
        other = other if isinstance(other, SqrtNum) else SqrtNum.const(other)
        out = SqrtNum()
        out.t = dict(self.t)
        for (k, R), c in other.t.items():
            out._put(k, R, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = SqrtNum()
        out.t = {key: -c for key, c in self.t.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SqrtNum):
            other = SqrtNum.const(other)
        out = SqrtNum()
        for (k1, R1), c1 in self.t.items():
            for (k2, R2), c2 in other.t.items():
                out._put(k1 + k2, R1 * R2, c1 * c2)
        return out

    __rmul__ = __mul__

    def conj(self):
        out = SqrtNum()
        for (k, R), c in self.t.items():
            out._put(-k, R, c)
        return out

    def __eq__(self, other):
        return not (self - other)

    def phase_free(self):
        """The value if no phase is present, as a float."""
        if any(k for k, _ in self.t):
            raise ValueError("value depends on the phase")
        return sum(float(c) * math.sqrt(R) for (_, R), c in self.t.items())

    def __repr__(self):
        return " + ".join(f"{c}*sqrt({R})*w^{k}" for (k, R), c in self.t.items()) or "0"


# ---------------------------------------------------------------------------
# the representations

class PiRep:
    """``pi_eps^{(beta, phi)}`` on the box ``|j_1| <= B``, ``1 <= j_k <= B``.

    ``literal=True`` uses the coefficients ``q^beta (eps + q^{2(j_1+beta)})``
    and ``q^{beta+m_k} (1 - q^{2 j_{k+1}})`` without square roots (these do
    not satisfy the relations; kept for comparison).
    """

    def __init__(self, n, eps=1, beta=Fraction(0), B=6, r=Fraction(1, 2), literal=False):
        self.literal = literal
        if eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")
        self.n, self.eps, self.B = n, eps, B
        self.beta = Fraction(beta)
        self.field = RationalField.for_beta(r, self.beta)
        self.lat = Lattice(n, self.beta, M=n * B, field=self.field)

    def in_box(self, j):
        return -self.B <= j[0] <= self.B and all(1 <= jk <= self.B for jk in j[1:])

    def box(self, margin=0):
        """Box points at distance ``>= margin`` from the truncation edges
        (``j_k = 1`` is a genuine edge of the index set, not a truncation)."""
        B = self.B
        rng = [range(-B + margin, B - margin + 1)] + [range(1, B - margin + 1)] * (self.n - 1)
        out = [()]
        for r in rng:
            out = [p + (v,) for p in out for v in r]
        return out

    def m_of(self, j):
        out, acc = [], 0
        for jk in j:
            acc += jk
            out.append(acc)
        return tuple(out)

    def x_of(self, j):
        return self.lat.x(self.m_of(j))

    def _qpow(self, e):
        return self.field.qpow(e)

    def _coef(self, k, j):
        """(coefficient, shift) of pi(z_k) at j: (pi(z_k) psi)(j) = c psi(j + shift)."""
        n = self.n
        e = [0] * n
        m = self.m_of(j)
        if k == n:
            return SqrtNum.const(self._qpow(self.beta + m[n - 1])) * SqrtNum({(1, 1): 1}), tuple(e)
        if k == 0:
            e[0] = 1
            R = self.eps + self._qpow(2 * (j[0] + self.beta))
            if self.literal:
                return SqrtNum.const(R * self._qpow(self.beta)), tuple(e)
            return SqrtNum.sqrt(R), tuple(e)
        e[k] = 1
        R = 1 - self._qpow(2 * j[k])
        if self.literal:
            return SqrtNum({(1, 1): R * self._qpow(self.beta + m[k - 1])}), tuple(e)
        c = SqrtNum.sqrt(R, phase=1) * self._qpow(self.beta + m[k - 1]) if R > 0 else SqrtNum()
        return c, tuple(e)

    def apply_letter(self, kind, k, psi):
        """Apply ``pi(z_k)`` (``kind='z'``) or ``pi(z_k*)`` (``kind='s'``)."""
        out = {}
        if kind == "z":
            for j in self.box():
                c, e = self._coef(k, j)
                src = tuple(a + b for a, b in zip(j, e))
                v = psi.get(src)
                if v is not None and c:
                    _acc(out, j, c * v)
        else:
            for j, v in psi.items():
                c, e = self._coef(k, j)
                tgt = tuple(a + b for a, b in zip(j, e))
                if self.in_box(tgt) and c:
                    _acc(out, tgt, c.conj() * v)
        return out

    def apply_fn(self, fn, psi):
        """``pi(f)`` for an MPoly polynomial in x_0..x_n or a LatticeFn."""
        out = {}
        for j, v in psi.items():
            m = self.m_of(j)
            if isinstance(fn, LatticeFn):
                val = fn.vals.get(m, 0)
            else:
                val = fn.evaluate((self.eps,) + self.lat.x(m))
            if val:
                _acc(out, j, v * val)
        return out


def _acc(out, j, v):
    w = out.get(j)
    w = v if w is None else w + v
    if w:
        out[j] = w
    else:
        out.pop(j, None)


def pi_apply(rep, e, psi):
    """``pi(e) psi`` for an element ``e`` of the cone/hyperboloid algebra in
    normal form (coefficients polynomial or lattice functions)."""
    total = {}
    for key, mid in e.terms.items():
        I, J = key
        v = dict(psi)
        for k in reversed(range(rep.n + 1)):
            for _ in range(J[k]):
                v = rep.apply_letter("z", k, v)
        v = rep.apply_fn(mid, v)
        for k in reversed(range(rep.n + 1)):
            for _ in range(I[k]):
                v = rep.apply_letter("s", k, v)
        for j, c in v.items():
            _acc(total, j, c)
    return total


def _word(rep, letters, psi):
    v = psi
    for kind, k in reversed(letters):
        v = rep.apply_letter(kind, k, v)
    return v


def _combo(rep, combo, psi):
    out = {}
    for c, letters in combo:
        for j, v in _word(rep, letters, psi).items():
            _acc(out, j, v * c)
    return out


def check_pi_relations(rep, margin=2):
    """Names of the relations violated on interior basis vectors: the
    commutation relations, the pair relations and ``z z*`` against the
    diagonal functions."""
    f = rep.field
    q, qm2 = f.spow(2), f.spow(-4)
    n = rep.n
    rels = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            rels.append((f"z{i}z{j} = q z{j}z{i}", [(1, [("z", i), ("z", j)]), (-q, [("z", j), ("z", i)])]))
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                rels.append((f"z{i}z{j}* = q z{j}*z{i}",
                             [(1, [("z", i), ("s", j)]), (-q, [("s", j), ("z", i)])]))
        sign = -1 if i == 0 else 1
        combo = [(1, [("z", i), ("s", i)]), (-1, [("s", i), ("z", i)])]
        for k in range(i + 1, n + 1):
            combo.append((-sign * (qm2 - 1), [("z", k), ("s", k)]))
        rels.append((f"[z{i}, z{i}*]", combo))
    bad = []
    vecs = [{j: SqrtNum.const(1)} for j in rep.box(margin)]
    for name, combo in rels:
        if any(_combo(rep, combo, v) for v in vecs):
            bad.append(name)
    # z_k z_k* and z_k* z_k against the coefficient functions
    alg = algebra(n, "hyperboloid" if rep.eps else "cone", f)
    for k in range(n + 1):
        for starred_first in (False, True):
            P = alg._pair_poly(k, starred_first, (0,) * (n + 1))
            letters = [("s", k), ("z", k)] if starred_first else [("z", k), ("s", k)]
            for v in vecs:
                d = _word(rep, letters, v)
                dd = rep.apply_fn(P, v)
                for j in set(d) | set(dd):
                    if d.get(j, SqrtNum()) - dd.get(j, SqrtNum()):
                        bad.append(f"pair {letters} vs x")
                        break
                else:
                    continue
                break
    return bad


def trace_formula_check(fn, rep):
    """``(int f dnu, (1-q^2)^n tr pi(f x_1...x_n))`` for a diagonal basic
    function given by the lattice function ``fn`` (support inside the box)."""
    n = rep.n
    lat = rep.lat
    quotient = "hyperboloid" if rep.eps else "cone"
    f = basic_function(lat, quotient, {((0,) * (n + 1), (0,) * (n + 1)): fn.vals})
    lhs = integrate(f, lat, strict=False)
    xs = MPoly.const(n + 1, rep.field)
    for k in range(1, n + 1):
        xs = xs * MPoly.var(n + 1, rep.field, k)
    tr = 0
    for j in rep.box():
        out = rep.apply_fn(fn, rep.apply_fn(xs, {j: SqrtNum.const(1)}))
        v = out.get(j)
        if v is not None:
            tr = tr + v
    tr = tr if isinstance(tr, SqrtNum) else SqrtNum.const(tr)
    return lhs, tr * (1 - lat.q2) ** n

