"""Laurent coefficients in ``u = q^{2 lam}`` and the Radon kernels.

Fix lattice points ``x_k = q^{2(a_k + beta)}`` and ``xi_k = q^{2(b_k + beta)}``.
Every coefficient of the series for ``P^lam`` is ``xi_1^lam f(u)`` where
``f`` is a sum of terms ``c(u) x^alpha xi^gamma u^tau R_{lam-m}(y)``.
The ratio of infinite products is expanded by Euler's formula::

    R_{lam-m}(y) = (-u^{-1} q^{2m} y; q^2)_inf / (-y; q^2)_inf
                 = sum_{l>=0} q^{l(l-1)} (q^{2m} y)^l u^{-l} / (q^2;q^2)_l / (-y; q^2)_inf

so ``f(u) = sum_m r^(m) u^m`` is an explicit Laurent series (infinitely many
negative powers, finitely many positive ones).  Since
``xi_1^lam = u^{b_1 + beta}``, the kernel ``R_j`` takes the value
``r^(j - b_1)`` at the point, and ``P^lam = sum_j q^{2(j+beta) lam} R_j``.

``R_j`` is realised as a kernel whose coefficient functions are lattice
functions on a box of points (:class:`PairLatticeFn`), so the quantum
group action and products with ``P^m`` are computed by the same engine.
"""

import math
from fractions import Fraction
from itertools import product

from .freealg.api import kernel_algebra
from .freealg.element import Element
from .freealg.poly import MPoly
from .qseries import PoissonPowerSeries, poisson_power_exact
from .scalar import FloatField, LaurentU, qpoch
from .uqmod import HopfWord, act, all_generators, antipode

__all__ = [
    "PairLatticeFn", "RadonSetup", "laurent_extract", "radon_kernel",
    "reconstruction_error", "resummation_error", "radon_intertwining_check",
    "eigen_identity_residual",
]


class PairLatticeFn:
    """Function of a pair of lattice points ``(a, b)`` (x and xi sides),
    stored on a finite set; coefficient protocol of the engine."""

    __slots__ = ("st", "vals")

    def __init__(self, setup, vals=None):
        self.st = setup
        self.vals = {p: v for p, v in (vals or {}).items() if v}

    def _new(self, vals):
        return PairLatticeFn(self.st, vals)

    def __bool__(self):
        return bool(self.vals)

    def __add__(self, other):
        if isinstance(other, MPoly):
            if other:
                raise ValueError("cannot add a polynomial to a lattice function")
            return self
        out = dict(self.vals)
        for p, v in other.vals.items():
            out[p] = out.get(p, 0) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({p: -v for p, v in self.vals.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({p: v * c for p, v in self.vals.items()})

    def conj(self):
        return self

    def degree(self):
        return 0

    def shifted(self, vec):
        n = self.st.n
        sa, sb = tuple(vec[1:n + 1]), tuple(vec[n + 2:])
        if not any(sa) and not any(sb):
            return self
        return self._new({(tuple(x - y for x, y in zip(a, sa)), tuple(x - y for x, y in zip(b, sb))): v
                          for (a, b), v in self.vals.items()})

    def times_poly(self, other):
        if isinstance(other, PairLatticeFn):
            return self._new({p: v * other.vals[p] for p, v in self.vals.items() if p in other.vals})
        if other.is_const():
            return self.scale(other.const_value())
        return self._new({p: v * other.evaluate(self.st.values(*p)) for p, v in self.vals.items()})

    __mul__ = times_poly

    def B(self, i):
        n = self.st.n
        if i in (0, n + 1):
            return self._new({})
        side, k = (0, i - 1) if i <= n else (1, i - n - 2)

        def step(p, d):
            a, b = list(p[0]), list(p[1])
            (a if side == 0 else b)[k] += d
            return (tuple(a), tuple(b))

        pts = set(self.vals) | {step(p, -1) for p in self.vals}
        q2 = self.st.q ** 2
        out = {}
        for p in pts:
            d = self.vals.get(step(p, 1), 0) - self.vals.get(p, 0)
            if d:
                out[p] = d / ((q2 - 1) * self.st.values(*p)[i])
        return self._new(out)

    def __repr__(self):
        return f"PairLatticeFn({len(self.vals)} points)"


class RadonSetup:
    """Numeric q, beta, the truncated series and the box of lattice points
    ``a_k, b_k`` in ``[-M, M]``."""

    def __init__(self, n=1, q=0.5, beta=Fraction(1, 3), caps=(0, 12), M=4, window=(-40, 40)):
        self.n, self.q, self.beta, self.M = n, q, Fraction(beta), M
        self.window = window
        self.field = FloatField(q)
        self.S = PoissonPowerSeries(n, caps, self.field)
        self.KB = kernel_algebra(n, "hyperboloid", "cone", self.field)
        b = float(self.beta)
        self._xv = {m: q ** (2 * (m + b)) for m in range(-4 * M - 8, 4 * M + 9)}

    def _x(self, m):
        v = self._xv.get(m)
        return v if v is not None else self.q ** (2 * (m + float(self.beta)))

    def values(self, a, b):
        """Variable vector ``(x_0 = 1, x.., xi_0 = 0, xi..)`` of the point pair."""
        return [1.0] + [self._x(m) for m in a] + [0.0] + [self._x(m) for m in b]

    def box(self, margin=0):
        rng = range(-self.M + margin, self.M - margin + 1)
        side = [t for t in product(rng, repeat=self.n) if all(x < y for x, y in zip(t, t[1:]))]
        return [(a, b) for a in side for b in side]


def laurent_extract(st, mid, a, b, window=None):
    """``(LaurentU of f(u), tail)`` for the coefficient function ``mid`` of
    the u-series at the point pair ``(a, b)``; ``f = mid / xi_1^lam``.
    ``tail`` bounds the size of the first Euler terms left out."""
    lo, hi = window or st.window
    q = st.q
    q2 = q * q
    S = st.S
    vals = st.values(a, b)
    coeffs = {}
    tail = 0.0
    for (ex, tag), c in mid.terms.items():
        base = 1.0
        for xv, e in zip(vals, ex):
            if e:
                base *= xv ** e
        if tag is None:
            for e, ce in c.c.items():
                if not lo <= e <= hi:
                    raise ValueError(f"u^{e} outside the window")
                coeffs[e] = coeffs.get(e, 0) + ce * base
            continue
        (_, m), sh = tag
        tau, sigma = sh[S.ixi1], sh[S.ix1]
        y = vals[S.ix1] * q2 ** sigma
        D = base / qpoch(-y, q2, math.inf, 1e-30)
        w = q2 ** m * y
        for e, ce in c.c.items():
            top = e + tau
            if top > hi:
                raise ValueError(f"u^{top} outside the window")
            term = ce * D
            pq = 1.0  # (q^2;q^2)_l
            for l in range(0, top - lo + 1):
                if l:
                    pq *= 1 - q2 ** l
                    term = ce * D * q ** (l * (l - 1)) * w ** l / pq
                coeffs[top - l] = coeffs.get(top - l, 0) + term
            l = top - lo + 1
            pq *= 1 - q2 ** l
            tail = max(tail, abs(ce * D * q ** (l * (l - 1)) * w ** l / pq))
    return LaurentU(coeffs, (lo, hi)), tail


def _extract_all(st, elem):
    """``{key: {(a, b): LaurentU}}`` for every key of ``elem`` on the box."""
    out = {}
    for key, mid in elem.terms.items():
        out[key] = {p: laurent_extract(st, mid, *p)[0] for p in st.box()}
    return out


def radon_kernel(st, j, extracted=None):
    """``R_j`` on the box: the value at ``(a, b)`` is ``r^(j - b_1)``."""
    ext = extracted or _extract_all(st, st.S.kernel())
    terms = {}
    for key, per in ext.items():
        vals = {p: L[j - p[1][0]] for p, L in per.items()}
        fn = PairLatticeFn(st, vals)
        if fn:
            terms[key] = fn
    return Element(st.KB, terms)


def _scaled(d, mags):
    scale = max(mags)
    return d / scale if scale else d


def resummation_error(st, lams, extracted=None):
    """``max |sum_m r^(m) u^m - f(u)| / sum_m |r^(m) u^m|`` over keys, box
    points and ``lams`` (the denominator removes cancellation artefacts)."""
    ext = extracted or _extract_all(st, st.S.kernel())
    K = st.S.kernel()
    worst = 0.0
    for key, per in ext.items():
        for p, L in per.items():
            for lam in lams:
                u = st.q ** (2 * lam)
                direct = st.S.eval_middle(K.terms[key], lam, st.values(*p), st.q)
                mag = sum(abs(c) * u ** e for e, c in L.coeffs.items())
                worst = max(worst, _scaled(abs(L(u) - direct), [mag, abs(direct)]))
    return worst


def reconstruction_error(st, lam, js, extracted=None):
    """``max |sum_j q^{2(j+beta) lam} R_j - xi_1^lam f|``, relative to
    ``sum_j |q^{2(j+beta) lam} R_j|``, over keys and box points."""
    ext = extracted or _extract_all(st, st.S.kernel())
    K = st.S.kernel()
    q, beta = st.q, float(st.beta)
    worst = 0.0
    for key, per in ext.items():
        for p, L in per.items():
            mu = p[1][0]
            parts = [q ** (2 * (j + beta) * lam) * L[j - mu] for j in js]
            direct = q ** (2 * (mu + beta) * lam) * st.S.eval_middle(K.terms[key], lam, st.values(*p), q)
            worst = max(worst, _scaled(abs(sum(parts) - direct), [sum(map(abs, parts)), abs(direct)]))
    return worst


def _interior_max(st, elem, margin, max_degree):
    worst = 0.0
    inner = set(st.box(margin))
    for key, fn in elem.terms.items():
        if st.KB.degree(key) > max_degree:
            continue
        for p, v in fn.vals.items():
            if p in inner:
                worst = max(worst, abs(v))
    return worst


def radon_intertwining_check(st, R, margin=2, max_degree=3):
    """``{generator: max residual}`` of ``(a (x) 1 - 1 (x) S^-1(a)) R`` at box
    points at distance ``>= margin`` from the edge, keys of degree ``<= max_degree``."""
    out = {}
    for g in all_generators(st.n):
        r = act(g, R, "left") - act(antipode(HopfWord.gen(g, field=st.field), inverse=True), R, "right")
        out[g] = _interior_max(st, r, margin, max_degree)
    return out


def eigen_identity_residual(st, R, j, m, margin=2, max_degree=2):
    """``(|P^m R_j - c R_j|, |R_j P^m - c R_j|)`` with ``c = q^{2(j+beta)m}`` on
    interior points and low-degree keys."""
    P = poisson_power_exact(m, st.n, st.field)
    c = st.q ** (2 * (j + float(st.beta)) * m)
    left = P * R - R.scale(c)
    right = R * P - R.scale(c)
    return (_interior_max(st, left, margin, max_degree), _interior_max(st, right, margin, max_degree))
