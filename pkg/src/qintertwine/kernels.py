"""Named intertwining kernels, the kernel involution and the invariance test.

Kernels live in ``F2 (x) F1^op``; the letters of the first factor are
``z_j, z_j*`` and those of the second are ``zeta_j = 1 (x) z_j``.  The
kernels are::

    t   = z_0 z_0* - sum_j z_j z_j*          (= x_0)
    tau = xi_0
    K1  = z_0 zeta_0* - sum_j z_j zeta_j*
    K2  = z_0* zeta_0 - sum_j q^{-2j} z_j* zeta_j
    Kp  = sum_{j=1}^{n-1} z_j zeta_j*,     Kpp = sum_{j=1}^{n-1} q^{-2j} z_j* zeta_j
    P   = K1 K2

and, for the multi-copy algebra with copies ``a = 1..N``,
``K_a = z_{a0} zeta_0* - sum_j z_{aj} zeta_j*`` and ``P_a = q^{-2n} K_a K_a*``.

A kernel ``f`` is intertwining when ``(a (x) 1) f = (1 (x) S^-1(a)) f`` for
every generator ``a``.
"""

from functools import lru_cache

from .freealg.api import algebra, kernel_algebra, xi, z, zeta, zetas, zs
from .freealg.element import Element, KernelAlgebra
from .freealg.poly import MPoly
from .freealg.words import LetterAlgebra
from .scalar import SYMBOLIC
from .uqmod import HopfWord, act, all_generators, antipode

__all__ = [
    "KERNEL_NAMES", "NamedKernel", "build", "is_intertwining", "kernel_star",
    "verify_K1K2_exchange", "verify_multicopy", "multi_copy_kernel_algebra",
    "R_prime", "R_doubleprime", "check_R_prime_relations", "copy_kernel",
    "quasi_commutations",
]

KERNEL_NAMES = ("t", "tau", "K1", "K2", "Kp", "Kpp", "P", "K_i", "P_i")


class NamedKernel:
    """A kernel value together with its name and sizes."""

    __slots__ = ("name", "value", "n", "N")

    def __init__(self, name, value, n, N=1):
        self.name, self.value, self.n, self.N = name, value, n, N

    def __repr__(self):
        return f"NamedKernel({self.name}, n={self.n}, N={self.N}): {self.value}"


# -- single algebra kernels ------------------------------------------------------------------

def _pair_sum(KA, first, second, lo, hi, weight):
    out = Element(KA)
    for j in range(lo, hi + 1):
        out = out + (first(KA, j) * second(KA, j)).scale(weight(j))
    return out


def _kernels(KA):
    f = KA.field
    n = KA.left.n
    one = f.one
    minus = -one
    K1 = _pair_sum(KA, z, zetas, 0, n, lambda j: one if j == 0 else minus)
    K2 = _pair_sum(KA, zs, zeta, 0, n, lambda j: one if j == 0 else -f.spow(-4 * j))
    Kp = _pair_sum(KA, z, zetas, 1, n - 1, lambda j: one)
    Kpp = _pair_sum(KA, zs, zeta, 1, n - 1, lambda j: f.spow(-4 * j))
    t = _pair_sum(KA, lambda A, j: z(A, j), lambda A, j: zs(A, j), 0, n,
                  lambda j: one if j == 0 else minus)
    tau = xi(KA, 0)
    return {"t": t, "tau": tau, "K1": K1, "K2": K2, "Kp": Kp, "Kpp": Kpp, "P": K1 * K2}


@lru_cache(maxsize=None)
def _cached_kernels(n, left, right, field):
    return _kernels(kernel_algebra(n, left, right, field))


@lru_cache(maxsize=None)
def multi_copy_kernel_algebra(n, N, field=None, right="cone"):
    """``F2 (x) F1^op`` with ``F2`` the N-copy algebra and ``F1`` the cone."""
    return KernelAlgebra(LetterAlgebra(n, N, field), algebra(n, right, field))


def copy_kernel(KA, a):
    """``K_a = z_{a0} zeta_0* - sum_j z_{aj} zeta_j*`` in a multi-copy kernel algebra."""
    L = KA.left
    f = KA.field
    out = Element(KA)
    for j in range(L.n + 1):
        zl = Element(KA, {(L.letter_key("z", j, a), KA.right.unit_key): MPoly.const(KA.nvars, f)})
        out = out + (zl * zetas(KA, j)).scale(f.one if j == 0 else -f.one)
    return out


def build(name, n, N=1, index=None, left="free", right="free", field=None):
    """Construct a named kernel as a :class:`NamedKernel`.

    ``K_i``/``P_i`` are the multi-copy kernels (``index`` in 1..N); the other
    names live in the single-copy kernel algebra with factors ``left``,
    ``right`` (one of free, cone, hyperboloid).
    """
    if name not in KERNEL_NAMES:
        raise ValueError(f"unknown kernel {name!r}")
    if n < 1:
        raise ValueError("rank n must be >= 1")
    if name in ("K_i", "P_i"):
        if N < 1:
            raise ValueError("N must be >= 1")
        index = 1 if index is None else index
        if not 1 <= index <= N:
            raise ValueError("copy index out of range")
        KA = multi_copy_kernel_algebra(n, N, field)
        K = copy_kernel(KA, index)
        if name == "K_i":
            return NamedKernel(name, K, n, N)
        return NamedKernel(name, (K * K.star()).scale(KA.field.spow(-4 * n)), n, N)
    if N != 1:
        raise ValueError(f"kernel {name} is defined for a single copy only")
    return NamedKernel(name, _cached_kernels(n, left, right, field or SYMBOLIC)[name], n)


# -- involution and invariance ---------------------------------------------------------

def kernel_star(k):
    """``z_j -> z_j*``, ``zeta_j -> q^{2(j-n)} zeta_j*`` (antilinear, anti-multiplicative)."""
    return k.star()


def is_intertwining(k):
    """``(ok, residuals)``; ``residuals`` maps every failing generator to
    ``(a (x) 1) k - (1 (x) S^-1(a)) k``."""
    alg = k.alg
    n = alg.left.n
    res = {}
    for g in all_generators(n):
        lhs = act(g, k, "left")
        rhs = act(antipode(HopfWord.gen(g, field=alg.field), inverse=True), k, "right")
        d = lhs - rhs
        if d:
            res[g] = d
    return (not res, res)


def verify_K1K2_exchange(n, exponent=2, left="free", right="free", field=None):
    """Residual of ``K1 K2 - q^e K2 K1 - (1 - q^e) t tau`` (zero for e = 2)."""
    ks = _cached_kernels(n, left, right, field or SYMBOLIC)
    f = ks["K1"].alg.field
    qe = f.spow(2 * exponent)
    return (ks["K1"] * ks["K2"] - (ks["K2"] * ks["K1"]).scale(qe)
            - (ks["t"] * ks["tau"]).scale(f.one - qe))


def quasi_commutations(n, left="free", right="free", field=None):
    """The four quasi-commutations between the summands of K1 and K2:
    ``{name: residual}``."""
    f = field or SYMBOLIC
    KA = kernel_algebra(n, left, right, f)
    ks = _cached_kernels(n, left, right, f)
    Kp, Kpp = ks["Kp"], ks["Kpp"]
    a0 = z(KA, 0) * zetas(KA, 0)
    an = z(KA, n) * zetas(KA, n)
    b0 = zs(KA, 0) * zeta(KA, 0)
    bn = zs(KA, n) * zeta(KA, n)
    q2, qm2 = f.spow(4), f.spow(-4)
    return {
        "(z0 zeta0*) K' = q^2 K' (z0 zeta0*)": a0 * Kp - (Kp * a0).scale(q2),
        "K' (zn zetan*) = q^2 (zn zetan*) K'": Kp * an - (an * Kp).scale(q2),
        "(z0* zeta0) K'' = q^-2 K'' (z0* zeta0)": b0 * Kpp - (Kpp * b0).scale(qm2),
        "K'' (zn* zetan) = q^-2 (zn* zetan) K''": Kpp * bn - (bn * Kpp).scale(qm2),
    }


# -- the multi-copy algebra -------------------------------------------------------------------

def R_prime(n, field=None):
    """``R'`` as a dict ``(i, j, i1, j1) -> entry`` (absent entries are zero),
    contracted as ``sum R'_{ij i1j1} z_{b i1} z_{a j1} = q z_{ai} z_{bj}``."""
    f = field or SYMBOLIC
    q = f.spow(2)
    R = {}
    for i in range(n + 1):
        for j in range(n + 1):
            if i == j:
                R[(i, i, i, i)] = q * q
            else:
                R[(i, j, j, i)] = q
                if i < j:
                    R[(i, j, i, j)] = q * q - f.one
    return R


def R_doubleprime(n, field=None):
    """``R''`` as a dict ``(i, j, i1, j1) -> entry``."""
    f = field or SYMBOLIC
    q = f.spow(2)
    R = {}
    for i in range(n + 1):
        R[(i, i, i, i)] = f.one / q
        for j in range(n + 1):
            if i != j:
                R[(i, j, j, i)] = q
            if i < j:
                R[(i, i, j, j)] = (q - f.one / q) * f.spow(2 * (i - j))
    return R


def R_as_matrix(R, n):
    """Dense ``(n+1)^2 x (n+1)^2`` list of lists (row (i,j), column (i1,j1))."""
    d = n + 1
    zero = 0
    M = [[zero] * (d * d) for _ in range(d * d)]
    for (i, j, i1, j1), c in R.items():
        M[i * d + j][i1 * d + j1] = c
    return M


def check_R_prime_relations(L, a=1, b=2):
    """Indices ``(i, j)`` at which the R'-relation fails in the multi-copy
    algebra ``L`` for the copies ``a < b`` (empty list means all hold)."""
    f = L.field
    q = f.spow(2)
    bad = []
    R = R_prime(L.n, f)
    for i in range(L.n + 1):
        for j in range(L.n + 1):
            combo = [(c, ((False, b, i1), (False, a, j1)))
                     for (r0, r1, i1, j1), c in R.items() if (r0, r1) == (i, j)]
            combo.append((-q, ((False, a, i), (False, b, j))))
            if L.nf_combination(combo):
                bad.append((i, j))
    return bad


def verify_multicopy(n, N, field=None):
    """``{relation: bool}`` for the exchange relations of the kernels K_a,
    commutativity and self-adjointness of P_a, and invariance of each K_a."""
    KA = multi_copy_kernel_algebra(n, N, field)
    f = KA.field
    q, q2 = f.spow(2), f.spow(4)
    Ks = [copy_kernel(KA, a) for a in range(1, N + 1)]
    Kst = [K.star() for K in Ks]
    Ps = [(K * Ks_).scale(f.spow(-4 * n)) for K, Ks_ in zip(Ks, Kst)]
    rep = {"confluent": not KA.left.check_local_confluence()}
    for a in range(N):
        for b in range(N):
            A, B = a + 1, b + 1
            if a < b:
                rep[f"K{A}K{B} = q K{B}K{A}"] = not (Ks[a] * Ks[b] - (Ks[b] * Ks[a]).scale(q))
            if a != b:
                rep[f"K{A}K{B}* = q K{B}*K{A}"] = not (Ks[a] * Kst[b] - (Kst[b] * Ks[a]).scale(q))
                if a < b:
                    rep[f"P{A}P{B} = P{B}P{A}"] = not (Ps[a] * Ps[b] - Ps[b] * Ps[a])
        rep[f"K{a + 1}K{a + 1}* = q^2 K{a + 1}*K{a + 1}"] = not (Ks[a] * Kst[a] - (Kst[a] * Ks[a]).scale(q2))
        rep[f"P{a + 1}* = P{a + 1}"] = Ps[a].star() == Ps[a]
        rep[f"K{a + 1} intertwining"] = is_intertwining(Ks[a])[0]
        rep[f"P{a + 1} intertwining"] = is_intertwining(Ps[a])[0]
    if N >= 2:
        rep["R' relations"] = not check_R_prime_relations(KA.left)
    return rep
