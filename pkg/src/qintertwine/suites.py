"""Named identity suites, run by ``qintertwine verify`` and the acceptance script.

Each identity is a module-level function ``check(cfg) -> (ok, detail)``; the
sizes come from the :class:`~qintertwine.cli.config.RunConfig` (rank ``n``,
copies ``N``, ``beta``, caps ``M, L, I, W, tol, deg, trials``).  ``run_suite``
returns one record per identity, sorted by id.
"""

import random
import time
from collections import namedtuple
from fractions import Fraction

__all__ = ["SUITES", "Identity", "run_suite", "suite_names", "run_identity"]

Identity = namedtuple("Identity", "id property func")


def _ranks(cfg, cap=3):
    return list(range(1, min(cfg.n, cap) + 1))


# -- hopf / module ------------------------------------------------------------------------------

def hopf_relations(cfg):
    from .uqmod import verify_module_relations
    bad = {}
    for n in _ranks(cfg):
        for quotient in ("free", "cone", "hyperboloid"):
            rep = verify_module_relations(n, cfg.caps["deg"], quotient)
            failing = [k for k, (ok, _) in rep.items() if not ok]
            if failing:
                bad[f"n={n},{quotient}"] = failing
    return not bad, {"failing": bad}


def module_normal_form_vs_leibniz(cfg):
    from .freealg.api import algebra
    from .uqmod import act, all_generators, leibniz_oracle, normal_monomials
    bad = 0
    for n in _ranks(cfg, 2):
        for quotient in ("free", "cone", "hyperboloid"):
            alg = algebra(n, quotient)
            for m in normal_monomials(alg, min(cfg.caps["deg"], 4)):
                for g in all_generators(n):
                    if act(g, m) != leibniz_oracle(g, m):
                        bad += 1
    return bad == 0, {"mismatches": bad}


def _random_elements(rng, alg, count, degree):
    from .uqmod import normal_monomials
    monos = normal_monomials(alg, degree)
    return [monos[rng.randrange(len(monos))] + monos[rng.randrange(len(monos))].scale(rng.randrange(1, 4))
            for _ in range(count)]


def module_algebra_axiom(cfg):
    from .freealg.api import algebra
    from .uqmod import all_generators, check_module_algebra
    rng = random.Random(cfg.seed)
    bad = 0
    for n in _ranks(cfg, 2):
        for quotient in ("free", "hyperboloid"):
            alg = algebra(n, quotient)
            es = _random_elements(rng, alg, 2 * cfg.caps["trials"], 2)
            for e1, e2 in zip(es[::2], es[1::2]):
                for g in all_generators(n):
                    bad += bool(check_module_algebra(g, e1, e2))
    return bad == 0, {"failures": bad}


def module_star_compatibility(cfg):
    from .freealg.api import algebra
    from .uqmod import all_generators, check_star_compatibility
    rng = random.Random(cfg.seed + 1)
    bad = 0
    for n in _ranks(cfg, 2):
        for quotient in ("free", "hyperboloid"):
            alg = algebra(n, quotient)
            for e in _random_elements(rng, alg, cfg.caps["trials"], 4):
                for g in all_generators(n):
                    bad += bool(check_star_compatibility(g, e))
    return bad == 0, {"failures": bad}


# -- kernels --------------------------------------------------------------------------------------

def kernels_central(cfg):
    from .freealg.api import check_centrality
    from .kernels import build
    bad = []
    for n in _ranks(cfg):
        for name in ("t", "tau"):
            if not check_centrality(build(name, n).value)[0]:
                bad.append(f"{name}, n={n}")
    return not bad, {"not central": bad}


def kernels_intertwining(cfg):
    from .kernels import build, is_intertwining
    bad = []
    for n in _ranks(cfg):
        for name in ("K1", "K2", "t", "tau"):
            ok, res = is_intertwining(build(name, n).value)
            if not ok:
                bad.append(f"{name}, n={n}: {sorted(map(str, res))}")
    return not bad, {"failing": bad}


def kernels_exchange(cfg):
    from .kernels import verify_K1K2_exchange
    bad = [n for n in _ranks(cfg) if verify_K1K2_exchange(n)]
    return not bad, {"nonzero for n": bad}


def kernels_closure(cfg):
    from .kernels import build, is_intertwining
    bad = []
    for n in _ranks(cfg, 2):
        K1, K2 = build("K1", n).value, build("K2", n).value
        P = K1 * K2
        cands = {"K1K2": P, "K2K1": K2 * K1}
        for m in range(2, 4):
            cands[f"(K1K2)^{m}"] = P ** m
        bad += [f"{nm}, n={n}" for nm, k in cands.items() if not is_intertwining(k)[0]]
    return not bad, {"failing": bad}


def kernels_quasi_commutations(cfg):
    from .kernels import quasi_commutations
    bad = []
    for n in _ranks(cfg):
        bad += [f"{k}, n={n}" for k, v in quasi_commutations(n).items() if v]
    return not bad, {"failing": bad}


def multicopy_relations(cfg):
    from .kernels import verify_multicopy
    bad = []
    for n in _ranks(cfg, 2):
        for N in range(1, min(max(cfg.N, 2), 3) + 1):
            bad += [f"{k} (n={n}, N={N})" for k, v in verify_multicopy(n, N).items() if not v]
    return not bad, {"failing": bad}


# -- engine ----------------------------------------------------------------------------------------

def _engine_algebras(cfg):
    from .freealg.api import algebra, kernel_algebra
    for n in _ranks(cfg, 2):
        for quotient in ("free", "cone", "hyperboloid"):
            yield algebra(n, quotient)
        yield kernel_algebra(n, "free", "free")


def engine_bracketing(cfg):
    from .freealg.checks import bracketing_check
    rng = random.Random(cfg.seed + 2)
    bad = sum(len(bracketing_check(rng, alg, trials=3 * cfg.caps["trials"], max_len=8))
              for alg in _engine_algebras(cfg))
    return bad == 0, {"failures": bad}


def engine_overlaps(cfg):
    from .freealg.checks import overlap_check
    from .freealg.element import KernelAlgebra
    from .kernels import multi_copy_kernel_algebra
    bad = sum(len(overlap_check(alg)) for alg in _engine_algebras(cfg)
              if not isinstance(alg, KernelAlgebra) or alg.left.n == 1)
    conf = sum(len(multi_copy_kernel_algebra(n, N).left.check_local_confluence())
               for n in _ranks(cfg, 2) for N in (2, 3))
    return bad == 0 and conf == 0, {"overlap failures": bad, "confluence failures": conf}


def engine_uniqueness(cfg):
    from .freealg.checks import basis_roundtrip_check
    from .freealg.element import KernelAlgebra
    from .uqmod import normal_monomials
    bad = sum(len(basis_roundtrip_check(alg, normal_monomials(alg, min(cfg.caps["deg"], 4))))
              for alg in _engine_algebras(cfg) if not isinstance(alg, KernelAlgebra))
    return bad == 0, {"failures": bad}


def engine_associativity(cfg):
    from .freealg.checks import associativity_check
    rng = random.Random(cfg.seed + 3)
    bad = sum(associativity_check(rng, alg, trials=cfg.caps["trials"]) for alg in _engine_algebras(cfg))
    return bad == 0, {"failures": bad}


# -- integral and representations --------------------------------------------------------------

def integral_by_parts(cfg):
    from .integral import Lattice, integration_by_parts_check, random_basic_function, random_partner
    from .uqmod import HopfWord, act, all_generators
    rng = random.Random(cfg.seed + 4)
    cases = bad = 0
    for n in _ranks(cfg, 2):
        lat = Lattice(n, cfg.beta, M=cfg.caps["M"], r=cfg.rational_r())
        for quotient in ("hyperboloid", "cone"):
            for _ in range(cfg.caps["trials"]):
                f1 = random_basic_function(rng, lat, quotient)
                for g in all_generators(n):
                    a = HopfWord.gen(g, field=lat.field)
                    af1 = act(a, f1)
                    if not af1:
                        continue
                    f2 = random_partner(rng, lat, af1)
                    cases += 1
                    bad += bool(integration_by_parts_check(a, f1, f2, lat))
    return bad == 0, {"cases": cases, "failures": bad}


def integral_positivity(cfg):
    from .integral import Lattice, inner_product, random_basic_function
    rng = random.Random(cfg.seed + 5)
    cases = bad = 0
    for n in _ranks(cfg, 2):
        lat = Lattice(n, cfg.beta, M=cfg.caps["M"], r=cfg.rational_r())
        for quotient in ("hyperboloid", "cone"):
            for _ in range(cfg.caps["trials"]):
                f = random_basic_function(rng, lat, quotient)
                if not f:
                    continue
                cases += 1
                bad += not inner_product(f, f, lat) > 0
    return bad == 0, {"cases": cases, "failures": bad}


def pi_relations(cfg):
    from .integral import PiRep, check_pi_relations
    bad = {}
    for n in _ranks(cfg, 2):
        for eps in (0, 1):
            for beta in sorted({Fraction(0), Fraction(1, 2), cfg.beta}):
                rep = PiRep(n, eps, beta, B=4 if n == 2 else 6)
                failing = check_pi_relations(rep)
                if failing:
                    bad[f"n={n},eps={eps},beta={beta}"] = failing
    return not bad, {"failing": bad}


def pi_trace_formula(cfg):
    from .integral import LatticeFn, PiRep, SqrtNum, trace_formula_check
    rng = random.Random(cfg.seed + 6)
    bad = []
    for n in _ranks(cfg, 2):
        for eps in (0, 1):
            rep = PiRep(n, eps, cfg.beta, B=4)
            pts = [rep.m_of(j) for j in rep.box()]
            for _ in range(3):
                vals = {pts[rng.randrange(len(pts))]: Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
                        for _ in range(2)}
                fn = LatticeFn(rep.lat, {k: v for k, v in vals.items() if v})
                lhs, rhs = trace_formula_check(fn, rep)
                if not rhs == SqrtNum.const(lhs):
                    bad.append(f"n={n},eps={eps}: {lhs} vs {rhs}")
    return not bad, {"failing": bad}


# -- series -----------------------------------------------------------------------------------------

def series_cross_path(cfg):
    from .qseries import PoissonPowerSeries, poisson_power_exact
    bad = []
    for n in _ranks(cfg, 2):
        S = PoissonPowerSeries(n, caps=(3, 3))
        for lam in range(4):
            if S.specialize(lam) != poisson_power_exact(lam, n):
                bad.append(f"n={n}, lam={lam}")
    return not bad, {"failing": bad}


def series_closed_form(cfg, n_points=20):
    import mpmath
    from .qseries import f000000_closed_form
    rng = random.Random(cfg.seed + 7)
    worst = 0.0
    with mpmath.workdps(40):
        q = mpmath.mpf(cfg.numeric_q(0.6))
        for k in range(n_points):
            n = 1 + k % 3
            S, slot = _slot_series(n, q)
            lam = mpmath.mpf(rng.choice(["0.5", "1.7", "-1.3", "2", "0.25"]))
            x1, xn, y = (mpmath.mpf(rng.uniform(0.05, 0.6)) for _ in range(3))
            if n == 1:  # x_n is x_1 and xi_n is xi_1 = 1
                xn, y = x1, mpmath.mpf(1)
            v = S.eval_middle(slot, lam, S.point(x1, xn, y), q)
            c = f000000_closed_form(lam, x1, xn, y, n, q)
            worst = max(worst, float(abs(v - c) / abs(v)))
    return worst <= 1e-12, {"max relative error": worst, "points": n_points}


_SLOT_CACHE = {}


def _slot_series(n, q):
    """Series for rank ``n`` at numeric ``q`` and its lowest slot."""
    from .qseries import PoissonPowerSeries
    from .scalar import FloatField
    key = (n, q)
    if key not in _SLOT_CACHE:
        S = PoissonPowerSeries(n, (0, 25), field=FloatField(q))
        _SLOT_CACHE[key] = (S, S.slot(0, 0))
    return _SLOT_CACHE[key]


def series_pfaff(cfg):
    from .qseries import pfaff_sides, spherical_zonal
    worst = 0.0
    for q in (0.3, 0.7):
        for l in range(6):
            for x in (0.1, 0.5, 1.0):
                lhs, rhs = pfaff_sides(l, x, q)
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
    exact_one = all(spherical_zonal(0, x, q) == 1 for q, x in ((Fraction(1, 2), Fraction(3, 10)), (None, 2)))
    return worst <= 1e-12 and exact_one, {"max relative error": worst, "l=0 exactly 1": exact_one}


def series_qbinomial(cfg):
    from .qseries import check_qbinomial
    bad = [m for m in range(6) if check_qbinomial(m)]
    return not bad, {"nonzero for m": bad}


def series_central_rewrite(cfg):
    from .qseries import check_central_rewrite
    bad = [(lam, m1, m2, n) for n in _ranks(cfg, 2) for lam in range(4)
           for m1 in range(lam + 1) for m2 in range(lam + 1) if check_central_rewrite(lam, m1, m2, n)]
    return not bad, {"failing (lam, m1, m2, n)": bad}


def series_intertwining(cfg):
    import mpmath
    from .qseries import PoissonPowerSeries, intertwining_residual
    from .scalar import FloatField
    with mpmath.workdps(40):
        q = mpmath.mpf(cfg.numeric_q(0.5))
        S = PoissonPowerSeries(1, (0, 16), field=FloatField(q))
        pts = [S.point(q ** 2), S.point(q ** 5)]
        res = intertwining_residual(S, mpmath.mpf("0.5"), pts)
        worst = float(max(res.values()))
    return worst <= 1e-25, {"max residual": worst}


# -- radon ------------------------------------------------------------------------------------------

_RADON = {}


def _radon(cfg):
    from .radon import RadonSetup, _extract_all
    key = (cfg.numeric_q(0.5), cfg.beta, cfg.caps["I"], cfg.caps["W"])
    if key not in _RADON:
        W = cfg.caps["W"]
        st = RadonSetup(n=1, q=key[0], beta=cfg.beta if cfg.beta else Fraction(1, 3),
                        caps=(0, cfg.caps["I"]), M=4, window=(-W, W))
        _RADON[key] = (st, _extract_all(st, st.S.kernel()))
    return _RADON[key]


def radon_resummation(cfg):
    from .radon import resummation_error
    st, ext = _radon(cfg)
    err = resummation_error(st, [0.25, 0.5, 1.0, 1.7], ext)
    return err <= 1e-12, {"max scaled error": err}


def radon_reconstruction(cfg):
    from .radon import reconstruction_error
    st, ext = _radon(cfg)
    W = cfg.caps["W"]
    errs = {lam: reconstruction_error(st, lam, range(-W - st.M, W + st.M + 1), ext) for lam in (0.5, 1, 1.7)}
    return max(errs.values()) <= cfg.caps["tol"], {"max scaled error": errs}


def radon_intertwining(cfg):
    from .freealg.element import Element
    from .radon import radon_intertwining_check, radon_kernel
    st, ext = _radon(cfg)
    R0 = radon_kernel(st, 0, ext)
    res = max(radon_intertwining_check(st, R0).values())
    key = min(R0.terms, key=st.KB.degree)
    terms = dict(R0.terms)
    terms[key] = terms[key].scale(2.0)
    control = max(radon_intertwining_check(st, Element(st.KB, terms)).values())
    return res <= cfg.caps["tol"] and control > 1e-3, {"R0 residual": res, "perturbed control": control}


def radon_eigen(cfg):
    from .radon import radon_kernel, eigen_identity_residual
    st, ext = _radon(cfg)
    worst = 0.0
    for j in (0, 1):
        R = radon_kernel(st, j, ext)
        for m in (1, 2):
            worst = max(worst, *eigen_identity_residual(st, R, j, m))
    return worst <= cfg.caps["tol"], {"max residual": worst}


SUITES = {
    "hopf": [Identity("hopf.relations", "defining relations act as zero on normal monomials", hopf_relations)],
    "module": [
        Identity("module.leibniz-oracle", "normal-form action equals letter-expansion action",
                 module_normal_form_vs_leibniz),
        Identity("module.q-leibniz", "a(f1 f2) = sum a'(f1) a''(f2)", module_algebra_axiom),
        Identity("module.star", "(a f)* = S(a)* f*", module_star_compatibility),
    ],
    "kernels": [
        Identity("kernels.central", "t and tau are central", kernels_central),
        Identity("kernels.intertwining", "K1, K2, t, tau are intertwining", kernels_intertwining),
        Identity("kernels.exchange", "K1K2 - q^2 K2K1 = (1 - q^2) t tau", kernels_exchange),
        Identity("kernels.closure", "K1K2, K2K1, (K1K2)^m are intertwining", kernels_closure),
        Identity("kernels.quasi-commutations", "summands of K1, K2 quasi-commute", kernels_quasi_commutations),
    ],
    "multicopy": [Identity("multicopy.relations",
                           "exchange relations, commuting self-adjoint P_a, invariant K_a",
                           multicopy_relations)],
    "engine": [
        Identity("engine.bracketing", "normal forms independent of bracketing", engine_bracketing),
        Identity("engine.overlaps", "length-3 overlaps resolve", engine_overlaps),
        Identity("engine.uniqueness", "normal monomials reproduce themselves", engine_uniqueness),
        Identity("engine.associativity", "(ab)c = a(bc) on random elements", engine_associativity),
    ],
    "integral": [
        Identity("integral.by-parts", "int (a f1) f2 = int f1 S(a) f2", integral_by_parts),
        Identity("integral.positivity", "int f* f > 0", integral_positivity),
    ],
    "pi": [
        Identity("pi.relations", "representation operators satisfy the algebra relations", pi_relations),
        Identity("pi.trace", "integral equals (1-q^2)^n tr pi(f x_1..x_n)", pi_trace_formula),
    ],
    "series": [
        Identity("series.cross-path", "series for P^lam at integer lam equals (K1K2)^lam", series_cross_path),
        Identity("series.closed-form", "lowest slot equals its 2Phi2 closed form", series_closed_form),
        Identity("series.pfaff", "2Phi2 and terminating 2Phi1 forms agree", series_pfaff),
        Identity("series.q-binomial", "q-binomial expansion of (a + b)^m", series_qbinomial),
        Identity("series.central-rewrite", "central rewriting of A^i a^j", series_central_rewrite),
        Identity("series.intertwining", "truncated P^1/2 is intertwining", series_intertwining),
    ],
    "radon": [
        Identity("radon.resummation", "Laurent coefficients resum to the slots", radon_resummation),
        Identity("radon.reconstruction", "sum_j q^{2(j+beta)lam} R_j = P^lam", radon_reconstruction),
        Identity("radon.intertwining", "R_0 is intertwining (perturbed control fails)", radon_intertwining),
        Identity("radon.eigen", "P^m R_j = R_j P^m = q^{2(j+beta)m} R_j", radon_eigen),
    ],
}


def suite_names():
    return list(SUITES) + ["all"]


def run_identity(ident_id, cfg):
    """Run one identity by id; returns the report record."""
    ident = next(i for s in SUITES.values() for i in s if i.id == ident_id)
    t0 = time.time()
    try:
        ok, detail = ident.func(cfg)
        status = "pass" if ok else "fail"
    except Exception as exc:  # reported, not raised: one broken identity must not hide the rest
        status, detail = "error", {"exception": f"{type(exc).__name__}: {exc}"}
    return {"id": ident.id, "property": ident.property, "status": status,
            "runtime": round(time.time() - t0, 3), "detail": _jsonable(detail)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def run_suite(name, cfg, jobs=1):
    """Records for suite ``name`` (or ``all``), sorted by identity id."""
    if name not in suite_names():
        raise KeyError(name)
    idents = [i for s in (SUITES.values() if name == "all" else [SUITES[name]]) for i in s]
    ids = [i.id for i in idents]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            recs = list(ex.map(run_identity, ids, [cfg] * len(ids)))
    else:
        recs = [run_identity(i, cfg) for i in ids]
    return sorted(recs, key=lambda r: r["id"])
