"""Acceptance run: the twelve criteria at their stated sizes and tolerances.

Run with pytest (the PASS/FAIL lines are printed in the terminal summary) or
directly: ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from qintertwine import suites
from qintertwine.cli.config import RunConfig, parse_caps

LINES = {}


def _cfg(n=2, N=1, beta=Fraction(0), caps="", q=None, q_mode="symbolic"):
    return RunConfig(n=n, N=N, beta=beta, q_mode=q_mode, q=q, caps=parse_caps(caps or None))


def _all(*checks):
    ok, detail = True, {}
    for name, func, cfg in checks:
        o, d = func(cfg)
        ok = ok and o
        detail[name] = d
    return ok, detail


def criterion_1():
    """Defining relations act as zero on all normal monomials of degree <= 6, n = 1, 2, 3 (<= 120 s)."""
    from qintertwine.uqmod import verify_module_relations
    t0 = time.time()
    bad = []
    for n in (1, 2, 3):
        rep = verify_module_relations(n, 6)
        bad += [f"n={n}: {k}" for k, (ok, _) in rep.items() if not ok]
    elapsed = time.time() - t0
    # the quotients at degree <= 4 (outside the timed part)
    q_ok, q_detail = suites.hopf_relations(_cfg(n=3, caps="deg=4"))
    if not q_ok:
        bad.append(f"quotients: {q_detail}")
    return not bad and elapsed <= 120, {"failing": bad, "seconds (degree 6, free)": round(elapsed, 1)}


def criterion_2():
    """q-Leibniz rule and (a f)* = S(a)* f* on random elements of degree <= 4."""
    cfg = _cfg(n=2, caps="deg=4,trials=10")
    return _all(("letter oracle", suites.module_normal_form_vs_leibniz, cfg),
                ("q-leibniz", suites.module_algebra_axiom, cfg),
                ("star", suites.module_star_compatibility, cfg))


def criterion_3():
    """t, tau central; K1, K2, t, tau intertwine; exchange relation normalises to 0; n <= 3 (<= 60 s)."""
    t0 = time.time()
    cfg = _cfg(n=3)
    ok, detail = _all(("central", suites.kernels_central, cfg),
                      ("intertwining", suites.kernels_intertwining, cfg),
                      ("exchange", suites.kernels_exchange, cfg))
    elapsed = time.time() - t0
    detail["seconds"] = round(elapsed, 1)
    return ok and elapsed <= 60, detail


def criterion_4():
    """K1K2, K2K1 and (K1K2)^m, m <= 3, intertwine."""
    return suites.kernels_closure(_cfg(n=2))


def criterion_5():
    """Series specialised at lambda = 0..3 equals the exact powers, n = 1, 2."""
    return suites.series_cross_path(_cfg(n=2))


def criterion_6():
    """Closed form of the lowest slot at 20 numeric points, relative error <= 1e-12."""
    return suites.series_closed_form(_cfg(n=3), n_points=20)


def criterion_7():
    """q-Pfaff forms agree to 1e-12 for l = 0..5; spherical l = 0 is exactly 1."""
    return suites.series_pfaff(_cfg())


def criterion_8():
    """Integration by parts on 50 random cases (n <= 2, M = 8) and positivity on 100; exact."""
    from qintertwine.integral import (Lattice, inner_product, integration_by_parts_check,
                                      random_basic_function, random_partner)
    from qintertwine.uqmod import HopfWord, act, all_generators
    rng = random.Random(8)
    lats = [Lattice(n, beta, M=8) for n in (1, 2) for beta in (Fraction(0), Fraction(1, 2))]
    quotients = ("hyperboloid", "cone")
    ibp = ibp_bad = 0
    k = 0
    while ibp < 50:
        lat, quotient = lats[k % len(lats)], quotients[(k // len(lats)) % 2]
        k += 1
        f1 = random_basic_function(rng, lat, quotient)
        gens = all_generators(lat.n)
        g = gens[rng.randrange(len(gens))]
        a = HopfWord.gen(g, field=lat.field)
        af1 = act(a, f1)
        if not af1:
            continue
        ibp += 1
        ibp_bad += integration_by_parts_check(a, f1, random_partner(rng, lat, af1), lat) != 0
    pos = pos_bad = 0
    while pos < 100:
        lat, quotient = lats[pos % len(lats)], quotients[(pos // len(lats)) % 2]
        f = random_basic_function(rng, lat, quotient)
        if not f:
            continue
        pos += 1
        pos_bad += not inner_product(f, f, lat) > 0
    return ibp_bad == 0 and pos_bad == 0, {"by-parts cases": ibp, "by-parts failures": ibp_bad,
                                           "positivity cases": pos, "positivity failures": pos_bad}


def criterion_9():
    """Representation relations on interior vectors (eps = 0, 1; n <= 2) and the trace formula."""
    cfg = _cfg(n=2)
    ok, detail = _all(("relations", suites.pi_relations, cfg), ("trace", suites.pi_trace_formula, cfg))
    cfg2 = _cfg(n=2, beta=Fraction(1, 2))
    o2, d2 = suites.pi_trace_formula(cfg2)
    detail["trace beta=1/2"] = d2
    return ok and o2, detail


def criterion_10():
    """Radon: resummation 1e-12; reconstruction at lambda = 0.5, 1, 1.7 to 1e-10; R0 intertwining; eigen identity."""
    cfg = _cfg(n=1, caps="tol=1e-10")
    return _all(("resummation", suites.radon_resummation, cfg),
                ("reconstruction", suites.radon_reconstruction, cfg),
                ("intertwining", suites.radon_intertwining, cfg),
                ("eigen identity", suites.radon_eigen, cfg))


def criterion_11():
    """Multi-copy exchange relations, commuting self-adjoint P_a, invariant K_a; n <= 2, N <= 3."""
    return suites.multicopy_relations(_cfg(n=2, N=3))


def criterion_12():
    """Engine: uniqueness, local confluence (random words <= 8, all length-3 overlaps), associativity."""
    cfg = _cfg(n=2, caps="trials=10")
    return _all(("uniqueness", suites.engine_uniqueness, cfg),
                ("bracketing", suites.engine_bracketing, cfg),
                ("overlaps", suites.engine_overlaps, cfg),
                ("associativity", suites.engine_associativity, cfg))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def run_criterion(k):
    func = CRITERIA[k - 1]
    t0 = time.time()
    try:
        ok, detail = func()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, {"exception": f"{type(exc).__name__}: {exc}"}
    status = "PASS" if ok else "FAIL"
    line = f"criterion {k:2d} {status}  ({time.time() - t0:6.1f} s)  {func.__doc__.strip()}"
    LINES[k] = line if ok else f"{line}\n    {detail}"
    return ok, detail


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k):
    ok, detail = run_criterion(k)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k in range(1, len(CRITERIA) + 1):
        results.append(run_criterion(k)[0])
        print(LINES[k], flush=True)
    sys.exit(0 if all(results) else 1)
