import random
from fractions import Fraction

import pytest

from qintertwine.integral import (Lattice, LatticeFn, PiRep, SqrtNum, basic_function, check_pi_relations,
                                  inner_product, integrate, integration_by_parts_check, random_basic_function,
                                  random_partner, trace_formula_check)
from qintertwine.uqmod import HopfWord, act, all_generators, antipode

ZERO1 = ((0, 0), (0, 0))


def test_lattice_and_frozen_integral():
    lat = Lattice(1, Fraction(0), M=8)
    assert lat.q2 == Fraction(1, 16)
    assert lat.x((1,)) == (Fraction(1, 16),)
    f = basic_function(lat, "cone", {ZERO1: {(1,): Fraction(1)}})
    # (1 - q^2) x_1 at the point m = 1
    assert integrate(f, lat) == Fraction(15, 256)
    lat2 = Lattice(2, Fraction(1, 2), M=4)
    assert all(m[0] < m[1] for m in lat2.points())


def test_integral_rejects_off_lattice_support():
    lat = Lattice(2, Fraction(0), M=4)
    f = basic_function(lat, "cone", {((0, 0, 0), (0, 0, 0)): {(1, 1): Fraction(1)}})
    with pytest.raises(ValueError):
        integrate(f, lat)
    assert integrate(f, lat, strict=False) == 0
    with pytest.raises(ValueError):
        basic_function(lat, "cone", {((1, 0, 0), (1, 0, 0)): {(0, 1): Fraction(1)}})


def _ibp_cases(rng, lat, quotient, trials, inverse=False):
    cases = bad = 0
    for _ in range(trials):
        f1 = random_basic_function(rng, lat, quotient)
        for g in all_generators(lat.n):
            a = HopfWord.gen(g, field=lat.field)
            af1 = act(a, f1)
            if not af1:
                continue
            f2 = random_partner(rng, lat, af1)
            cases += 1
            if inverse:
                d = integrate(af1 * f2, lat) - integrate(f1 * act(antipode(a, inverse=True), f2), lat)
            else:
                d = integration_by_parts_check(a, f1, f2, lat)
            bad += d != 0
    return cases, bad


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("quotient", ["hyperboloid", "cone"])
def test_integration_by_parts(n, quotient):
    lat = Lattice(n, Fraction(0), M=8)
    cases, bad = _ibp_cases(random.Random(n), lat, quotient, 4)
    assert cases > 0 and bad == 0


def test_integration_by_parts_with_inverse_antipode_fails():
    lat = Lattice(1, Fraction(0), M=8)
    cases, bad = _ibp_cases(random.Random(0), lat, "hyperboloid", 5, inverse=True)
    assert bad > 0


def test_positivity():
    rng = random.Random(3)
    for n in (1, 2):
        lat = Lattice(n, Fraction(1, 2), M=8)
        for quotient in ("hyperboloid", "cone"):
            for _ in range(5):
                f = random_basic_function(rng, lat, quotient)
                if f:
                    assert inner_product(f, f, lat) > 0


def test_sqrtnum_arithmetic():
    a = SqrtNum.const(Fraction(1, 2))
    assert a + a == SqrtNum.const(1)
    assert not (a - a)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("eps", [0, 1])
def test_pi_relations(n, eps):
    assert check_pi_relations(PiRep(n, eps, Fraction(1, 2), B=4 if n == 2 else 6)) == []


def test_pi_without_square_roots_fails():
    bad = check_pi_relations(PiRep(1, 1, Fraction(0), B=6, literal=True))
    assert "[z0, z0*]" in bad


@pytest.mark.parametrize("n,eps", [(1, 0), (1, 1), (2, 1)])
def test_trace_formula(n, eps):
    rep = PiRep(n, eps, Fraction(0), B=4)
    pts = [rep.m_of(j) for j in rep.box()]
    fn = LatticeFn(rep.lat, {pts[0]: Fraction(3, 2), pts[len(pts) // 2]: Fraction(-1, 3)})
    lhs, rhs = trace_formula_check(fn, rep)
    assert lhs != 0
    assert rhs == SqrtNum.const(lhs)


def test_pi_rejects_bad_eps():
    with pytest.raises(ValueError):
        PiRep(1, 2)
