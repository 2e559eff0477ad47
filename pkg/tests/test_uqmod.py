import random

import pytest

from qintertwine.freealg import render
from qintertwine.freealg.api import algebra, x, z, zs
from qintertwine.uqmod import (HopfGenerator, HopfWord, K_minus, K_plus, X_minus, X_plus, act,
                               all_generators, antipode, check_module_algebra,
                               check_star_compatibility, coproduct, counit, leibniz_oracle,
                               normal_monomials, star_hopf, verify_module_relations)

a1 = algebra(1)

# frozen actions on the rank-one algebra
ACTIONS = [
    ("X+", lambda: x(a1, 1) * x(a1, 1), "(q^(1/2) + q^(5/2)) * z1* x1 z0"),
    ("X-", lambda: x(a1, 1) * x(a1, 1), "(q^(3/2) + q^(7/2)) * z0* x1 z1"),
    ("X+", lambda: z(a1, 1), "z0"),
    ("X+", lambda: z(a1, 0), "0"),
    ("X-", lambda: z(a1, 0), "z1"),
    ("X-", lambda: zs(a1, 1), "q * z0*"),
    ("K+", lambda: z(a1, 0), "q^(1/2) * z0"),
    ("K+", lambda: z(a1, 1), "q^(-1/2) * z1"),
    ("K-", lambda: zs(a1, 1), "q^(-1/2) * z1*"),
    ("K+", lambda: x(a1, 1) * x(a1, 1), "x1^2"),
]


@pytest.mark.parametrize("kind,elem,expected", ACTIONS)
def test_frozen_actions(kind, elem, expected):
    assert render(act(HopfGenerator(kind, 1), elem())) == expected


def test_hopf_structure():
    assert repr(antipode(X_plus(1))) == "(-q^-1) X1+"
    assert repr(antipode(X_plus(1), inverse=True)) == "(-q) X1+"
    assert repr(star_hopf(X_plus(1))) == "(-1) X1-"
    assert antipode(antipode(K_plus(2)), inverse=True) == K_plus(2)
    assert counit(K_plus(1) * K_minus(1)) == 1
    assert counit(X_minus(1)) == 0
    g = HopfGenerator("X+", 1)
    assert coproduct(g) == [(HopfGenerator("K+", 1), g), (g, HopfGenerator("K-", 1))]


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("quotient", ["free", "cone", "hyperboloid"])
def test_relations_act_as_zero(n, quotient):
    rep = verify_module_relations(n, 4, quotient)
    assert all(ok for ok, _ in rep.values()), [k for k, (ok, _) in rep.items() if not ok]


def test_alternative_serre_sign_fails():
    rep = verify_module_relations(2, 3, serre_exponent=+1)
    failing = {k for k, (ok, _) in rep.items() if not ok}
    assert failing == {"Serre X1+,X2+", "Serre X2+,X1+", "Serre X1-,X2-", "Serre X2-,X1-"}


@pytest.mark.parametrize("n", [1, 2])
def test_normal_form_action_matches_letter_oracle(n):
    alg = algebra(n)
    for m in normal_monomials(alg, 3):
        for g in all_generators(n):
            assert act(g, m) == leibniz_oracle(g, m)


def _pairs(rng, alg, count):
    monos = normal_monomials(alg, 2)
    pick = lambda: monos[rng.randrange(len(monos))] + monos[rng.randrange(len(monos))].scale(2)
    return [(pick(), pick()) for _ in range(count)]


@pytest.mark.parametrize("quotient", ["free", "hyperboloid"])
def test_q_leibniz(quotient):
    rng = random.Random(1)
    alg = algebra(2, quotient)
    for e1, e2 in _pairs(rng, alg, 4):
        for g in all_generators(2):
            assert not check_module_algebra(g, e1, e2)


def test_star_compatibility_and_k_swap_negative():
    a2 = algebra(2)
    e = z(a2, 1) * zs(a2, 2) + zs(a2, 0)
    assert not any(check_star_compatibility(g, e) for g in all_generators(2))
    bad = [g for g in all_generators(2) if check_star_compatibility(g, e, k_swap=True)]
    assert bad and all(g.kind[0] == "K" for g in bad)


def test_action_of_products_is_composition():
    a2 = algebra(2)
    e = z(a2, 0) * zs(a2, 2)
    w = X_plus(2) * X_minus(1)
    assert act(w, e) == act(X_plus(2), act(X_minus(1), e))
    assert act(HopfWord.one(), e) == e
