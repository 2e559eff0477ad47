import random

import pytest

from qintertwine.freealg import Element, algebra, kernel_algebra, render, to_json
from qintertwine.freealg.api import check_centrality, quotient_project, x, xi, z, zeta, zetas, zs
from qintertwine.freealg.checks import (associativity_check, basis_roundtrip_check, bracketing_check,
                                        overlap_check)
from qintertwine.kernels import multi_copy_kernel_algebra
from qintertwine.scalar import Scalar
from qintertwine.uqmod import normal_monomials

q = Scalar.qpow(1)

# frozen normal forms (n = 1 unless stated)
ORACLES = [
    (lambda a: z(a, 1) * z(a, 0), "q^-1 * z0 z1"),
    (lambda a: z(a, 0) * zs(a, 0), "x0 + x1"),
    (lambda a: z(a, 1) * zs(a, 1), "x1"),
    (lambda a: z(a, 0) * zs(a, 1), "q * z1* z0"),
    (lambda a: z(a, 0) * x(a, 1), "q^2 * x1 z0"),
    (lambda a: (z(a, 0) * z(a, 1)).scale(q).star(), "q^2 * z0* z1*"),
]


@pytest.mark.parametrize("build,expected", ORACLES)
def test_frozen_normal_forms(build, expected):
    assert render(build(algebra(1))) == expected


def test_rank_two_and_quotients():
    a2 = algebra(2)
    assert render(z(a2, 2) * z(a2, 1)) == "q^-1 * z1 z2"
    assert render(z(a2, 1) * zs(a2, 1)) == "x1 - x2"
    h = algebra(1, "hyperboloid")
    assert render(z(h, 0) * zs(h, 0)) == "1 + x1"
    assert render(x(algebra(1, "cone"), 0)) == "0"
    e = z(algebra(1), 0) * zs(algebra(1), 0)
    assert quotient_project(e, "hyperboloid") == z(h, 0) * zs(h, 0)


def test_json_schema():
    a = algebra(1)
    js = to_json(z(a, 1) * z(a, 0))
    assert js == {"schema": 1, "terms": [{"I": [0, 0], "J": [1, 1], "Iprime": [], "Jprime": [],
                                          "x": [0, 0], "xi": [], "coeff": "q^-1"}]}


def test_x_variables_central_only_for_x0():
    for n in (1, 2):
        a = algebra(n)
        assert check_centrality(x(a, 0))[0]
        assert not check_centrality(x(a, 1))[0]


def test_star_is_involution():
    rng = random.Random(0)
    from qintertwine.freealg.checks import random_element
    for alg in (algebra(2), algebra(1, "hyperboloid"), kernel_algebra(1, "free", "free")):
        for _ in range(5):
            e = random_element(rng, alg)
            assert e.star().star() == e
            f = random_element(rng, alg)
            assert (e * f).star() == f.star() * e.star()


def test_kernel_factors_commute():
    KA = kernel_algebra(2, "free", "free")
    for j in range(3):
        for k in range(3):
            assert z(KA, j) * zeta(KA, k) == zeta(KA, k) * z(KA, j)
            assert zs(KA, j) * zetas(KA, k) == zetas(KA, k) * zs(KA, j)
    assert check_centrality(xi(KA, 0))[0]


def test_opposite_multiplication_in_second_factor():
    KA = kernel_algebra(1, "free", "free")
    a = algebra(1)
    # zeta_1 zeta_0 in F^op is z_0 z_1 in F
    lhs = zeta(KA, 1) * zeta(KA, 0)
    rhs = zeta(KA, 0) * zeta(KA, 1)
    assert render(z(a, 1) * z(a, 0)) == "q^-1 * z0 z1"
    assert lhs == rhs.scale(q)


@pytest.mark.parametrize("n", [1, 2])
def test_engine_soundness(n):
    rng = random.Random(n)
    for alg in (algebra(n), algebra(n, "cone"), algebra(n, "hyperboloid")):
        assert bracketing_check(rng, alg, trials=20) == []
        assert overlap_check(alg) == []
        assert basis_roundtrip_check(alg, normal_monomials(alg, 4)) == []
        assert associativity_check(rng, alg, trials=5) == 0
    assert associativity_check(rng, kernel_algebra(n, "free", "free"), trials=5) == 0


def test_multicopy_confluence():
    for n in (1, 2):
        for N in (2, 3):
            assert multi_copy_kernel_algebra(n, N).left.check_local_confluence() == []


def test_mismatched_algebras_rejected():
    from qintertwine.freealg.api import multiply
    with pytest.raises(ValueError):
        multiply(z(algebra(1), 0), z(algebra(2), 0))
    assert isinstance(Element.scalar(algebra(1)), Element)
