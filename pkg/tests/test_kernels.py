import pytest

from qintertwine.freealg import render
from qintertwine.freealg.api import check_centrality
from qintertwine.kernels import (build, is_intertwining, kernel_star, quasi_commutations,
                                 verify_K1K2_exchange, verify_multicopy)
from qintertwine.scalar import Scalar


def test_frozen_rank_one_kernels():
    assert render(build("K1", 1).value) == "z0 zeta0* - z1 zeta1*"
    assert render(build("K2", 1).value) == "z0* zeta0 - q^-2 * z1* zeta1"
    assert render(build("t", 1).value) == "x0"
    assert render(build("tau", 1).value) == "xi0"


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("name", ["K1", "K2", "t", "tau"])
def test_basic_kernels_intertwine(n, name):
    ok, res = is_intertwining(build(name, n).value)
    assert ok, res


@pytest.mark.parametrize("n", [1, 2, 3])
def test_t_tau_central(n):
    assert check_centrality(build("t", n).value)[0]
    assert check_centrality(build("tau", n).value)[0]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exchange_relation(n):
    assert not verify_K1K2_exchange(n)
    # the relation is specific to q^2
    assert verify_K1K2_exchange(n, exponent=3)


def test_products_intertwine():
    K1, K2 = build("K1", 1).value, build("K2", 1).value
    for k in (K1 * K2, K2 * K1, (K1 * K2) ** 2, (K1 * K2) ** 3):
        assert is_intertwining(k)[0]


def test_single_summand_is_not_intertwining():
    ok, res = is_intertwining(build("Kp", 2).value)
    assert not ok and res


@pytest.mark.parametrize("n", [1, 2])
def test_quasi_commutations(n):
    assert not any(quasi_commutations(n).values())


@pytest.mark.parametrize("n", [1, 2])
def test_K1_star_is_weighted_K2(n):
    K1, K2 = build("K1", n).value, build("K2", n).value
    assert kernel_star(K1) == K2.scale(Scalar.qpow(2 * n))


@pytest.mark.parametrize("n,N", [(1, 2), (1, 3), (2, 2)])
def test_multicopy_relations(n, N):
    rep = verify_multicopy(n, N)
    assert all(rep.values()), [k for k, v in rep.items() if not v]


def test_build_errors():
    with pytest.raises(ValueError):
        build("K9", 1)
    with pytest.raises(ValueError):
        build("K_i", 1, N=2, index=3)
    with pytest.raises(ValueError):
        build("K1", 1, N=2)
