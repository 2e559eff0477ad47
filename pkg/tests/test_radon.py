from fractions import Fraction

import pytest

from qintertwine.freealg.element import Element
from qintertwine.radon import (RadonSetup, _extract_all, laurent_extract, radon_intertwining_check,
                               radon_kernel, reconstruction_error, eigen_identity_residual,
                               resummation_error)


@pytest.fixture(scope="module")
def setup():
    st = RadonSetup(n=1, q=0.5, beta=Fraction(1, 3), caps=(0, 12), M=3, window=(-40, 40))
    return st, _extract_all(st, st.S.kernel())


def test_box_and_values(setup):
    st, _ = setup
    assert len(st.box()) == 49 and len(st.box(2)) == 9
    v = st.values((0,), (1,))
    assert v[0] == 1.0 and v[2] == 0.0
    assert v[1] == pytest.approx(0.5 ** (2 / 3)) and v[3] == pytest.approx(0.5 ** (8 / 3))


def test_window_is_enforced(setup):
    st, _ = setup
    K = st.S.kernel()
    mid = K.terms[max(K.terms, key=st.KB.degree)]
    with pytest.raises(ValueError):
        laurent_extract(st, mid, (0,), (0,), window=(-2, 2))


def test_tail_is_small(setup):
    st, _ = setup
    K = st.S.kernel()
    for mid in K.terms.values():
        _, tail = laurent_extract(st, mid, (0,), (1,))
        assert tail < 1e-100


def test_resummation(setup):
    st, ext = setup
    assert resummation_error(st, [0.25, 0.5, 1.0, 1.7], ext) <= 1e-12


@pytest.mark.parametrize("lam", [0.5, 1, 1.7])
def test_reconstruction(setup, lam):
    st, ext = setup
    W = st.window[1]
    assert reconstruction_error(st, lam, range(-W - st.M, W + st.M + 1), ext) <= 1e-10


def test_reconstruction_needs_all_laurent_coefficients(setup):
    st, ext = setup
    assert reconstruction_error(st, 0.5, range(-3, 4), ext) > 1e-6


def test_R0_intertwines_and_perturbation_does_not(setup):
    st, ext = setup
    R0 = radon_kernel(st, 0, ext)
    assert max(radon_intertwining_check(st, R0).values()) <= 1e-10
    key = min(R0.terms, key=st.KB.degree)
    terms = dict(R0.terms)
    terms[key] = terms[key].scale(2.0)
    assert max(radon_intertwining_check(st, Element(st.KB, terms)).values()) > 1e-3


@pytest.mark.parametrize("j", [0, 1])
def test_eigen_identity(setup, j):
    st, ext = setup
    R = radon_kernel(st, j, ext)
    assert max(eigen_identity_residual(st, R, j, 1)) <= 1e-10
    # wrong eigenvalue
    assert max(eigen_identity_residual(st, R, j + 1, 1)) > 1e-3
