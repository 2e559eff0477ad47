from fractions import Fraction

import mpmath
import pytest

from qintertwine.qseries import (PhiSpec, PoissonPowerSeries, check_central_rewrite, check_qbinomial,
                                 f000000_closed_form, intertwining_residual, pfaff_sides, phi_eval,
                                 poisson_power_exact, semigroup_residual, spherical_zonal)
from qintertwine.scalar import FloatField, Scalar, qpoch


def test_phi_q_binomial_theorem():
    # 1Phi0(a;-;p,x) = (ax;p)_inf / (x;p)_inf
    v = phi_eval(PhiSpec((0.3,), (), 0.5, 0.4)).value
    assert v == pytest.approx(1.9951643508209078, rel=1e-14)
    assert v == pytest.approx(float(mpmath.qp(0.12, 0.5) / mpmath.qp(0.4, 0.5)), rel=1e-14)


def test_phi_q_gauss():
    a, b, c, p = 0.5, 0.6, 0.1, 0.5
    v = phi_eval(PhiSpec((a, b), (c,), p, c / (a * b))).value
    assert v == pytest.approx(1.2, rel=1e-13)


def test_phi_terminating_exact_chu_vandermonde():
    p, N, b, c = Fraction(1, 2), 3, Fraction(1, 3), Fraction(1, 5)
    v = phi_eval(PhiSpec((p ** -N, b), (c,), p, p, terminating=True))
    assert v.value == Fraction(119, 9234) == qpoch(c / b, p, N) / qpoch(c, p, N) * b ** N
    assert v.terms == 4 and v.tail == 0


def test_phi_divergence_reported():
    with pytest.raises(ArithmeticError):
        phi_eval(PhiSpec((0.5,), (), 0.5, 1.5, max_terms=50))
    with pytest.raises(ValueError):
        phi_eval(PhiSpec((0.2, 0.3, 0.4), (), 0.5, 0.1))


def test_spherical_frozen():
    assert spherical_zonal(0, Fraction(3, 10), Fraction(1, 2)) == 1
    assert spherical_zonal(0, 2) == 1
    assert spherical_zonal(1, Fraction(3, 10), Fraction(1, 2)) == Fraction(7, 4)
    assert spherical_zonal(1, 0.3, 0.5) == pytest.approx(1.75, rel=1e-15)
    assert str(spherical_zonal(1, Scalar(1))) == "q^-1 + 1 + q"
    with pytest.raises(ValueError):
        spherical_zonal(-1, 0.3, 0.5)


@pytest.mark.parametrize("q", [0.3, 0.7])
@pytest.mark.parametrize("l", range(6))
def test_pfaff(q, l):
    for x in (0.1, 0.5, 1.0):
        lhs, rhs = pfaff_sides(l, x, q)
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


@pytest.mark.parametrize("m", range(5))
def test_qbinomial_expansion(m):
    assert not check_qbinomial(m)


def test_central_rewrite():
    for lam in range(3):
        for m1 in range(lam + 1):
            for m2 in range(lam + 1):
                assert not check_central_rewrite(lam, m1, m2, 1)
    assert not check_central_rewrite(2, 1, 0, 2)


@pytest.mark.parametrize("n", [1, 2])
def test_cross_path_integer_powers(n):
    S = PoissonPowerSeries(n, caps=(3, 3))
    for lam in range(4 if n == 1 else 3):
        assert S.specialize(lam) == poisson_power_exact(lam, n)


def test_literal_constant_fails_cross_path():
    S = PoissonPowerSeries(1, caps=(3, 3), constant="literal")
    assert S.specialize(0) == poisson_power_exact(0, 1)
    assert S.specialize(1) != poisson_power_exact(1, 1)


def _numeric_series(I, constant="derived"):
    q = mpmath.mpf("0.5")
    return q, PoissonPowerSeries(1, (0, I), field=FloatField(q), constant=constant)


def test_closed_form_and_shifted_exponent_negative():
    with mpmath.workdps(40):
        q, S = _numeric_series(12)
        slot = S.slot(0, 0)
        x1 = mpmath.mpf("0.3")
        pt = S.point(x1)
        for lam in ("0.5", "1.7", "-1.3"):
            lam = mpmath.mpf(lam)
            v = S.eval_middle(slot, lam, pt, q)
            assert abs(v / f000000_closed_form(lam, x1, x1, 1, 1, q) - 1) < 1e-25
        lam = mpmath.mpf("0.5")
        wrong = f000000_closed_form(lam, x1, x1, 1, 1, q, exponent_shift=-1)
        assert abs(S.eval_middle(slot, lam, pt, q) / wrong - 1) > 0.1


def test_numeric_intertwining_and_semigroup():
    with mpmath.workdps(40):
        q, S = _numeric_series(16)
        pts = [S.point(q ** 2), S.point(q ** 5)]
        lam = mpmath.mpf("0.5")
        assert max(intertwining_residual(S, lam, pts).values()) < 1e-25
        assert semigroup_residual(S, lam, 1, pts) < 1e-25
        _, L = _numeric_series(16, constant="literal")
        assert max(intertwining_residual(L, lam, pts).values()) > 1e-3
