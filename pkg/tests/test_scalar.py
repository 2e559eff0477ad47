import math
from fractions import Fraction

import pytest

from qintertwine.scalar import SYMBOLIC, FloatField, LaurentU, RationalField, Scalar, qbinom, qpoch

q = Scalar.qpow(1)


def test_qpoch_finite_exact():
    assert qpoch(Fraction(1, 2), Fraction(1, 2), 3) == Fraction(21, 64)
    assert qpoch(Fraction(1, 3), Fraction(1, 2), 0) == 1


def test_qpoch_infinite_known_constant():
    # (1/2; 1/2)_inf
    assert qpoch(0.5, 0.5, math.inf, 1e-18) == pytest.approx(0.28878809508660242, rel=1e-15)


def test_qbinom_values():
    assert qbinom(4, 2, 2) == 35
    assert qbinom(5, 0, Fraction(1, 3)) == 1
    t = q * q
    assert qbinom(2, 1, t) == 1 + t
    with pytest.raises(ValueError):
        qbinom(2, 3, t)


def test_qbinom_symmetry_and_pascal():
    t = q * q
    for m in range(1, 6):
        for k in range(1, m):
            assert qbinom(m, k, t) == qbinom(m, m - k, t)
            assert qbinom(m, k, t) == qbinom(m - 1, k - 1, t) + t ** k * qbinom(m - 1, k, t)


def test_scalar_arithmetic_and_printing():
    assert (q - 1 / q) * (q + 1 / q) == q ** 2 - q ** -2
    assert str(Scalar.qpow(-1)) == "q^-1"
    assert str(Scalar.spow(1)) == "q^(1/2)"
    assert (q ** 3 / q ** 3) == 1
    assert ((q + 1) / (q * q - 1)) == 1 / (q - 1)
    assert Scalar(Fraction(3, 4)).to_fraction() == Fraction(3, 4)
    assert not (q - q)


def test_scalar_evaluation():
    assert (q ** 2 + 1).at_q(Fraction(1, 2)) == Fraction(5, 4)
    assert Scalar.spow(1).at_s(Fraction(1, 3)) == Fraction(1, 3)


def test_rational_field_half_powers():
    F = RationalField(Fraction(1, 2), 2)
    assert F.qval == Fraction(1, 4)
    assert F.spow(1) == Fraction(1, 2)
    assert F.convert(q + 1) == Fraction(5, 4)
    G = RationalField.for_beta(Fraction(1, 2), Fraction(1, 3))
    assert G.D == 6 and G.qpow(Fraction(1, 3)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        RationalField(Fraction(3, 2))


def test_float_field():
    F = FloatField(0.25)
    assert F.spow(1) == 0.5
    assert F.convert(Fraction(1, 4)) == 0.25
    assert F.convert(q) == 0.25
    with pytest.raises(ValueError):
        FloatField(1.5)


def test_symbolic_field_conversions():
    assert SYMBOLIC.convert(2) == Scalar(2)
    assert SYMBOLIC.qpow(Fraction(1, 2)) == Scalar.spow(1)


def test_laurent_window_and_clipping():
    a = LaurentU({-1: 1, 1: 2}, (-2, 2))
    b = LaurentU({2: 1}, (-2, 2))
    p = a * b
    assert p[1] == 1 and p.clipped
    assert (a + b)[2] == 1 and not (a + b).clipped
    assert a(2.0) == pytest.approx(0.5 + 4.0)
    assert a.negative_support() == [-1]
    with pytest.raises(ValueError):
        LaurentU({3: 1}, (-2, 2))
    with pytest.raises(ValueError):
        a + LaurentU({}, (-3, 3))
