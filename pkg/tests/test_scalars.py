from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from obddkit.scalars import (
    ONE,
    ZERO,
    ExactProbability,
    ExactScalar,
    InexactArithmeticError,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


def test_sin_zero_iff_denominator_divides():
    # sin(pi * a/b) = 0 exactly when b | a
    for b in range(1, 65):
        for a in range(-2 * b, 2 * b + 1):
            s = ExactScalar.sinpi(Fraction(a, b))
            assert s.is_zero() == (a % b == 0), (a, b)


def test_cos_zero_at_half_turns():
    for b in range(1, 33):
        for a in range(-2 * b, 2 * b + 1):
            c = ExactScalar.cospi(Fraction(a, b))
            assert c.is_zero() == (Fraction(a, b) % 1 == Fraction(1, 2)), (a, b)


def test_special_angles_fold_to_rationals():
    assert ExactScalar.sinpi(Fraction(1, 2)) == 1
    assert ExactScalar.sinpi(Fraction(3, 2)) == -1
    assert ExactScalar.cospi(0) == 1
    assert ExactScalar.cospi(1) == -1
    assert ExactScalar.sinpi(7) .is_zero()


def test_angle_wrap_extracts_sign():
    # fn(pi(t+1)) = -fn(pi t)
    t = Fraction(2, 7)
    assert ExactScalar.sinpi(t + 1) == -ExactScalar.sinpi(t)
    assert ExactScalar.cospi(t + 3) == -ExactScalar.cospi(t)
    assert ExactScalar.cospi(t + 2) == ExactScalar.cospi(t)


@given(rationals, rationals, rationals)
def test_rational_arithmetic_assoc_comm(a, b, c):
    sa, sb, sc = ExactScalar(a), ExactScalar(b), ExactScalar(c)
    assert (sa + sb) + sc == sa + (sb + sc)
    assert sa + sb == sb + sa
    assert (sa * sb) * sc == sa * (sb * sc)
    assert sa * sb == sb * sa
    assert sa * (sb + sc) == sa * sb + sa * sc


@given(rationals, rationals)
def test_rational_reduction_stable(a, b):
    x = ExactScalar(a) * ExactScalar(b)
    assert x.as_fraction() == a * b
    assert x.q.denominator > 0
    y = ExactScalar(a) + ExactScalar(b)
    assert y.as_fraction() == a + b


def test_trig_products_commute_and_merge():
    s = ExactScalar.sinpi(Fraction(1, 5))
    c = ExactScalar.cospi(Fraction(2, 7))
    assert s * c == c * s
    sq = s * s
    assert sq.factors == (("sin", Fraction(1, 5)), ("sin", Fraction(1, 5)))
    assert (sq + sq).q == 2


def test_sqrt2_powers_fold():
    h = ExactScalar.sqrt2_power(-1)
    assert (h * h).as_fraction() == Fraction(1, 2)
    assert (h * ExactScalar.sqrt2_power(3)).as_fraction() == 2
    assert float(ExactScalar.sqrt2_power(1)) == pytest.approx(2 ** 0.5)


def test_unrelated_addition_raises():
    s = ExactScalar.sinpi(Fraction(1, 5))
    c = ExactScalar.cospi(Fraction(1, 5))
    with pytest.raises(InexactArithmeticError):
        _ = s + c
    with pytest.raises(InexactArithmeticError):
        _ = s + ExactScalar(1)
    # like terms are fine
    assert (s + s).q == 2
    assert (s - s).is_zero()
    assert (s + ZERO) == s


def test_division_cancels_factors():
    s = ExactScalar.sinpi(Fraction(1, 5))
    c = ExactScalar.cospi(Fraction(2, 5))
    prod = s * c * 3
    assert prod / c == s * 3
    assert prod / s / c == ExactScalar(3)
    with pytest.raises(InexactArithmeticError):
        _ = ExactScalar(1) / s
    with pytest.raises(ZeroDivisionError):
        _ = s / ZERO


def test_equality_is_angle_congruence_mod_2pi():
    t = Fraction(3, 11)
    assert ExactScalar.sinpi(t) == ExactScalar.sinpi(t + 2)
    assert ExactScalar.cospi(t) == ExactScalar.cospi(t - 4)
    assert ExactScalar.sinpi(t) != ExactScalar.sinpi(t + Fraction(1, 11))


def test_float_shadow_accuracy():
    import math

    t = Fraction(2, 5)
    s = ExactScalar.sinpi(t) * ExactScalar.cospi(Fraction(1, 7))
    want = math.sin(math.pi * 2 / 5) * math.cos(math.pi / 7)
    assert abs(float(s) - want) < 1e-12


def test_render_forms():
    assert ZERO.render() == "0"
    assert ONE.render() == "1"
    assert ExactScalar(Fraction(-1, 2)).render() == "-1/2"
    s = ExactScalar.sinpi(Fraction(2, 5))
    assert (s * s).render() == "sin^2(2*pi/5)"
    assert (-s).render() == "-sin(2*pi/5)"


def test_probability_pythagorean_merge():
    t = Fraction(3, 7)
    s = ExactScalar.sinpi(t)
    c = ExactScalar.cospi(t)
    p = ExactProbability((s * s, c * c))
    assert p.as_fraction() == 1
    # with a common cofactor
    h = ExactScalar.sqrt2_power(-1)
    p2 = ExactProbability((h * s * (h * s), h * c * (h * c)))
    assert p2.as_fraction() == Fraction(1, 2)


def test_probability_zero_test_is_termwise():
    s = ExactScalar.sinpi(Fraction(1, 5))
    p = ExactProbability((s * s, ZERO))
    assert not p.is_zero()
    assert ExactProbability(()).is_zero()
    assert ExactProbability((ZERO, ZERO)).is_zero()


def test_probability_product_is_cross_terms():
    s = ExactScalar.sinpi(Fraction(1, 5))
    c = ExactScalar.sinpi(Fraction(1, 3))
    p = ExactProbability((s * s,))
    q = ExactProbability((c * c,))
    assert float(p * q) == pytest.approx(float(p) * float(q))
    assert (p * ExactProbability.zero()).is_zero()
    assert (p * ExactProbability.one()) == p


def test_probability_rejects_negative_terms():
    with pytest.raises(ValueError):
        ExactProbability((ExactScalar(-1),))


@settings(max_examples=200)
@given(st.integers(-40, 40), st.integers(1, 40))
def test_squared_sine_matches_float(a, b):
    import math

    s = ExactScalar.sinpi(Fraction(a, b))
    assert abs(float(s * s) - math.sin(math.pi * a / b) ** 2) < 1e-12
