"""Ring axioms and claim bookkeeping for the truncated polynomial model."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kverify.polyring import (
    INTEGRAL,
    RATIONAL,
    Claim,
    DomainClaimError,
    KClass,
    SingularInversion,
    SuspensionClass,
    TruncationMismatch,
    k_inverted,
    line_power,
    p_local,
    suspend,
)

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def kclass_tuples(draw, count=2, integral=False):
    """``count`` classes sharing one truncation, RATIONAL claim by default."""
    truncation = draw(st.integers(min_value=0, max_value=5))
    entry = small_ints if integral else small_fractions
    claim = INTEGRAL if integral else RATIONAL
    out = []
    for _ in range(count):
        coeffs = draw(st.lists(entry, min_size=1, max_size=truncation + 1))
        out.append(KClass(coeffs, truncation, claim))
    return tuple(out)


@settings(max_examples=60)
@given(kclass_tuples(count=3))
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    n = f.truncation
    assert f + KClass.zero(n) == f
    assert f * KClass.one(n) == f
    assert f + (-f) == KClass.zero(n)


@settings(max_examples=40)
@given(kclass_tuples(count=1), small_fractions, small_fractions)
def test_scalar_action(fs, a, b):
    (f,) = fs
    assert a * f == f * a
    assert (a + b) * f == a * f + b * f
    assert a * (b * f) == (a * b) * f
    if b != 0:
        assert (f / b) * b == f


@settings(max_examples=40)
@given(kclass_tuples(count=1, integral=True), st.integers(min_value=0, max_value=5))
def test_power_is_repeated_product(fs, n):
    (f,) = fs
    expected = KClass.one(f.truncation)
    for _ in range(n):
        expected = expected * f
    assert f**n == expected


@settings(max_examples=40)
@given(kclass_tuples(count=1), small_fractions)
def test_inverse_when_augmentation_nonzero(fs, unit):
    (f,) = fs
    g = f - f.augmentation + unit  # force a chosen augmentation
    if unit == 0:
        with pytest.raises(SingularInversion):
            g.invert()
    else:
        assert g * g.invert() == KClass.one(f.truncation)
        assert g**-1 == g.invert()


def test_truncation_mismatch_raises():
    with pytest.raises(TruncationMismatch):
        KClass([1, 2], 3) + KClass([1], 4)
    with pytest.raises(TruncationMismatch):
        KClass([1, 2], 3) * KClass([1], 4)


def test_truncation_discards_high_terms():
    f = KClass([0, 0, 0, 5], 2)
    assert f.is_zero()
    assert KClass([1, 2, 3, 4], 2) == KClass([1, 2, 3], 2)


def test_equality_ignores_claim():
    assert KClass([1, 2], 3, INTEGRAL) == KClass([1, 2], 3, RATIONAL)
    assert hash(KClass([1, 2], 3, INTEGRAL)) == hash(KClass([1, 2], 3, RATIONAL))
    assert KClass([7], 2) == 7
    assert KClass([0, 1], 2) != 0


def test_coefficient_accessors():
    f = KClass([1, Fraction(1, 2)], 4, RATIONAL)
    assert f.augmentation == 1
    assert f.coefficient(1) == Fraction(1, 2)
    assert f.coefficient(4) == 0
    with pytest.raises(IndexError):
        f.coefficient(5)


def test_json_dict():
    f = KClass([1, Fraction(-1, 3)], 2, p_local(2))
    assert f.to_json_dict() == {
        "truncation": 2,
        "claim": "p-local(2)",
        "coeffs": ["1/1", "-1/3", "0/1"],
    }


# -- claims -----------------------------------------------------------------


def test_claim_admits():
    third = Fraction(1, 3)
    assert INTEGRAL.admits(4) and not INTEGRAL.admits(third)
    assert p_local(2).admits(third) and not p_local(3).admits(third)
    assert k_inverted(6).admits(Fraction(5, 12))
    assert not k_inverted(6).admits(Fraction(1, 5))
    assert RATIONAL.admits(third)


def test_claim_admits_unit():
    assert INTEGRAL.admits_unit(-1) and not INTEGRAL.admits_unit(2)
    assert p_local(3).admits_unit(Fraction(2, 5))
    assert not p_local(3).admits_unit(Fraction(3, 5))
    assert not p_local(3).admits_unit(Fraction(5, 3))
    assert k_inverted(6).admits_unit(Fraction(4, 9))
    assert not k_inverted(6).admits_unit(5)
    assert not RATIONAL.admits_unit(0)


def test_claim_join_lattice():
    assert INTEGRAL.join(p_local(5)) == p_local(5)
    assert p_local(5).join(RATIONAL) == RATIONAL
    assert p_local(3).join(p_local(5)) == RATIONAL
    # Z[1/k] lands in Z_(p) exactly when p does not divide k
    assert k_inverted(6).join(p_local(5)) == p_local(5)
    assert k_inverted(6).join(p_local(3)) == RATIONAL
    assert k_inverted(4).join(k_inverted(4)) == k_inverted(4)
    assert k_inverted(4).join(k_inverted(6)) == RATIONAL


def test_claim_validation_on_construction():
    with pytest.raises(DomainClaimError):
        KClass([Fraction(1, 2)], 2, INTEGRAL)
    with pytest.raises(DomainClaimError):
        KClass([Fraction(1, 3)], 2, p_local(3))
    KClass([Fraction(1, 3)], 2, p_local(2))  # fine
    with pytest.raises(DomainClaimError):
        KClass([Fraction(1, 2)], 1, INTEGRAL).with_claim(INTEGRAL)


def test_claim_constructor_rejects_bad_parameters():
    with pytest.raises(ValueError):
        Claim("integral", 3)
    with pytest.raises(ValueError):
        Claim("p-local", 4)
    with pytest.raises(ValueError):
        Claim("k-inverted", 1)
    with pytest.raises(ValueError):
        Claim("mystery")


def test_invert_requires_unit_augmentation_under_claim():
    f = KClass([2, 1], 3, INTEGRAL)
    with pytest.raises(DomainClaimError):
        f.invert()
    g = f.with_claim(k_inverted(2))
    assert g * g.invert() == KClass.one(3)
    assert g.invert().claim == k_inverted(2)


# -- powers of the line class -----------------------------------------------


def test_line_power_small_cases():
    assert line_power(0, 3) == KClass.one(3)
    assert line_power(1, 3) == KClass([1, 1], 3)
    assert line_power(2, 3) == KClass([1, 2, 1], 3)
    # geometric series for the inverse line
    assert line_power(-1, 4) == KClass([1, -1, 1, -1, 1], 4)


@settings(max_examples=40)
@given(
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=0, max_value=6),
)
def test_line_power_is_multiplicative(a, b, truncation):
    lhs = line_power(a, truncation) * line_power(b, truncation)
    assert lhs == line_power(a + b, truncation)
    assert line_power(a, truncation).claim == INTEGRAL


def test_line_power_inverse_route():
    # the binomial formula for negative exponents agrees with ring inversion
    for a in (1, 2, 3):
        assert line_power(-a, 5) == line_power(a, 5).invert()


# -- suspension classes -----------------------------------------------------


def test_suspension_square_zero():
    s = suspend(KClass([0, 1], 3))
    t = suspend(KClass([1, 2], 3))
    assert (s * t).is_zero()
    assert (s**2).is_zero()
    assert s**1 == s
    with pytest.raises(ValueError):
        s**0


def test_suspension_module_structure():
    f = KClass([1, 1], 3)
    s = suspend(KClass([0, 1], 3))
    assert f * s == SuspensionClass(f * s.base)
    assert 3 * s == s * 3
    assert (s + s) - s == s
    assert (-s) + s == SuspensionClass.zero(3)
    assert (s / 2).base == s.base / 2


def test_suspension_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        suspend(KClass([1], 2)) * suspend(KClass([1], 3))
