from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellkit.coeffs import GF, QQ

PRIMES = [2, 3, 7, 101, 2**31 - 1]


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    a, b, c = F(a), F(b), F(c)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one


@given(st.fractions(), st.fractions().filter(bool))
def test_rational_division_is_exact(a, b):
    assert QQ.mul(QQ.div(a, b), b) == a


def test_gf_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(1)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


@given(st.fractions())
def test_rational_parse_format_roundtrip(a):
    assert QQ.parse(QQ.format(a)) == a


def test_characteristic():
    assert QQ.characteristic == 0
    assert GF(7).characteristic == 7
    assert GF(7)(-1) == 6
