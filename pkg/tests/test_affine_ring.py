import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellkit.affine_ring import (
    AffineRing,
    is_finitely_generated_module,
    is_nilpotent,
    is_reduced,
    is_unit,
    is_zero_divisor,
    krull_dimension,
    laurent_ring,
    random_element,
)
from cellkit.coeffs import GF, QQ


def test_laurent_units():
    L = laurent_ring()
    ok, inv = is_unit(L.gen("t") ** 3)
    assert ok and inv == L.gen("s") ** 3
    assert not is_unit(L.gen("t") + L.one)[0]
    assert L.assumed_domain


def test_units_modulo_relations():
    B = AffineRing(("x",), [AffineRing(("x",)).poly_ring.parse("x^2")])
    ok, inv = is_unit(B.one + B.gen("x"))
    assert ok and inv == B.one - B.gen("x")
    assert not is_unit(B.gen("x"))[0]


def test_zero_divisors_and_nilpotents():
    B = AffineRing(("x", "y"), ["x*y", "y^2"])
    x, y = B.gens()
    assert is_zero_divisor(x) and is_zero_divisor(y)
    assert not is_zero_divisor(x + B.one)
    assert is_nilpotent(y) and not is_nilpotent(x)
    assert is_zero_divisor(B.zero)


@pytest.mark.parametrize(
    "vars_,rels,reduced",
    [
        ("xy", ["x*y"], True),
        ("xy", [], True),
        ("x", ["x^2"], False),
        ("x", ["x^2 - 1"], True),
        ("xyz", ["x*y", "y*z^2"], False),
        ("xy", ["x^2*y"], False),
        ("xy", ["x^2 - y^3"], True),
    ],
)
def test_reducedness_examples(vars_, rels, reduced):
    B = AffineRing(tuple(vars_), rels)
    v = is_reduced(B)
    assert v.affirmed is reduced and v.refuted is (not reduced)
    if not reduced:
        w = v.witness
        assert not w.is_zero() and is_nilpotent(w)


def test_reduced_over_finite_field_zero_dimensional():
    B = AffineRing(("x",), ["x^3 - x"], field=GF(3))
    assert is_reduced(B).affirmed
    C = AffineRing(("x",), ["x^3 - 1"], field=GF(3))  # (x - 1)^3
    assert is_reduced(C).refuted


def test_involution_checked():
    B = AffineRing(("x", "y"), ["x*y"], involution={"x": "y", "y": "x"})
    assert B.apply_involution(B.gen("x")) == B.gen("y")
    with pytest.raises(ValueError):
        AffineRing(("x", "y"), ["x*y - x"], involution={"x": "y", "y": "x"})


def test_finite_generation_and_dimension():
    B = AffineRing(("x", "y"))
    assert is_finitely_generated_module(B, ["x", "y"]) == (True, 1)
    assert is_finitely_generated_module(B, ["x"])[0] is False
    assert krull_dimension(AffineRing(("x", "y"), ["x*y"])) == 1
    assert krull_dimension(AffineRing(("x", "y"))) == 2


@given(st.integers(0, 2**32), st.sampled_from([QQ, GF(5)]))
def test_quotient_ring_arithmetic(seed, F):
    B = AffineRing(("x", "y"), ["x^2 - y", "y^2"], field=F)
    rng = random.Random(seed)
    a, b, c = (random_element(B, rng) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert B.reduce((a * b).rep) == (a * b).rep


def test_parent_mismatch_rejected():
    with pytest.raises(ValueError):
        AffineRing(("x",)).gen("x") + AffineRing(("y",)).gen("y")


def test_zero_ring():
    B = AffineRing(("x",), ["x", "x - 1"])
    assert B.is_zero_ring()
    assert not is_zero_divisor(B.zero)
