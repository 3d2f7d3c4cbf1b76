import pytest
import sympy
from hypothesis import given

from cellkit.coeffs import GF, QQ
from cellkit.multipoly import LEX, PolyRing
from strategies import R2, R3, nonzero_polys, polys


@given(polys(R3), polys(R3), polys(R3))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys(R2), polys(R2))
def test_product_matches_sympy(a, b):
    x, y = sympy.symbols("x y")
    lhs = sympy.expand(sympy.sympify(str(a * b).replace("^", "**")))
    rhs = sympy.expand(sympy.sympify(str(a).replace("^", "**")) * sympy.sympify(str(b).replace("^", "**")))
    assert sympy.simplify(lhs - rhs) == 0


@given(polys(R3))
def test_parse_print_roundtrip(a):
    assert R3.parse(str(a)) == a


@given(nonzero_polys(R2), nonzero_polys(R2))
def test_exact_division(a, b):
    assert (a * b).exact_div(b) == a


@given(nonzero_polys(R2), nonzero_polys(R2))
def test_degree_additive(a, b):
    assert (a * b).total_degree() == a.total_degree() + b.total_degree()


def test_leading_term_under_orders():
    p = R2.parse("x*y^2 + x^2")
    assert R2.monomial((1, 2)) == R2.from_dict({p.lm: 1})
    q = PolyRing(["x", "y"], QQ, LEX).parse("x*y^2 + x^2")
    assert q.lm == (2, 0)


def test_parse_errors_have_positions():
    from cellkit.syntax import ParseError

    with pytest.raises(ParseError) as e:
        R2.parse("x + * y")
    d = e.value.diagnostics[0]
    assert (d.line, d.column) == (1, 5)
    with pytest.raises(ValueError):
        R2.parse("x + w")


def test_negative_powers_rejected():
    with pytest.raises(ValueError):
        R2.parse("x^-1")


def test_modular_coefficients_reduce():
    R = PolyRing(["x"], GF(3))
    assert R.parse("3*x + 4") == R.parse("1")
    assert (R.parse("x + 1") ** 3) == R.parse("x^3 + 1")


def test_derivative_and_substitution():
    p = R2.parse("x^3*y + 2*x")
    assert p.derivative("x") == R2.parse("3*x^2*y + 2")
    assert p.substitute({"y": R2.parse("x")}) == R2.parse("x^4 + 2*x")
