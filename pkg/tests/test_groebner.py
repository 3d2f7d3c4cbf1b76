import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cellkit.coeffs import GF, QQ
from cellkit.groebner import (
    BudgetExceeded,
    Ideal,
    budget_scope,
    ideal_equal,
    ideal_intersection,
    ideal_member,
    ideal_quotient,
    krull_dim,
    normal_form,
    radical_member,
    reduced_groebner_basis,
    standard_monomials,
)
from cellkit.multipoly import LEX, PolyRing
from oracles import truncated_membership
from strategies import R2, R3, membership_queries, nonzero_polys, polys


def _sympy_basis(gens, ring, order="grevlex"):
    syms = sympy.symbols(" ".join(ring.variables))
    exprs = [sympy.sympify(str(g).replace("^", "**")) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order, domain="QQ")
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *syms)
        out.add(sympy.expand(P.as_expr() / P.LC(order=order)))
    return out


def _as_sympy(basis):
    return {sympy.expand(sympy.sympify(str(g).replace("^", "**"))) for g in basis}


@settings(max_examples=40)
@given(st.lists(nonzero_polys(R2, max_terms=3, max_exp=2), min_size=1, max_size=3))
def test_reduced_basis_matches_sympy(gens):
    assert _as_sympy(reduced_groebner_basis(Ideal(R2, gens))) == _sympy_basis(gens, R2)


@settings(max_examples=25)
@given(st.lists(nonzero_polys(R2, max_terms=2, max_exp=2), min_size=1, max_size=2))
def test_lex_basis_matches_sympy(gens):
    got = reduced_groebner_basis(Ideal(R2, gens), LEX)
    assert _as_sympy(got) == _sympy_basis(gens, R2, "lex")


@settings(max_examples=30)
@given(st.lists(nonzero_polys(R3, max_terms=2, max_exp=2), min_size=1, max_size=3), polys(R3))
def test_normal_form_is_canonical(gens, f):
    I = Ideal(R3, gens)
    r = normal_form(f, I)
    assert ideal_member(f - r, I)
    assert normal_form(r, I) == r
    lms = [g.lm for g in reduced_groebner_basis(I)]
    for m, _ in r.terms:
        assert not any(all(a >= b for a, b in zip(m, lm)) for lm in lms)


def test_membership_agrees_with_sympy_both_ways():
    syms = sympy.symbols("x y")
    for f, gens in membership_queries(11, 60):
        G = sympy.groebner([sympy.sympify(str(g).replace("^", "**")) for g in gens], *syms, order="grevlex")
        expected = G.contains(sympy.sympify(str(f).replace("^", "**")))
        assert ideal_member(f, Ideal(R2, gens)) == expected


def test_truncated_oracle_positive_direction():
    bad = []
    for f, gens in membership_queries(3, 80):
        to = lambda p: {m: c for m, c in p.terms}
        if truncated_membership(to(f), [to(g) for g in gens], 2, 5):
            if not ideal_member(f, Ideal(R2, gens)):
                bad.append((f, gens))
    assert bad == []


def test_unit_and_zero_ideals():
    assert Ideal(R2, [R2.parse("x"), R2.parse("x - 1")]).is_unit()
    assert Ideal(R2, []).is_zero()
    assert reduced_groebner_basis(Ideal(R2, [R2.parse("2*x*y + 4")])) == (R2.parse("x*y + 2"),)


@pytest.mark.parametrize(
    "gens,vars_,dim",
    [(["x*y"], "xy", 1), ([], "xy", 2), (["x", "y"], "xy", 0), (["1"], "xy", -1), (["x*z", "y*z"], "xyz", 2)],
)
def test_krull_dim(gens, vars_, dim):
    R = PolyRing(list(vars_))
    assert krull_dim(Ideal(R, [R.parse(g) for g in gens])) == dim


def test_intersection_and_quotient():
    I, J = Ideal(R2, [R2.parse("x")]), Ideal(R2, [R2.parse("y")])
    assert ideal_equal(ideal_intersection(I, J), Ideal(R2, [R2.parse("x*y")]))
    Q = ideal_quotient(Ideal(R2, [R2.parse("x*y"), R2.parse("y^2")]), R2.parse("y"))
    assert ideal_equal(Q, Ideal(R2, [R2.parse("x"), R2.parse("y")]))


def test_radical_membership():
    I = Ideal(R2, [R2.parse("x^3"), R2.parse("y^2 - x")])
    assert radical_member(R2.parse("x"), I)
    assert radical_member(R2.parse("y"), I)
    assert not radical_member(R2.parse("x + 1"), I)


def test_standard_monomials_zero_dimensional():
    I = Ideal(R2, [R2.parse("x^2"), R2.parse("y^2"), R2.parse("x*y")])
    assert sorted(standard_monomials(I)) == [(0, 0), (0, 1), (1, 0)]
    assert standard_monomials(Ideal(R2, [R2.parse("x")])) is None


def test_finite_field_basis():
    R = PolyRing(["x", "y"], GF(2))
    gb = reduced_groebner_basis(Ideal(R, [R.parse("x^2 + y"), R.parse("x*y + 1")]))
    assert all(ideal_member(g, Ideal(R, [R.parse("x^2 + y"), R.parse("x*y + 1")])) for g in gb)
    assert not Ideal(R, [R.parse("x^2 + y"), R.parse("x*y + 1")]).is_unit()


def test_budget_exceeded_is_reported():
    R = PolyRing(["x", "y", "z"])
    gens = [R.parse("x^3 - y*z^2 + 1"), R.parse("y^3 - x*z + 2"), R.parse("z^3 - x^2*y")]
    with budget_scope(5):
        with pytest.raises(BudgetExceeded):
            reduced_groebner_basis(Ideal(R, gens))


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("CELLKIT_BUDGET", "3")
    R = PolyRing(["x", "y"])
    with budget_scope() as b:
        assert b.limit == 3
        with pytest.raises(BudgetExceeded):
            reduced_groebner_basis(Ideal(R, [R.parse("x^2 - y"), R.parse("x*y - 1"), R.parse("y^3 - x")]))
