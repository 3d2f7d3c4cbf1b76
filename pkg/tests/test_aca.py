import pytest
from hypothesis import given
from hypothesis import strategies as st

from cellkit.aca import build, format_document, load, parse, parse_document, parse_element, tl_source
from cellkit.group import is_central, tl_builtin
from cellkit.syntax import ParseError

TL_DOC = tl_source(1)


def test_tl_document_structure_matches_builtin():
    doc = parse(TL_DOC)
    assert (len(doc.rings), len(doc.layers), len(doc.groups), len(doc.extensions)) == (1, 1, 1, 1)
    A = load(TL_DOC).extensions["A"]
    ref = tl_builtin(1)
    assert A.layer.psi.polys() == ref.layer.psi.polys()
    assert [f.image for f in A.group.factors] == [f.image for f in ref.group.factors]


def test_empty_input():
    _, diags = parse_document("")
    assert [d.message for d in diags] == ["expected field declaration"]


def test_ragged_row_points_at_inner_bracket():
    src = "field QQ;\nring B = poly(q, x);\nlayer J { n = 2; base = B; psi = [[q, x], [x]]; }\n"
    _, diags = parse_document(src)
    assert len(diags) == 1 and diags[0].message == "ragged matrix row"
    d = diags[0]
    assert src[d.offset] == "[" and src[d.offset : d.offset + 4] == "[x]]"
    assert (d.line, d.column) == (3, 43)


def test_all_errors_collected():
    src = "field QQ;\nring B = poly(x) foo;\nbogus;\nlayer J { n = 2; base = B; psi = [[1, x], [x]]; }\n"
    _, diags = parse_document(src)
    assert len(diags) == 3


@pytest.mark.parametrize(
    "src,needle",
    [
        ("field QQ; ring B = poly(x) / ideal(y);", "unknown name 'y'"),
        ("field QQ; ring B = poly(x); layer J { n = 2; base = B; psi = [[1]]; }", "dimension mismatch"),
        ("field QQ; layer J { n = 1; base = C; psi = [[1]]; }", "undeclared ring 'C'"),
        (
            "field QQ; ring B = poly(x); group G = Z with rho(t) = (1 2);"
            " layer J { n = 2; base = B; psi = [[1, x], [0, 1]]; } extend A = group_algebra(G) + J;",
            "not symmetric",
        ),
        (
            "field QQ; ring B = poly(x); group G = Z with rho(t) = (1 2);"
            " layer J { n = 2; base = B; psi = [[1, 0], [0, 0]]; } extend A = group_algebra(G) + J;",
            "not invariant",
        ),
        ("field QQ; ring B = poly(x); layer J { n = 1; base = B; psi = [[x]]; } chain C = [J] with m = 3;", "outside"),
        ("field QQ; ring B = poly(x); group G = Z/3 with rho(t) = (1 2);", "order"),
        ("field GF(6);", "prime"),
    ],
)
def test_semantic_errors(src, needle):
    doc, diags = parse_document(src)
    if not diags:
        with pytest.raises(ParseError) as e:
            build(doc)
        diags = e.value.diagnostics
    assert any(needle in d.message for d in diags), [d.message for d in diags]
    for d in diags:
        assert 0 <= d.offset <= len(src) and d.offset + d.length <= len(src) + 1


def test_grammar_extensions_roundtrip():
    src = (
        "field GF(5);\n"
        "ring R = poly(x, y) / ideal(x*y, x^2 - 2*y) involution(x -> x, y -> y) assume domain;\n"
        "group G = Z * Z/2 with rho(a) = (1 2)(3 4), rho(b) = ();\n"
        "cell P = principal(R, x);\n"
        "layer J0 { n = 1; base = R; psi = [[x - 1/2]]; }\n"
        "chain C = [J0];\n"
    )
    doc = parse(src)
    assert parse(format_document(doc)) == doc
    assert doc.groups[0].orders == [0, 2]


# random documents for the round-trip property
names = st.sampled_from(["x", "y", "q"])
atoms = st.one_of(names, st.integers(-5, 5).map(lambda k: str(k) if k >= 0 else f"({k})"))
exprs = st.recursive(
    atoms,
    lambda e: st.one_of(
        st.tuples(e, st.sampled_from(["+", "-", "*"]), e).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        st.tuples(e, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
    ),
    max_leaves=5,
)


@given(st.lists(exprs, min_size=1, max_size=3), st.integers(1, 2), st.data())
def test_parse_print_parse(rels, n, data):
    psi = [[data.draw(exprs) for _ in range(n)] for _ in range(n)]
    src = (
        "field QQ;\n"
        f"ring B = poly(x, y, q) / ideal({', '.join(rels)});\n"
        f"layer J {{ n = {n}; base = B; psi = [{', '.join('[' + ', '.join(r) + ']' for r in psi)}]; }}\n"
        "chain C = [J] with m = 0;\n"
    )
    doc = parse(src)
    again = parse(format_document(doc))
    assert again == doc
    assert format_document(again) == format_document(doc)


@given(st.text(alphabet="field QQ;ring=poly(x)[]{},/*+-^ 0123\n", max_size=60))
def test_diagnostic_spans_lie_in_source(src):
    _, diags = parse_document(src)
    for d in diags:
        assert 0 <= d.offset <= len(src)
        assert d.offset + d.length <= len(src)


def test_element_syntax():
    A = load(TL_DOC).extensions["A"]
    assert is_central(parse_element("(0, psi_adj)", A), A)
    assert not is_central(parse_element("E11", A), A)
    u = parse_element("(tau + tau^-1, 2*x*E12)", A)
    assert str(u) == "(tau^-1 + tau, [[0, 2*x], [0, 0]])"
    with pytest.raises(ParseError):
        parse_element("E33", A)
    with pytest.raises(ParseError):
        parse_element("x", A)
