"""The ``.aca`` input language: parser, pretty-printer and semantic builder.

Grammar (statements after the field declaration may come in any order)::

    document := field stmt*
    field    := "field" ("QQ" | "GF" "(" int ")") ";"
    stmt     := ring | group | extend | cell | layer | chain
    ring     := "ring" id "=" "poly" "(" idlist ")" ["/" "ideal" "(" exprs ")"]
                ["involution" "(" id "->" expr ("," id "->" expr)* ")"] ["assume" "domain"] ";"
    group    := "group" id "=" cyc ("*" cyc)* "with" rho ("," rho)* ";"
    cyc      := "Z" ["/" int]
    rho      := "rho" "(" id ")" "=" ("(" int* ")")+
    extend   := "extend" id "=" "group_algebra" "(" id ")" "+" id ";"
    cell     := "cell" id "=" "principal" "(" id "," expr ")" ";"
    layer    := "layer" id "{" "n" "=" int ";" "base" "=" id ";" "psi" "=" matrix ";" "}"
    matrix   := "[" row ("," row)* "]"      row := "[" expr ("," expr)* "]"
    chain    := "chain" id "=" "[" idlist "]" ["with" "m" "=" int] ";"

Errors never stop the parse: every diagnostic is collected with its exact span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .affine_ring import AffineRing
from .chain import CellChain
from .coeffs import GF, QQ, Field
from .group import (
    CyclicFactor,
    ExtElement,
    GroupExtensionAlgebra,
    GroupSpec,
    PrincipalCellAlgebra,
    permutation_from_cycles,
    psi_invariance_failure,
)
from .swich import MatrixOverB, SwichLayer
from .syntax import (
    Diagnostic,
    ParseError,
    Token,
    TokenStream,
    expr_variables,
    format_expr,
    parse_expr,
    tokenize,
)

__all__ = [
    "Span",
    "Expr",
    "FieldDecl",
    "RingDecl",
    "GroupDecl",
    "ExtendDecl",
    "CellDecl",
    "LayerDecl",
    "ChainDecl",
    "AcaDocument",
    "Model",
    "parse",
    "parse_document",
    "format_document",
    "build",
    "load",
    "parse_element",
    "tl_source",
]


@dataclass(frozen=True)
class Span:
    line: int
    column: int
    length: int
    offset: int

    @classmethod
    def of(cls, tok: Token) -> "Span":
        return cls(tok.line, tok.column, tok.length, tok.offset)


@dataclass(frozen=True)
class Expr:
    text: str
    node: tuple = field(compare=False, repr=False)
    span: Span = field(compare=False, repr=False)


@dataclass
class FieldDecl:
    kind: str  # "QQ" or "GF"
    p: Optional[int] = None
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def make(self) -> Field:
        return QQ if self.kind == "QQ" else GF(self.p)


@dataclass
class RingDecl:
    name: str
    variables: List[str]
    relations: List[Expr] = field(default_factory=list)
    involution: List[Tuple[str, Expr]] = field(default_factory=list)
    domain: bool = False
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass
class GroupDecl:
    name: str
    orders: List[int]  # 0 = infinite cyclic
    rho: List[Tuple[str, List[List[int]]]] = field(default_factory=list)
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass
class ExtendDecl:
    name: str
    group: str
    layer: str
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass
class CellDecl:
    name: str
    ring: str
    generator: Expr
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass
class LayerDecl:
    name: str
    n: int
    base: str
    psi: List[List[Expr]]
    span: Optional[Span] = field(default=None, compare=False, repr=False)
    psi_span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass
class ChainDecl:
    name: str
    layers: List[str]
    m: Optional[int] = None
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass
class AcaDocument:
    field: Optional[FieldDecl]
    rings: List[RingDecl] = field(default_factory=list)
    groups: List[GroupDecl] = field(default_factory=list)
    extensions: List[ExtendDecl] = field(default_factory=list)
    cells: List[CellDecl] = field(default_factory=list)
    layers: List[LayerDecl] = field(default_factory=list)
    chain: Optional[ChainDecl] = None


# -- parser ----------------------------------------------------------------------------------


_KEYWORDS = frozenset({"field", "ring", "group", "extend", "cell", "layer", "chain"})


class _Stmt(Exception):
    """Abort the current statement; the driver resynchronizes at the next ';'."""


class _Parser:
    def __init__(self, source: str):
        tokens, diags = tokenize(source)
        self.ts = TokenStream(tokens, diags)
        self.source = source

    # helpers
    def need(self, text: str, what: Optional[str] = None) -> Token:
        tok = self.ts.expect(text, what)
        if tok is None:
            raise _Stmt
        return tok

    def ident(self, what: str = "identifier") -> Token:
        tok = self.ts.expect_ident(what)
        if tok is None:
            raise _Stmt
        return tok

    def integer(self, what: str = "integer") -> int:
        tok = self.ts.expect_int(what)
        if tok is None:
            raise _Stmt
        return int(tok.text)

    def expr(self) -> Expr:
        start = self.ts.current
        node = parse_expr(self.ts)
        if node is None:
            raise _Stmt
        return Expr(format_expr(node), node, Span.of(start))

    def sync(self) -> None:
        depth = 0
        while self.ts.current.kind != "eof":
            if depth <= 0 and self.ts.current.kind == "ident" and self.ts.current.text in _KEYWORDS:
                return
            tok = self.ts.advance()
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth -= 1
                if depth <= 0:
                    self.ts.accept(";")
                    return
            elif tok.text == ";" and depth <= 0:
                return

    # grammar
    def document(self) -> AcaDocument:
        ts = self.ts
        doc = AcaDocument(None)
        if ts.at("field"):
            try:
                doc.field = self.field_decl()
            except _Stmt:
                self.sync()
        else:
            ts.error(ts.current, "expected field declaration", hint="start with e.g. 'field QQ;'")
        while ts.current.kind != "eof":
            tok = ts.current
            start_pos = ts.pos
            try:
                if ts.at("ring"):
                    doc.rings.append(self.ring_decl())
                elif ts.at("group"):
                    doc.groups.append(self.group_decl())
                elif ts.at("extend"):
                    doc.extensions.append(self.extend_decl())
                elif ts.at("cell"):
                    doc.cells.append(self.cell_decl())
                elif ts.at("layer"):
                    doc.layers.append(self.layer_decl())
                elif ts.at("chain"):
                    decl = self.chain_decl()
                    if doc.chain is not None:
                        ts.error(tok, "only one chain declaration is allowed")
                    doc.chain = decl
                elif ts.at("field"):
                    ts.error(tok, "duplicate field declaration")
                    raise _Stmt
                else:
                    ts.error(tok, f"expected a declaration, found {tok.text!r}",
                             hint="ring, group, extend, cell, layer or chain")
                    raise _Stmt
            except _Stmt:
                before = ts.pos
                self.sync()
                if ts.pos == before and ts.pos == start_pos:
                    ts.advance()
                    self.sync()
        return doc

    def field_decl(self) -> FieldDecl:
        start = self.need("field")
        tok = self.ident("field name QQ or GF")
        if tok.text == "QQ":
            decl = FieldDecl("QQ", None, Span.of(start))
        elif tok.text == "GF":
            self.need("(")
            ptok = self.ts.current
            p = self.integer("prime modulus")
            self.need(")")
            decl = FieldDecl("GF", p, Span.of(start))
            try:
                GF(p)
            except ValueError as e:
                self.ts.error(ptok, str(e))
        else:
            self.ts.error(tok, f"unknown field {tok.text!r}", hint="use QQ or GF(p)")
            raise _Stmt
        self.need(";")
        return decl

    def ring_decl(self) -> RingDecl:
        start = self.need("ring")
        name = self.ident("ring name").text
        self.need("=")
        self.need("poly")
        self.need("(")
        variables = [self.ident("variable").text]
        while self.ts.accept(","):
            variables.append(self.ident("variable").text)
        self.need(")")
        decl = RingDecl(name, variables, span=Span.of(start))
        if self.ts.accept("/"):
            self.need("ideal")
            self.need("(")
            if not self.ts.at(")"):
                decl.relations.append(self.expr())
                while self.ts.accept(","):
                    decl.relations.append(self.expr())
            self.need(")")
        if self.ts.accept("involution"):
            self.need("(")
            while True:
                v = self.ident("variable").text
                self.need("->")
                decl.involution.append((v, self.expr()))
                if not self.ts.accept(","):
                    break
            self.need(")")
        if self.ts.accept("assume"):
            self.need("domain")
            decl.domain = True
        self.need(";")
        return decl

    def group_decl(self) -> GroupDecl:
        start = self.need("group")
        name = self.ident("group name").text
        self.need("=")
        orders = [self.cyclic()]
        while self.ts.accept("*"):
            orders.append(self.cyclic())
        decl = GroupDecl(name, orders, span=Span.of(start))
        self.need("with")
        while True:
            self.need("rho")
            self.need("(")
            gen = self.ident("generator name").text
            self.need(")")
            self.need("=")
            cycles = []
            self.need("(", "'(' starting a cycle")
            while True:
                cyc = []
                while not self.ts.at(")"):
                    cyc.append(self.integer("point of a cycle"))
                self.need(")")
                if cyc:
                    cycles.append(cyc)
                if not self.ts.accept("("):
                    break
            decl.rho.append((gen, cycles))
            if not self.ts.accept(","):
                break
        self.need(";")
        return decl

    def cyclic(self) -> int:
        tok = self.ident("'Z' or 'Z/k'")
        if tok.text != "Z":
            self.ts.error(tok, f"expected a cyclic factor Z or Z/k, found {tok.text!r}")
            raise _Stmt
        if self.ts.accept("/"):
            ktok = self.ts.current
            k = self.integer("cyclic order")
            if k < 1:
                self.ts.error(ktok, "cyclic order must be positive")
            return k
        return 0

    def extend_decl(self) -> ExtendDecl:
        start = self.need("extend")
        name = self.ident("algebra name").text
        self.need("=")
        self.need("group_algebra")
        self.need("(")
        g = self.ident("group name").text
        self.need(")")
        self.need("+")
        layer = self.ident("layer name").text
        self.need(";")
        return ExtendDecl(name, g, layer, Span.of(start))

    def cell_decl(self) -> CellDecl:
        start = self.need("cell")
        name = self.ident("algebra name").text
        self.need("=")
        self.need("principal")
        self.need("(")
        ring = self.ident("ring name").text
        self.need(",")
        gen = self.expr()
        self.need(")")
        self.need(";")
        return CellDecl(name, ring, gen, Span.of(start))

    def layer_decl(self) -> LayerDecl:
        start = self.need("layer")
        name = self.ident("layer name").text
        self.need("{")
        self.need("n")
        self.need("=")
        n = self.integer("layer dimension")
        self.need(";")
        self.need("base")
        self.need("=")
        base = self.ident("ring name").text
        self.need(";")
        self.need("psi")
        self.need("=")
        psi_tok = self.ts.current
        psi = self.matrix()
        self.need(";")
        self.need("}")
        self.ts.accept(";")
        return LayerDecl(name, n, base, psi, Span.of(start), Span.of(psi_tok))

    def matrix(self) -> List[List[Expr]]:
        self.need("[", "'[' starting a matrix")
        rows: List[Tuple[Token, List[Expr]]] = []
        while True:
            row_tok = self.need("[", "'[' starting a matrix row")
            row = [self.expr()]
            while self.ts.accept(","):
                row.append(self.expr())
            self.need("]")
            rows.append((row_tok, row))
            if not self.ts.accept(","):
                break
        self.need("]")
        width = len(rows[0][1])
        for tok, row in rows[1:]:
            if len(row) != width:
                self.ts.error(tok, "ragged matrix row", hint=f"expected {width} entries, found {len(row)}")
        return [r for _, r in rows]

    def chain_decl(self) -> ChainDecl:
        start = self.need("chain")
        name = self.ident("chain name").text
        self.need("=")
        self.need("[")
        layers = [self.ident("layer name").text]
        while self.ts.accept(","):
            layers.append(self.ident("layer name").text)
        self.need("]")
        m = None
        if self.ts.accept("with"):
            self.need("m")
            self.need("=")
            m = self.integer("annihilator index m")
        self.need(";")
        return ChainDecl(name, layers, m, Span.of(start))


def parse_document(source: str) -> Tuple[AcaDocument, List[Diagnostic]]:
    """Parse, returning the (possibly partial) document and every diagnostic."""
    p = _Parser(source)
    doc = p.document()
    diags = sorted(p.ts.diagnostics, key=lambda d: (d.offset, d.message))
    return doc, diags


def parse(source: str) -> AcaDocument:
    doc, diags = parse_document(source)
    if diags:
        raise ParseError(diags)
    return doc


# -- pretty-printer ------------------------------------------------------------------------------


def _cycles_text(cycles: Sequence[Sequence[int]]) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"


def format_document(doc: AcaDocument) -> str:
    out = []
    if doc.field is not None:
        out.append(f"field {'QQ' if doc.field.kind == 'QQ' else f'GF({doc.field.p})'};")
    for r in doc.rings:
        s = f"ring {r.name} = poly({', '.join(r.variables)})"
        if r.relations:
            s += f" / ideal({', '.join(e.text for e in r.relations)})"
        if r.involution:
            s += " involution(" + ", ".join(f"{v} -> {e.text}" for v, e in r.involution) + ")"
        if r.domain:
            s += " assume domain"
        out.append(s + ";")
    for g in doc.groups:
        facs = " * ".join("Z" if k == 0 else f"Z/{k}" for k in g.orders)
        rhos = ", ".join(f"rho({gen}) = {_cycles_text(c)}" for gen, c in g.rho)
        out.append(f"group {g.name} = {facs} with {rhos};")
    for L in doc.layers:
        mat = "[" + ", ".join("[" + ", ".join(e.text for e in row) + "]" for row in L.psi) + "]"
        out.append(f"layer {L.name} {{ n = {L.n}; base = {L.base}; psi = {mat}; }}")
    for e in doc.extensions:
        out.append(f"extend {e.name} = group_algebra({e.group}) + {e.layer};")
    for c in doc.cells:
        out.append(f"cell {c.name} = principal({c.ring}, {c.generator.text});")
    if doc.chain is not None:
        s = f"chain {doc.chain.name} = [{', '.join(doc.chain.layers)}]"
        if doc.chain.m is not None:
            s += f" with m = {doc.chain.m}"
        out.append(s + ";")
    return "\n".join(out) + "\n"


# -- semantic model --------------------------------------------------------------------------------


@dataclass
class Model:
    document: AcaDocument
    field: Field
    rings: Dict[str, AffineRing] = field(default_factory=dict)
    groups: Dict[str, GroupSpec] = field(default_factory=dict)
    layers: Dict[str, SwichLayer] = field(default_factory=dict)
    extensions: Dict[str, GroupExtensionAlgebra] = field(default_factory=dict)
    cells: Dict[str, PrincipalCellAlgebra] = field(default_factory=dict)
    chain: Optional[CellChain] = None

    def target_chain(self, search: bool = True) -> CellChain:
        """The declared chain, else the first concrete algebra's chain, else all layers."""
        if self.chain is not None:
            return self.chain
        if self.extensions:
            return next(iter(self.extensions.values())).chain(search=search)
        if self.cells:
            return next(iter(self.cells.values())).chain(search=search)
        if self.layers:
            return CellChain(list(self.layers.values()), name="A")
        raise ValueError("document declares no layers to analyze")


class _Builder:
    def __init__(self, doc: AcaDocument):
        self.doc = doc
        self.diags: List[Diagnostic] = []

    def error(self, span: Optional[Span], message: str, hint: Optional[str] = None) -> None:
        span = span or Span(1, 1, 0, 0)
        self.diags.append(Diagnostic("error", span.line, span.column, span.length, message, hint, span.offset))

    def check_expr(self, e: Expr, allowed: Sequence[str]) -> bool:
        ok = True
        for name, tok in expr_variables(e.node):
            if name not in allowed:
                self.diags.append(
                    Diagnostic("error", tok.line, tok.column, tok.length, f"unknown name {name!r}",
                               f"declared variables: {', '.join(allowed) or 'none'}", tok.offset)
                )
                ok = False
        return ok

    def build(self) -> Model:
        doc = self.doc
        F = doc.field.make() if doc.field is not None else QQ
        model = Model(doc, F)
        seen: Dict[str, str] = {}

        def declare(name: str, kind: str, span) -> bool:
            if name in seen:
                self.error(span, f"{kind} {name!r} clashes with an earlier {seen[name]} of the same name")
                return False
            seen[name] = kind
            return True

        for r in doc.rings:
            if not declare(r.name, "ring", r.span):
                continue
            if len(set(r.variables)) != len(r.variables):
                self.error(r.span, f"ring {r.name!r} repeats a variable")
                continue
            ok = all(self.check_expr(e, r.variables) for e in r.relations)
            for v, e in r.involution:
                if v not in r.variables:
                    self.error(e.span, f"involution names unknown variable {v!r}")
                    ok = False
                ok = self.check_expr(e, r.variables) and ok
            if not ok:
                continue
            try:
                from .multipoly import PolyRing

                P = PolyRing(r.variables, F)
                rels = [P.from_ast(e.node) for e in r.relations]
                inv = {v: P.from_ast(e.node) for v, e in r.involution} or None
                model.rings[r.name] = AffineRing(r.variables, rels, F, inv, name=r.name, domain=r.domain)
            except (ValueError, ZeroDivisionError) as e:
                self.error(r.span, f"ring {r.name!r}: {e}")

        for g in doc.groups:
            if not declare(g.name, "group", g.span):
                continue
            if len(g.rho) != len(g.orders):
                self.error(g.span, f"group {g.name!r} has {len(g.orders)} cyclic factors but {len(g.rho)} rho images")
                continue
            points = max([max(c) for _, cs in g.rho for c in cs], default=1)
            try:
                n = self._group_degree(g, points)
                factors = tuple(
                    CyclicFactor(gen, k, permutation_from_cycles(cs, n)) for k, (gen, cs) in zip(g.orders, g.rho)
                )
                model.groups[g.name] = GroupSpec(factors, n, g.name)
            except ValueError as e:
                self.error(g.span, f"group {g.name!r}: {e}")

        for L in doc.layers:
            if not declare(L.name, "layer", L.span):
                continue
            B = model.rings.get(L.base)
            if B is None:
                self.error(L.span, f"layer {L.name!r} refers to undeclared ring {L.base!r}")
                continue
            if len(L.psi) != L.n or any(len(row) != L.n for row in L.psi):
                self.error(L.psi_span, f"dimension mismatch: psi must be {L.n}x{L.n}")
                continue
            if not all(self.check_expr(e, B.variables) for row in L.psi for e in row):
                continue
            try:
                rows = [[B.poly_ring.from_ast(e.node) for e in row] for row in L.psi]
                model.layers[L.name] = SwichLayer(B, MatrixOverB(B, rows), name=L.name)
            except (ValueError, ZeroDivisionError) as e:
                self.error(L.psi_span, f"layer {L.name!r}: {e}")

        for e in doc.extensions:
            if not declare(e.name, "algebra", e.span):
                continue
            G, L = model.groups.get(e.group), model.layers.get(e.layer)
            if G is None:
                self.error(e.span, f"unknown group {e.group!r}")
            if L is None:
                self.error(e.span, f"unknown layer {e.layer!r}")
            if G is None or L is None:
                continue
            if not L.symmetric:
                self.error(e.span, f"psi of layer {e.layer!r} is not symmetric", "the involution needs psi^T = psi")
                continue
            if G.n > L.n:
                self.error(e.span, f"group {e.group!r} permutes {G.n} points but layer has n = {L.n}")
                continue
            if G.n < L.n:
                G = GroupSpec(
                    tuple(CyclicFactor(f.name, f.order, f.image + tuple(range(G.n, L.n))) for f in G.factors),
                    L.n, G.name,
                )
            bad = psi_invariance_failure(G, L)
            if bad is not None:
                self.error(e.span, f"psi of layer {e.layer!r} is not invariant under rho({bad})",
                           "need psi[rho(g) i, rho(g) j] = psi[i, j]")
                continue
            model.extensions[e.name] = GroupExtensionAlgebra(G, L, name=e.name)

        for c in doc.cells:
            if not declare(c.name, "algebra", c.span):
                continue
            R = model.rings.get(c.ring)
            if R is None:
                self.error(c.span, f"unknown ring {c.ring!r}")
                continue
            if not self.check_expr(c.generator, R.variables):
                continue
            model.cells[c.name] = PrincipalCellAlgebra(R, R.poly_ring.from_ast(c.generator.node), name=c.name)

        ch = doc.chain
        if ch is not None:
            missing = [n for n in ch.layers if n not in model.layers]
            for n in missing:
                self.error(ch.span, f"chain refers to undeclared layer {n!r}")
            if not missing:
                if ch.m is not None and not 0 <= ch.m < len(ch.layers):
                    self.error(ch.span, f"m = {ch.m} outside 0..{len(ch.layers) - 1}")
                else:
                    model.chain = CellChain(
                        [model.layers[n] for n in ch.layers],
                        m=ch.m,
                        m_provenance="user-supplied" if ch.m is not None else "default-top",
                        name=ch.name,
                    )
        return model

    @staticmethod
    def _group_degree(g: GroupDecl, points: int) -> int:
        return max(points, 1)


def build(doc: AcaDocument) -> Model:
    b = _Builder(doc)
    model = b.build()
    if b.diags:
        raise ParseError(sorted(b.diags, key=lambda d: d.offset))
    return model


def load(source: str) -> Model:
    """Parse and build; raises :class:`ParseError` with all diagnostics on failure."""
    doc, diags = parse_document(source)
    if diags:
        raise ParseError(diags)
    return build(doc)


# -- element syntax for center checks ------------------------------------------------------------


class _Scalar:
    """An element of B appearing as a coefficient (not itself an element of A)."""

    def __init__(self, value):
        self.value = value


def parse_element(text: str, A: GroupExtensionAlgebra) -> ExtElement:
    """Parse ``"(p, a)"`` or a single expression into an element of A.

    Names: group generators, ``psi``, ``psi_adj``, ``id`` (identity matrix in J),
    ``E11`` .. ``Enn`` (1-based matrix units) and the variables of B as coefficients.
    """
    tokens, diags = tokenize(text)
    ts = TokenStream(tokens, diags)
    parts = []
    if ts.at("(") and _has_top_level_comma(tokens):
        ts.advance()
        parts.append(parse_expr(ts))
        ts.expect(",")
        parts.append(parse_expr(ts))
        ts.expect(")")
    else:
        parts.append(parse_expr(ts))
    if ts.current.kind != "eof" and not ts.diagnostics:
        ts.error(ts.current, f"unexpected {ts.current.text!r} after element")
    if ts.diagnostics or any(p is None for p in parts):
        raise ParseError(ts.diagnostics)
    total = A.zero
    for node in parts:
        total = total + _as_element(_eval(node, A, ts), A, ts, node)
    if ts.diagnostics:
        raise ParseError(ts.diagnostics)
    return total


def _has_top_level_comma(tokens: List[Token]) -> bool:
    depth = 0
    for t in tokens:
        if t.text in "([":
            depth += 1
        elif t.text in ")]":
            depth -= 1
        elif t.text == "," and depth == 1:
            return True
    return False


def _as_element(v, A: GroupExtensionAlgebra, ts: TokenStream, node) -> ExtElement:
    if isinstance(v, ExtElement):
        return v
    rep = v.value.rep
    if rep.is_constant():
        return A.group_element(A.group.identity, rep.constant_value()) if not rep.is_zero() else A.zero
    _err(ts, node, f"{rep} is a coefficient from B, not an element of A", "multiply it by a matrix unit")
    return A.zero


def _err(ts: TokenStream, node, message: str, hint: Optional[str] = None) -> None:
    tok = next((t for _, t in expr_variables(node)), ts.tokens[0])
    ts.error(tok, message, hint)


def _eval(node, A: GroupExtensionAlgebra, ts: TokenStream):
    kind = node[0]
    B = A.base
    if kind == "num":
        return _Scalar(B(B.poly_ring.constant(node[1])))
    if kind == "var":
        name = node[1]
        if name in [f.name for f in A.group.factors]:
            return A.group_element(name)
        if name == "psi":
            return A.matrix_element(A.layer.psi)
        if name == "psi_adj":
            return A.matrix_element(A.layer.adj)
        if name == "id":
            return A.matrix_element(MatrixOverB.identity(B, A.n))
        if name in B.variables:
            return _Scalar(B.gen(name))
        if len(name) == 3 and name[0] == "E" and name[1:].isdigit():
            i, j = int(name[1]) - 1, int(name[2]) - 1
            if 0 <= i < A.n and 0 <= j < A.n:
                return A.matrix_element(A.layer.unit(i, j))
        ts.error(node[2], f"unknown name {name!r}")
        return _Scalar(B.zero)
    if kind == "neg":
        v = _eval(node[1], A, ts)
        return _Scalar(-v.value) if isinstance(v, _Scalar) else -v
    if kind == "pow":
        v, k = _eval(node[1], A, ts), node[2]
        if isinstance(v, _Scalar):
            if k < 0:
                _err(ts, node, "negative powers of coefficients are not supported")
                return v
            return _Scalar(v.value**k)
        if k < 0:
            if v.a.is_zero() and len(v.p.terms) == 1 and v.p.terms[0][1] == A.field.one:
                v, k = A.group_element(A.group.inverse(v.p.terms[0][0])), -k
            else:
                _err(ts, node, "only group words can be inverted")
                return v
        result = A.one
        for _ in range(k):
            result = result * v
        return result
    a, b = _eval(node[1], A, ts), _eval(node[2], A, ts)
    if kind in ("add", "sub"):
        if isinstance(a, _Scalar) and isinstance(b, _Scalar):
            return _Scalar(a.value + b.value if kind == "add" else a.value - b.value)
        a, b = _as_element(a, A, ts, node[1]), _as_element(b, A, ts, node[2])
        return a + b if kind == "add" else a - b
    # multiplication
    if isinstance(a, _Scalar) and isinstance(b, _Scalar):
        return _Scalar(a.value * b.value)
    if isinstance(a, _Scalar) or isinstance(b, _Scalar):
        s, e = (a, b) if isinstance(a, _Scalar) else (b, a)
        if s.value.rep.is_constant():
            return e.scale(A.field.element(s.value.rep.constant_value())) if not s.value.is_zero() else A.zero
        if not e.p.is_zero():
            _err(ts, node, "coefficients from B only act on the matrix part")
            return e
        return A.matrix_element(e.a.scale(s.value))
    return a * b


def tl_source(q="1", field_text: str = "QQ") -> str:
    """The ``.aca`` text of the rank-two TL example; a non-numeric ``q`` is symbolic."""
    q = str(q)
    vars_ = "x" if q.lstrip("-").isdigit() else f"x, {q}"
    return (
        f"field {field_text};\n"
        f"ring B = poly({vars_}) assume domain;\n"
        "group Z = Z with rho(tau) = (1 2);\n"
        f"layer J0 {{ n = 2; base = B; psi = [[{q}, x], [x, {q}]]; }}\n"
        "extend A = group_algebra(Z) + J0;\n"
    )
