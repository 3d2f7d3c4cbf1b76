"""Tokenizer, diagnostics and polynomial-expression grammar.

Shared by :meth:`cellkit.multipoly.PolyRing.parse` and the ``.aca`` document
parser so both accept exactly the same polynomial syntax::

    expr   := term (("+" | "-") term)*
    term   := ["-"] factor ("*" factor)*
    factor := atom ["^" int]
    atom   := int ["/" int] | ident | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

__all__ = [
    "Token",
    "Diagnostic",
    "ParseError",
    "tokenize",
    "TokenStream",
    "parse_expr",
    "parse_expression_text",
    "format_expr",
    "expr_variables",
]


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "eof"
    text: str
    line: int
    column: int
    offset: int

    @property
    def length(self) -> int:
        return max(len(self.text), 1) if self.kind != "eof" else 0


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    length: int
    message: str
    hint: Optional[str] = None
    offset: int = 0

    def render(self, filename: str = "<input>") -> str:
        out = f"{filename}:{self.line}:{self.column}: {self.severity}: {self.message}"
        if self.hint:
            out += f" (hint: {self.hint})"
        return out


class ParseError(ValueError):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.render() for d in self.diagnostics) or "parse error")


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>(\#|//)[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|[()\[\]{},;=+\-*^/])
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> Tuple[List[Token], List[Diagnostic]]:
    """Split ``source`` into tokens; unknown characters become diagnostics."""
    tokens: List[Token] = []
    diags: List[Diagnostic] = []
    pos, line, line_start = 0, 1, 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            col = pos - line_start + 1
            diags.append(
                Diagnostic("error", line, col, 1, f"unexpected character {source[pos]!r}", offset=pos)
            )
            pos += 1
            continue
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("int", "ident", "op"):
            tokens.append(Token(kind, text, line, pos - line_start + 1, pos))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1, pos))
    return tokens, diags


class TokenStream:
    """Cursor over a token list that records diagnostics instead of raising."""

    def __init__(self, tokens: List[Token], diagnostics: Optional[List[Diagnostic]] = None):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: List[Diagnostic] = diagnostics if diagnostics is not None else []

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        tok = self.current
        return tok.kind in ("op", "ident") and tok.text == text

    def advance(self) -> Token:
        tok = self.current
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def accept(self, text: str) -> Optional[Token]:
        if self.at(text):
            return self.advance()
        return None

    def error(self, tok: Token, message: str, hint: Optional[str] = None) -> None:
        self.diagnostics.append(
            Diagnostic("error", tok.line, tok.column, tok.length, message, hint, tok.offset)
        )

    def expect(self, text: str, what: Optional[str] = None) -> Optional[Token]:
        if self.at(text):
            return self.advance()
        tok = self.current
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        self.error(tok, f"expected {what or repr(text)}, found {found}")
        return None

    def expect_ident(self, what: str = "identifier") -> Optional[Token]:
        tok = self.current
        if tok.kind == "ident":
            return self.advance()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        self.error(tok, f"expected {what}, found {found}")
        return None

    def expect_int(self, what: str = "integer") -> Optional[Token]:
        tok = self.current
        if tok.kind == "int":
            return self.advance()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        self.error(tok, f"expected {what}, found {found}")
        return None


class _Abort(Exception):
    pass


# Expression AST: ("num", Fraction) | ("var", name, token) | ("neg", e)
# | ("add", a, b) | ("sub", a, b) | ("mul", a, b) | ("pow", e, int)


def parse_expr(ts: TokenStream):
    """Parse one polynomial expression; returns None after recording a diagnostic."""
    try:
        return _expr(ts)
    except _Abort:
        return None


def _expr(ts: TokenStream):
    node = _term(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.advance().text
        rhs = _term(ts)
        node = ("add" if op == "+" else "sub", node, rhs)
    return node


def _term(ts: TokenStream):
    if ts.accept("-"):
        return ("neg", _term(ts))
    node = _factor(ts)
    while ts.accept("*"):
        node = ("mul", node, _factor(ts))
    return node


def _factor(ts: TokenStream):
    base = _atom(ts)
    if ts.accept("^"):
        sign = -1 if ts.accept("-") else 1
        tok = ts.expect_int("exponent")
        if tok is None:
            raise _Abort
        return ("pow", base, sign * int(tok.text))
    return base


def _atom(ts: TokenStream):
    tok = ts.current
    if tok.kind == "int":
        ts.advance()
        value = Fraction(int(tok.text))
        if ts.at("/") and ts.peek().kind == "int":
            ts.advance()
            den_tok = ts.advance()
            if int(den_tok.text) == 0:
                ts.error(den_tok, "zero denominator in rational literal")
                raise _Abort
            value = value / int(den_tok.text)
        return ("num", value)
    if tok.kind == "ident":
        ts.advance()
        return ("var", tok.text, tok)
    if tok.text == "(":
        ts.advance()
        node = _expr(ts)
        if ts.expect(")") is None:
            raise _Abort
        return node
    found = "end of input" if tok.kind == "eof" else repr(tok.text)
    ts.error(tok, f"expected a polynomial term, found {found}")
    raise _Abort


def parse_expression_text(text: str):
    tokens, diags = tokenize(text)
    ts = TokenStream(tokens, diags)
    node = parse_expr(ts)
    if node is not None and ts.current.kind != "eof":
        ts.error(ts.current, f"unexpected {ts.current.text!r} after expression")
    if ts.diagnostics:
        raise ParseError(ts.diagnostics)
    return node


_PREC = {"add": 1, "sub": 1, "neg": 2, "mul": 3, "pow": 4}


def format_expr(node, parent: int = 0) -> str:
    kind = node[0]
    if kind == "num":
        v = node[1]
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        if v < 0 or (v.denominator != 1 and parent >= _PREC["mul"]):
            return f"({s})"
        return s
    if kind == "var":
        return node[1]
    prec = _PREC[kind]
    if kind == "neg":
        s = "-" + format_expr(node[1], prec)
    elif kind == "pow":
        s = f"{format_expr(node[1], prec + 1)}^{node[2]}"
    else:
        sym = {"add": " + ", "sub": " - ", "mul": "*"}[kind]
        s = format_expr(node[1], prec) + sym + format_expr(node[2], prec + 1)
    return f"({s})" if prec < parent else s


def expr_variables(node) -> List[Tuple[str, Token]]:
    out: List[Tuple[str, Token]] = []
    stack = [node]
    while stack:
        n = stack.pop()
        if n[0] == "var":
            out.append((n[1], n[2]))
        elif n[0] in ("add", "sub", "mul"):
            stack.extend((n[2], n[1]))
        elif n[0] in ("neg", "pow"):
            stack.append(n[1])
    return out
