"""Sparse multivariate polynomials with exact coefficients.

Monomials are plain tuples of exponents. A :class:`Polynomial` keeps its terms
as a tuple of ``(monomial, coefficient)`` pairs sorted strictly descending in
the monomial order of its :class:`PolyRing`; zero coefficients never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .coeffs import QQ, Field, FieldElement
from .syntax import parse_expression_text

__all__ = [
    "Monomial",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "block_order",
    "monomial_cmp",
    "PolyRing",
    "Polynomial",
]

Monomial = Tuple[int, ...]


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``block`` (grevlex on ``m[:split]``, then grevlex on the rest)."""

    kind: str = "grevlex"
    split: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if (self.kind == "block") != (self.split is not None):
            raise ValueError("block order needs a split index (and only block order takes one)")

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        s = self.split
        return (_grevlex_key(m[:s]), _grevlex_key(m[s:]))

    def check(self, nvars: int) -> None:
        if self.kind == "block" and not 0 <= self.split <= nvars:
            raise ValueError(f"block split {self.split} outside 0..{nvars}")

    def __str__(self):
        return self.kind if self.split is None else f"block({self.split})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


def monomial_cmp(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"monomial length mismatch: {len(a)} vs {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """k[x_1..x_m] with a fixed field and monomial order."""

    def __init__(self, variables: Sequence[str], field: Field = QQ, order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        order.check(len(variables))
        self.variables = variables
        self.field = field
        self.order = order
        self.nvars = len(variables)
        self._key = order.key
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field}, {self.order})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in {self.variables}") from None

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.variables, self.field, order)

    def extend(self, names: Sequence[str], order: Optional[MonomialOrder] = None) -> "PolyRing":
        """Prepend fresh variables; with the default order they form an eliminating block."""
        names = tuple(names)
        if order is None:
            order = block_order(len(names))
        return PolyRing(names + self.variables, self.field, order)

    def fresh_names(self, count: int, stem: str = "_t") -> Tuple[str, ...]:
        out, i = [], 0
        while len(out) < count:
            name = f"{stem}{i}"
            if name not in self._index:
                out.append(name)
            i += 1
        return tuple(out)

    # construction ---------------------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        if self.field.is_zero(c):
            return self.zero
        return Polynomial(self, (((0,) * self.nvars, c),))

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise ValueError("monomial length does not match variable count")
        c = self.field(coeff)
        if self.field.is_zero(c):
            return self.zero
        return Polynomial(self, ((tuple(exps), c),))

    def gen(self, name: Union[str, int]) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(tuple(exps))

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def from_dict(self, terms: Mapping[Monomial, object]) -> "Polynomial":
        F = self.field
        d = {}
        for m, c in terms.items():
            c = F(c)
            if not F.is_zero(c):
                d[tuple(m)] = c
        return self._from_raw(d)

    def _from_raw(self, d: Dict[Monomial, object]) -> "Polynomial":
        """Build from a dict already holding nonzero field values."""
        key = self._key
        return Polynomial(self, tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True)))

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.change_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction, FieldElement)):
            return self.constant(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a polynomial")

    def parse(self, text: str) -> "Polynomial":
        """Parse e.g. ``"3/2*x^2*y - q + 1"``."""
        return self.from_ast(parse_expression_text(text))

    def from_ast(self, node) -> "Polynomial":
        kind = node[0]
        if kind == "num":
            return self.constant(node[1])
        if kind == "var":
            return self.gen(node[1])
        if kind == "neg":
            return -self.from_ast(node[1])
        if kind == "pow":
            return self.from_ast(node[1]) ** node[2]
        a, b = self.from_ast(node[1]), self.from_ast(node[2])
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        return a * b


class Polynomial:
    """Immutable sparse polynomial. Build through a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Tuple[Tuple[Monomial, object], ...]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # inspection -----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[0][1]

    @property
    def lm(self) -> Monomial:
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    def total_degree(self) -> int:
        """-1 for the zero polynomial."""
        return max((sum(m) for m, _ in self.terms), default=-1)

    def degree(self, var: Union[str, int]) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((m[i] for m, _ in self.terms), default=-1)

    def coefficient(self, m: Monomial):
        for mm, c in self.terms:
            if mm == m:
                return c
        return self.ring.field.zero

    def as_dict(self) -> Dict[Monomial, object]:
        return dict(self.terms)

    def support(self) -> Tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def variables_used(self) -> Tuple[str, ...]:
        used = set()
        for m, _ in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(self.ring.variables[i] for i in sorted(used))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
                    raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
                return other.change_ring(self.ring)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if not g.terms:
            return self
        if not self.terms:
            return g
        F = self.ring.field
        d = dict(self.terms)
        for m, c in g.terms:
            v = d.get(m)
            if v is None:
                d[m] = c
            else:
                v = F.add(v, c)
                if F.is_zero(v):
                    del d[m]
                else:
                    d[m] = v
        return self.ring._from_raw(d)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, tuple((m, F.neg(c)) for m, c in self.terms))

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def __mul__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if not self.terms or not g.terms:
            return self.ring.zero
        F = self.ring.field
        add, mul, is_zero = F.add, F.mul, F.is_zero
        if len(g.terms) == 1 and not any(g.terms[0][0]):
            c = g.terms[0][1]
            return Polynomial(self.ring, tuple((m, mul(a, c)) for m, a in self.terms))
        d: Dict[Monomial, object] = {}
        for m1, c1 in self.terms:
            for m2, c2 in g.terms:
                m = tuple(x + y for x, y in zip(m1, m2))
                v = d.get(m)
                d[m] = mul(c1, c2) if v is None else add(v, mul(c1, c2))
        return self.ring._from_raw({m: c for m, c in d.items() if not is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * x^m``; order is preserved so no resort."""
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero
        return Polynomial(
            self.ring, tuple((tuple(x + y for x, y in zip(mm, m)), F.mul(cc, c)) for mm, cc in self.terms)
        )

    def scale(self, c) -> "Polynomial":
        return self.mul_term((0,) * self.ring.nvars, self.ring.field(c))

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def derivative(self, var: Union[str, int]) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        F = self.ring.field
        d = {}
        for m, c in self.terms:
            if m[i]:
                v = F.mul(c, F(m[i]))
                if not F.is_zero(v):
                    mm = list(m)
                    mm[i] -= 1
                    d[tuple(mm)] = v
        return self.ring._from_raw(d)

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        """Quotient of an exact division by ``g``; raises if there is a remainder."""
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        key = self.ring._key
        lm, inv_lc = g.lm, F.inv(g.lc)
        p = dict(self.terms)
        q: Dict[Monomial, object] = {}
        while p:
            m = max(p, key=key)
            if not mono_divides(lm, m):
                raise ArithmeticError(f"{g} does not divide {self}")
            c = F.mul(p[m], inv_lc)
            t = mono_div(m, lm)
            q[t] = c
            for mg, cg in g.terms:
                mm = mono_mul(mg, t)
                v = F.sub(p.get(mm, F.zero), F.mul(c, cg))
                if F.is_zero(v):
                    p.pop(mm, None)
                else:
                    p[mm] = v
        return self.ring._from_raw(q)

    def substitute(self, images: Mapping[str, "Polynomial"], target: Optional[PolyRing] = None) -> "Polynomial":
        """Replace variables by polynomials of ``target`` (default: own ring)."""
        target = target or self.ring
        gens = []
        for v in self.ring.variables:
            if v in images:
                gens.append(target(images[v]))
            else:
                gens.append(target.gen(v))
        result = target.zero
        for m, c in self.terms:
            t = target.constant(c)
            for g, e in zip(gens, m):
                if e:
                    t = t * g**e
            result = result + t
        return result

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Move into a ring over the same field whose variables include ours."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise ValueError(f"field mismatch: {self.ring.field} vs {ring.field}")
        idx = [ring.index(v) for v in self.ring.variables]
        d = {}
        for m, c in self.terms:
            mm = [0] * ring.nvars
            for i, e in zip(idx, m):
                mm[i] = e
            d[tuple(mm)] = c
        return ring._from_raw(d)

    def drop_to(self, ring: PolyRing) -> "Polynomial":
        """Move into a ring on a subset of our variables; unused variables must be absent."""
        idx = {v: i for i, v in enumerate(self.ring.variables)}
        keep = [idx[v] for v in ring.variables]
        drop = [i for i in range(self.ring.nvars) if i not in set(keep)]
        d = {}
        for m, c in self.terms:
            if any(m[i] for i in drop):
                raise ValueError(f"{self} involves variables outside {ring.variables}")
            d[tuple(m[i] for i in keep)] = c
        return ring._from_raw(d)

    # comparison / display ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
                return False
            if other.ring.order != self.ring.order:
                return dict(self.terms) == dict(other.terms)
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        parts = []
        for m, c in self.terms:
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            neg = False
            if F.characteristic == 0 and c < 0:
                neg, c = True, -c
            cs = F.format(c)
            if not mono:
                body = cs
            elif c == F.one:
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same(f, g)
    return f + g


def poly_sub(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same(f, g)
    return f - g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same(f, g)
    return f * g


def partial_derivative(f: Polynomial, var_index: int) -> Polynomial:
    return f.derivative(var_index)


def _check_same(f: Polynomial, g: Polynomial) -> None:
    if f.ring.variables != g.ring.variables:
        raise ValueError(f"variable mismatch: {f.ring.variables} vs {g.ring.variables}")
    if f.ring.field != g.ring.field:
        raise ValueError(f"field mismatch: {f.ring.field} vs {g.ring.field}")


def sum_polys(ring: PolyRing, polys: Iterable[Polynomial]) -> Polynomial:
    F = ring.field
    d: Dict[Monomial, object] = {}
    for p in polys:
        for m, c in p.terms:
            v = d.get(m)
            d[m] = c if v is None else F.add(v, c)
    return ring._from_raw({m: c for m, c in d.items() if not F.is_zero(c)})
