"""Presented commutative algebras B = k[x_1..x_m]/I and their ring-theoretic predicates."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .coeffs import QQ, Field, FieldElement
from .groebner import (
    Ideal,
    ideal_equal,
    ideal_intersection,
    ideal_member,
    ideal_quotient,
    is_zero_dimensional,
    krull_dim,
    normal_form,
    radical_member,
    reduced_groebner_basis,
    standard_monomials,
)
from .linalg import first_dependency
from .multipoly import Polynomial, PolyRing
from .verdict import Verdict

__all__ = [
    "AffineRing",
    "RingElement",
    "laurent_ring",
    "ring_add",
    "ring_mul",
    "is_unit",
    "is_zero_divisor",
    "is_nilpotent",
    "is_reduced",
    "is_finitely_generated_module",
    "krull_dimension",
]


class AffineRing:
    """B = k[variables] / <relations>, optionally with an involution given on variables.

    ``domain=True`` records a user assertion that B is an integral domain; it is
    only consulted by the Krull-dimension-one shortcut in dimension reports.
    """

    def __init__(
        self,
        variables: Sequence[str],
        relations: Sequence = (),
        field: Field = QQ,
        involution: Optional[Mapping[str, object]] = None,
        name: Optional[str] = None,
        domain: bool = False,
    ):
        self.poly_ring = PolyRing(variables, field)
        self.ideal = Ideal(self.poly_ring, relations)
        self.name = name
        self.assumed_domain = domain
        self.involution: Optional[Dict[str, Polynomial]] = None
        if involution:
            self.involution = {v: self.poly_ring(involution.get(v, v)) for v in self.poly_ring.variables}
            self._check_involution()

    @property
    def field(self) -> Field:
        return self.poly_ring.field

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.poly_ring.variables

    def basis(self) -> Tuple[Polynomial, ...]:
        return reduced_groebner_basis(self.ideal)

    def _check_involution(self) -> None:
        sigma = self.involution
        for v in self.variables:
            twice = sigma[v].substitute(sigma)
            if not ideal_member(twice - self.poly_ring.gen(v), self.ideal):
                raise ValueError(f"involution is not self-inverse on {v}")
        for g in self.ideal.generators:
            if not ideal_member(g.substitute(sigma), self.ideal):
                raise ValueError(f"involution does not preserve the relation {g}")

    def apply_involution(self, a: "RingElement") -> "RingElement":
        if self.involution is None:
            return a
        return self(a.rep.substitute(self.involution))

    def reduce(self, p: Polynomial) -> Polynomial:
        if not self.basis():
            return p
        return normal_form(p, self.ideal)

    def __call__(self, x) -> "RingElement":
        if isinstance(x, RingElement):
            if x.parent is self:
                return x
            x = x.rep
        return RingElement(self, self.reduce(self.poly_ring(x)), _normalized=True)

    def gen(self, name) -> "RingElement":
        return self(self.poly_ring.gen(name))

    def gens(self) -> Tuple["RingElement", ...]:
        return tuple(self(g) for g in self.poly_ring.gens())

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self.poly_ring.zero, _normalized=True)

    @property
    def one(self) -> "RingElement":
        return self(1)

    def is_zero_ring(self) -> bool:
        return self.ideal.is_unit()

    def quotient(self, extra: Sequence, name: Optional[str] = None) -> "AffineRing":
        gens = list(self.ideal.generators) + [self._as_poly(e) for e in extra]
        return AffineRing(self.variables, gens, self.field, name=name)

    def _as_poly(self, e) -> Polynomial:
        if isinstance(e, RingElement):
            return e.rep
        return self.poly_ring(e)

    def same_as(self, other: "AffineRing") -> bool:
        if other is self:
            return True
        return (
            isinstance(other, AffineRing)
            and other.poly_ring == self.poly_ring
            and self.basis() == other.basis()
        )

    def describe(self) -> str:
        base = f"{self.field}[{', '.join(self.variables)}]"
        gb = self.basis()
        if gb:
            base += "/<" + ", ".join(map(str, gb)) + ">"
        return base

    def __repr__(self):
        return f"AffineRing({self.name or self.describe()})"


class RingElement:
    __slots__ = ("parent", "rep")

    def __init__(self, parent: AffineRing, rep: Polynomial, _normalized: bool = False):
        self.parent = parent
        self.rep = rep if _normalized else parent.reduce(rep)

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.parent is not self.parent and not self.parent.same_as(other.parent):
                raise ValueError(f"parent mismatch: {self.parent} vs {other.parent}")
            return other.rep
        if isinstance(other, (int, Fraction, FieldElement, Polynomial)):
            return self.parent.poly_ring(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        # sums of normal forms are normal forms
        return RingElement(self.parent, self.rep + o, _normalized=not isinstance(other, Polynomial))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.parent, -self.rep, _normalized=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.parent, self.rep - o, _normalized=not isinstance(other, Polynomial))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.parent, o - self.rep)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return RingElement(self.parent, self.rep * o)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = self.parent.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __bool__(self):
        return not self.rep.is_zero()

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return (other.parent is self.parent or self.parent.same_as(other.parent)) and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == self.parent(other).rep
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"RingElement({self.rep})"


def laurent_ring(var: str = "t", inverse: str = "s", field: Field = QQ, name: Optional[str] = None) -> AffineRing:
    """k[t, t^-1] presented as k[t, s]/<t*s - 1>."""
    R = PolyRing((var, inverse), field)
    return AffineRing((var, inverse), [R.gen(var) * R.gen(inverse) - 1], field, name=name, domain=True)


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def _coerce(B: AffineRing, f) -> RingElement:
    return f if isinstance(f, RingElement) else B(f)


def is_unit(f: RingElement) -> Tuple[bool, Optional[RingElement]]:
    """(True, inverse) when f is invertible in its ring, else (False, None).

    The inverse is read off from the Gröbner basis of I + <t*f - 1> under an
    order eliminating t: t reduces to a t-free representative of 1/f.
    """
    B = f.parent
    P = B.poly_ring
    if not (B.ideal + [f.rep]).is_unit():
        return False, None
    if B.is_zero_ring():
        return True, B.zero
    (t_name,) = P.fresh_names(1)
    ext = P.extend((t_name,))
    t = ext.gen(t_name)
    J = Ideal(ext, [ext(g) for g in B.ideal.generators] + [t * ext(f.rep) - 1])
    h = normal_form(t, J)
    if h.degree(t_name) > 0:
        raise AssertionError(f"inverse extraction left t in {h}")
    inv = B(h.drop_to(P))
    if not (f * inv - 1).is_zero():
        raise AssertionError(f"extracted inverse {inv} of {f} fails f*g = 1")
    return True, inv


def is_zero_divisor(f: RingElement) -> bool:
    """True iff some nonzero g has f*g = 0, i.e. (I : f) != I."""
    B = f.parent
    if B.is_zero_ring():
        return False
    if f.is_zero():
        return True
    Q = ideal_quotient(B.ideal, f.rep)
    return not all(ideal_member(g, B.ideal) for g in Q.generators)


def is_nilpotent(f: RingElement) -> bool:
    if f.is_zero():
        return False
    return radical_member(f.rep, f.parent.ideal)


# -- univariate helpers (coefficient lists, lowest degree first) ----------------------


def _u_trim(a, F):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def _u_divmod(a, b, F):
    a, b = _u_trim(a, F), _u_trim(b, F)
    if not b:
        raise ZeroDivisionError
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = F.sub(a[i + shift], F.mul(c, bc))
        a = _u_trim(a, F)
    return _u_trim(q, F), a


def _u_gcd(a, b, F):
    a, b = _u_trim(a, F), _u_trim(b, F)
    while b:
        a, b = b, _u_divmod(a, b, F)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _u_deriv(a, F):
    return _u_trim([F.mul(F(i), c) for i, c in enumerate(a)][1:], F)


def _u_mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _u_trim(out, F)


def _u_radical(a, F):
    """Product of the distinct monic irreducible factors of ``a`` (perfect fields)."""
    a = _u_trim(a, F)
    if len(a) <= 1:
        return [F.one]
    d = _u_deriv(a, F)
    if not d:
        # char p and a(x) = h(x^p) = h(x)^p, since Frobenius fixes GF(p)
        p = F.characteristic
        return _u_radical(a[::p], F)
    g = _u_gcd(a, d, F)
    r1 = _u_divmod(a, g, F)[0]
    if len(g) <= 1:
        return _u_gcd(r1, r1, F)  # monic
    rg = _u_radical(g, F)
    common = _u_gcd(r1, rg, F)
    return _u_gcd(_u_divmod(_u_mul(r1, rg, F), common, F)[0], [F.zero], F)


def _minimal_polynomial(B: AffineRing, x: RingElement, basis) -> List:
    F = B.field
    index = {m: i for i, m in enumerate(basis)}

    def coords(e: RingElement):
        v = [F.zero] * len(basis)
        for m, c in e.rep.terms:
            v[index[m]] = c
        return v

    vectors = []
    power = B.one
    for _ in range(len(basis) + 1):
        vectors.append(coords(power))
        dep = first_dependency(vectors, F)
        if dep is not None:
            return dep
        power = power * x
    raise AssertionError("no minimal polynomial found within the dimension bound")


def _u_evaluate(a, x: RingElement) -> RingElement:
    B = x.parent
    out = B.zero
    for c in reversed(a):
        out = out * x + B(B.poly_ring.constant(c))
    return out


def _poly_gcd(a: Polynomial, b: Polynomial) -> Optional[Polynomial]:
    """gcd via <a> ∩ <b> = <lcm(a, b)>; None if the intersection is not visibly principal."""
    R = a.ring
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    inter = ideal_intersection(Ideal(R, [a]), Ideal(R, [b]))
    gb = reduced_groebner_basis(inter)
    if len(gb) != 1:
        return None
    return (a * b).exact_div(gb[0]).monic()


def _squarefree_part(f: Polynomial) -> Optional[Polynomial]:
    """f / gcd(f, df/dx_1, ..., df/dx_m) in characteristic zero, or None if undecided."""
    g = f
    for i in range(f.ring.nvars):
        d = f.derivative(i)
        if d.is_zero():
            continue
        g = _poly_gcd(g, d)
        if g is None:
            return None
    return f.exact_div(g)


def is_reduced(B: AffineRing, seed: int = 0, samples: int = 50) -> Verdict:
    """Reduced / NotReduced(witness) / Indeterminate.

    Exact when I = 0, when B is finite-dimensional (squarefree minimal
    polynomials of all variables) and when I is principal over QQ (the
    generator has no repeated factor iff gcd(f, df/dx_1, ..., df/dx_m) is
    constant). Otherwise a nilpotency search over variables and seeded random
    elements can only refute.
    """
    cond = "B reduced: no nonzero nilpotent element"
    gb = B.basis()
    F = B.field
    if not gb:
        return Verdict.yes("Reduced", "polynomial ring, I = <0>", cond, case="zero-ideal")
    if len(gb) == 1 and gb[0].is_constant():
        return Verdict.yes("Reduced", "zero ring", cond, case="zero-ring")
    if B.assumed_domain:
        return Verdict.yes("Reduced", "declared an integral domain", cond, case="assumed-domain")
    basis = standard_monomials(B.ideal)
    if basis is not None:
        for x in B.gens():
            mp = _minimal_polynomial(B, x, basis)
            if len(_u_gcd(mp, _u_deriv(mp, F), F)) > 1:
                w = _u_evaluate(_u_radical(mp, F), x)
                return Verdict.no(
                    "NotReduced",
                    f"minimal polynomial of {x} is not squarefree",
                    cond,
                    witness=w,
                    case="zero-dimensional",
                )
        return Verdict.yes(
            "Reduced", "every variable has a squarefree minimal polynomial", cond, case="zero-dimensional"
        )
    if len(gb) == 1 and F.characteristic == 0:
        f = gb[0]
        r = _squarefree_part(f)
        if r is not None:
            if r.total_degree() == f.total_degree():
                return Verdict.yes("Reduced", f"{f} is squarefree", cond, case="principal")
            return Verdict.no(
                "NotReduced", f"{f} has a repeated factor", cond, witness=B(r), case="principal"
            )
    rng = random.Random(seed)
    candidates = list(B.gens())
    # the squarefree part of any g in I is nilpotent in B; a nonzero one is a witness
    for g in gb:
        if F.characteristic == 0:
            r = _squarefree_part(g)
            if r is not None:
                candidates.append(B(r))
        for m, _ in g.terms:
            candidates.append(B(B.poly_ring.monomial(tuple(min(e, 1) for e in m))))
    for _ in range(samples):
        candidates.append(_random_element(B, rng, 3, 4))
    for c in candidates:
        if is_nilpotent(c):
            return Verdict.no("NotReduced", f"{c} is nilpotent", cond, witness=c, case="search")
    return Verdict.unknown(
        "Indeterminate", f"no nilpotent among {len(candidates)} tested elements; not decided", cond, case="search"
    )


def _random_element(B: AffineRing, rng: random.Random, degree: int, terms: int) -> RingElement:
    P = B.poly_ring
    d = {}
    for _ in range(rng.randint(1, terms)):
        exps = [0] * P.nvars
        for _ in range(rng.randint(0, degree)):
            if P.nvars:
                exps[rng.randrange(P.nvars)] += 1
        d[tuple(exps)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return B(P.from_dict(d))


def random_element(B: AffineRing, rng: random.Random, degree: int = 2, terms: int = 3) -> RingElement:
    return _random_element(B, rng, degree, terms)


def is_finitely_generated_module(B: AffineRing, extra) -> Tuple[bool, Optional[int]]:
    """Whether B/extra is finite-dimensional over k, with its dimension."""
    gens = extra.generators if isinstance(extra, Ideal) else extra
    J = B.ideal + [B._as_poly(e) for e in gens]
    return is_zero_dimensional(J)


def krull_dimension(B: AffineRing) -> int:
    return krull_dim(B.ideal)
