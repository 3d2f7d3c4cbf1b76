"""Concrete algebras carrying an affine cell ideal.

:class:`GroupExtensionAlgebra` is A = k[G] (+) J for a product G of cyclic
groups acting on rows and columns of J = (M_n(B), psi) through rho: G -> S_n:

    g . (b E_ij) = b E_{rho(g)(i), j}      (b E_ij) . g = b E_{i, rho(g^-1)(j)}
    (g, a)(h, a') = (gh, g.a' + a.h + a*a')

:class:`PrincipalCellAlgebra` is a commutative R with the cell ideal J = R g.
Both expose the same small interface used by chain analysis: ``chain()``,
``annihilator_search`` and ``embedding_evidence``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .affine_ring import AffineRing, RingElement, is_finitely_generated_module
from .coeffs import QQ, Field
from .groebner import ideal_quotient
from .linalg import nullspace, rank
from .multipoly import Polynomial, PolyRing
from .swich import MatrixOverB, SwichLayer, random_matrix, swich_mul
from .verdict import Verdict

__all__ = [
    "CyclicFactor",
    "GroupSpec",
    "GroupAlgebraElement",
    "GroupExtensionAlgebra",
    "ExtElement",
    "PrincipalCellAlgebra",
    "ext_mul",
    "involution_check",
    "is_central",
    "cell_fg_check",
    "bounded_annihilator_search",
    "phi_concrete",
    "group_algebra_ring",
    "tl_builtin",
    "tl_det_lemma_check",
    "det_lemma_check",
    "permutation_from_cycles",
    "psi_invariance_failure",
]

Word = Tuple[int, ...]
Perm = Tuple[int, ...]


def _compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _perm_power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = _perm_inverse(p), -k
    result = tuple(range(len(p)))
    for _ in range(k):
        result = _compose(p, result)
    return result


def _perm_order(p: Perm) -> int:
    ident = tuple(range(len(p)))
    k, q = 1, p
    while q != ident:
        q = _compose(p, q)
        k += 1
    return k


def permutation_from_cycles(cycles: Sequence[Sequence[int]], n: int, one_based: bool = True) -> Perm:
    """Permutation of range(n) from disjoint cycles, e.g. [[1, 2]] -> (1, 0)."""
    img = list(range(n))
    seen = set()
    for cyc in cycles:
        cyc = [c - 1 for c in cyc] if one_based else list(cyc)
        for c in cyc:
            if not 0 <= c < n:
                raise ValueError(f"cycle entry {c + int(one_based)} outside 1..{n}")
            if c in seen:
                raise ValueError("cycles are not disjoint")
            seen.add(c)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


@dataclass(frozen=True)
class CyclicFactor:
    name: str
    order: int  # 0 for the infinite cyclic group
    image: Perm

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("cyclic order must be nonnegative (0 = infinite)")
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"{self.image} is not a permutation")
        if self.order and self.order % _perm_order(self.image):
            raise ValueError(
                f"rho({self.name}) has order {_perm_order(self.image)}, which does not divide {self.order}"
            )


@dataclass(frozen=True)
class GroupSpec:
    """A direct product of cyclic groups with commuting permutation images in S_n."""

    factors: Tuple[CyclicFactor, ...]
    n: int
    name: str = "G"

    def __post_init__(self):
        for f in self.factors:
            if len(f.image) != self.n:
                raise ValueError(f"rho({f.name}) acts on {len(f.image)} points, expected {self.n}")
        for a, b in itertools.combinations(self.factors, 2):
            if _compose(a.image, b.image) != _compose(b.image, a.image):
                raise ValueError(f"rho({a.name}) and rho({b.name}) do not commute")
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise ValueError("duplicate group generator names")

    @property
    def identity(self) -> Word:
        return (0,) * len(self.factors)

    def normalize(self, w: Sequence[int]) -> Word:
        return tuple(e % f.order if f.order else e for e, f in zip(w, self.factors))

    def mul(self, a: Word, b: Word) -> Word:
        return self.normalize([x + y for x, y in zip(a, b)])

    def inverse(self, w: Word) -> Word:
        return self.normalize([-e for e in w])

    def generator(self, name: str) -> Word:
        for i, f in enumerate(self.factors):
            if f.name == name:
                return tuple(int(i == j) for j in range(len(self.factors)))
        raise KeyError(f"unknown group generator {name!r}")

    def generators(self) -> List[Word]:
        return [self.generator(f.name) for f in self.factors]

    def rho(self, w: Word) -> Perm:
        p = tuple(range(self.n))
        for e, f in zip(w, self.factors):
            p = _compose(p, _perm_power(f.image, e))
        return p

    def words(self, support: int) -> List[Word]:
        """Group elements with |exponent| <= support on infinite factors."""
        ranges = [range(f.order) if f.order else range(-support, support + 1) for f in self.factors]
        return sorted(itertools.product(*ranges), key=lambda w: (sum(map(abs, w)), w))

    def format_word(self, w: Word) -> str:
        parts = []
        for e, f in zip(w, self.factors):
            if e == 1:
                parts.append(f.name)
            elif e:
                parts.append(f"{f.name}^{e}")
        return "*".join(parts) or "1"


class GroupAlgebraElement:
    """Finitely supported k-linear combination of group words."""

    __slots__ = ("group", "field", "terms")

    def __init__(self, group: GroupSpec, field: Field, terms: Dict[Word, object]):
        self.group = group
        self.field = field
        clean = {}
        for w, c in terms.items():
            w = group.normalize(w)
            c = field(c)
            v = field.add(clean.get(w, field.zero), c)
            clean[w] = v
        self.terms = tuple(sorted((w, c) for w, c in clean.items() if not field.is_zero(c)))

    @classmethod
    def word(cls, group: GroupSpec, field: Field, w: Word, coeff=1) -> "GroupAlgebraElement":
        return cls(group, field, {w: field(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if not isinstance(other, GroupAlgebraElement) or other.group != self.group or other.field != self.field:
            raise ValueError("group algebra elements from different groups or fields")

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        F = self.field
        for w, c in other.terms:
            d[w] = F.add(d.get(w, F.zero), c)
        return GroupAlgebraElement(self.group, F, d)

    def __neg__(self):
        return GroupAlgebraElement(self.group, self.field, {w: self.field.neg(c) for w, c in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F, G = self.field, self.group
        d: Dict[Word, object] = {}
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                w = G.mul(w1, w2)
                d[w] = F.add(d.get(w, F.zero), F.mul(c1, c2))
        return GroupAlgebraElement(G, F, d)

    def scale(self, c) -> "GroupAlgebraElement":
        c = self.field(c)
        return GroupAlgebraElement(self.group, self.field, {w: self.field.mul(c, v) for w, v in self.terms})

    def star(self) -> "GroupAlgebraElement":
        """Linear extension of g -> g^-1."""
        return GroupAlgebraElement(self.group, self.field, {self.group.inverse(w): c for w, c in self.terms})

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        F = self.field
        for w, c in self.terms:
            ws = self.group.format_word(w)
            if ws == "1":
                out.append(F.format(c))
            elif c == F.one:
                out.append(ws)
            elif c == F.neg(F.one):
                out.append(f"-{ws}")
            else:
                out.append(f"{F.format(c)}*{ws}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self):
        return f"GroupAlgebraElement({self})"


@dataclass(frozen=True, eq=False)
class ExtElement:
    """An element (p, a) of k[G] (+) J."""

    algebra: "GroupExtensionAlgebra"
    p: GroupAlgebraElement
    a: MatrixOverB

    def __add__(self, other):
        return ExtElement(self.algebra, self.p + other.p, self.a + other.a)

    def __sub__(self, other):
        return ExtElement(self.algebra, self.p - other.p, self.a - other.a)

    def __neg__(self):
        return ExtElement(self.algebra, -self.p, -self.a)

    def __mul__(self, other):
        if isinstance(other, ExtElement):
            return ext_mul(self, other, self.algebra)
        return self.scale(other)

    def scale(self, c) -> "ExtElement":
        return ExtElement(self.algebra, self.p.scale(c), self.a.scale(self.algebra.base(self.algebra.field(c))))

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.a.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.p == other.p and self.a == other.a

    def __hash__(self):
        return hash((self.p, self.a))

    def __str__(self):
        return f"({self.p}, {self.a})"

    __repr__ = __str__


def psi_invariance_failure(group: GroupSpec, layer: SwichLayer) -> Optional[str]:
    """Name of a generator g with psi[rho(g) i, rho(g) j] != psi[i, j], or None.

    Invariance is what makes (a . g) * b = a * (g . b), i.e. the action compatible with *.
    """
    n = layer.n
    for f in group.factors:
        r = f.image
        if any(layer.psi[r[i], r[j]] != layer.psi[i, j] for i in range(n) for j in range(n)):
            return f.name
    return None


class GroupExtensionAlgebra:
    def __init__(self, group: GroupSpec, layer: SwichLayer, name: str = "A"):
        if group.n != layer.n:
            raise ValueError(f"group acts on {group.n} points but the layer has n = {layer.n}")
        if not layer.symmetric:
            raise ValueError("psi must be symmetric for the transpose involution")
        bad = psi_invariance_failure(group, layer)
        if bad is not None:
            raise ValueError(f"psi is not invariant under rho({bad}); the product would not be associative")
        self.group = group
        self.layer = layer
        self.name = name

    @property
    def base(self) -> AffineRing:
        return self.layer.base

    @property
    def field(self) -> Field:
        return self.layer.base.field

    @property
    def n(self) -> int:
        return self.layer.n

    # constructors ----------------------------------------------------------
    def element(self, p: Optional[GroupAlgebraElement] = None, a: Optional[MatrixOverB] = None) -> ExtElement:
        if p is None:
            p = GroupAlgebraElement(self.group, self.field, {})
        if a is None:
            a = self.layer.zero()
        return ExtElement(self, p, a)

    def group_element(self, w, coeff=1) -> ExtElement:
        if isinstance(w, str):
            w = self.group.generator(w)
        return self.element(GroupAlgebraElement.word(self.group, self.field, w, coeff))

    def matrix_element(self, a) -> ExtElement:
        if not isinstance(a, MatrixOverB):
            a = self.layer.matrix(a)
        return self.element(a=a)

    @property
    def one(self) -> ExtElement:
        return self.group_element(self.group.identity)

    @property
    def zero(self) -> ExtElement:
        return self.element()

    def spanning_set(self) -> List[ExtElement]:
        """Algebra generators used for centrality and involution sweeps."""
        out = [self.group_element(w) for w in self.group.generators()]
        out += [self.matrix_element(u) for u in self.layer.units()]
        for v in self.base.gens():
            out.append(self.matrix_element(self.layer.unit(0, 0, v)))
        return out

    def linear_basis(self, degree: int, support: int) -> List[ExtElement]:
        """Group words up to ``support`` and monomial matrix units up to ``degree``."""
        out = [self.group_element(w) for w in self.group.words(support)]
        for mono in _standard_monomials_upto(self.base, degree):
            for i in range(self.n):
                for j in range(self.n):
                    out.append(self.matrix_element(self.layer.unit(i, j, mono)))
        return out

    def random_element(self, rng: random.Random, support: int = 2, degree: int = 2) -> ExtElement:
        words = self.group.words(support)
        p = GroupAlgebraElement(
            self.group, self.field, {rng.choice(words): rng.choice([-2, -1, 1, 2]) for _ in range(rng.randint(0, 2))}
        )
        a = random_matrix(self.base, self.n, rng, degree) if rng.random() < 0.8 else self.layer.zero()
        return self.element(p, a)

    # structure ---------------------------------------------------------------
    def left_action(self, p: GroupAlgebraElement, a: MatrixOverB) -> MatrixOverB:
        n, P = self.n, self.base.poly_ring
        out = [[P.zero] * n for _ in range(n)]
        src = a.polys()
        for w, c in p.terms:
            perm = self.group.rho(w)
            for i in range(n):
                for j in range(n):
                    if not src[i][j].is_zero():
                        out[perm[i]][j] = out[perm[i]][j] + src[i][j].scale(c)
        return MatrixOverB._from_polys(self.base, out)

    def right_action(self, a: MatrixOverB, p: GroupAlgebraElement) -> MatrixOverB:
        n, P = self.n, self.base.poly_ring
        out = [[P.zero] * n for _ in range(n)]
        src = a.polys()
        for w, c in p.terms:
            perm = self.group.rho(self.group.inverse(w))
            for i in range(n):
                for j in range(n):
                    if not src[i][j].is_zero():
                        out[i][perm[j]] = out[i][perm[j]] + src[i][j].scale(c)
        return MatrixOverB._from_polys(self.base, out)

    def sigma(self, u: ExtElement) -> ExtElement:
        """Involution: transpose on J and g -> g^-1 on k[G]."""
        return ExtElement(self, u.p.star(), u.a.transpose())

    def permutation_matrix(self, p: GroupAlgebraElement) -> MatrixOverB:
        """P(p) with x . p = x P(p) for every x in M_n(B)."""
        n, P = self.n, self.base.poly_ring
        out = [[P.zero] * n for _ in range(n)]
        for w, c in p.terms:
            perm = self.group.rho(w)
            for k in range(n):
                out[perm[k]][k] = out[perm[k]][k] + P.constant(c)
        return MatrixOverB._from_polys(self.base, out)

    def chain(self, search: bool = True, degree_bound: int = 2, support_bound: int = 2):
        """The two-layer chain J_0 = J, J_1/J_0 = k[G]."""
        from .chain import CellChain

        top = SwichLayer(group_algebra_ring(self.group, self.field), [[1]], name=f"{self.group.name}_top")
        m, prov = 1, "default-top"
        if search:
            v = bounded_annihilator_search(self, degree_bound, support_bound)
            if v.refuted:
                prov = "computed"
        return CellChain([self.layer, top], m=m, m_provenance=prov, algebra=self, name=self.name)

    def annihilator_search(self, degree_bound: int = 2, support_bound: int = 2) -> Verdict:
        return bounded_annihilator_search(self, degree_bound, support_bound)

    def embedding_evidence(self, degree_bound: int = 2, support_bound: int = 1) -> Verdict:
        return _embedding_evidence(self, self.linear_basis(degree_bound, support_bound), self.phi, self._phi_coords)

    def phi(self, u: ExtElement):
        return phi_concrete(u, self)

    def _phi_coords(self, image) -> Dict:
        p, M = image
        out = {("g", w): c for w, c in p.terms}
        for i, row in enumerate(M.rows):
            for j, e in enumerate(row):
                for m, c in e.rep.terms:
                    out[("m", i, j, m)] = c
        return out

    def __repr__(self):
        return f"GroupExtensionAlgebra({self.name}: k[{self.group.name}] + {self.layer.describe()})"


def ext_mul(u: ExtElement, v: ExtElement, A: GroupExtensionAlgebra) -> ExtElement:
    if u.algebra is not A or v.algebra is not A:
        raise ValueError("elements belong to a different algebra")
    p = u.p * v.p
    a = A.left_action(u.p, v.a) + A.right_action(u.a, v.p) + swich_mul(u.a, v.a, A.layer)
    return ExtElement(A, p, a)


def _commutes(u: ExtElement, s: ExtElement) -> bool:
    return u * s == s * u


def is_central(u: ExtElement, A: GroupExtensionAlgebra) -> bool:
    """[u, s] = 0 on algebra generators; the actions are B-linear so E_ij cover all of J."""
    return all(_commutes(u, s) for s in A.spanning_set())


def involution_check(A: GroupExtensionAlgebra, samples: int = 20, seed: int = 0) -> bool:
    rng = random.Random(seed)
    elems = A.spanning_set() + [A.random_element(rng) for _ in range(samples)]
    for u in elems:
        if A.sigma(A.sigma(u)) != u:
            return False
    for u in elems:
        for v in elems:
            if A.sigma(u * v) != A.sigma(v) * A.sigma(u):
                return False
    return True


def cell_fg_check(A) -> Verdict:
    """J is finitely generated over A iff B / I_psi is finite-dimensional over k."""
    layer = A.layer if isinstance(A, GroupExtensionAlgebra) else A
    cond = "J finitely generated as a left ideal iff B/I is a finitely generated k-module"
    ok, dim = is_finitely_generated_module(layer.base, layer.entry_ideal)
    if ok:
        return Verdict.yes("FinitelyGenerated", f"dim_k B/I_psi = {dim}", cond, dimension=dim)
    return Verdict.no("NotFinitelyGenerated", "B/I_psi is infinite-dimensional", cond)


def phi_concrete(u: ExtElement, A: GroupExtensionAlgebra) -> Tuple[GroupAlgebraElement, MatrixOverB]:
    """(u + J, matrix of right multiplication by u on J) = (p, P(p) + psi a)."""
    return u.p, A.permutation_matrix(u.p) + A.layer.psi @ u.a


def _standard_monomials_upto(B: AffineRing, degree: int) -> List[Polynomial]:
    P = B.poly_ring
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(P.nvars), d):
            exps = [0] * P.nvars
            for i in combo:
                exps[i] += 1
            mono = P.monomial(tuple(exps))
            if B.reduce(mono) == mono:
                out.append(mono)
    return out


def _coords_matrix(images: List[Dict], F: Field):
    keys = sorted({k for img in images for k in img}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    rows = [[F.zero] * len(images) for _ in keys]
    for col, img in enumerate(images):
        for k, c in img.items():
            rows[index[k]][col] = c
    return rows


def bounded_annihilator_search(A: GroupExtensionAlgebra, degree_bound: int = 2, group_support_bound: int = 2) -> Verdict:
    """Look for u != 0 with x u = 0 for all x in J, u in a truncated span.

    x u is B-linear in the coefficient of x, so the equations E_ij u = 0
    suffice. A solution is a genuine witness; no solution only means none
    exists inside the bounds.
    """
    if degree_bound < 1 or group_support_bound < 1:
        raise ValueError("bounds must be >= 1")
    cond = "r.ann_A(J) = 0 (m = 0 for the two-layer chain)"
    F = A.field
    basis = A.linear_basis(degree_bound, group_support_bound)
    units = [A.matrix_element(e) for e in A.layer.units()]

    def image(u: ExtElement) -> Dict:
        out = {}
        for t, x in enumerate(units):
            prod = x * u
            for i, row in enumerate(prod.a.rows):
                for j, e in enumerate(row):
                    for m, c in e.rep.terms:
                        out[(t, i, j, m)] = c
        return out

    rows = _coords_matrix([image(u) for u in basis], F)
    ns = nullspace(rows, len(basis), F) if rows else [[F.one if i == k else F.zero for i in range(len(basis))] for k in range(len(basis))]
    witnesses = []
    for vec in ns:
        w = A.zero
        for c, u in zip(vec, basis):
            if not F.is_zero(c):
                w = w + u.scale(F.element(c))
        if any(not (x * w).is_zero() for x in units):
            raise AssertionError(f"annihilator candidate {w} fails verification")
        witnesses.append(w)
    bounds = dict(degree_bound=degree_bound, support_bound=group_support_bound, dimension=len(witnesses))
    if witnesses:
        return Verdict.no(
            "NonzeroWitness",
            f"{len(witnesses)}-dimensional right annihilator inside the bounds",
            cond,
            witness=witnesses[0],
            basis=[str(w) for w in witnesses],
            **bounds,
        )
    return Verdict.unknown("ZeroWithinBound", "no annihilating element inside the bounds", cond, **bounds)


def _scaled(u, c, F: Field):
    if isinstance(u, ExtElement):
        return u.scale(F.element(c))
    return u * u.parent(u.parent.poly_ring.constant(c))


def _embedding_evidence(alg, basis: List, phi, coords) -> Verdict:
    """Multiplicativity of phi on all basis pairs and injectivity on their span."""
    cond = "Phi multiplicative, and injective on the tested span"
    images = [phi(u) for u in basis]
    for (u, iu), (v, iv) in itertools.product(zip(basis, images), repeat=2):
        left = phi(u * v)
        right = tuple(a * b if not isinstance(a, MatrixOverB) else a @ b for a, b in zip(iu, iv))
        if tuple(left) != right:
            return Verdict.no("NotMultiplicative", f"Phi({u} {v}) != Phi({u}) Phi({v})", cond, multiplicative=False)
    F = alg.field
    vecs = [coords(img) for img in images]
    rows = _coords_matrix(vecs, F)
    r = rank(rows, len(basis), F) if rows else 0
    data = dict(multiplicative=True, span_size=len(basis), rank=r, pairs=len(basis) ** 2)
    if r == len(basis):
        return Verdict.yes("Injective", f"multiplicative on {len(basis) ** 2} pairs; rank {r} = span size", cond, **data)
    kernel = nullspace(rows, len(basis), F)[0]
    w = None
    for c, u in zip(kernel, basis):
        if not F.is_zero(c):
            term = _scaled(u, c, F)
            w = term if w is None else w + term
    return Verdict.no("NotInjective", f"kernel element {w}", cond, witness=w, **data)


def group_algebra_ring(G: GroupSpec, field: Field = QQ) -> AffineRing:
    """k[G] as an affine ring: Laurent pairs t*t_inv = 1 and t^r = 1 for finite factors."""
    names: List[str] = []
    for f in G.factors:
        names.append(f.name)
        if not f.order:
            names.append(f"{f.name}_inv")
    P = PolyRing(names, field)
    rels = []
    for f in G.factors:
        t = P.gen(f.name)
        rels.append(t * P.gen(f"{f.name}_inv") - 1 if not f.order else t**f.order - 1)
    domain = all(not f.order for f in G.factors)
    return AffineRing(names, rels, field, name=f"k[{G.name}]", domain=domain)


def tl_builtin(q=1, field: Field = QQ) -> GroupExtensionAlgebra:
    """k[tau^{+-1}] (+) (M_2(k[x]), [[q, x], [x, q]]) with rho(tau) = (1 2).

    A string ``q`` makes q an indeterminate of B = k[x, q].
    """
    if isinstance(q, str):
        B = AffineRing(("x", q), field=field, name=f"k[x,{q}]", domain=True)
        qv = B.gen(q)
    else:
        B = AffineRing(("x",), field=field, name="k[x]", domain=True)
        qv = B(B.poly_ring.constant(q))
    x = B.gen("x")
    layer = SwichLayer(B, [[qv, x], [x, qv]], name="J0")
    G = GroupSpec((CyclicFactor("tau", 0, (1, 0)),), 2, "Z")
    return GroupExtensionAlgebra(G, layer, name=f"TL2a({q})")


def det_lemma_check(layer: SwichLayer, var: str, expected_degree: int) -> bool:
    """det(psi), read as a polynomial in ``var`` over the other variables, is monic of the given degree."""
    B = layer.base
    if var not in B.variables:
        return False
    det = layer.det.rep
    deg = det.degree(var)
    if deg != expected_degree:
        return False
    i = B.poly_ring.index(var)
    lead = [(m, c) for m, c in det.terms if m[i] == deg]
    return len(lead) == 1 and all(e == 0 for k, e in enumerate(lead[0][0]) if k != i) and lead[0][1] == B.field.one


def tl_det_lemma_check(A, var: str = "q", strands: int = 2, through: int = 0) -> bool:
    """Leading q-power of det(psi_j) is dim(V_j) * (strands - 2 j) / 2."""
    layer = A.layer if isinstance(A, GroupExtensionAlgebra) else A
    return det_lemma_check(layer, var, layer.n * (strands - 2 * through) // 2)


# -- commutative principal cell ideals -------------------------------------------------------


class PrincipalCellAlgebra:
    """A commutative affine R with J = R g, viewed as the layer (R/(I:g), (g)).

    The quotient R/J = R/(I + <g>) is the unital top layer, and
    Phi(u) = (u + J, u mod Ann(g)) is right multiplication on J.
    """

    def __init__(self, R: AffineRing, g, name: str = "R"):
        self.R = R
        self.g = R(g)
        self.name = name
        ann = ideal_quotient(R.ideal, self.g.rep)
        self.layer_ring = AffineRing(R.variables, ann.generators, R.field, name=f"{name}/Ann({self.g})")
        self.layer = SwichLayer(self.layer_ring, [[self.g.rep]], name="J0")
        self.top_ring = R.quotient([self.g.rep], name=f"{name}/J")
        self.top = SwichLayer(self.top_ring, [[1]], name="top")

    @property
    def field(self) -> Field:
        return self.R.field

    def linear_basis(self, degree: int) -> List[RingElement]:
        return [self.R(m) for m in _standard_monomials_upto(self.R, degree)]

    def phi(self, u: RingElement):
        return self.top_ring(u.rep), self.layer_ring(u.rep)

    def _phi_coords(self, image) -> Dict:
        out = {}
        for t, e in enumerate(image):
            for m, c in e.rep.terms:
                out[(t, m)] = c
        return out

    def annihilator_search(self, degree_bound: int = 4, support_bound: int = 0) -> Verdict:
        cond = "r.ann_R(J) = 0"
        F = self.field
        basis = self.linear_basis(degree_bound)
        imgs = [{m: c for m, c in (self.g * u).rep.terms} for u in basis]
        rows = _coords_matrix(imgs, F)
        ns = nullspace(rows, len(basis), F) if rows else [[F.one if i == k else F.zero for i in range(len(basis))] for k in range(len(basis))]
        witnesses = []
        for vec in ns:
            w = self.R.zero
            for c, u in zip(vec, basis):
                w = w + u * self.R(self.R.poly_ring.constant(c))
            if not (self.g * w).is_zero():
                raise AssertionError(f"annihilator candidate {w} fails verification")
            witnesses.append(w)
        data = dict(degree_bound=degree_bound, dimension=len(witnesses))
        if witnesses:
            return Verdict.no(
                "NonzeroWitness",
                f"{len(witnesses)}-dimensional right annihilator inside the bounds",
                cond,
                witness=witnesses[0],
                basis=[str(w) for w in witnesses],
                **data,
            )
        return Verdict.unknown("ZeroWithinBound", "no annihilating element inside the bounds", cond, **data)

    def embedding_evidence(self, degree_bound: int = 4, support_bound: int = 0) -> Verdict:
        return _embedding_evidence(self, self.linear_basis(degree_bound), self.phi, self._phi_coords)

    def chain(self, search: bool = True, degree_bound: int = 4):
        from .chain import CellChain

        m, prov = 1, "default-top"
        if search and self.annihilator_search(degree_bound).refuted:
            prov = "computed"
        return CellChain([self.layer, self.top], m=m, m_provenance=prov, algebra=self, name=self.name)

    def __repr__(self):
        return f"PrincipalCellAlgebra({self.name}, J = R*{self.g})"
