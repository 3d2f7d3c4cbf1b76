"""Generalized matrix rings (M_n(B), psi) with product a*b = a psi b.

Heavy loops (determinants, standard identities) work on raw ambient
polynomials and reduce modulo the defining ideal once at the end; the public
:class:`MatrixOverB` wraps normalized :class:`RingElement` entries.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .affine_ring import AffineRing, RingElement, is_reduced, is_unit, is_zero_divisor, random_element
from .groebner import Ideal
from .multipoly import Polynomial
from .verdict import Verdict

__all__ = [
    "MatrixOverB",
    "SwichLayer",
    "PIResult",
    "swich_mul",
    "det_adjugate",
    "is_idempotent_ideal",
    "is_semiprime",
    "idempotent_generator",
    "adjugate_centrality_check",
    "phi_maps",
    "pi_check_matrix",
    "pi_check_swich",
    "central_subring_check",
    "product_ideal_check",
    "random_matrix",
    "standard_polynomial",
]

PolyMatrix = List[List[Polynomial]]


class MatrixOverB:
    """An n x n matrix over an affine ring B, entries kept in normal form."""

    __slots__ = ("parent", "n", "rows")

    def __init__(self, parent: AffineRing, rows: Sequence[Sequence]):
        n = len(rows)
        if n < 1:
            raise ValueError("matrices must be at least 1x1")
        if any(len(r) != n for r in rows):
            raise ValueError(f"matrix is not square: row lengths {[len(r) for r in rows]}")
        self.parent = parent
        self.n = n
        self.rows = tuple(tuple(parent(x) for x in r) for r in rows)

    @classmethod
    def zero(cls, B: AffineRing, n: int) -> "MatrixOverB":
        return cls(B, [[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, B: AffineRing, n: int) -> "MatrixOverB":
        return cls(B, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, B: AffineRing, n: int, i: int, j: int, coeff=1) -> "MatrixOverB":
        """coeff * E_ij (0-based indices)."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = coeff
        return cls(B, rows)

    @classmethod
    def units(cls, B: AffineRing, n: int) -> List["MatrixOverB"]:
        return [cls.unit(B, n, i, j) for i in range(n) for j in range(n)]

    @classmethod
    def _from_polys(cls, B: AffineRing, rows: PolyMatrix) -> "MatrixOverB":
        return cls(B, [[B.reduce(p) for p in r] for r in rows])

    def polys(self) -> PolyMatrix:
        return [[e.rep for e in r] for r in self.rows]

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "MatrixOverB") -> None:
        if not isinstance(other, MatrixOverB):
            raise TypeError(f"expected a matrix, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.parent is not self.parent and not self.parent.same_as(other.parent):
            raise ValueError("matrices live over different rings")

    def __add__(self, other):
        self._check(other)
        return MatrixOverB(self.parent, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return MatrixOverB(self.parent, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatrixOverB(self.parent, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other: "MatrixOverB") -> "MatrixOverB":
        self._check(other)
        return MatrixOverB._from_polys(self.parent, _pmul(self.polys(), other.polys()))

    def scale(self, b) -> "MatrixOverB":
        b = self.parent(b)
        return MatrixOverB(self.parent, [[b * a for a in r] for r in self.rows])

    def transpose(self) -> "MatrixOverB":
        return MatrixOverB(self.parent, [list(c) for c in zip(*self.rows)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all(self.rows[i][j] == (d if i == j else self.parent.zero) for i in range(self.n) for j in range(self.n))

    def entries(self):
        return [e for r in self.rows for e in r]

    def __eq__(self, other):
        if not isinstance(other, MatrixOverB):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"MatrixOverB({self})"


# -- raw polynomial matrix helpers ------------------------------------------------------


def _pmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                if a[i][k].is_zero() or b[k][j].is_zero():
                    continue
                t = a[i][k] * b[k][j]
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else a[i][j].ring.zero)
        out.append(row)
    return out


def _padd(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _psub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def det_adjugate(m: MatrixOverB) -> Tuple[RingElement, MatrixOverB]:
    """Division-free determinant and adjugate by memoized cofactor expansion."""
    B, n = m.parent, m.n
    P = m.polys()
    zero, one = B.poly_ring.zero, B.poly_ring.one
    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Polynomial] = {}

    def minor(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Polynomial:
        if not rows:
            return one
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r0, rest = rows[0], rows[1:]
        acc = zero
        for pos, c in enumerate(cols):
            e = P[r0][c]
            if e.is_zero():
                continue
            sub = minor(rest, cols[:pos] + cols[pos + 1 :])
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    idx = tuple(range(n))
    det = B.reduce(minor(idx, idx))
    adj = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = minor(idx[:i] + idx[i + 1 :], idx[:j] + idx[j + 1 :])
            adj[j][i] = -c if (i + j) % 2 else c
    adjm = MatrixOverB._from_polys(B, adj)
    det_e = B(det)
    scalar = MatrixOverB.identity(B, n).scale(det_e)
    if adjm @ m != scalar or m @ adjm != scalar:
        raise AssertionError("adjugate identity failed")
    return det_e, adjm


# -- layers -----------------------------------------------------------------------------


class SwichLayer:
    """J = (M_n(B), psi) together with det(psi), psi^+ and the entry ideal I_psi."""

    def __init__(self, base: AffineRing, psi, name: Optional[str] = None):
        if not isinstance(psi, MatrixOverB):
            psi = MatrixOverB(base, psi)
        if psi.parent is not base and not base.same_as(psi.parent):
            raise ValueError("psi is not a matrix over the layer's base ring")
        self.base = base
        self.psi = psi
        self.n = psi.n
        self.name = name
        self.det, self.adj = det_adjugate(psi)
        self.entry_ideal = base.ideal + [e.rep for e in psi.entries()]

    @cached_property
    def symmetric(self) -> bool:
        return self.psi.is_symmetric()

    def mul(self, a: MatrixOverB, b: MatrixOverB) -> MatrixOverB:
        return swich_mul(a, b, self)

    def matrix(self, rows) -> MatrixOverB:
        return MatrixOverB(self.base, rows)

    def unit(self, i: int, j: int, coeff=1) -> MatrixOverB:
        return MatrixOverB.unit(self.base, self.n, i, j, coeff)

    def units(self) -> List[MatrixOverB]:
        return MatrixOverB.units(self.base, self.n)

    def zero(self) -> MatrixOverB:
        return MatrixOverB.zero(self.base, self.n)

    def describe(self) -> str:
        return f"(M_{self.n}({self.base.name or self.base.describe()}), {self.psi})"

    def __repr__(self):
        return f"SwichLayer({self.name or self.describe()})"


def swich_mul(a: MatrixOverB, b: MatrixOverB, L: SwichLayer) -> MatrixOverB:
    L.psi._check(a)
    L.psi._check(b)
    return MatrixOverB._from_polys(L.base, _pmul(_pmul(a.polys(), L.psi.polys()), b.polys()))


def is_idempotent_ideal(L: SwichLayer) -> bool:
    """J*J = M_n(I_psi), so J is idempotent iff I_psi is the whole ring."""
    return L.entry_ideal.is_unit()


def is_semiprime(L: SwichLayer, seed: int = 0) -> Verdict:
    cond = "B reduced and det(psi) not a zero divisor in B"
    if is_zero_divisor(L.det):
        return Verdict.no("NotSemiprime", f"det(psi) = {L.det} is a zero divisor", cond, witness=L.det)
    red = is_reduced(L.base, seed=seed)
    if red.refuted:
        return Verdict.no("NotSemiprime", f"B is not reduced ({red.witness} is nilpotent)", cond, witness=red.witness)
    if red.indeterminate:
        return Verdict.unknown("Indeterminate", f"reducedness of B undecided: {red.reason}", cond)
    return Verdict.yes("Semiprime", f"B reduced ({red.reason}); det(psi) = {L.det} is a non-zero-divisor", cond)


def idempotent_generator(L: SwichLayer) -> Verdict:
    """Cyclic(e) with e = det^-1 psi^+ when det(psi) is a unit, else NotCyclic."""
    cond = "J = A e for an idempotent e iff det(psi) is invertible in B"
    ok, inv = is_unit(L.det)
    if not ok:
        return Verdict.no("NotCyclic", f"det(psi) = {L.det} is not a unit", cond)
    e = L.adj.scale(inv)
    if swich_mul(e, e, L) != e:
        raise AssertionError("e*e != e for the extracted idempotent")
    for u in L.units():
        if swich_mul(e, u, L) != u or swich_mul(u, e, L) != u:
            raise AssertionError(f"e is not a two-sided identity on {u}")
    return Verdict.yes("Cyclic", f"det(psi)^-1 = {inv}", cond, witness=e)


def random_matrix(B: AffineRing, n: int, rng: random.Random, degree: int = 2, terms: int = 3) -> MatrixOverB:
    return MatrixOverB(B, [[random_element(B, rng, degree, terms) for _ in range(n)] for _ in range(n)])


def adjugate_centrality_check(L: SwichLayer, samples: int = 0, seed: int = 0) -> bool:
    """psi^+ * a = det(psi) a = a * psi^+ on all matrix units and random samples."""
    rng = random.Random(seed)
    tests = L.units() + [random_matrix(L.base, L.n, rng) for _ in range(samples)]
    for a in tests:
        target = a.scale(L.det)
        if swich_mul(L.adj, a, L) != target or swich_mul(a, L.adj, L) != target:
            return False
    return True


def phi_maps(a: MatrixOverB, L: SwichLayer) -> Tuple[MatrixOverB, MatrixOverB]:
    """(a psi, psi a); a lies in the left annihilator of J exactly when a psi = 0."""
    return a @ L.psi, L.psi @ a


def central_subring_check(L: SwichLayer, samples: int = 5, seed: int = 0) -> Verdict:
    """b psi^+ span a central copy of (B, det psi) inside J."""
    cond = "{b psi^+} is a central subring isomorphic to (B, det(psi))"
    if is_zero_divisor(L.det):
        return Verdict.unknown("Skipped", "det(psi) is a zero divisor; precondition fails", cond)
    rng = random.Random(seed)
    B = L.base
    pairs = [(B.one, B.one), (B.zero, B.one)]
    pairs += [(random_element(B, rng), random_element(B, rng)) for _ in range(samples)]
    for b, c in pairs:
        u, v = L.adj.scale(b), L.adj.scale(c)
        if swich_mul(u, v, L) != L.adj.scale(b * c * L.det):
            return Verdict.no("NotCentralSubring", f"product rule fails for b = {b}, b' = {c}", cond)
        for e in L.units():
            if swich_mul(u, e, L) != swich_mul(e, u, L):
                return Verdict.no("NotCentralSubring", f"{b} psi^+ does not commute with {e}", cond)
    return Verdict.yes("CentralSubring", f"checked {len(pairs)} pairs against all matrix units", cond)


def product_ideal_check(L: SwichLayer) -> bool:
    """Both inclusions of J*J = M_n(I_psi) on matrix units."""
    from .groebner import ideal_member

    n = L.n
    for a in L.units():
        for b in L.units():
            for e in swich_mul(a, b, L).entries():
                if not ideal_member(e.rep, L.entry_ideal):
                    return False
    for s, t, k, l in itertools.product(range(n), repeat=4):
        if swich_mul(L.unit(k, s), L.unit(t, l), L) != L.unit(k, l, L.psi[s, t]):
            return False
    return True


# -- polynomial identities ---------------------------------------------------------------


def standard_polynomial(args: Sequence, mul: Callable, add: Callable, sub: Callable):
    """s_N(a_1..a_N) = sum over permutations of sign * product, by subset recursion.

    Expands along the first factor: s(S) = sum_i (-1)^pos(i) a_i s(S - i).
    """
    N = len(args)
    memo: Dict[int, object] = {}

    def go(mask: int):
        if mask in memo:
            return memo[mask]
        members = [i for i in range(N) if mask >> i & 1]
        if len(members) == 1:
            res = args[members[0]]
        else:
            res = None
            for pos, i in enumerate(members):
                term = mul(args[i], go(mask & ~(1 << i)))
                if res is None:
                    res = term
                else:
                    res = sub(res, term) if pos % 2 else add(res, term)
        memo[mask] = res
        return res

    return go((1 << N) - 1)


@dataclass
class PIResult:
    passed: bool
    n: int
    mode: str
    tuples_checked: int = 0
    trials: int = 0
    seed: int = 0
    failures: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {
            "passed": self.passed,
            "n": self.n,
            "mode": self.mode,
            "tuples_checked": self.tuples_checked,
            "trials": self.trials,
            "seed": self.seed,
            "failures": self.failures[:5],
        }


def _unit_poly(B: AffineRing, n: int, i: int, j: int) -> PolyMatrix:
    z = B.poly_ring.zero
    m = [[z] * n for _ in range(n)]
    m[i][j] = B.poly_ring.one
    return m


def _unit_tuples(n: int, exhaustive_all: bool):
    """All (n^2)^(2n) unit index tuples, or one representative per 2n-subset.

    s_2n is multilinear and alternating, so repeated arguments give 0 and
    reordering only changes the sign: sorted distinct tuples decide everything.
    """
    units = [(i, j) for i in range(n) for j in range(n)]
    if exhaustive_all:
        return itertools.product(units, repeat=2 * n)
    return itertools.combinations(units, 2 * n)


def _is_zero_mod(B: AffineRing, m: PolyMatrix) -> bool:
    return all(B.reduce(p).is_zero() for r in m for p in r)


def pi_check_matrix(n: int, B: AffineRing, literal_limit: int = 2) -> PIResult:
    """s_2n vanishes on M_n(B), checked on matrix-unit tuples (a proof by multilinearity)."""
    if n > 3:
        raise ValueError("exhaustive identity checks are capped at n <= 3")
    literal = n <= literal_limit
    count, failures = 0, []
    for tup in _unit_tuples(n, literal):
        mats = [_unit_poly(B, n, i, j) for i, j in tup]
        val = standard_polynomial(mats, _pmul, _padd, _psub)
        count += 1
        if not _is_zero_mod(B, val):
            failures.append(str(tup))
    mode = "all-tuples" if literal else "alternating-reduction"
    return PIResult(not failures, n, mode, tuples_checked=count, failures=failures)


def pi_check_swich(L: SwichLayer, trials: int = 100, seed: int = 0, literal_limit: int = 2) -> PIResult:
    """s_2n^2 is an identity of (M_n(B), psi).

    Phase one: s*_2n(unit tuple) psi = 0 for every unit tuple, where s* uses the
    deformed product (this is s_2n evaluated at a_i psi). Phase two: s*_2n squared
    under * vanishes on ``trials`` seeded random tuples.
    """
    B, n = L.base, L.n
    psi = L.psi.polys()
    smul = lambda a, b: _pmul(_pmul(a, psi), b)  # noqa: E731
    failures: List[str] = []
    count = 0
    if n <= 3:
        literal = n <= literal_limit
        for tup in _unit_tuples(n, literal):
            mats = [_unit_poly(B, n, i, j) for i, j in tup]
            val = _pmul(standard_polynomial(mats, smul, _padd, _psub), psi)
            count += 1
            if not _is_zero_mod(B, val):
                failures.append(f"unit tuple {tup}")
        mode = "all-tuples" if literal else "alternating-reduction"
    else:
        warnings.warn(f"n = {n} > 3: identity check runs in randomized mode only")
        mode = "randomized-only"
    rng = random.Random(seed)
    for t in range(trials):
        mats = [random_matrix(B, n, rng).polys() for _ in range(2 * n)]
        s = standard_polynomial(mats, smul, _padd, _psub)
        if not _is_zero_mod(B, smul(s, s)):
            failures.append(f"random trial {t}")
    return PIResult(not failures, n, mode, tuples_checked=count, trials=trials, seed=seed, failures=failures)
