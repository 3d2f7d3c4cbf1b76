"""Buchberger's algorithm and the ideal-theoretic primitives built on it.

All decision procedures funnel through :func:`reduced_groebner_basis`, which
counts reduction steps against a :class:`Budget`. Running out raises
:class:`BudgetExceeded`; no caller ever receives a truncated basis.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import itertools
import os
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .multipoly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "budget_scope",
    "current_budget",
    "Ideal",
    "reduced_groebner_basis",
    "normal_form",
    "ideal_member",
    "ideal_equal",
    "ideal_intersection",
    "ideal_quotient",
    "radical_member",
    "krull_dim",
    "is_zero_dimensional",
    "standard_monomials",
]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """A Gröbner computation needed more reduction steps than allowed."""


@dataclass
class Budget:
    """Per-computation step limit plus a running total for reports."""

    limit: int = DEFAULT_BUDGET
    used: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def charge(self, steps: int) -> None:
        with self._lock:
            self.used += steps


def _default_budget() -> Budget:
    env = os.environ.get("CELLKIT_BUDGET")
    return Budget(int(env)) if env else Budget()


_BUDGET: contextvars.ContextVar[Optional[Budget]] = contextvars.ContextVar("cellkit_budget", default=None)


def current_budget() -> Budget:
    b = _BUDGET.get()
    if b is None:
        b = _default_budget()
        _BUDGET.set(b)
    return b


@contextlib.contextmanager
def budget_scope(limit: Optional[int] = None):
    """Run a block with its own step limit (``None`` keeps the default)."""
    b = Budget(limit if limit is not None else _default_budget().limit)
    token = _BUDGET.set(b)
    try:
        yield b
    finally:
        _BUDGET.reset(token)


class _Counter:
    __slots__ = ("limit", "steps")

    def __init__(self, limit: int):
        self.limit = limit
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.limit:
            raise BudgetExceeded(f"Groebner step budget of {self.limit} reductions exceeded")


# -- internal dict-based polynomials ------------------------------------------------
#
# A basis element is stored as (lm, tail) with the polynomial monic; tail is the
# list of (monomial, coeff) pairs below the leading term.


def _reduce(p: Dict[Monomial, object], basis, key, F, counter: _Counter, full: bool = True):
    """Remainder of ``p`` by ``basis``; only the leading term is reduced when ``full`` is False."""
    p = dict(p)
    r: Dict[Monomial, object] = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for lm, tail in basis:
            if mono_divides(lm, m):
                counter.tick()
                t = mono_div(m, lm)
                for mt, ct in tail:
                    mm = mono_mul(mt, t)
                    v = F.sub(p.get(mm, F.zero), F.mul(c, ct))
                    if F.is_zero(v):
                        p.pop(mm, None)
                    else:
                        p[mm] = v
                break
        else:
            r[m] = c
            if not full:
                r.update(p)
                return r
    return r


def _make_elem(d: Dict[Monomial, object], key, F):
    items = sorted(d.items(), key=lambda t: key(t[0]), reverse=True)
    lm, lc = items[0]
    inv = F.inv(lc)
    return lm, [(m, F.mul(c, inv)) for m, c in items[1:]]


def _spoly(a, b, F):
    (la, ta), (lb, tb) = a, b
    lcm = mono_lcm(la, lb)
    fa, fb = mono_div(lcm, la), mono_div(lcm, lb)
    d: Dict[Monomial, object] = {}
    for m, c in ta:
        d[mono_mul(m, fa)] = c
    for m, c in tb:
        mm = mono_mul(m, fb)
        v = F.sub(d.get(mm, F.zero), c)
        if F.is_zero(v):
            d.pop(mm, None)
        else:
            d[mm] = v
    return d


def _buchberger(polys: Sequence[Dict[Monomial, object]], key, F, counter: _Counter):
    G: List[Tuple[Monomial, list]] = []
    for d in polys:
        if d:
            G.append(_make_elem(d, key, F))
    pending = set()
    heap = []

    def push(i, j):
        lcm = mono_lcm(G[i][0], G[j][0])
        pending.add((i, j))
        heapq.heappush(heap, (sum(lcm), key(lcm), i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = G[i][0], G[j][0]
        # first criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        lcm = mono_lcm(li, lj)
        # second (chain) criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(G[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        h = _reduce(_spoly(G[i], G[j], F), G, key, F, counter)
        if h:
            G.append(_make_elem(h, key, F))
            n = len(G) - 1
            for k in range(n):
                push(k, n)
    return _interreduce(G, key, F, counter)


def _interreduce(G, key, F, counter):
    # minimal basis: drop elements whose leading monomial is a multiple of another's
    G = sorted(G, key=lambda e: key(e[0]))
    minimal = []
    for lm, tail in G:
        if not any(mono_divides(o[0], lm) for o in minimal):
            minimal.append((lm, tail))
    out = []
    for idx, (lm, tail) in enumerate(minimal):
        others = [e for k, e in enumerate(minimal) if k != idx]
        rest = _reduce(dict(tail), others, key, F, counter)
        out.append((lm, sorted(rest.items(), key=lambda t: key(t[0]), reverse=True)))
    out.sort(key=lambda e: key(e[0]), reverse=True)
    return out


class Ideal:
    """An ideal of a polynomial ring given by generators; reduced bases are cached per order."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        self.generators = tuple(ring(g) for g in generators)
        self._bases: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal(<{', '.join(map(str, self.generators))}>)"

    def __add__(self, other: "Ideal") -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.generators + tuple(self.ring(g) for g in other.generators))
        return Ideal(self.ring, self.generators + tuple(self.ring(g) for g in other))

    def groebner_basis(self, order: Optional[MonomialOrder] = None, budget: Optional[int] = None):
        return reduced_groebner_basis(self, order, budget)

    def is_unit(self, budget: Optional[int] = None) -> bool:
        gb = reduced_groebner_basis(self, budget=budget)
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self, budget: Optional[int] = None) -> bool:
        return not reduced_groebner_basis(self, budget=budget)


def reduced_groebner_basis(
    I: Ideal, order: Optional[MonomialOrder] = None, budget: Optional[int] = None
) -> Tuple[Polynomial, ...]:
    """The reduced Gröbner basis of ``I``: monic, sorted by descending leading monomial.

    ``order`` defaults to the order of ``I.ring``; the polynomials returned live in
    ``I.ring.with_order(order)``. ``budget`` caps the number of reduction steps.
    """
    order = order or I.ring.order
    cached = I._bases.get(order)
    if cached is not None:
        return cached
    ring = I.ring.with_order(order)
    F, key = ring.field, ring._key
    B = current_budget()
    counter = _Counter(budget if budget is not None else B.limit)
    try:
        G = _buchberger([dict(ring(g).terms) for g in I.generators], key, F, counter)
    finally:
        B.charge(counter.steps)
    basis = tuple(ring._from_raw({lm: F.one, **dict(tail)}) for lm, tail in G)
    with I._lock:
        return I._bases.setdefault(order, basis)


def _basis_elems(gb: Sequence[Polynomial]):
    return [(g.lm, list(g.terms[1:])) for g in gb]


def normal_form(f, I: Ideal, budget: Optional[int] = None) -> Polynomial:
    """Remainder of ``f`` on division by the reduced basis of ``I`` (unique)."""
    ring = I.ring
    f = ring(f)
    gb = reduced_groebner_basis(I, ring.order, budget)
    if not gb:
        return f
    counter = _Counter(budget if budget is not None else current_budget().limit)
    r = _reduce(dict(f.terms), _basis_elems(gb), ring._key, ring.field, counter)
    current_budget().charge(counter.steps)
    return ring._from_raw(r)


def ideal_member(f, I: Ideal, budget: Optional[int] = None) -> bool:
    return normal_form(f, I, budget).is_zero()


def ideal_equal(I: Ideal, J: Ideal, budget: Optional[int] = None) -> bool:
    return all(ideal_member(g, J, budget) for g in I.generators) and all(
        ideal_member(g, I, budget) for g in J.generators
    )


def _eliminate(ring: PolyRing, gens_in_ext: Sequence[Polynomial], ext: PolyRing, budget) -> List[Polynomial]:
    """Basis elements of the ideal in ``ext`` that are free of its leading block, moved to ``ring``."""
    J = Ideal(ext, gens_in_ext)
    gb = reduced_groebner_basis(J, ext.order, budget)
    k = ext.nvars - ring.nvars
    out = []
    for g in gb:
        if all(not any(m[:k]) for m in g.support()):
            out.append(g.drop_to(ring))
    return out


def ideal_intersection(I: Ideal, J: Ideal, budget: Optional[int] = None) -> Ideal:
    """I ∩ J via t·I + (1 - t)·J and elimination of t."""
    ring = I.ring
    (t_name,) = ring.fresh_names(1)
    ext = ring.extend((t_name,))
    t = ext.gen(t_name)
    gens = [t * ext(g) for g in I.generators] + [(1 - t) * ext(g) for g in J.generators]
    return Ideal(ring, _eliminate(ring, gens, ext, budget))


def ideal_quotient(I: Ideal, f, budget: Optional[int] = None) -> Ideal:
    """(I : f) = {g : g·f ∈ I}, computed as (I ∩ <f>) / f."""
    ring = I.ring
    f = ring(f)
    if f.is_zero():
        raise ValueError("ideal quotient by the zero polynomial")
    inter = ideal_intersection(I, Ideal(ring, [f]), budget)
    return Ideal(ring, [g.exact_div(f) for g in inter.generators])


def radical_member(f, I: Ideal, budget: Optional[int] = None) -> bool:
    """f ∈ √I iff 1 ∈ I + <1 - t·f> with t a fresh variable."""
    ring = I.ring
    f = ring(f)
    if f.is_zero():
        return True
    (t_name,) = ring.fresh_names(1)
    ext = ring.extend((t_name,), GREVLEX)
    t = ext.gen(t_name)
    J = Ideal(ext, [ext(g) for g in I.generators] + [1 - t * ext(f)])
    return J.is_unit(budget)


def _leading_monomials(I: Ideal, budget) -> Optional[List[Monomial]]:
    gb = reduced_groebner_basis(I, GREVLEX, budget)
    if len(gb) == 1 and gb[0].is_constant():
        return None
    return [g.lm for g in gb]


def krull_dim(I: Ideal, budget: Optional[int] = None) -> int:
    """Dimension of k[x]/I: the largest set of variables containing the support of no leading monomial."""
    lms = _leading_monomials(I, budget)
    if lms is None:
        return -1
    n = I.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def standard_monomials(I: Ideal, budget: Optional[int] = None) -> Optional[List[Monomial]]:
    """Monomials outside the leading-term ideal (grevlex), or None when there are infinitely many."""
    lms = _leading_monomials(I, budget)
    if lms is None:
        return []
    n = I.ring.nvars
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(mono_divides(lm, m) for lm in lms):
            out.append(tuple(m))
    key = GREVLEX.key
    out.sort(key=key)
    return out


def is_zero_dimensional(I: Ideal, budget: Optional[int] = None) -> Tuple[bool, Optional[int]]:
    """(True, dim_k k[x]/I) when the quotient is finite-dimensional, else (False, None)."""
    sm = standard_monomials(I, budget)
    if sm is None:
        return False, None
    return True, len(sm)
