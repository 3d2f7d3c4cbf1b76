"""Hypothesis strategies for polynomials and small ideals."""

from fractions import Fraction

from hypothesis import strategies as st

from cellkit.coeffs import QQ
from cellkit.multipoly import PolyRing

R2 = PolyRing(["x", "y"], QQ)
R3 = PolyRing(["x", "y", "z"], QQ)

small_fractions = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def monomials(nvars, max_exp=2):
    return st.tuples(*[st.integers(0, max_exp)] * nvars)


def polys(ring, max_terms=3, max_exp=2, coeffs=small_fractions):
    return st.dictionaries(monomials(ring.nvars, max_exp), coeffs, max_size=max_terms).map(ring.from_dict)


def nonzero_polys(ring, **kw):
    return polys(ring, **kw).filter(lambda p: not p.is_zero())


def random_poly(rng, ring, degree=2, terms=3, coeff_range=3):
    d = {}
    for _ in range(terms):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(ring.nvars)] += 1
        d[tuple(exps)] = Fraction(rng.randint(-coeff_range, coeff_range))
    return ring.from_dict(d)


def membership_queries(seed, count, ring=R2):
    """Seeded (f, generators) pairs; about half are built to lie in the ideal."""
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        gens = [random_poly(rng, ring, 2, 2) for _ in range(rng.randint(1, 2))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        if rng.random() < 0.5:
            f = ring.from_dict({})
            for g in gens:
                f = f + random_poly(rng, ring, 1, 2) * g
        else:
            f = random_poly(rng, ring, 3, 3)
        out.append((f, gens))
    return out
