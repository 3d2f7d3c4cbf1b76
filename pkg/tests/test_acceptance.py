"""Acceptance criteria 1-10, each run at its stated runtime limit.

Every criterion records one line "criterion k: PASS|FAIL ..." which is printed
in the pytest terminal summary (and directly when this file is run as a script).
"""

from __future__ import annotations

import glob
import os
import random
import time
from contextlib import contextmanager

from cellkit.aca import load
from cellkit.affine_ring import AffineRing, is_zero_divisor
from cellkit.chain import AnalysisConfig, CellChain, analyze_chain, embedding_report, gkdim_bound, noetherian_report
from cellkit.groebner import Ideal, ideal_member, krull_dim
from cellkit.group import PrincipalCellAlgebra, tl_builtin, tl_det_lemma_check
from cellkit.multipoly import PolyRing
from cellkit.swich import (
    SwichLayer,
    adjugate_centrality_check,
    idempotent_generator,
    is_idempotent_ideal,
    is_semiprime,
    phi_maps,
    pi_check_matrix,
    pi_check_swich,
    random_matrix,
    swich_mul,
)
from oracles import truncated_membership
from strategies import R2, membership_queries

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
RESULTS: dict = {}


@contextmanager
def criterion(k: int, limit: float, title: str):
    """Time the block; a failed assertion or an overrun both count as FAIL."""
    start = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        ok = True
    except AssertionError as e:
        note = f" ({e})" if str(e) else ""
        raise
    finally:
        elapsed = time.perf_counter() - start
        in_time = elapsed < limit
        status = "PASS" if ok and in_time else "FAIL"
        RESULTS[k] = f"criterion {k:>2}: {status}  {title}  [{elapsed:.2f}s < {limit:g}s]{note}"
        print(RESULTS[k])
        if ok:
            assert in_time, f"criterion {k} took {elapsed:.2f}s, limit {limit}s"


def _kx():
    return AffineRing(("x",), name="k[x]", domain=True)


def _tl_layer(q):
    return tl_builtin(q).layer


def _kxy_chain():
    B = AffineRing(("x", "y"), name="k[x,y]")
    x = B.gen("x")
    return CellChain([SwichLayer(B, [[0, x], [x, 0]])], name="K")


def test_criterion_01_tl_examples():
    with criterion(1, 5.0, "TL examples q = 1 and q = 0"):
        L = _tl_layer(1)
        B = L.base
        assert is_idempotent_ideal(L)
        assert L.det == B(B.poly_ring.parse("1 - x^2"))
        assert not is_zero_divisor(L.det)
        assert idempotent_generator(L).label == "NotCyclic"
        assert is_semiprime(L).label == "Semiprime"
        L0 = _tl_layer(0)
        assert not is_idempotent_ideal(L0)
        assert L0.det == L0.base(L0.base.poly_ring.parse("-x^2"))
        assert adjugate_centrality_check(L0)


def test_criterion_02_e11():
    with criterion(2, 1.0, "psi = E11"):
        L = SwichLayer(_kx(), [[1, 0], [0, 0]])
        assert is_idempotent_ideal(L)
        assert L.det.is_zero()
        assert idempotent_generator(L).label == "NotCyclic"
        assert is_semiprime(L).label == "NotSemiprime"


def test_criterion_03_pi():
    with criterion(3, 30.0, "standard identities s_4 and s_4^2"):
        r = pi_check_matrix(2, _kx())
        assert r.passed and r.tuples_checked == 256 and r.mode == "all-tuples"
        s = pi_check_swich(_tl_layer(1), trials=100, seed=7)
        assert s.passed and s.mode == "all-tuples" and s.tuples_checked == 256 and s.trials >= 100


def test_criterion_04_groebner_oracle():
    with criterion(4, 60.0, "200 membership queries vs truncated oracle"):
        discrepancies, positives = 0, 0
        for f, gens in membership_queries(2024, 200):
            to = lambda p: {m: c for m, c in p.terms}
            if truncated_membership(to(f), [to(g) for g in gens], 2, 5):
                positives += 1
                if not ideal_member(f, Ideal(R2, gens)):
                    discrepancies += 1
        assert positives >= 50, f"only {positives} oracle-positive queries"
        assert discrepancies == 0, f"{discrepancies} discrepancies"


def test_criterion_05_embedding():
    with criterion(5, 10.0, "embedding for k[x,y]/<xy>, J = Rx"):
        R = AffineRing(("x", "y"), ["x*y"])
        P = PrincipalCellAlgebra(R, R.gen("x"))
        ann = P.annihilator_search(4)
        assert ann.label == "NonzeroWitness" and "y" in ann.data["basis"]
        C = P.chain()
        emb = embedding_report(C)
        assert emb.affirmed and emb.data["injective"]
        ev = P.embedding_evidence(4)
        assert ev.affirmed, ev.reason


def test_criterion_06_dimensions():
    with criterion(6, 5.0, "GK and Krull dimensions"):
        bound, v = gkdim_bound(tl_builtin(1).chain())
        assert (bound, v.affirmed) == (1, True)
        bound, v = gkdim_bound(_kxy_chain())
        assert (bound, v.affirmed) == (2, False)
        R = PolyRing(["x", "y"])
        assert krull_dim(Ideal(R, [R.parse("x*y")])) == 1
        assert krull_dim(Ideal(R, [])) == 2


def test_criterion_07_det_lemma():
    with criterion(7, 1.0, "determinant lemma for symbolic q"):
        A = tl_builtin("q")
        assert tl_det_lemma_check(A, "q", strands=2, through=0)
        assert A.layer.det.rep.degree("q") == 2


def test_criterion_08_noetherian():
    with criterion(8, 5.0, "Noetherian reports"):
        assert noetherian_report(tl_builtin(1).chain()).affirmed
        v = noetherian_report(_kxy_chain())
        assert v.label == "Unknown" and v.indeterminate


def test_criterion_09_algebraic_laws():
    with criterion(9, 60.0, "500 seeded cases per algebraic law"):
        B = AffineRing(("x", "y"), ["x*y"])
        failures = {"assoc": 0, "phi": 0, "adj": 0, "ext": 0}
        rng = random.Random(9)
        for _ in range(500):
            n = rng.choice((1, 2, 3))
            L = SwichLayer(B, random_matrix(B, n, rng, degree=1, terms=2))
            a, b, c = (random_matrix(B, n, rng, degree=1, terms=2) for _ in range(3))
            if swich_mul(swich_mul(a, b, L), c, L) != swich_mul(a, swich_mul(b, c, L), L):
                failures["assoc"] += 1
            if phi_maps(swich_mul(a, b, L), L)[0] != phi_maps(a, L)[0] @ phi_maps(b, L)[0]:
                failures["phi"] += 1
            t = a.scale(L.det)
            if swich_mul(L.adj, a, L) != t or swich_mul(a, L.adj, L) != t or L.adj @ L.psi != L.psi @ L.adj:
                failures["adj"] += 1
        A = tl_builtin("q")
        for _ in range(500):
            u, v, w = (A.random_element(rng, support=2, degree=1) for _ in range(3))
            if (u * v) * w != u * (v * w):
                failures["ext"] += 1
        assert failures == {"assoc": 0, "phi": 0, "adj": 0, "ext": 0}, failures


def test_criterion_10_verdict_implications():
    with criterion(10, 120.0, "report validator on every analyzed chain"):
        chains = [load(open(p).read()).target_chain() for p in sorted(glob.glob(os.path.join(ROOT, "aca", "*.aca")))]
        chains += [tl_builtin(1).chain(), tl_builtin(0).chain(), _kxy_chain()]
        for C in chains:
            analyze_chain(C, AnalysisConfig(pi_trials=3))  # raises ReportInconsistency on violation


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
