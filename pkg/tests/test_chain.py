import json

import pytest

from cellkit.affine_ring import AffineRing, laurent_ring
from cellkit.chain import (
    AnalysisConfig,
    CellChain,
    ReportInconsistency,
    analyze_chain,
    asymptotic_iso_check,
    embedding_report,
    gkdim_bound,
    noetherian_report,
    semiprime_chain_check,
    validate_report,
)
from cellkit.group import tl_builtin
from cellkit.swich import MatrixOverB, SwichLayer
from cellkit.verdict import Status, Verdict

KX = AffineRing(("x",), domain=True)
KXY = AffineRing(("x", "y"))


def kxy_chain():
    x = KXY.gen("x")
    return CellChain([SwichLayer(KXY, [[0, x], [x, 0]])], name="K")


def test_m_defaults_and_validation():
    C = kxy_chain()
    assert C.m == 0 and C.m_provenance == "default-top"
    with pytest.raises(ValueError):
        CellChain([SwichLayer(KX, [[1]])], m=2)
    with pytest.raises(ValueError):
        CellChain([])


def test_tl_chain_report():
    A = tl_builtin(1)
    C = A.chain()
    assert (C.m, C.m_provenance) == (1, "computed")
    r = analyze_chain(C, AnalysisConfig(seed=0, pi_trials=5))
    assert r.exit_code() == 0
    L0, L1 = r.layers
    assert L0.verdicts["idempotent"].affirmed and L0.verdicts["semiprime"].affirmed
    assert L0.verdicts["cyclic"].refuted
    assert L1.verdicts["cyclic"].affirmed
    assert r.gkdim_bound == 1 and r.chain["gkdim"].label == "Equality"
    assert r.chain["noetherian"].affirmed
    assert r.chain["embedding"].affirmed
    json.loads(r.dumps())


def test_kxy_chain_is_indeterminate():
    r = analyze_chain(kxy_chain())
    assert r.gkdim_bound == 2 and not r.chain["gkdim"].affirmed
    assert r.chain["noetherian"].label == "Unknown"
    assert r.exit_code() == 2


def test_e11_chain_refuted():
    K = AffineRing(("t",), domain=True)
    C = CellChain([SwichLayer(KX, [[1, 0], [0, 0]]), SwichLayer(K, [[1]])], m=1)
    assert semiprime_chain_check(C).refuted
    emb = embedding_report(C)
    assert emb.refuted and not emb.data["injective"]
    r = analyze_chain(C)
    assert r.exit_code() == 1


def test_unit_determinants_give_isomorphism():
    L = laurent_ring()
    C = CellChain([SwichLayer(L, [[L.gen("t")]]), SwichLayer(KX, MatrixOverB.identity(KX, 2))])
    assert asymptotic_iso_check(C).affirmed
    r = analyze_chain(C)
    assert r.chain["asymptotic_iso"].affirmed and r.chain["embedding"].data["injective"]
    assert "central_idempotents" in r.chain["asymptotic_iso"].data


def test_budget_exhaustion_exit_code():
    B = AffineRing(("x", "y", "z"), ["x^3 - y*z^2 + 1", "y^3 - x*z + 2"])
    C = CellChain([SwichLayer(B, [[B.gen("x"), B.gen("y")], [B.gen("y"), B.gen("z")]])])
    r = analyze_chain(C, AnalysisConfig(budget=3))
    assert r.exit_code() == 3


def test_validator_rejects_inconsistent_reports():
    r = analyze_chain(kxy_chain())
    r.chain["asymptotic_iso"] = Verdict.yes("Isomorphic", "forged", "")
    r.chain["embedding"] = Verdict.no("NotInjective", "forged", "", injective=False)
    with pytest.raises(ReportInconsistency):
        validate_report(r)


def test_validator_accepts_every_sample_chain():
    for C in [tl_builtin(1).chain(), kxy_chain(), CellChain([SwichLayer(KX, [[1, 0], [0, 0]])])]:
        assert isinstance(validate_report(analyze_chain(C)), list)


def test_noetherian_and_gkdim_standalone():
    bound, v = gkdim_bound(tl_builtin(1).chain())
    assert bound == 1 and v.status == Status.AFFIRMED
    assert noetherian_report(kxy_chain()).indeterminate


def test_report_json_schema():
    r = analyze_chain(tl_builtin(1).chain(), AnalysisConfig(pi_trials=2))
    doc = r.to_json()
    for layer in doc["layers"]:
        assert isinstance(layer["det_psi"], str)
        for key in ("idempotent", "semiprime", "cyclic", "det", "reduced"):
            assert set(layer[key]) >= {"status", "reason", "paper_condition"}
    for key in ("pi", "semiprime_chain", "embedding", "asymptotic_iso", "gkdim", "noetherian"):
        assert doc["chain"][key]["status"] in ("affirmed", "refuted", "indeterminate")
