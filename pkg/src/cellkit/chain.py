"""Cell chains 0 = J_-1 < J_0 < ... < J_n = A given by their layers, and chain-level verdicts.

Layer j carries (n_j, B_j, psi_j). The annihilator index m decides how many
layers the embedding into the asymptotic algebra must cover; without a
concrete algebra it defaults to the top index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

from .affine_ring import AffineRing, is_finitely_generated_module, is_reduced, is_unit, is_zero_divisor, krull_dimension
from .groebner import BudgetExceeded, budget_scope, ideal_quotient
from .swich import (
    MatrixOverB,
    PIResult,
    SwichLayer,
    adjugate_centrality_check,
    idempotent_generator,
    is_idempotent_ideal,
    is_semiprime,
    pi_check_swich,
)
from .verdict import Status, Verdict

__all__ = [
    "CellChain",
    "AsymptoticAlgebra",
    "AnalysisConfig",
    "LayerReport",
    "ChainReport",
    "ReportInconsistency",
    "analyze_chain",
    "semiprime_chain_check",
    "embedding_report",
    "asymptotic_iso_check",
    "gkdim_bound",
    "noetherian_report",
    "pi_report",
    "validate_report",
    "kernel_witness",
]

PROVENANCES = ("user-supplied", "default-top", "computed")
BUDGET_LABEL = "BudgetExceeded"


@dataclass(frozen=True)
class AsymptoticAlgebra:
    factors: Tuple[Tuple[int, AffineRing], ...]

    def describe(self) -> str:
        return " x ".join(f"M_{n}({B.name or B.describe()})" for n, B in self.factors)


class LayerFacts:
    """Lazily computed ring facts of one layer, shared by all chain verdicts."""

    def __init__(self, layer: SwichLayer, seed: int = 0):
        self.layer = layer
        self.seed = seed

    @cached_property
    def det_zero_divisor(self) -> bool:
        return is_zero_divisor(self.layer.det)

    @cached_property
    def det_unit(self) -> Tuple[bool, Any]:
        return is_unit(self.layer.det)

    @cached_property
    def reduced(self) -> Verdict:
        return is_reduced(self.layer.base, seed=self.seed)

    @cached_property
    def kdim(self) -> int:
        return krull_dimension(self.layer.base)

    @cached_property
    def idempotent(self) -> bool:
        return is_idempotent_ideal(self.layer)

    @cached_property
    def fg(self) -> Tuple[bool, Optional[int]]:
        return is_finitely_generated_module(self.layer.base, self.layer.entry_ideal)

    @cached_property
    def psi_zero(self) -> bool:
        return self.layer.psi.is_zero()


@dataclass
class CellChain:
    layers: List[SwichLayer]
    m: Optional[int] = None
    m_provenance: str = "user-supplied"
    algebra: Any = None
    name: str = "A"
    seed: int = 0

    def __post_init__(self):
        if not self.layers:
            raise ValueError("a cell chain needs at least one layer")
        if self.m is None:
            self.m, self.m_provenance = self.top, "default-top"
        if not 0 <= self.m <= self.top:
            raise ValueError(f"annihilator index m = {self.m} outside 0..{self.top}")
        if self.m_provenance not in PROVENANCES:
            raise ValueError(f"unknown m provenance {self.m_provenance!r}")
        self._facts: Dict[int, LayerFacts] = {}

    @property
    def top(self) -> int:
        return len(self.layers) - 1

    def facts(self, j: int) -> LayerFacts:
        if j not in self._facts:
            self._facts[j] = LayerFacts(self.layers[j], self.seed)
        return self._facts[j]

    def asymptotic(self) -> AsymptoticAlgebra:
        return AsymptoticAlgebra(tuple((L.n, L.base) for L in self.layers))

    def with_m(self, m: int) -> "CellChain":
        return CellChain(self.layers, m, "user-supplied", self.algebra, self.name, self.seed)


@dataclass
class AnalysisConfig:
    seed: int = 0
    pi_trials: int = 10
    budget: Optional[int] = None
    degree_bound: int = 2
    support_bound: int = 1
    centrality_samples: int = 2


def _guard(label: str, cond: str, fn: Callable[[], Verdict]) -> Verdict:
    try:
        return fn()
    except BudgetExceeded as e:
        return Verdict.unknown(BUDGET_LABEL, f"{label}: {e}", cond)


# -- chain verdicts -----------------------------------------------------------------------


def semiprime_chain_check(C: CellChain) -> Verdict:
    cond = "B_j reduced and det(psi_j) not a zero divisor for all j < m"
    undecided = []
    for j in range(C.m):
        f = C.facts(j)
        if f.det_zero_divisor:
            return Verdict.no(
                "NotSemiprime", f"layer {j}: det(psi) = {f.layer.det} is a zero divisor", cond, failing_layer=j
            )
        if f.reduced.refuted:
            return Verdict.no(
                "NotSemiprime", f"layer {j}: B not reduced ({f.reduced.witness} nilpotent)", cond, failing_layer=j
            )
        if f.reduced.indeterminate:
            undecided.append(j)
    if undecided:
        return Verdict.unknown("Indeterminate", f"reducedness undecided on layers {undecided}", cond)
    if C.m == 0:
        return Verdict.yes("Semiprime", "m = 0: no conditions", cond, layers_checked=0)
    return Verdict.yes("Semiprime", f"conditions hold on layers 0..{C.m - 1}", cond, layers_checked=C.m)


def kernel_witness(L: SwichLayer) -> Optional[MatrixOverB]:
    """Nonzero a with psi a = 0 (so a lies in the right annihilator of J), if one is found."""
    B = L.base
    candidates = [B.one]
    if not L.det.is_zero():
        candidates += [B(g) for g in ideal_quotient(B.ideal, L.det.rep).generators]
    else:
        candidates += [B(g) for g in B.poly_ring.gens()]
    ident = MatrixOverB.identity(B, L.n)
    for b in candidates:
        for a in (L.adj.scale(b), ident.scale(b)):
            if not a.is_zero() and (L.psi @ a).is_zero():
                return a
    return None


def embedding_report(C: CellChain, config: Optional[AnalysisConfig] = None) -> Verdict:
    """Phi into M_{n_m}(B_m) x ... x M_{n_0}(B_0) with B_j reduced for j < m.

    ``data["injective"]`` records the determinant condition alone, which is
    what injectivity of Phi amounts to layer by layer.
    """
    config = config or AnalysisConfig()
    cond = "Phi an embedding and B_j reduced for j < m (iff det(psi_j) non-zero-divisor and B_j reduced)"
    data: Dict[str, Any] = {"m": C.m}
    failing = None
    for j in range(C.m):
        if C.facts(j).det_zero_divisor:
            failing = j
            break
    data["injective"] = failing is None
    evidence = None
    if C.algebra is not None:
        evidence = C.algebra.embedding_evidence(config.degree_bound, config.support_bound)
        data["evidence"] = evidence.label
        data["evidence_reason"] = evidence.reason
    if failing is not None:
        w = kernel_witness(C.layers[failing])
        return Verdict.no(
            "NotInjective",
            f"layer {failing}: det(psi) = {C.layers[failing].det} is a zero divisor",
            cond,
            witness=w,
            failing_layer=failing,
            **data,
        )
    unknown = []
    for j in range(C.m):
        r = C.facts(j).reduced
        if r.refuted:
            return Verdict.no("NotReduced", f"Phi injective but B_{j} is not reduced", cond, failing_layer=j, **data)
        if r.indeterminate:
            unknown.append(j)
    if unknown:
        return Verdict.unknown("Indeterminate", f"Phi injective; reducedness undecided on layers {unknown}", cond, **data)
    reason = "det(psi_j) non-zero-divisors and B_j reduced below m"
    if evidence is not None:
        reason += f"; concrete check: {evidence.reason}"
    return Verdict.yes("Injective", reason, cond, **data)


def asymptotic_iso_check(C: CellChain) -> Verdict:
    cond = "A isomorphic to its asymptotic algebra when every det(psi_j) is a unit"
    idempotents = []
    for j in range(len(C.layers)):
        ok, inv = C.facts(j).det_unit
        if not ok:
            return Verdict.no(
                "NotIsomorphic", f"layer {j}: det(psi) = {C.layers[j].det} is not a unit", cond, failing_layer=j
            )
        idempotents.append(str(C.layers[j].adj.scale(inv)))
    return Verdict.yes(
        "Isomorphic", f"A = {C.asymptotic().describe()}", cond, central_idempotents=idempotents
    )


def gkdim_bound(C: CellChain, semiprime: Optional[Verdict] = None) -> Tuple[int, Verdict]:
    """(max_{j<=m} Kdim B_j, verdict on equality with its certificate trail)."""
    cond = "GKdim(A) <= max Kdim(B_j), with equality when every layer is finitely generated"
    bound = max(C.facts(j).kdim for j in range(C.m + 1))
    semiprime = semiprime or semiprime_chain_check(C)
    if not semiprime.affirmed:
        return bound, Verdict.unknown(
            "ConditionalBound", f"semiprime hypothesis not affirmed ({semiprime.label}); bound {bound} is conditional",
            cond, bound=bound,
        )
    trail = []
    missing = []
    for j in range(C.m + 1):
        f = C.facts(j)
        fg, dim = f.fg
        if fg:
            trail.append(f"layer {j}: B/I_psi finite-dimensional (dim {dim})")
        elif f.idempotent:
            trail.append(f"layer {j}: idempotent")
        elif f.kdim <= 1 and not f.psi_zero and (f.layer.base.assumed_domain or f.layer.base.ideal.is_zero()):
            trail.append(f"layer {j}: Kdim <= 1 domain with psi != 0")
        else:
            missing.append(j)
    if missing:
        return bound, Verdict.unknown(
            "BoundOnly", f"no finite-generation certificate for layers {missing}", cond, bound=bound,
            certificates=trail, uncertified=missing,
        )
    return bound, Verdict.yes("Equality", f"GKdim(A) = {bound}", cond, bound=bound, certificates=trail)


def noetherian_report(C: CellChain) -> Verdict:
    cond = "B_j reduced, Kdim(B_j) <= 1 and det(psi_j) non-zero-divisor for all j"
    for j in range(len(C.layers)):
        f = C.facts(j)
        if not f.reduced.affirmed:
            return Verdict.unknown("Unknown", f"layer {j}: B not certified reduced", cond, failing_layer=j)
        if f.kdim > 1:
            return Verdict.unknown("Unknown", f"layer {j}: Kdim(B) = {f.kdim} > 1", cond, failing_layer=j)
        if f.det_zero_divisor:
            return Verdict.unknown("Unknown", f"layer {j}: det(psi) is a zero divisor", cond, failing_layer=j)
    return Verdict.yes(
        "Noetherian",
        "Noetherian, finitely generated over its centre; centre affine reduced of Kdim <= 1",
        cond,
    )


def pi_report(C: CellChain, trials: int = 10, seed: int = 0) -> Tuple[Verdict, List[PIResult]]:
    """A is always PI; the per-layer identity checks are the executed evidence."""
    cond = "A satisfies a polynomial identity (s_2n^2 on each layer)"
    evidence = [pi_check_swich(L, trials=trials, seed=seed) for L in C.layers]
    bad = [j for j, r in enumerate(evidence) if not r.passed]
    if bad:
        return Verdict.no("EvidenceFailed", f"identity check failed on layers {bad}", cond), evidence
    return Verdict.yes("PI", "s_2n^2 verified on every layer", cond), evidence


# -- reports --------------------------------------------------------------------------------


@dataclass
class LayerReport:
    index: int
    name: Optional[str]
    n: int
    base: str
    psi: str
    det: str
    kdim: Optional[int]
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    pi: Optional[PIResult] = None

    def to_json(self) -> Dict[str, Any]:
        out = {
            "index": self.index,
            "name": self.name,
            "n": self.n,
            "base": self.base,
            "psi": self.psi,
            "det_psi": self.det,
            "kdim": self.kdim,
        }
        out.update({k: v.to_json() for k, v in self.verdicts.items()})
        if self.pi is not None:
            out["pi_evidence"] = self.pi.to_json()
        return out


@dataclass
class ChainReport:
    name: str
    m: int
    m_provenance: str
    asymptotic: str
    layers: List[LayerReport]
    chain: Dict[str, Verdict]
    seed: int
    budget_used: int
    gkdim_bound: Optional[int] = None

    def verdicts(self):
        for L in self.layers:
            yield from L.verdicts.values()
        yield from self.chain.values()

    GATING = ("pi", "semiprime_chain", "embedding", "gkdim", "noetherian")

    def exit_code(self) -> int:
        if any(v.label == BUDGET_LABEL for v in self.verdicts()):
            return 3
        gating = [self.chain[k] for k in self.GATING if k in self.chain]
        if any(v.refuted for v in gating):
            return 1
        if any(v.indeterminate for v in gating):
            return 2
        return 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "layers": [L.to_json() for L in self.layers],
            "chain": {
                "name": self.name,
                "m": self.m,
                "m_provenance": self.m_provenance,
                "asymptotic_algebra": self.asymptotic,
                "gkdim_bound": self.gkdim_bound,
                "seed": self.seed,
                "budget_used": self.budget_used,
                **{k: v.to_json() for k, v in self.chain.items()},
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def render(self) -> str:
        lines = [f"chain {self.name}: m = {self.m} ({self.m_provenance}); asymptotic algebra {self.asymptotic}"]
        for L in self.layers:
            lines.append(f"layer {L.index} {L.name or ''}: n = {L.n}, B = {L.base}, psi = {L.psi}, det = {L.det}, Kdim = {L.kdim}")
            for k, v in L.verdicts.items():
                lines.append(f"  {k:<22} {v}")
            if L.pi is not None:
                lines.append(f"  {'pi_evidence':<22} {L.pi.mode}, {L.pi.tuples_checked} unit tuples, {L.pi.trials} trials")
        lines.append("chain verdicts:")
        for k, v in self.chain.items():
            lines.append(f"  {k:<22} {v}")
        if self.gkdim_bound is not None:
            lines.append(f"  gkdim bound            {self.gkdim_bound}")
        return "\n".join(lines)


class ReportInconsistency(AssertionError):
    pass


def validate_report(report: ChainReport) -> List[str]:
    """Assert the implication chain iso => injective => det conditions below m.

    Returns the list of implications that were checked; raises on any violation.
    """
    ch = report.chain
    checked, errors = [], []
    iso, emb, semi = ch.get("asymptotic_iso"), ch.get("embedding"), ch.get("semiprime_chain")
    if iso is not None and emb is not None and iso.affirmed:
        checked.append("asymptotic_iso => embedding injective")
        if not emb.data.get("injective"):
            errors.append("asymptotic iso affirmed but embedding not injective")
    if emb is not None and emb.data.get("injective"):
        checked.append("embedding injective => det non-zero-divisor below m")
        for L in report.layers[: report.m]:
            dv = L.verdicts.get("det")
            if dv is not None and dv.refuted:
                errors.append(f"embedding injective but det of layer {L.index} is a zero divisor")
        if emb.data.get("evidence") == "NotInjective":
            errors.append("embedding predicted injective but the concrete Phi has a kernel element")
    if emb is not None and emb.affirmed and semi is not None:
        checked.append("embedding affirmed => semiprime chain not refuted")
        if semi.refuted:
            errors.append("embedding affirmed but semiprime chain refuted")
    gk = ch.get("gkdim")
    if gk is not None and gk.affirmed:
        checked.append("gkdim equality => every layer certified")
        if len(gk.data.get("certificates", [])) != report.m + 1:
            errors.append("gkdim equality without a certificate for every layer")
    if errors:
        raise ReportInconsistency("; ".join(errors))
    return checked


def analyze_chain(C: CellChain, config: Optional[AnalysisConfig] = None) -> ChainReport:
    config = config or AnalysisConfig()
    C.seed = config.seed
    with budget_scope(config.budget) as budget:
        layers = []
        for j, L in enumerate(C.layers):
            f = C.facts(j)
            verdicts: Dict[str, Verdict] = {}

            def idem():
                ok = f.idempotent
                cond = "J idempotent iff the entry ideal is all of B"
                return Verdict.yes("Idempotent", "1 in I_psi", cond) if ok else Verdict.no(
                    "NotIdempotent", "1 not in I_psi", cond
                )

            def det():
                cond = "det(psi) not a zero divisor in B"
                ok, _ = f.det_unit
                if f.det_zero_divisor:
                    return Verdict.no("ZeroDivisor", f"det(psi) = {L.det}", cond)
                return Verdict.yes("NonZeroDivisor", f"det(psi) = {L.det}", cond, unit=ok)

            def fg():
                cond = "J finitely generated iff B/I_psi finite-dimensional over k"
                ok, dim = f.fg
                if ok:
                    return Verdict.yes("FinitelyGenerated", f"dim_k B/I_psi = {dim}", cond, dimension=dim)
                return Verdict.no("NotFinitelyGenerated", "B/I_psi infinite-dimensional", cond)

            def adj():
                cond = "psi^+ * a = det(psi) a = a * psi^+"
                ok = adjugate_centrality_check(L, config.centrality_samples, config.seed)
                return Verdict.yes("Central", "checked on units and samples", cond) if ok else Verdict.no(
                    "NotCentral", "adjugate identity failed", cond
                )

            verdicts["idempotent"] = _guard("idempotent", "", idem)
            verdicts["det"] = _guard("det", "", det)
            verdicts["reduced"] = _guard("reduced", "", lambda: f.reduced)
            verdicts["semiprime"] = _guard("semiprime", "", lambda: is_semiprime(L, seed=config.seed))
            verdicts["cyclic"] = _guard("cyclic", "", lambda: idempotent_generator(L))
            verdicts["finitely_generated"] = _guard("finitely_generated", "", fg)
            verdicts["adjugate_central"] = _guard("adjugate_central", "", adj)
            try:
                kdim = f.kdim
            except BudgetExceeded:
                kdim = None
            layers.append(
                LayerReport(j, L.name, L.n, L.base.name or L.base.describe(), str(L.psi), str(L.det), kdim, verdicts)
            )

        chain: Dict[str, Verdict] = {}
        pi, evidence = pi_report(C, config.pi_trials, config.seed)
        for lr, ev in zip(layers, evidence):
            lr.pi = ev
        chain["pi"] = pi
        chain["semiprime_chain"] = _guard("semiprime_chain", "", lambda: semiprime_chain_check(C))
        chain["embedding"] = _guard("embedding", "", lambda: embedding_report(C, config))
        chain["asymptotic_iso"] = _guard("asymptotic_iso", "", lambda: asymptotic_iso_check(C))
        bound = None
        try:
            bound, gk = gkdim_bound(C, chain["semiprime_chain"])
        except BudgetExceeded as e:
            gk = Verdict.unknown(BUDGET_LABEL, str(e), "")
        chain["gkdim"] = gk
        chain["noetherian"] = _guard("noetherian", "", lambda: noetherian_report(C))
        if C.algebra is not None:
            chain["annihilator"] = _guard(
                "annihilator", "", lambda: C.algebra.annihilator_search(config.degree_bound, max(config.support_bound, 1))
            )
    report = ChainReport(
        C.name, C.m, C.m_provenance, C.asymptotic().describe(), layers, chain, config.seed, budget.used, bound
    )
    validate_report(report)
    return report
