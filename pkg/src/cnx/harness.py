"""Connexivity classification: run the seven thesis schemes for a connective
in a logic and derive the taxonomy label, with machine-checked evidence for
every verdict.

Positive verdicts cite a checked proof from the shipped corpus (at the
reserved scheme atoms p0, p1; instantiable by substitution).  When no proof
is available, a bounded countermodel search stands in: an exhausted search is
reported as non-conclusive bounded evidence.  Negative verdicts carry a
pointed model that is re-validated against the logic's frame class and
re-refutes the instance at report time.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .corpus import corpus_proof, load_corpus
from .errors import LanguageMismatch
from .logics import Logic
from .model import (FIXTURE_NAMES, Kind, KripkeModel, PointedModel,
                    get_fixture, validate_model)
from .proof import system_includes
from .search import SearchBounds, Status, find_countermodel
from .semantics import Consecution, check_consecution, consecution, sat
from .syntax import (Atom, Formula, Neg, WouldTo, MightTo, Imp,
                     strong_imp, strict_imp, strong_strict_imp, strong_would,
                     strong_might)


class Thesis(Enum):
    AT = "AT"
    BT = "BT"
    CBT = "CBT"
    WBT = "WBT"
    WCBT = "WCBT"
    NONSYM = "nonSym"
    WNONSYM = "WnonSym"


FORMULA_THESES = (Thesis.AT, Thesis.BT, Thesis.CBT, Thesis.NONSYM)

CONNECTIVES: dict[str, Callable[[Formula, Formula], Formula]] = {
    "->": Imp,
    "=>": strong_imp,
    "#>": strict_imp,
    "#=>": strong_strict_imp,
    "@>": WouldTo,
    "?>": MightTo,
    "@=>": strong_would,
    "?=>": strong_might,
}

_MODAL_CONNECTIVES = {"#>", "#=>"}
_COND_CONNECTIVES = {"@>", "?>", "@=>", "?=>"}


def connective_defined_in(conn: str, logic: Logic) -> bool:
    if conn in ("->", "=>"):
        return True
    if conn in _MODAL_CONNECTIVES:
        return logic is Logic.CnK
    return logic in (Logic.CnCK, Logic.CnCK_R)


def thesis_instance(conn: str, thesis: Thesis,
                    a: Formula = Atom(0), b: Formula = Atom(1)):
    """The scheme instance at fixed atoms: a formula for the formula-form
    theses, a consecution for the rule-form ones."""
    star = CONNECTIVES[conn]
    if thesis is Thesis.AT:
        return Neg(star(Neg(a), a))
    if thesis is Thesis.BT:
        return star(star(a, Neg(b)), Neg(star(a, b)))
    if thesis is Thesis.CBT:
        return star(Neg(star(a, b)), star(a, Neg(b)))
    if thesis is Thesis.NONSYM:
        return star(star(a, b), star(b, a))
    if thesis is Thesis.WBT:
        return consecution([star(a, Neg(b))], [Neg(star(a, b))])
    if thesis is Thesis.WCBT:
        return consecution([Neg(star(a, b))], [star(a, Neg(b))])
    if thesis is Thesis.WNONSYM:
        return consecution([star(a, b)], [star(b, a)])
    raise ValueError(thesis)


# corpus proof names backing the positive cells, keyed by (connective, thesis)
PROOF_EVIDENCE: dict[tuple[str, Thesis], str] = {
    ("->", Thesis.AT): "at_arrow",
    ("->", Thesis.BT): "bt_arrow",
    ("->", Thesis.CBT): "cbt_arrow",
    ("->", Thesis.WBT): "wbt_arrow",
    ("->", Thesis.WCBT): "wcbt_arrow",
    ("=>", Thesis.AT): "at_strong",
    ("=>", Thesis.BT): "bt_strong",
    ("=>", Thesis.WBT): "wbt_strong",
    ("#>", Thesis.AT): "at_strict",
    ("#>", Thesis.BT): "bt_strict",
    ("#>", Thesis.CBT): "cbt_strict",
    ("#>", Thesis.WBT): "wbt_strict",
    ("#>", Thesis.WCBT): "wcbt_strict",
    ("#=>", Thesis.AT): "at_sstrict",
    ("#=>", Thesis.BT): "bt_sstrict",
    ("#=>", Thesis.WBT): "wbt_sstrict",
    ("@>", Thesis.AT): "at_would_refl",
    ("@>", Thesis.BT): "bt_would_refl",
    ("@>", Thesis.CBT): "cbt_would_refl",
    ("@>", Thesis.WBT): "wbt_would",
    ("@>", Thesis.WCBT): "wcbt_would",
    ("?>", Thesis.WBT): "wbt_might",
    ("?>", Thesis.WCBT): "wcbt_might",
    ("@=>", Thesis.AT): "at_swould_refl",
    ("@=>", Thesis.BT): "bt_swould_refl",
    ("@=>", Thesis.WBT): "wbt_swould",
    ("?=>", Thesis.WBT): "wbt_smight",
}


@dataclass(frozen=True)
class ProofEvidence:
    name: str
    system: str


@dataclass(frozen=True)
class CountermodelEvidence:
    pointed: PointedModel
    instance: object            # Formula or Consecution
    fixture: Optional[str]      # named fixture, if one supplied the model

    @property
    def source(self) -> str:
        if self.fixture:
            return f"fixture:{self.fixture}"
        n = len(self.pointed.model.worlds)
        return f"search:{n}-world model"


@dataclass(frozen=True)
class BoundedEvidence:
    bounds: SearchBounds

    @property
    def source(self) -> str:
        return (f"bounded:no countermodel within {self.bounds.max_worlds} "
                f"worlds (non-conclusive)")


@dataclass(frozen=True)
class ThesisStatus:
    thesis: Thesis
    verdict: str                # holds | fails
    evidence: object

    @property
    def evidence_text(self) -> str:
        if isinstance(self.evidence, ProofEvidence):
            return f"proof:{self.evidence.name}"
        return self.evidence.source


@dataclass(frozen=True)
class ConnexivityReport:
    logic: Logic
    connective: str
    statuses: tuple[ThesisStatus, ...]

    def verdict(self, thesis: Thesis) -> str:
        for s in self.statuses:
            if s.thesis is thesis:
                return s.verdict
        raise KeyError(thesis)

    @property
    def label(self) -> str:
        holds = {s.thesis for s in self.statuses if s.verdict == "holds"}
        plainly = (Thesis.AT in holds and Thesis.BT in holds
                   and Thesis.NONSYM not in holds)
        weakly = (Thesis.AT in holds and Thesis.WBT in holds
                  and Thesis.WNONSYM not in holds)
        plainly_hyper = plainly and Thesis.CBT in holds
        weakly_hyper = weakly and Thesis.WCBT in holds
        partially = ((Thesis.AT in holds or Thesis.BT in holds)
                     and Thesis.NONSYM not in holds)
        weakly_partially = (Thesis.WBT in holds and Thesis.WNONSYM not in holds)
        weakly_partially_hyper = weakly_partially and Thesis.WCBT in holds
        if plainly_hyper and weakly_hyper:
            return "fully hyperconnexive"
        if plainly and weakly:
            return "fully connexive"
        if plainly:
            return "plainly connexive"
        if weakly:
            return "weakly connexive"
        if weakly_partially_hyper:
            return "weakly partially hyperconnexive"
        if weakly_partially:
            return "weakly partially connexive"
        if partially:
            return "partially connexive"
        return "none"


def _candidate_fixtures(logic: Logic):
    """Named fixtures valid for the logic's frame class, plus the two ad hoc
    empty-relation models that refute every might-conditional."""
    frame = logic.frame_class
    out = []
    for name in FIXTURE_NAMES:
        pm = get_fixture(name)
        if pm.model.kind is frame.kind and validate_model(pm.model, frame).ok:
            out.append((name, pm))
    if frame.kind is Kind.COND:
        empty = KripkeModel(Kind.COND, {"w"}, {("w", "w")}, {},
                            {0: {"w"}}, {})
        out.append((None, PointedModel(empty, "w")))
        bare = KripkeModel(Kind.COND, {"w"}, {("w", "w")}, {}, {}, {})
        out.append((None, PointedModel(bare, "w")))
    return out


def _refutes(pm: PointedModel, instance) -> Optional[PointedModel]:
    """A point of pm's model witnessing failure of the instance, if any."""
    m = pm.model
    for w in sorted(m.worlds):
        if isinstance(instance, Consecution):
            if check_consecution(PointedModel(m, w), instance):
                return PointedModel(m, w)
        else:
            if not sat(m, w, instance):
                return PointedModel(m, w)
    return None


def _as_consecution(instance) -> Consecution:
    if isinstance(instance, Consecution):
        return instance
    return consecution([], [instance])


def run_thesis(logic: Logic, conn: str, thesis: Thesis,
               bounds: SearchBounds) -> ThesisStatus:
    instance = thesis_instance(conn, thesis)
    for f in (instance.gamma | instance.delta
              if isinstance(instance, Consecution) else [instance]):
        logic.require(f)

    name = PROOF_EVIDENCE.get((conn, thesis))
    if name is not None:
        proof = corpus_proof(name)
        if proof is not None and system_includes(proof.system, logic.value):
            _assert_proof_matches(proof, instance, name)
            return ThesisStatus(thesis, "holds", ProofEvidence(name, proof.system))

    for fixture_name, pm in _candidate_fixtures(logic):
        hit = _refutes(pm, instance)
        if hit is not None:
            _assert_countermodel(logic, hit, instance)
            return ThesisStatus(thesis, "fails",
                                CountermodelEvidence(hit, instance, fixture_name))

    outcome = find_countermodel(logic, _as_consecution(instance), bounds)
    if outcome.status is Status.FOUND:
        _assert_countermodel(logic, outcome.witness, instance)
        return ThesisStatus(thesis, "fails",
                            CountermodelEvidence(outcome.witness, instance, None))
    return ThesisStatus(thesis, "holds", BoundedEvidence(bounds))


def _assert_proof_matches(proof, instance, name: str) -> None:
    if isinstance(instance, Consecution):
        assert set(proof.hypotheses) == set(instance.gamma), name
        assert set(proof.goals) <= set(instance.delta), name
    else:
        assert proof.kind == "theorem" and proof.goals[0] == instance, name


def _assert_countermodel(logic: Logic, pm: PointedModel, instance) -> None:
    report = validate_model(pm.model, logic.frame_class)
    assert report.ok, f"evidence model fails {logic.frame_class.value} validation"
    assert check_consecution(pm, _as_consecution(instance)), \
        "evidence model does not refute the instance"


DEFAULT_BOUNDS = SearchBounds(max_worlds=2, atoms=(0, 1), max_cond_indices=2)


def run_suite(logic: Logic, conn: str,
              bounds: SearchBounds = DEFAULT_BOUNDS) -> ConnexivityReport:
    if conn not in CONNECTIVES:
        raise ValueError(f"unknown connective {conn!r}")
    if not connective_defined_in(conn, logic):
        raise LanguageMismatch(
            f"{conn} is not expressible in the language of {logic.value}")
    load_corpus()
    statuses = tuple(run_thesis(logic, conn, thesis, bounds)
                     for thesis in Thesis)
    return ConnexivityReport(logic, conn, statuses)


ALL_CELLS: tuple[tuple[Logic, str], ...] = tuple(
    (logic, conn)
    for logic in Logic
    for conn in ("->", "=>", "#>", "#=>", "@>", "?>", "@=>", "?=>")
    if connective_defined_in(conn, logic))


def render_report(report: ConnexivityReport) -> str:
    lines = [f"logic={report.logic.value} connective={report.connective}"]
    for s in report.statuses:
        lines.append(f"  {s.thesis.value:<8} {s.verdict:<6} {s.evidence_text}")
    lines.append(f"  label: {report.label}")
    return "\n".join(lines)


def report_record(report: ConnexivityReport) -> dict:
    return {
        "logic": report.logic.value,
        "connective": report.connective,
        "label": report.label,
        "theses": [
            {"thesis": s.thesis.value, "verdict": s.verdict,
             "evidence": s.evidence_text}
            for s in report.statuses
        ],
    }
