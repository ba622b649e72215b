import pytest

from cnx.errors import LanguageMismatch
from cnx.harness import (ALL_CELLS, BoundedEvidence, CountermodelEvidence,
                         ConnexivityReport, ProofEvidence, Thesis,
                         ThesisStatus, connective_defined_in, run_suite,
                         run_thesis, thesis_instance, DEFAULT_BOUNDS)
from cnx.logics import Logic
from cnx.search import SearchBounds
from cnx.semantics import Consecution
from cnx.syntax import parse


def test_cell_inventory():
    assert len(ALL_CELLS) == 18
    assert (Logic.C, "#>") not in ALL_CELLS
    assert (Logic.CnK, "@>") not in ALL_CELLS
    assert (Logic.CnCK_R, "?=>") in ALL_CELLS


def test_thesis_instances():
    assert thesis_instance("->", Thesis.AT) == parse("~(~p0 -> p0)")
    assert thesis_instance("->", Thesis.BT) == parse("(p0 -> ~p1) -> ~(p0 -> p1)")
    assert thesis_instance("->", Thesis.CBT) == parse("~(p0 -> p1) -> (p0 -> ~p1)")
    assert thesis_instance("->", Thesis.NONSYM) == parse("(p0 -> p1) -> (p1 -> p0)")
    wbt = thesis_instance("@>", Thesis.WBT)
    assert isinstance(wbt, Consecution)
    assert wbt.gamma == {parse("p0 @> ~p1")}
    assert wbt.delta == {parse("~(p0 @> p1)")}
    assert thesis_instance("@=>", Thesis.AT) == parse("~(~p0 @=> p0)")


def _report(verdicts: dict) -> ConnexivityReport:
    statuses = tuple(
        ThesisStatus(t, "holds" if verdicts.get(t) else "fails",
                     BoundedEvidence(SearchBounds(1, (0,))))
        for t in Thesis)
    return ConnexivityReport(Logic.C, "->", statuses)


def test_label_derivation():
    full_hyper = {Thesis.AT: 1, Thesis.BT: 1, Thesis.CBT: 1,
                  Thesis.WBT: 1, Thesis.WCBT: 1}
    assert _report(full_hyper).label == "fully hyperconnexive"
    assert _report({Thesis.AT: 1, Thesis.BT: 1, Thesis.WBT: 1}).label == \
        "fully connexive"
    assert _report({Thesis.AT: 1, Thesis.BT: 1}).label == "plainly connexive"
    assert _report({Thesis.AT: 1, Thesis.WBT: 1}).label == "weakly connexive"
    assert _report({Thesis.WBT: 1, Thesis.WCBT: 1}).label == \
        "weakly partially hyperconnexive"
    assert _report({Thesis.WBT: 1}).label == "weakly partially connexive"
    assert _report({Thesis.BT: 1}).label == "partially connexive"
    assert _report({}).label == "none"
    # nonSym holding blocks connexivity outright
    assert _report({Thesis.AT: 1, Thesis.BT: 1, Thesis.WBT: 1,
                    Thesis.NONSYM: 1, Thesis.WNONSYM: 1}).label == "none"


def test_undefined_connective_rejected():
    with pytest.raises(LanguageMismatch):
        run_suite(Logic.C, "#>")
    assert not connective_defined_in("@>", Logic.CnK)


def test_strong_conditional_wcbt_fails_via_m0c():
    st = run_thesis(Logic.CnCK, "@=>", Thesis.WCBT, DEFAULT_BOUNDS)
    assert st.verdict == "fails"
    assert isinstance(st.evidence, CountermodelEvidence)
    assert st.evidence.fixture == "M0c"
    st = run_thesis(Logic.CnCK, "?=>", Thesis.WCBT, DEFAULT_BOUNDS)
    assert st.verdict == "fails" and st.evidence.fixture == "M0c"


def test_conditional_at_fails_via_m0c1():
    st = run_thesis(Logic.CnCK, "@>", Thesis.AT, DEFAULT_BOUNDS)
    assert st.verdict == "fails"
    assert st.evidence.fixture == "M0c1"


def test_positive_cells_cite_proofs():
    st = run_thesis(Logic.C, "->", Thesis.AT, DEFAULT_BOUNDS)
    assert st.verdict == "holds"
    assert isinstance(st.evidence, ProofEvidence)
    assert st.evidence.name == "at_arrow"
    # scheme inclusion: the same C proof serves CnK and both conditional logics
    for lg in (Logic.CnK, Logic.CnCK, Logic.CnCK_R):
        st = run_thesis(lg, "->", Thesis.AT, DEFAULT_BOUNDS)
        assert isinstance(st.evidence, ProofEvidence)
        assert st.evidence.name == "at_arrow"
    # but a CnCK_R-only proof is not cited below CnCK_R
    st = run_thesis(Logic.CnCK, "@>", Thesis.BT, DEFAULT_BOUNDS)
    assert st.verdict == "fails"


def test_bounded_positive_fallback(monkeypatch):
    import cnx.harness as hz
    stripped = dict(hz.PROOF_EVIDENCE)
    del stripped[("@>", Thesis.AT)]
    monkeypatch.setattr(hz, "PROOF_EVIDENCE", stripped)
    bounds = SearchBounds(1, (0, 1), max_cond_indices=2)
    st = run_thesis(Logic.CnCK_R, "@>", Thesis.AT, bounds)
    assert st.verdict == "holds"
    assert isinstance(st.evidence, BoundedEvidence)
    assert "non-conclusive" in st.evidence.source


def test_fixture_backed_verdicts_stable_under_larger_bounds():
    small = SearchBounds(1, (0, 1), max_cond_indices=2)
    big = SearchBounds(2, (0, 1), max_cond_indices=2)
    for thesis in (Thesis.AT, Thesis.WCBT):
        a = run_thesis(Logic.CnCK, "@=>", thesis, small)
        b = run_thesis(Logic.CnCK, "@=>", thesis, big)
        assert a.verdict == b.verdict
        if isinstance(a.evidence, CountermodelEvidence) and a.evidence.fixture:
            assert b.evidence.fixture == a.evidence.fixture
