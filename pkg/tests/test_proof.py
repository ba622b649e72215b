import random

import pytest

from conftest import CN_CONNS, MD_CONNS, PL_CONNS, random_formula
from cnx.corpus import CORPUS_DIR, corpus_proof, corpus_registry, load_corpus
from cnx.errors import ProofFormatError
from cnx.logics import Logic
from cnx.proof import (AXIOMS, Proof, Registry, check_proof, instantiate,
                       match_scheme, parse_proof, render_proof,
                       system_includes)
from cnx.proofgen import (Hyp, b_strong_dne, build_corpus, discharge, mp,
                          subst_strong_eq, theorem)
from cnx.search import SearchBounds, Status, find_countermodel
from cnx.semantics import consecution
from cnx.syntax import Atom, Imp, parse


class TestMatching:
    def test_spec_examples(self):
        assert match_scheme(parse("(p0 & p1) -> p0"), AXIOMS["a3"]) == \
            {"phi": parse("p0"), "psi": parse("p1")}
        assert match_scheme(parse("~(p0 -> p1) <-> (p0 -> ~p1)"),
                            AXIOMS["a12"]) == \
            {"phi": parse("p0"), "psi": parse("p1")}
        assert match_scheme(parse("p0 -> p1"), AXIOMS["a1"]) is None

    def test_instantiate_roundtrip(self):
        binding = {"phi": parse("p0 & p1"), "psi": parse("~p2")}
        inst = instantiate(AXIOMS["a5"], binding)
        assert match_scheme(inst, AXIOMS["a5"]) == binding

    def test_nonlinear_templates_need_consistent_bindings(self):
        # a9 mentions phi twice
        assert match_scheme(parse("~~p0 <-> p0"), AXIOMS["a9"]) is not None
        assert match_scheme(parse("~~p0 <-> p1"), AXIOMS["a9"]) is None


class TestSystems:
    def test_scheme_inclusions(self):
        assert system_includes("S0", "C")
        assert system_includes("C", "CnK")
        assert system_includes("C", "CnCK")
        assert system_includes("CnCK", "CnCKR")
        assert not system_includes("CnK", "CnCK")
        assert not system_includes("CnCK", "CnK")

    def test_proofs_transfer_upward(self):
        # a C proof is accepted verbatim in every extension
        base = corpus_proof("neg_inconsistency_imp")
        for system in ("CnK", "CnCK", "CnCKR"):
            moved = Proof(system, base.kind, None, base.hypotheses,
                          base.goals, base.lines)
            assert check_proof(moved, corpus_registry()).ok


class TestChecker:
    def test_spec_sample_at_proof(self):
        text = """system C
kind theorem
name sample_at
goal ~(~p0 -> p0)
1 ~p0 -> ((~p0 -> ~p0) -> ~p0) axiom a1
2 ~p0 -> (~p0 -> ~p0) axiom a1
3 (~p0 -> ((~p0 -> ~p0) -> ~p0)) -> ((~p0 -> (~p0 -> ~p0)) -> (~p0 -> ~p0)) axiom a2
4 (~p0 -> (~p0 -> ~p0)) -> (~p0 -> ~p0) mp 1 3
5 ~p0 -> ~p0 mp 2 4
6 (~(~p0 -> p0) -> (~p0 -> ~p0)) & ((~p0 -> ~p0) -> ~(~p0 -> p0)) axiom a12 phi=~p0 psi=p0
7 ((~(~p0 -> p0) -> (~p0 -> ~p0)) & ((~p0 -> ~p0) -> ~(~p0 -> p0))) -> ((~p0 -> ~p0) -> ~(~p0 -> p0)) axiom a4
8 (~p0 -> ~p0) -> ~(~p0 -> p0) mp 6 7
9 ~(~p0 -> p0) mp 5 8
"""
        assert check_proof(parse_proof(text), Registry()).ok

    def test_explicit_binding_must_match(self):
        text = """system C
kind theorem
goal (p0 & p1) -> p0
1 (p0 & p1) -> p0 axiom a3 phi=p1 psi=p0
"""
        res = check_proof(parse_proof(text), Registry())
        assert not res.ok and res.code == "bad-scheme-instance"

    def test_entail_goal_disjunction_associations(self):
        # any association/grouping of delta members is accepted
        head = "system C\nkind entail\nhyp p0\ngoal p0\ngoal p1 -> p1\n"
        body = """1 p0 hyp
2 p0 -> (p0 | (p1 -> p1)) axiom a6
3 p0 | (p1 -> p1) mp 1 2
"""
        assert check_proof(parse_proof(head + body), Registry()).ok
        # a delta member that is itself a disjunction counts as one theta
        text = """system C
kind entail
hyp p0 | p1
goal p0 | p1
1 p0 | p1 hyp
"""
        assert check_proof(parse_proof(text), Registry()).ok

    def test_entail_goal_mismatch(self):
        text = """system C
kind entail
hyp p0
goal p1
1 p0 hyp
"""
        res = check_proof(parse_proof(text), Registry())
        assert not res.ok and res.code == "goal-mismatch"

    def test_hyp_must_be_declared(self):
        text = "system C\nkind entail\nhyp p0\ngoal p0\n1 p1 hyp\n"
        res = check_proof(parse_proof(text), Registry())
        assert not res.ok and res.code == "hyp-not-declared"

    def test_rules_rejected_in_entail_even_on_closed_lines(self):
        text = """system CnK
kind entail
hyp p0
goal []( p1 -> p1 )
1 p1 -> (p1 -> p1) axiom a1
2 (p1 -> (p1 -> p1)) -> ((p1 -> p1) -> (p1 -> (p1 -> p1))) axiom a1
"""
        # nec on a theorem line is still not allowed inside an entail proof
        text = ("system CnK\nkind entail\nhyp p0\ngoal [](p0 -> (p1 -> p0))\n"
                "1 p0 -> (p1 -> p0) axiom a1\n"
                "2 [](p0 -> (p1 -> p0)) nec 1\n")
        res = check_proof(parse_proof(text), Registry())
        assert not res.ok and res.code == "rule-not-permitted-in-kind"

    def test_axiom_outside_system(self):
        text = "system C\nkind theorem\ngoal p0 @> (p1 -> p1)\n1 p0 @> (p1 -> p1) axiom g5\n"
        res = check_proof(parse_proof(text), Registry())
        assert not res.ok and res.code in ("axiom-not-in-system", "language-mismatch")

    def test_unknown_lemma_and_system_scoping(self):
        reg = Registry()
        reg.register("modal_fact", "CnK", parse("[]p0 -> []p0"))
        text = "system CnCK\nkind theorem\ngoal []p0 -> []p0\n1 []p0 -> []p0 lemma modal_fact\n"
        res = check_proof(parse_proof(text), reg)
        # CnK is not included in CnCK (language mismatch is also acceptable)
        assert not res.ok
        res = check_proof(parse_proof("system C\nkind theorem\ngoal p0\n1 p0 lemma nope\n"),
                          Registry())
        assert res.code == "unknown-lemma"

    def test_rule_conclusion_matching(self):
        good = ("system CnCK\nkind rulederive\nhyp p0 <=> p1\ngoal (p2 @> p0) <-> (p2 @> p1)\n"
                "1 p0 <=> p1 hyp\n"
                "2 (p0 -> p1) & (p1 -> p0) mp 1 3\n")
        # rc-box needs an iff premise, not the strong one
        text = ("system CnCK\nkind rulederive\nhyp p0 <=> p1\n"
                "goal (p2 @> p0) <-> (p2 @> p1)\n"
                "1 p0 <=> p1 hyp\n"
                "2 (p2 @> p0) <-> (p2 @> p1) rc-box 1\n")
        res = check_proof(parse_proof(text), Registry())
        assert not res.ok and res.code == "bad-scheme-instance"

    def test_mp_order_insensitive(self):
        text = """system C
kind entail
hyp p0
hyp p0 -> p1
goal p1
1 p0 -> p1 hyp
2 p0 hyp
3 p1 mp 2 1
"""
        assert check_proof(parse_proof(text), Registry()).ok
        swapped = text.replace("3 p1 mp 2 1", "3 p1 mp 1 2")
        assert check_proof(parse_proof(swapped), Registry()).ok


class TestProofFiles:
    def test_roundtrip_every_corpus_file(self):
        for fname in (CORPUS_DIR / "manifest.txt").read_text().split():
            text = (CORPUS_DIR / fname).read_text()
            proof = parse_proof(text)
            assert render_proof(parse_proof(render_proof(proof))) == render_proof(proof)

    def test_bad_line_numbering(self):
        with pytest.raises(ProofFormatError):
            parse_proof("system C\nkind theorem\ngoal p0\n2 p0 hyp\n")

    def test_missing_headers(self):
        with pytest.raises(ProofFormatError):
            parse_proof("kind theorem\ngoal p0\n1 p0 hyp\n")


class TestCorpus:
    def test_corpus_loads_clean(self):
        registry, index = load_corpus()
        assert len(index) >= 60
        assert len(registry) >= 45

    def test_negative_fixtures(self):
        reg = corpus_registry()
        expected = {
            "bad_scheme.prf": "bad-scheme-instance",
            "bad_forward_ref.prf": "bad-line-ref",
            "bad_nec_in_entail.prf": "rule-not-permitted-in-kind",
        }
        for fname, code in expected.items():
            proof = parse_proof((CORPUS_DIR / "negative" / fname).read_text())
            res = check_proof(proof, reg)
            assert not res.ok and res.code == code, (fname, res)

    def test_shipped_files_match_generator(self):
        from cnx.proof import render_proof
        for proof in build_corpus():
            on_disk = (CORPUS_DIR / f"{proof.name}.prf").read_text()
            assert on_disk == render_proof(proof), proof.name


class TestGenerators:
    def test_deduction_theorem_generator(self):
        # mechanical discharge of random modus-ponens chains
        rnd = random.Random(31)
        reg = corpus_registry()
        for _ in range(20):
            a = random_formula(rnd, 2, (0, 1))
            b = random_formula(rnd, 2, (0, 1))
            h = Imp(a, Imp(a, b))
            body = mp(Hyp(a), mp(Hyp(a), Hyp(h)))
            term = discharge(discharge(body, a), h)
            proof = theorem(None, "C", term)
            assert check_proof(proof, reg).ok
            assert proof.goals[0] == Imp(h, Imp(a, b))

    def test_strong_equivalence_substitution_generator(self):
        rnd = random.Random(37)
        reg = corpus_registry()
        for allow, conns, system in (("prop", PL_CONNS, "C"),
                                     ("modal", MD_CONNS, "CnK"),
                                     ("cond", CN_CONNS, "CnCK")):
            for _ in range(8):
                theta = random_formula(rnd, 3, (0, 1), conns)
                term = subst_strong_eq(b_strong_dne(Atom(0)), theta, 0, allow)
                proof = theorem(None, system, term)
                assert check_proof(proof, reg).ok

    def test_accepted_lines_never_refuted_on_bounded_models(self):
        # soundness spot-check: theorem goals from the corpus survive bounded
        # countermodel search in their own logic
        sample = ["at_arrow", "bt_strong", "neg_inconsistency_imp",
                  "at_strict", "box_conj_dist", "neg_would_swap",
                  "at_would_refl", "bt_swould_refl"]
        for name in sample:
            proof = corpus_proof(name)
            logic = {"C": Logic.C, "CnK": Logic.CnK, "CnCK": Logic.CnCK,
                     "CnCKR": Logic.CnCK_R}[proof.system]
            bounds = SearchBounds(2, (0, 1), max_cond_indices=1)
            out = find_countermodel(logic, consecution([], [proof.goals[0]]),
                                    bounds)
            assert out.status is Status.EXHAUSTED, name

    def test_every_corpus_line_holds_on_bounded_models(self):
        # line-by-line soundness over enumerated models: theorem and entail
        # lines hold wherever the hypotheses hold; rulederive lines hold in
        # models whose every world satisfies the hypotheses (rules preserve
        # model-wide truth, not pointwise truth)
        import itertools

        from cnx.model import PointedModel
        from cnx.search import enumerate_models
        from cnx.semantics import sat
        from cnx.syntax import atoms_of

        _, index = load_corpus()
        logic_of = {"C": Logic.C, "CnK": Logic.CnK, "CnCK": Logic.CnCK,
                    "CnCKR": Logic.CnCK_R}
        for proof in index.values():
            logic = logic_of[proof.system]
            atoms = frozenset()
            for line in proof.lines:
                atoms |= atoms_of(line.formula)
            bounds = SearchBounds(2, tuple(sorted(atoms)) or (0,),
                                  max_cond_indices=1)
            stream = enumerate_models(logic.frame_class, bounds)
            cap = 120 if len(atoms) > 2 or proof.system in ("CnCK", "CnCKR") \
                else 500
            for m in itertools.islice(stream, cap):
                if proof.kind == "rulederive":
                    if not all(sat(m, w, h) for h in proof.hypotheses
                               for w in m.worlds):
                        continue
                    for line in proof.lines:
                        for w in m.worlds:
                            assert sat(m, w, line.formula), \
                                (proof.name, line.formula, w)
                else:
                    for w in m.worlds:
                        if not all(sat(m, w, h) for h in proof.hypotheses):
                            continue
                        for line in proof.lines:
                            assert sat(m, w, line.formula), \
                                (proof.name, line.formula, w)
