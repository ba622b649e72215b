import itertools

import pytest

from cnx.errors import LanguageMismatch
from cnx.logics import Logic
from cnx.model import FrameClass, serialize_pointed, validate_model
from cnx.search import (SearchBounds, Status, enumerate_models,
                        find_countermodel)
from cnx.semantics import check_consecution, consecution
from cnx.syntax import parse


def labeled_preorders_oracle(n):
    """Independent combinatorial enumeration of labeled preorders."""
    worlds = [f"w{i+1}" for i in range(n)]
    pairs = list(itertools.product(worlds, worlds))
    count = 0
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if not all((w, w) in rel for w in worlds):
            continue
        if all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c):
            count += 1
    return count


def test_prop_one_world_one_atom():
    models = list(enumerate_models(FrameClass.P, SearchBounds(1, (0,))))
    assert len(models) == 4
    vals = {(m.val(0, "+"), m.val(0, "-")) for m in models}
    assert len(vals) == 4


def test_prop_two_worlds_no_atoms_matches_preorder_oracle():
    models = list(enumerate_models(FrameClass.P, SearchBounds(2, ())))
    # one 1-world frame plus the labeled preorders on 2 points
    assert len(models) == 1 + labeled_preorders_oracle(2)
    assert labeled_preorders_oracle(2) == 4


def test_fsm_one_world_no_atoms():
    models = list(enumerate_models(FrameClass.FSM, SearchBounds(1, ())))
    assert len(models) == 2
    assert {m.access for m in models} == {frozenset(), frozenset({("w1", "w1")})}


def test_every_enumerated_model_validates():
    for frame in FrameClass:
        bounds = SearchBounds(2, (0,), max_cond_indices=1)
        for m in itertools.islice(enumerate_models(frame, bounds), 300):
            assert validate_model(m, frame).ok


def test_enumeration_is_deterministic():
    bounds = SearchBounds(2, (0,), max_cond_indices=1)
    a = [serialize_pointed_like(m) for m in
         itertools.islice(enumerate_models(FrameClass.FSC, bounds), 100)]
    b = [serialize_pointed_like(m) for m in
         itertools.islice(enumerate_models(FrameClass.FSC, bounds), 100)]
    assert a == b


def serialize_pointed_like(m):
    from cnx.model import serialize_model
    return serialize_model(m)


def test_countermodel_nonsym_arrow():
    out = find_countermodel(Logic.C,
                            consecution([], [parse("(p0 -> p1) -> (p1 -> p0)")]),
                            SearchBounds(2, (0, 1)))
    assert out.status is Status.FOUND
    assert validate_model(out.witness.model, FrameClass.P).ok
    assert check_consecution(out.witness,
                             consecution([], [parse("(p0 -> p1) -> (p1 -> p0)")]))


def test_known_refutations_rediscovered_within_two_worlds():
    cbt_strong = parse("~(p0 => p1) => (p0 => ~p1)")
    cases = [
        (Logic.C, consecution([], [parse("(p0 -> p1) -> (~p1 -> ~p0)")])),
        (Logic.C, consecution([], [cbt_strong])),
        (Logic.C, consecution([parse("~(p0 => p1)")], [parse("p0 => ~p1")])),
        (Logic.C, consecution([parse("p0 -> p1")], [parse("p1 -> p0")])),
    ]
    for logic, c in cases:
        out = find_countermodel(logic, c, SearchBounds(2, (0, 1)))
        assert out.status is Status.FOUND, c


def test_countermodel_excluded_middle_single_world():
    out = find_countermodel(Logic.C, consecution([], [parse("p0 | ~p0")]),
                            SearchBounds(1, (0,)))
    assert out.status is Status.FOUND
    m = out.witness.model
    assert not m.val(0, "+") and not m.val(0, "-")


def test_exhausted_bounds_on_valid_formula():
    out = find_countermodel(Logic.C, consecution([], [parse("p0 -> p0")]),
                            SearchBounds(2, (0,)))
    assert out.status is Status.EXHAUSTED


def test_search_monotone_in_bounds():
    c = consecution([], [parse("(p0 -> p1) -> (p1 -> p0)")])
    small = find_countermodel(Logic.C, c, SearchBounds(1, (0, 1)))
    big = find_countermodel(Logic.C, c, SearchBounds(2, (0, 1)))
    assert small.status is Status.FOUND
    assert big.status is Status.FOUND
    # deterministic order: enlarging bounds keeps the same first hit
    assert serialize_pointed(small.witness) == serialize_pointed(big.witness)


def test_parallel_matches_sequential():
    c = consecution([parse("p0 ?> (p1 & p2)")], [parse("(p0 & p1) ?> p2")])
    bounds = SearchBounds(2, (0, 1, 2), max_cond_indices=2)
    seq = find_countermodel(Logic.CnCK, c, bounds)
    par = find_countermodel(Logic.CnCK, c, bounds, jobs=4)
    assert seq.status is par.status is Status.FOUND
    assert serialize_pointed(seq.witness) == serialize_pointed(par.witness)


def test_language_gate():
    with pytest.raises(LanguageMismatch):
        find_countermodel(Logic.C, consecution([], [parse("[]p0")]),
                          SearchBounds(1, (0,)))
    with pytest.raises(LanguageMismatch):
        find_countermodel(Logic.CnK, consecution([], [parse("p0 @> p1")]),
                          SearchBounds(1, (0, 1)))


def test_timeout():
    out = find_countermodel(
        Logic.CnCK_R, consecution([], [parse("p0 @> p0")]),
        SearchBounds(2, (0, 1), max_cond_indices=2, time_limit=0.05))
    assert out.status in (Status.TIMED_OUT, Status.EXHAUSTED)


def test_fsc_r_enumeration_respects_target_condition():
    bounds = SearchBounds(1, (0,), max_cond_indices=2)
    for m in enumerate_models(FrameClass.FSC_R, bounds):
        for idx, rel in m.access.items():
            assert all(v in idx.pos for (_, v) in rel)
