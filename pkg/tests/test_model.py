import pytest

from cnx.errors import StructuralError, UnknownFixture
from cnx.model import (FIXTURE_CLASS, FIXTURE_NAMES, BiSet, FrameClass, Kind,
                       KripkeModel, bi, close_valuations, get_fixture,
                       load_model, serialize_model, serialize_pointed,
                       validate_model)


def compose(r, s):
    return {(a, c) for (a, b) in r for (b2, c) in s if b == b2}


def inverse(r):
    return {(b, a) for (a, b) in r}


def test_all_fixtures_validate():
    for name in FIXTURE_NAMES:
        pm = get_fixture(name)
        report = validate_model(pm.model, FIXTURE_CLASS[name])
        assert report.ok, (name, report.violations)


def test_fixture_contents():
    m0 = get_fixture("M0").model
    assert m0.val(0, "+") == {"w"} and m0.val(0, "-") == frozenset()
    assert m0.val(1, "+") == {"w"} and m0.val(1, "-") == {"w"}
    assert m0.val(5, "+") == frozenset()

    m2 = get_fixture("M2").model
    assert set(m2.access) == {bi((), ())}
    assert m2.access[bi((), ())] == {("w", "w")}
    assert not m2.val_pos and not m2.val_neg

    triv = get_fixture("triv").model
    for atom in range(8):
        assert triv.val(atom, "+") == {"w"} and triv.val(atom, "-") == {"w"}


def test_fixture_classes_against_fsc_r():
    assert validate_model(get_fixture("M0c").model, FrameClass.FSC_R).ok
    report = validate_model(get_fixture("M2").model, FrameClass.FSC_R)
    assert not report.ok
    assert any(v.code == "refl-target" and "w" in v.message
               for v in report.violations)
    # the strictly richer conditional fixtures
    assert validate_model(get_fixture("M1c").model, FrameClass.FSC_R).ok
    assert not validate_model(get_fixture("M0c1").model, FrameClass.FSC_R).ok


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        get_fixture("M3")


def test_fs_violation_matches_composition_oracle():
    # two-world chain w<=v with modal r={(w,w)}
    m = KripkeModel(Kind.MODAL, {"w", "v"},
                    {("w", "w"), ("v", "v"), ("w", "v")},
                    {("w", "w")})
    report = validate_model(m, FrameClass.FSM)
    assert not report.ok
    codes = {v.code for v in report.violations}
    assert "c2" in codes

    # independent relational-composition oracle over the same frame
    leq, r = set(m.leq), set(m.access)
    c1_holds = compose(inverse(leq), r) <= compose(r, inverse(leq))
    c2_holds = compose(r, leq) <= compose(leq, r)
    assert not c2_holds
    assert c1_holds == ("c1" not in codes)


def test_fs_oracle_agrees_on_random_modal_relations():
    import itertools
    worlds = ("a", "b")
    leq = {("a", "a"), ("b", "b"), ("a", "b")}
    pairs = list(itertools.product(worlds, worlds))
    for mask in range(16):
        r = {p for i, p in enumerate(pairs) if mask >> i & 1}
        m = KripkeModel(Kind.MODAL, worlds, leq, r)
        report = validate_model(m, FrameClass.FSM)
        ok_oracle = (compose(inverse(leq), r) <= compose(r, inverse(leq))
                     and compose(r, leq) <= compose(leq, r))
        got = not any(v.code in ("c1", "c2") for v in report.violations)
        assert got == ok_oracle, (mask, r)


def test_empty_conditional_relation_vacuously_valid():
    m = KripkeModel(Kind.COND, {"w"}, {("w", "w")}, {})
    assert validate_model(m, FrameClass.FSC).ok
    assert validate_model(m, FrameClass.FSC_R).ok


def test_kind_class_pairing():
    m = get_fixture("M0").model
    report = validate_model(m, FrameClass.FSM)
    assert not report.ok and report.violations[0].code == "kind-mismatch"


def test_validation_flags_bad_preorder_and_heredity():
    m = KripkeModel(Kind.PROP, {"a", "b", "c"},
                    {("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")},
                    val_pos={0: {"a"}})
    report = validate_model(m, FrameClass.P)
    codes = {v.code for v in report.violations}
    assert "not-transitive" in codes
    assert "heredity" in codes
    closed = close_valuations(m)
    assert closed.val(0, "+") == {"a", "b", "c"}
    assert not any(v.code == "heredity"
                   for v in validate_model(closed, FrameClass.P).violations)


def test_structural_errors():
    with pytest.raises(StructuralError):
        KripkeModel(Kind.PROP, set(), set())
    with pytest.raises(StructuralError):
        KripkeModel(Kind.PROP, {"w"}, {("w", "v")})
    with pytest.raises(StructuralError):
        KripkeModel(Kind.PROP, {"w"}, {("w", "w")}, val_pos={0: {"v"}})
    with pytest.raises(StructuralError):
        KripkeModel(Kind.COND, {"w"}, {("w", "w")},
                    {BiSet(frozenset({"v"}), frozenset()): {("w", "w")}})


def test_model_file_roundtrip_all_fixtures():
    for name in FIXTURE_NAMES:
        pm = get_fixture(name)
        text = serialize_pointed(pm)
        m2, point = load_model(text)
        assert point == pm.point
        assert serialize_model(m2, point) == text
        assert m2.kind is pm.model.kind
        assert m2.worlds == pm.model.worlds
        assert m2.leq == pm.model.leq
        assert m2.val_pos == pm.model.val_pos
        assert m2.val_neg == pm.model.val_neg
        assert m2.access == pm.model.access


def test_model_file_implied_reflexivity_and_comments():
    text = """# chain model
kind prop
world w
world v
leq w v
val+ p0 v      # hereditary upward
"""
    m, point = load_model(text)
    assert point is None
    assert ("w", "w") in m.leq and ("v", "v") in m.leq
    assert validate_model(m, FrameClass.P).ok


def test_model_file_does_not_imply_transitivity():
    text = "kind prop\nworld a\nworld b\nworld c\nleq a b\nleq b c\n"
    m, _ = load_model(text)
    report = validate_model(m, FrameClass.P)
    assert any(v.code == "not-transitive" for v in report.violations)


def test_cond_r_line_with_empty_sides():
    text = "kind cond\nworld w\nr w /  ;  / w\n"
    m, _ = load_model(text)
    assert m.access == {bi((), ()): frozenset({("w", "w")})}
