import itertools

import pytest

from consensual import automata as fa
from consensual.alphabet import match_all, parikh_placed, project, undot
from consensual.comlip import (
    build_D,
    build_W,
    build_X,
    build_Y,
    choose_module,
    compile_expr,
    normalize_even,
)
from consensual.congruence import SlotSet, fill_lang
from consensual.decomposed import check_shiftable
from consensual.expr import ComLipSpec, Leaf, SpecError, concat_of, leaf, leaves, union_of
from consensual.oracle import expr_enumerate, lip_member
from consensual.recognizer import Recognizer

from bases import AB, ABC, AB_PLUS, ABB_PLUS

L2_EVEN = ComLipSpec((0, 0), ((2, 4),))
SLOT2 = SlotSet.single(6, 2)


def union_member(v, specs):
    return any(lip_member(v, s) for s in specs)


@pytest.mark.parametrize(
    "spec",
    [
        ComLipSpec((1, 2), ((2, 4),)),
        ComLipSpec((0, 0), ((1, 2),)),
        ComLipSpec((0, 1), ((1, 1), (0, 3))),
        ComLipSpec((0, 0), ((1, 1),), allow_empty=True),
    ],
    ids=str,
)
def test_normalize_even_preserves_parikh_set(spec):
    variants = normalize_even(spec)
    assert len(variants) == 2 ** len(spec.periods)
    assert all(v.all_even for v in variants)
    for vec in itertools.product(range(21), repeat=2):
        assert union_member(vec, variants) == lip_member(vec, spec), vec


def test_normalize_even_examples():
    got = normalize_even(ComLipSpec((1, 2), ((2, 4),)))
    assert [(v.constant, v.periods) for v in got] == [((1, 2), ((4, 8),)), ((3, 6), ((4, 8),))]
    split = normalize_even(ComLipSpec((0, 0), ((1, 2),)))
    assert [(v.constant, v.periods) for v in split] == [((0, 0), ((2, 4),)), ((1, 2), ((2, 4),))]
    assert normalize_even(L2_EVEN, double=False) == [L2_EVEN]


def test_build_W():
    assert build_W(L2_EVEN, 6) == [(0, 0), (2, 4), (4, 8)]
    spec = ComLipSpec((1, 1), ((2, 0),))
    assert build_W(spec, 4) == [(1, 1), (3, 1)]
    two = ComLipSpec((0, 0), ((2, 0), (0, 2)))
    assert len(build_W(two, 8)) <= 4 ** 2
    with pytest.raises(SpecError):
        build_W(ComLipSpec((0, 0), ((1, 2),)), 6)


def test_build_Y():
    y = build_Y(AB, SLOT2)
    assert y.accepts(())
    assert y.accepts(AB.parse(".aa.aaaa.bb.bbbb"))
    assert y.accepts(AB.parse(".a.ba.ab.baaabbb"))
    assert not y.accepts(AB.parse(".aa.aaa"))
    for w in fa.iter_words(y, 12):
        for letter in (0, 1):
            assert len(project(w, [letter])) % 6 == 0


def test_build_X_counts_one_period_and_is_shiftable():
    x = build_X(L2_EVEN, SLOT2, AB)
    assert fa.includes(fill_lang(AB, SLOT2), x)
    assert check_shiftable(x)
    for w in fa.iter_words(x, 12):
        assert parikh_placed(w, AB) == (2, 4)


def test_build_D_for_even_example():
    d = build_D(L2_EVEN, SLOT2, AB)
    report = d.check()
    assert report.ok and report.fill_check == "exact"
    got = d.recognizer().enumerate(12)
    assert got == expr_enumerate(Leaf(L2_EVEN), AB, 12)
    assert () not in got


def test_build_D_allows_empty_word_on_request():
    spec = ComLipSpec((0, 0), ((2, 2),), allow_empty=True)
    d = build_D(spec, SlotSet.single(4, 1), AB)
    assert d.recognizer().member(())


def test_build_D_rejects_odd_periods_and_wide_slot_sets():
    with pytest.raises(SpecError):
        build_D(ComLipSpec((0, 0), ((1, 2),)), SLOT2, AB)
    with pytest.raises(SpecError):
        build_D(L2_EVEN, SlotSet(6, frozenset({1, 2})), AB)
    with pytest.raises(SpecError):
        build_D(L2_EVEN, SLOT2, ABC)


def _fill_groups(spec, slots, max_len):
    """X words of length <= max_len grouped by their undotted form."""
    groups = {}
    for w in fa.iter_words(build_X(spec, slots, AB), max_len):
        groups.setdefault(undot(w), []).append(w)
    return groups


TWO_PERIODS = ComLipSpec((0, 0), ((2, 0), (0, 2)))


def test_matches_of_fill_words_sum_periods():
    periods = sorted(TWO_PERIODS.periods)
    groups = _fill_groups(TWO_PERIODS, SlotSet.single(4, 1), 8)
    seen = 0
    for ws in groups.values():
        for n in (1, 2, 3):
            for combo in itertools.combinations(ws, n):
                m = match_all(combo)
                if m is None:
                    continue
                seen += 1
                placed = parikh_placed(m, AB)
                sums = {
                    tuple(map(sum, zip(*ps)))
                    for ps in itertools.combinations_with_replacement(periods, n)
                }
                assert placed in sums, (combo, placed)
    assert seen > 1000


def test_fill_words_reach_small_targets():
    groups = _fill_groups(TWO_PERIODS, SlotSet.single(4, 1), 8)
    for target in [(2, 2), (4, 0), (0, 4)]:
        n = sum(target) // 2
        assert any(
            (m := match_all(c)) is not None and parikh_placed(m, AB) == target
            for ws in groups.values()
            for c in itertools.combinations(ws, n)
        ), target


def test_choose_module():
    assert choose_module(1) == 4
    assert choose_module(4) == 10
    assert choose_module(2, 8) == 8
    with pytest.raises(SpecError):
        choose_module(3, 6)
    with pytest.raises(SpecError):
        choose_module(1, 7)


def test_compile_pair_union_agrees_with_oracle():
    expr = union_of(AB_PLUS, ABB_PLUS)
    compiled = compile_expr(expr, AB)
    assert compiled.module == 10
    slots = [s for _, s in compiled.assignment]
    assert len({min(s.slots) for s in slots}) == len(slots)
    report = compiled.base.check()
    assert report.ok and report.fill_check == "exact"
    rec = compiled.base.recognizer()
    assert rec.enumerate(8) == expr_enumerate(expr, AB, 8)
    assert not rec.member(AB.parse("ababb"))


def test_single_leaf_compiles_to_build_D():
    compiled = compile_expr(Leaf(L2_EVEN), AB, double=False, module=6)
    direct = build_D(L2_EVEN, SlotSet.single(6, 1), AB)
    assert fa.equivalent(compiled.base.scaffold, direct.scaffold)
    assert fa.equivalent(compiled.base.fill, direct.fill)


def test_concatenation_with_three_children_folds_left():
    a = leaf((1, 0), (2, 0))
    b = leaf((0, 1), (0, 2))
    expr = concat_of(a, b, a)
    compiled = compile_expr(expr, AB, double=False)
    assert compiled.base.recognizer().enumerate(7) == expr_enumerate(expr, AB, 7)


def test_slot_override_skips_checks():
    expr = union_of(leaf((0, 0), (2, 0)), leaf((0, 0), (0, 2)))
    bad = compile_expr(expr, AB, double=False, slot_override=[1, 1])
    assert bad.base.note == "unchecked"
    assert bad.base.recognizer().member(AB.parse("aaaabb"))
    with pytest.raises(SpecError):
        compile_expr(expr, AB, slot_override=[1])


def test_leaf_count_after_normalization():
    expr = union_of(AB_PLUS, ABB_PLUS)
    compiled = compile_expr(expr, AB)
    assert len(compiled.assignment) == 4
    assert len(list(leaves(expr))) == 2


def test_compiled_language_is_commutative():
    expr = leaf((1, 0), (1, 2))
    rec = compile_expr(expr, AB).base.recognizer()
    for x in rec.enumerate(7):
        for y in set(itertools.permutations(x)):
            assert rec.member(y)


def test_recognizer_runs_on_three_letters():
    expr = leaf((0, 0, 0), (1, 1, 1))
    rec = Recognizer(compile_expr(expr, ABC).base.base)
    assert rec.member(ABC.parse("cabbca"))
    assert not rec.member(ABC.parse("cabbc"))
