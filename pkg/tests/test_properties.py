"""Algebraic and structural properties, exhaustive where cheap and randomized otherwise.

The ``check_*`` helpers are also run by the acceptance suite.
"""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from consensual import automata as fa
from consensual.alphabet import match_all, match_symbol, match_word, switch, undot, words_over
from consensual.congruence import append, append_word_brute
from consensual.decomposed import check_shiftable, unmatchable
from consensual.expr import ComLipSpec
from consensual.oracle import lip_member, lip_member_naive

from bases import AB, ABC, base_l1, base_l2, compiled_fixture

PROPERTY_FIXTURES = ["ab_plus", "pair_union", "small_concat", "squares_union", "even_abb", "two_periods"]


def _m(x, y):
    if x is None or y is None:
        return None
    return match_symbol(x, y)


def check_match_table_laws(alphabet=ABC):
    """Symmetry and associativity of the symbol match over every triple."""
    symbols = list(alphabet.symbols)
    for x, y in itertools.product(symbols, repeat=2):
        assert _m(x, y) == _m(y, x)
    for x, y, z in itertools.product(symbols, repeat=3):
        assert _m(_m(x, y), z) == _m(x, _m(y, z)), (x, y, z)


def check_undot_consistency(alphabet=AB, max_len=4):
    """A defined match has the undotted form of both operands."""
    ws = list(words_over(alphabet, max_len, dotted=True))
    for u, v in itertools.product(ws, repeat=2):
        if len(u) != len(v):
            continue
        m = match_word(u, v)
        if m is not None:
            assert undot(u) == undot(v) == undot(m)
            assert sum(not s & 1 for s in m) == sum(not s & 1 for s in u) + sum(not s & 1 for s in v)


def _compiled_bases():
    for name in PROPERTY_FIXTURES:
        yield compiled_fixture(name)[1].base


def _all_bases():
    yield base_l1()
    yield base_l2()
    yield from _compiled_bases()


def check_fills_shiftable():
    """Compiled fills are closed under dotted padding (hand-built module-3 fills are not)."""
    for base in _compiled_bases():
        assert check_shiftable(base.fill)


def check_scaffolds_self_unmatchable():
    for base in _all_bases():
        assert unmatchable(base.scaffold, base.scaffold)


def check_one_scaffold_word_per_witness(max_len=8):
    for name in PROPERTY_FIXTURES:
        base = compiled_fixture(name)[1].base
        rec = base.recognizer()
        for x in rec.enumerate(max_len):
            w = rec.witness(x)
            assert w.verify(base.base, x)
            assert sum(base.scaffold.accepts(u) for u in w.words) == 1, (name, x)


def test_match_table_laws():
    check_match_table_laws()


def test_undot_consistency():
    check_undot_consistency()


def test_fills_are_shiftable():
    check_fills_shiftable()


def test_scaffolds_are_self_unmatchable():
    check_scaffolds_self_unmatchable()


def test_one_scaffold_word_per_witness():
    check_one_scaffold_word_per_witness()


# ---------------------------------------------------------------------------
# randomized

symbols_ab = st.integers(min_value=0, max_value=3)


def same_length_words(n):
    return st.integers(min_value=0, max_value=7).flatmap(
        lambda k: st.lists(st.lists(symbols_ab, min_size=k, max_size=k).map(tuple), min_size=n, max_size=n)
    )


@given(same_length_words(3))
def test_word_match_is_associative(ws):
    u, v, w = ws
    left = match_word(match_word(u, v), w) if match_word(u, v) is not None else None
    right = match_word(u, match_word(v, w)) if match_word(v, w) is not None else None
    assert left == right
    assert match_all(ws) == left


@given(same_length_words(2))
def test_word_match_is_symmetric(ws):
    u, v = ws
    assert match_word(u, v) == match_word(v, u)


@given(st.lists(symbols_ab, max_size=10).map(tuple))
def test_switch_is_an_involution(w):
    assert switch(switch(w)) == w
    assert undot(switch(w)) == undot(w)


@given(st.lists(symbols_ab, max_size=8).map(tuple))
def test_switch_match(w):
    m = match_word(w, switch(w))
    assert m == undot(w)


small_langs = st.lists(
    st.lists(symbols_ab, min_size=1, max_size=3).map(tuple), min_size=1, max_size=3
).map(lambda ws: fa.star(fa.from_words(AB, ws)))


@settings(max_examples=30, deadline=None)
@given(small_langs, small_langs)
def test_match_product_against_brute_force(a, b):
    got = set(fa.enumerate_words(fa.match_product(a, b), 4))
    wa, wb = fa.enumerate_words(a, 4), fa.enumerate_words(b, 4)
    want = {m for u in wa for v in wb if (m := match_word(u, v)) is not None}
    assert got == want


@settings(max_examples=30, deadline=None)
@given(small_langs, small_langs)
def test_shuffle_against_brute_force(a, b):
    got = set(fa.enumerate_words(fa.shuffle(a, b), 5))
    want = set()
    for u in fa.enumerate_words(a, 5):
        for v in fa.enumerate_words(b, 5 - len(u)):
            n = len(u) + len(v)
            for pos in itertools.combinations(range(n), len(u)):
                out, iu, iv = [], iter(u), iter(v)
                for i in range(n):
                    out.append(next(iu) if i in pos else next(iv))
                want.add(tuple(out))
    assert got == want


@settings(max_examples=30, deadline=None)
@given(small_langs, st.sampled_from([0, 1]))
def test_factor_at_last_reassembles(a, letter):
    f = fa.factor_at_last(a, letter)
    glued = fa.union(*[fa.concat(h, t) for h, t in f.pairs()]) if f.pairs() else fa.empty(AB)
    assert fa.equivalent(glued, a)
    for w in fa.enumerate_words(a, 6):
        head, tail = f.split(w)
        assert head + tail == w
        assert all(s >> 1 != letter for s in tail)


@settings(max_examples=25, deadline=None)
@given(small_langs, st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_append_against_brute_force(a, vector):
    got = set(fa.enumerate_words(append(a, [vector]), 7))
    want = set()
    for w in fa.enumerate_words(a, 7):
        results = {w}
        for letter, count in enumerate(vector):
            results = {r for u in results for r in append_word_brute(u, letter, count)}
        want |= {r for r in results if len(r) <= 7}
    assert got == want


specs = st.builds(
    ComLipSpec,
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), min_size=1, max_size=3
    ).map(tuple),
)


@settings(max_examples=100, deadline=None)
@given(specs, st.tuples(st.integers(0, 12), st.integers(0, 12)))
def test_lip_member_against_naive_search(spec, v):
    assert lip_member(v, spec) == lip_member_naive(v, spec, limit=12)
