"""Acceptance criteria 1-8.

Each test prints one ``PASS``/``FAIL criterion N`` line (shown even under
output capture) and then fails the test if the criterion did not hold
within its time budget.
"""

import itertools
import time
from contextlib import contextmanager

from consensual import automata as fa
from consensual.alphabet import make_symbol, match_all, match_symbol
from consensual.cli import EXIT_OK, main
from consensual.comlip import build_W
from consensual.congruence import SlotSet, fill_lang, scaffold_lang
from consensual.decomposed import dot_product, join, unmatchable
from consensual.expr import ComLipSpec, ConcatExpr, UnionExpr, union_of
from consensual.oracle import expr_enumerate, expr_member
from consensual.recognizer import Recognizer, brute_force_enumerate, brute_force_witnesses

import test_properties as props
from bases import (
    AB,
    ABC,
    AB_PLUS,
    ABB_PLUS,
    EXPR_L1_OR_L2,
    EXPR_L1_THEN_L2,
    FIXTURES,
    abc_base,
    base_l1,
    base_l2,
    compiled_fixture,
    naive_base,
)

ALL_FIXTURES = sorted(p.stem for p in FIXTURES.glob("*.json"))


@contextmanager
def criterion(capsys, number, title, limit):
    """Time the body and report PASS only if it succeeded within ``limit`` seconds."""
    start = time.perf_counter()
    error = None
    try:
        yield
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    status = "PASS" if ok else "FAIL"
    detail = "" if error is None else f" ({str(error).splitlines()[0] if str(error) else 'assertion'})"
    with capsys.disabled():
        print(f"\n{status} criterion {number}: {title} [{elapsed:.1f}s, limit {limit:.0f}s]{detail}")
    if error is not None:
        raise error
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s (limit {limit}s)"


def test_criterion_1_match_table(capsys):
    with criterion(capsys, 1, "match table and the aabbcc witness", 1):
        for i in range(3):
            a, ad = make_symbol(i), make_symbol(i, True)
            assert match_symbol(a, ad) == a
            assert match_symbol(ad, a) == a
            assert match_symbol(ad, ad) == ad
            assert match_symbol(a, a) is None
        assert match_symbol(make_symbol(0), make_symbol(1, True)) is None
        rec = Recognizer(abc_base())
        x = ABC.parse("aabbcc")
        w = rec.witness(x)
        assert w is not None and w.verify(abc_base(), x)
        assert set(w.words) == {ABC.parse(".aa.bb.cc"), ABC.parse("a.ab.bc.c")}


SLOTS_ROWS = [
    ("aaaaaabbbbbb", [".aa.aaaa.bb.bbbb", "a.aa.a.a.ab.bb.b.b.b"]),
    ("aaaaaaaaabbbbbbbb", [".aa.aaaaaaa.bb.bbbbbb", "a.aa.a.a.a.a.a.ab.bb.b.b.b.b.b"]),
    ("ababababaaabb", [".a.bab.a.babaaabb", "ab.a.bab.a.b.a.a.a.b.b"]),
]


def test_criterion_2_slots_example(capsys):
    with criterion(capsys, 2, "slots example m=6 R={1,2}", 60):
        s = SlotSet(6, frozenset({1, 2}))
        base = fa.union(scaffold_lang(AB, s), fill_lang(AB, s))
        rec = Recognizer(base)
        for text, rows in SLOTS_ROWS:
            x = AB.parse(text)
            assert rec.member(x), text
            w = rec.witness(x)
            assert w.verify(base, x)
            words = [AB.parse(r) for r in rows]
            assert all(base.accepts(u) for u in words), rows
            assert match_all(words) == x, rows
        # the first row pair is also found by the exhaustive witness search
        x = AB.parse(SLOTS_ROWS[0][0])
        want = tuple(sorted(AB.parse(r) for r in SLOTS_ROWS[0][1]))
        assert want in {w.words for w in brute_force_witnesses(base, x)}
        assert rec.enumerate(8) == brute_force_enumerate(base, 8)


def test_criterion_3_join(capsys):
    with criterion(capsys, 3, "join of the L', L'' bases equals L' u L'' up to length 12", 300):
        b1, b2 = base_l1(), base_l2()
        joined = join(b1, b2, bound=9)
        for sc in (b1.scaffold, b2.scaffold):
            assert unmatchable(sc, sc)
        assert unmatchable(b1.scaffold, b2.scaffold)
        assert unmatchable(b1.scaffold, b2.fill) and unmatchable(b2.scaffold, b1.fill)
        assert unmatchable(joined.scaffold, joined.scaffold)
        got = joined.recognizer().enumerate(12)
        assert got == expr_enumerate(EXPR_L1_OR_L2, AB, 12)
        assert AB.parse("aaabbb") in got and AB.parse("aaabbbbbb") in got


CONCAT_ROWS = ["a.aab.bb.aaa.bbb.bbb", ".aa.a.bb.b.a.a.a.b.b.b.b.b.b", ".a.a.a.b.b.ba.a.ab.b.bb.b.b"]


def test_criterion_4_dot_product(capsys):
    with criterion(capsys, 4, "dot product gives L'.L'' (a3b3a3b6 member)", 300):
        prod = dot_product(base_l1(), base_l2(), bound=9, assume_concatenable=True)
        rec = prod.recognizer()
        x = AB.parse("aaabbbaaabbbbbb")
        assert rec.member(x)
        assert rec.witness(x).verify(prod.base, x)
        rows = [AB.parse(r) for r in CONCAT_ROWS]
        assert all(prod.base.accepts(u) for u in rows)
        assert match_all(rows) == x
        assert expr_member(x, EXPR_L1_THEN_L2, AB)
        assert rec.enumerate(12) == expr_enumerate(EXPR_L1_THEN_L2, AB, 12)


def test_criterion_5_cross_matching(capsys):
    with criterion(capsys, 5, "ababb cross-matches naively but follows the oracle when compiled", 60):
        x = AB.parse("ababb")
        naive = fa.union(naive_base(AB, "ab"), naive_base(AB, "abb"))
        assert Recognizer(naive).member(x)
        expr = union_of(AB_PLUS, ABB_PLUS)
        _, compiled = compiled_fixture("pair_union")
        rec = compiled.base.recognizer()
        assert rec.member(x) == expr_member(x, expr, AB)
        assert rec.enumerate(9) == expr_enumerate(expr, AB, 9)


def test_criterion_6_fixture_battery(capsys):
    with criterion(capsys, 6, f"verify at max_len 10 on {len(ALL_FIXTURES) + 1} fixture runs", 600):
        assert len(ALL_FIXTURES) >= 6
        assert build_W(ComLipSpec((0, 0), ((2, 4),)), 6) == [(0, 0), (2, 4), (4, 8)]
        runs = [[str(FIXTURES / f"{n}.json")] for n in ALL_FIXTURES]
        runs.append([str(FIXTURES / "even_abb.json"), "--no-doubling", "--module", "6"])
        failed = []
        for extra in runs:
            code = main(["verify", "--spec", *extra, "--max-len", "10"])
            out = capsys.readouterr().out
            if code != EXIT_OK:
                failed.append((extra, out))
        assert not failed, failed


def _concat_free(expr):
    if isinstance(expr, ConcatExpr):
        return False
    if isinstance(expr, UnionExpr):
        return all(_concat_free(c) for c in expr.children)
    return True


def test_criterion_7_commutativity(capsys):
    # concatenations of commutative languages need not be commutative, so only
    # leaves and unions of leaves are expected to be permutation closed
    with criterion(capsys, 7, "compiled COM-LIP languages are permutation closed up to length 8", 300):
        checked = 0
        for name in ALL_FIXTURES:
            alphabet, compiled = compiled_fixture(name)
            if not _concat_free(compiled.expr):
                continue
            checked += 1
            members = set(compiled.base.recognizer().enumerate(8))
            for x in members:
                for y in set(itertools.permutations(x)):
                    assert y in members, (name, alphabet.format(x), alphabet.format(y))
        assert checked >= 6


def test_criterion_8_property_suites(capsys):
    with criterion(capsys, 8, "match laws, undot consistency, shiftability, unmatchability, one scaffold word", 120):
        props.check_match_table_laws(ABC)
        props.check_undot_consistency(AB, 4)
        props.check_fills_shiftable()
        props.check_scaffolds_self_unmatchable()
        props.check_one_scaffold_word_per_witness(8)
