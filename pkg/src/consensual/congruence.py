"""Slot blocks, scaffold and fill languages, and letter-by-letter appending.

A slot set ``(m, R)`` fixes where dotted letters may sit inside the
projection of a word on one letter: the projection is cut into blocks of
length ``m`` whose dotted positions are 1 and ``r + 1`` for some ``r`` in
``R``.  Bases built on disjoint slot sets of one module cannot match each
other's words, which is what makes their union and concatenation safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence

from . import automata as fa
from .alphabet import Alphabet, DottedWord, ParikhVector, make_symbol, switch
from .automata import FiniteAutomaton


class SlotSetError(ValueError):
    pass


@dataclass(frozen=True)
class SlotSet:
    """Even module ``m >= 4`` and a nonempty set of slots in ``1 .. m/2 - 1``."""

    module: int
    slots: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "slots", frozenset(self.slots))
        m = self.module
        if not isinstance(m, int) or m < 4 or m % 2:
            raise SlotSetError(f"module must be an even integer >= 4, got {m!r}")
        if not self.slots:
            raise SlotSetError("slot set must be nonempty")
        for r in self.slots:
            if not isinstance(r, int) or not 1 <= r <= m // 2 - 1:
                raise SlotSetError(f"slot {r!r} outside 1..{m // 2 - 1} for module {m}")

    @classmethod
    def single(cls, module: int, slot: int) -> "SlotSet":
        return cls(module, frozenset([slot]))

    def __str__(self) -> str:
        return f"m={self.module};R={','.join(str(r) for r in sorted(self.slots))}"

    @classmethod
    def parse(cls, text: str) -> "SlotSet":
        """Inverse of ``str``: ``"m=6;R=1,2"``."""
        try:
            parts = dict(p.split("=", 1) for p in text.replace(" ", "").split(";"))
            module = int(parts["m"])
            slots = frozenset(int(r) for r in parts["R"].split(","))
        except (KeyError, ValueError) as exc:
            raise SlotSetError(f"bad slot set {text!r}") from exc
        if set(parts) != {"m", "R"}:
            raise SlotSetError(f"bad slot set {text!r}")
        return cls(module, slots)

    def disjoint(self, other: "SlotSet") -> bool:
        return self.module == other.module and self.slots.isdisjoint(other.slots)

    def merge(self, other: "SlotSet") -> "SlotSet":
        if self.module != other.module:
            raise SlotSetError(f"modules differ: {self.module} vs {other.module}")
        return SlotSet(self.module, self.slots | other.slots)


def slot_block(letter: int, module: int, slot: int) -> DottedWord:
    """``.a a^(r-1) .a a^(m-r-1)``: the block of length ``m`` for slot ``r``."""
    SlotSet.single(module, slot)
    a, da = make_symbol(letter), make_symbol(letter, True)
    return (da,) + (a,) * (slot - 1) + (da,) + (a,) * (module - slot - 1)


def slot_blocks(letter: int, slots: SlotSet) -> List[DottedWord]:
    return [slot_block(letter, slots.module, r) for r in sorted(slots.slots)]


def _per_letter_scaffold(alphabet: Alphabet, letter: int, slots: SlotSet) -> FiniteAutomaton:
    blocks = fa.from_words(alphabet, slot_blocks(letter, slots) + [(make_symbol(letter),)])
    return fa.minimize(fa.star(blocks))


def _per_letter_fill(alphabet: Alphabet, letter: int, slots: SlotSet) -> FiniteAutomaton:
    words = [switch(b) for b in slot_blocks(letter, slots)] + [(make_symbol(letter, True),)]
    return fa.minimize(fa.star(fa.from_words(alphabet, words)))


def scaffold_lang(alphabet: Alphabet, slots: SlotSet) -> FiniteAutomaton:
    """Words whose projection on every letter lies in ``(blocks | a)*``."""
    per_letter = [_per_letter_scaffold(alphabet, i, slots) for i in range(len(alphabet))]
    return fa.minimize(fa.letter_shuffle(alphabet, per_letter))


def fill_lang(alphabet: Alphabet, slots: SlotSet) -> FiniteAutomaton:
    """Switched scaffold words, minus the fully dotted ones."""
    per_letter = [_per_letter_fill(alphabet, i, slots) for i in range(len(alphabet))]
    shuffled = fa.letter_shuffle(alphabet, per_letter)
    return fa.minimize(fa.difference(shuffled, fa.dotted_star(alphabet)))


def block_star(alphabet: Alphabet, letter: int, slots: SlotSet) -> FiniteAutomaton:
    """``(R_m(a))*`` for one letter."""
    return fa.minimize(fa.star(fa.from_words(alphabet, slot_blocks(letter, slots))))


# ---------------------------------------------------------------------------
# appending


def append_letter(base: FiniteAutomaton, letter: int, count: int) -> FiniteAutomaton:
    """``base <| {a^count}``: insert ``count`` copies of ``a`` anywhere after
    the last ``a`` or dotted ``a`` of each base word (anywhere at all when the
    word has none)."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return base
    factors = fa.factor_at_last(base, letter)
    dfa = factors.dfa
    if not dfa.initial:
        return dfa
    a = make_symbol(letter)
    marks = factors.letter_symbols

    # state (q, phase, inserted); phase 1 starts right after the head
    def succ(st):
        q, phase, c = st
        row = dfa.delta[q]
        if phase == 0:
            for s, ds in row.items():
                (d,) = ds
                yield s, (d, 0, 0)
                if s in marks:
                    yield s, (d, 1, 0)
        else:
            for s, ds in row.items():
                if s not in marks:
                    (d,) = ds
                    yield s, (d, 1, c)
            if c < count:
                yield a, (q, 1, c + 1)

    start = dfa.start
    built = fa.explore(
        base.alphabet,
        [(start, 0, 0), (start, 1, 0)],
        succ,
        lambda st: st[1] == 1 and st[2] == count and st[0] in dfa.accepting,
    )
    return fa.minimize(built)


def append_vector(base: FiniteAutomaton, vector: ParikhVector, order: Sequence[int] | None = None) -> FiniteAutomaton:
    """Letter-by-letter appending of ``com(word with Parikh vector v)``."""
    if len(vector) != len(base.alphabet):
        raise ValueError("vector length differs from the alphabet size")
    letters = range(len(vector)) if order is None else order
    out = base
    for i in letters:
        out = append_letter(out, i, vector[i])
    return out


def append(base: FiniteAutomaton, vectors: Iterable[ParikhVector], order: Sequence[int] | None = None) -> FiniteAutomaton:
    """``base <| F`` for the finite commutative ``F`` given by Parikh vectors.

    Each vector is appended on its own and the results are united, so the
    letter counts of one vector stay together.
    """
    parts = [append_vector(base, tuple(v), order) for v in sorted(set(map(tuple, vectors)))]
    if not parts:
        return fa.empty(base.alphabet)
    return fa.minimize(fa.union(*parts))


def append_shuffle(
    alphabet: Alphabet, per_letter: Sequence[FiniteAutomaton], vectors: Iterable[ParikhVector]
) -> FiniteAutomaton:
    """``(L_1 ⧢ ... ⧢ L_k) <| F`` where ``L_i`` only uses letter ``i``.

    Appending after the last occurrence of each letter commutes with the
    letter shuffle, so one product automaton suffices: every component
    tracks its own language and how many copies it has appended so far,
    and a word is accepted when the counts form a vector of ``F``.  Gives
    the same language as ``append`` on the shuffled base, much faster.
    """
    k = len(alphabet)
    if len(per_letter) != k:
        raise ValueError("need one automaton per letter")
    targets = {tuple(v) for v in vectors}
    if any(len(v) != k for v in targets):
        raise ValueError("vector length differs from the alphabet size")
    if not targets or any(not a.initial for a in per_letter):
        return fa.empty(alphabet)
    dfas = [fa.minimize(a) for a in per_letter]
    caps = [max(v[i] for v in targets) for i in range(k)]

    def succ(st):
        qs, cs = st
        for i in range(k):
            q, c = qs[i], cs[i]
            row = dfas[i].delta[q]
            for sym in (make_symbol(i), make_symbol(i, True)):
                if c == 0 and sym in row:
                    for d in row[sym]:
                        yield sym, (qs[:i] + (d,) + qs[i + 1 :], cs)
            if q in dfas[i].accepting and c < caps[i]:
                yield make_symbol(i), (qs, cs[:i] + (c + 1,) + cs[i + 1 :])

    def accepting(st):
        qs, cs = st
        return cs in targets and all(q in dfas[i].accepting for i, q in enumerate(qs))

    start = (tuple(d.start for d in dfas), (0,) * k)
    return fa.minimize(fa.explore(alphabet, [start], succ, accepting))


def append_word_brute(word: Sequence[int], letter: int, count: int) -> set:
    """All results of appending ``a^count`` to one word (reference for tests)."""
    marks = {make_symbol(letter), make_symbol(letter, True)}
    cut = 0
    for i, s in enumerate(word):
        if s in marks:
            cut = i + 1
    head, tail = tuple(word[:cut]), tuple(word[cut:])
    a = make_symbol(letter)
    results = {tail}
    for _ in range(count):
        results = {t[:i] + (a,) + t[i:] for t in results for i in range(len(t) + 1)}
    return {head + t for t in results}
