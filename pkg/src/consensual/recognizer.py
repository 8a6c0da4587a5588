"""Membership in the consensual language of a regular base.

The recognizer simulates a multiset of threads over the minimal DFA of the
base.  All threads start together in the initial state; at every input
position exactly one thread reads the undotted letter and every other thread
reads its dotted copy.  A configuration is the sorted tuple of the threads'
states, so threads sitting in the same state are interchangeable.  With ``n``
threads and ``Q`` DFA states there are at most ``C(n + Q - 1, n)``
configurations per position; in practice the dotted moves prune almost all
of them.

Every base word places at least one letter (fully dotted words are rejected
up front), so at most ``|x|`` threads are ever needed.  Each DFA state is
paired with a flag recording whether its thread has placed a letter yet; a
configuration is dropped as soon as its threads that still have to place
outnumber the remaining positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import automata as fa
from .alphabet import (
    Alphabet,
    DottedWord,
    is_strong,
    make_symbol,
    match_all,
)
from .automata import FiniteAutomaton


class BaseError(ValueError):
    """The base violates the recognizer's precondition."""


class WordError(ValueError):
    """The input word is not a word over the undotted alphabet."""


Config = Tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    """Base words whose match is the recognized word."""

    words: Tuple[DottedWord, ...]

    def matched(self) -> Optional[DottedWord]:
        return match_all(self.words)

    def verify(self, base: FiniteAutomaton, x: Sequence[int]) -> bool:
        m = self.matched()
        return (
            len(self.words) >= 1
            and m is not None
            and m == tuple(x)
            and all(base.accepts(w) for w in self.words)
        )

    def format(self, alphabet: Alphabet, x: Sequence[int] | None = None) -> str:
        lines = []
        if x is not None:
            lines.append(alphabet.format_aligned(x))
            lines.append("-" * (2 * len(x)))
        lines.extend(alphabet.format_aligned(w) for w in self.words)
        return "\n".join(lines)


def check_base(base: FiniteAutomaton) -> None:
    """Reject bases that accept a nonempty fully dotted word."""
    bad = fa.intersect(base, fa.dotted_plus(base.alphabet))
    if bad.n_states:
        w = fa.shortest_word(bad)
        raise BaseError(
            f"base accepts the fully dotted word {base.alphabet.format(w)!r}"
        )


def _check_word(alphabet: Alphabet, x: Sequence[int]) -> DottedWord:
    x = tuple(x)
    for s in x:
        alphabet.check_symbol(s)
    if not is_strong(x):
        raise WordError(f"input {alphabet.format(x)!r} contains dotted letters")
    return x


class Recognizer:
    """Precomputed tables for repeated queries against one base."""

    def __init__(self, base: FiniteAutomaton, check: bool = True):
        if check:
            check_base(base)
        self.base = base
        self.alphabet = base.alphabet
        dfa = fa.minimize(base)
        self.dfa = dfa
        self.accepts_empty = bool(dfa.initial) and dfa.start in dfa.accepting
        # extended state 2*q + placed
        k = len(self.alphabet)
        nsym = 2 * k
        n = dfa.n_states
        table = dfa.table()
        ext = [[-1] * nsym for _ in range(2 * n)]
        for q in range(n):
            for placed in (0, 1):
                row = ext[2 * q + placed]
                for s in range(nsym):
                    d = table[q][s]
                    if d >= 0:
                        row[s] = 2 * d + (placed | (0 if s & 1 else 1))
        self.table = ext
        self.final = [bool(e & 1) and (e >> 1) in dfa.accepting for e in range(2 * n)]
        self.start = 2 * dfa.start if dfa.initial else -1
        self.dist = self._distances()

    def _distances(self) -> List[int]:
        big = 1 << 30
        n = len(self.table)
        dist = [0 if self.final[e] else big for e in range(n)]
        preds: List[List[int]] = [[] for _ in range(n)]
        for e, row in enumerate(self.table):
            for d in row:
                if d >= 0:
                    preds[d].append(e)
        frontier = [e for e in range(n) if self.final[e]]
        while frontier:
            nxt = []
            for e in frontier:
                for p in preds[e]:
                    if dist[p] == big:
                        dist[p] = dist[e] + 1
                        nxt.append(p)
            frontier = nxt
        return dist

    # core step

    def _successors(self, config: Config, letter: int, remaining: int):
        """Configurations after reading ``letter``; ``remaining`` counts positions after it."""
        table = self.table
        dist = self.dist
        und = 2 * letter
        dot = und + 1
        moved = [table[e][dot] for e in config]
        missing = [i for i, d in enumerate(moved) if d < 0]
        if len(missing) > 1:
            return
        if missing:
            choices = missing
        else:
            choices = [i for i in range(len(config)) if i == 0 or config[i] != config[i - 1]]
        for i in choices:
            d = table[config[i]][und]
            if d < 0 or dist[d] > remaining:
                continue
            new = moved[:i] + [d] + moved[i + 1 :]
            if any(dist[e] > remaining for j, e in enumerate(new) if j != i):
                continue
            if sum(1 for e in new if not e & 1) > remaining:
                continue
            new.sort()
            yield tuple(new), i

    def _accepting(self, config: Config) -> bool:
        final = self.final
        return all(final[e] for e in config)

    def _layers(self, x: DottedWord, keep_parents: bool, threads: Optional[int] = None):
        n = len(x)
        if self.start < 0 or self.dist[self.start] > n:
            return [], []
        counts = range(1, n + 1) if threads is None else [threads] if 1 <= threads <= n else []
        current: Dict[Config, object] = {(self.start,) * t: None for t in counts}
        parents = []
        for pos, s in enumerate(x):
            remaining = n - pos - 1
            nxt: Dict[Config, object] = {}
            for config in current:
                for new, i in self._successors(config, s >> 1, remaining):
                    if new not in nxt:
                        nxt[new] = (config, config[i]) if keep_parents else None
            if keep_parents:
                parents.append(nxt)
            current = nxt
            if not current:
                break
        return current, parents

    # queries

    def member(self, x: Sequence[int]) -> bool:
        x = _check_word(self.alphabet, x)
        if not x:
            return self.accepts_empty
        last, _ = self._layers(x, keep_parents=False)
        return any(self._accepting(c) for c in last)

    def witness(self, x: Sequence[int], threads: Optional[int] = None) -> Optional[Witness]:
        """One witness, optionally with exactly ``threads`` base words."""
        x = _check_word(self.alphabet, x)
        if not x:
            return Witness(((),)) if self.accepts_empty and threads in (None, 1) else None
        last, parents = self._layers(x, keep_parents=True, threads=threads)
        final = next((c for c in last if self._accepting(c)), None)
        if final is None:
            return None
        # walk back: at each position, which source state placed the letter
        placers = []
        config = final
        for layer in reversed(parents):
            prev, placer = layer[config]
            placers.append(placer)
            config = prev
        placers.reverse()
        threads = [[config[i], []] for i in range(len(config))]
        table = self.table
        for s, placer in zip(x, placers):
            chosen = next(t for t in threads if t[0] == placer)
            for t in threads:
                sym = s if t is chosen else s | 1
                t[0] = table[t[0]][sym]
                t[1].append(sym)
        words = tuple(sorted(tuple(t[1]) for t in threads))
        return Witness(words)

    def enumerate(self, max_len: int) -> List[DottedWord]:
        """Members of length <= max_len, length-lexicographic."""
        out: List[DottedWord] = []
        if self.accepts_empty:
            out.append(())
        if self.start < 0 or max_len <= 0:
            return out
        k = len(self.alphabet)
        starts = [(self.start,) * t for t in range(1, max_len + 1)]
        found: List[DottedWord] = []

        def visit(prefix: List[int], configs: List[Config]):
            depth = len(prefix)
            budget = max_len - depth - 1
            for a in range(k):
                nxt = set()
                for c in configs:
                    for new, _ in self._successors(c, a, budget):
                        nxt.add(new)
                if not nxt:
                    continue
                prefix.append(make_symbol(a))
                if any(self._accepting(c) for c in nxt):
                    found.append(tuple(prefix))
                if budget > 0:
                    visit(prefix, list(nxt))
                prefix.pop()

        visit([], starts)
        found.sort(key=lambda w: (len(w), w))
        return out + found


def consensual_member(base: FiniteAutomaton, x: Sequence[int]) -> bool:
    return Recognizer(base).member(x)


def consensual_witness(base: FiniteAutomaton, x: Sequence[int]) -> Optional[Witness]:
    return Recognizer(base).witness(x)


def consensual_enumerate(base: FiniteAutomaton, max_len: int) -> List[DottedWord]:
    return Recognizer(base).enumerate(max_len)


# ---------------------------------------------------------------------------
# brute-force oracle


def candidate_words(base: FiniteAutomaton, x: Sequence[int]) -> List[DottedWord]:
    """Base words of length ``|x|`` that undot to ``x``."""
    out: List[DottedWord] = []

    def walk(states, pos, acc):
        if pos == len(x):
            if not states.isdisjoint(base.accepting):
                out.append(tuple(acc))
            return
        for s in (x[pos], x[pos] | 1):
            nxt = base.step(states, s)
            if nxt:
                acc.append(s)
                walk(nxt, pos + 1, acc)
                acc.pop()

    walk(base.initial, 0, [])
    return out


def exact_cover_witness(candidates: Sequence[DottedWord], n: int) -> Optional[Tuple[DottedWord, ...]]:
    """Pick candidates whose undotted positions partition ``range(n)``."""
    return next(exact_covers(candidates, n), None)


def exact_covers(candidates: Sequence[DottedWord], n: int) -> Iterator[Tuple[DottedWord, ...]]:
    """Every set of candidates whose undotted positions partition ``range(n)``."""
    placed = []
    for w in candidates:
        mask = 0
        for i, s in enumerate(w):
            if not s & 1:
                mask |= 1 << i
        if mask:
            placed.append((mask, w))
    full = (1 << n) - 1
    by_position: List[List[Tuple[int, DottedWord]]] = [[] for _ in range(n)]
    for mask, w in placed:
        low = (mask & -mask).bit_length() - 1
        by_position[low].append((mask, w))

    chosen: List[DottedWord] = []

    def search(covered: int):
        if covered == full:
            yield tuple(sorted(chosen))
            return
        free = ~covered & full
        pos = (free & -free).bit_length() - 1
        # lower positions are all covered, so the word covering pos has it
        # as its lowest placed position
        for mask, w in by_position[pos]:
            if not mask & covered:
                chosen.append(w)
                yield from search(covered | mask)
                chosen.pop()

    yield from search(0)


def brute_force_witness(base: FiniteAutomaton, x: Sequence[int]) -> Optional[Witness]:
    x = _check_word(base.alphabet, x)
    if not x:
        return Witness(((),)) if base.accepts(()) else None
    words = exact_cover_witness(candidate_words(base, x), len(x))
    return Witness(words) if words is not None else None


def brute_force_witnesses(base: FiniteAutomaton, x: Sequence[int]) -> List[Witness]:
    """All witnesses of ``x`` (each a set of distinct base words)."""
    x = _check_word(base.alphabet, x)
    if not x:
        return [Witness(((),))] if base.accepts(()) else []
    return [Witness(ws) for ws in exact_covers(candidate_words(base, x), len(x))]


def brute_force_member(base: FiniteAutomaton, x: Sequence[int], check: bool = True) -> bool:
    if check:
        check_base(base)
    return brute_force_witness(base, x) is not None


def brute_force_enumerate(base: FiniteAutomaton, max_len: int) -> List[DottedWord]:
    check_base(base)
    k = len(base.alphabet)
    letters = [make_symbol(i) for i in range(k)]
    out = []
    for n in range(max_len + 1):
        for x in product(letters, repeat=n):
            if brute_force_witness(base, x) is not None:
                out.append(x)
    return out
