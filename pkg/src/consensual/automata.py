"""Finite automata over the double alphabet.

Automata are epsilon-free and possibly nondeterministic: every state maps
symbols to a frozenset of successor states, and there may be several
initial states.  States are the integers ``0 .. n-1``.  Every operation
returns a trimmed automaton (no unreachable and no dead states) with states
numbered in breadth-first order, so two runs of the same construction print
identically.

Deterministic automata are partial: a missing transition means rejection.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .alphabet import (
    Alphabet,
    AlphabetError,
    DottedWord,
    Symbol,
    letter_of,
    make_symbol,
    match_symbol,
)

Edges = Dict[Symbol, FrozenSet[int]]


class AutomatonError(ValueError):
    pass


class FiniteAutomaton:
    """An epsilon-free NFA; treat instances as immutable."""

    __slots__ = ("alphabet", "delta", "initial", "accepting", "_deterministic")

    def __init__(
        self,
        alphabet: Alphabet,
        delta: Sequence[Edges],
        initial: Iterable[int],
        accepting: Iterable[int],
    ):
        self.alphabet = alphabet
        self.delta: Tuple[Edges, ...] = tuple(delta)
        self.initial: FrozenSet[int] = frozenset(initial)
        self.accepting: FrozenSet[int] = frozenset(accepting)
        n = len(self.delta)
        nsym = 2 * len(alphabet)
        for q, edges in enumerate(self.delta):
            for s, dsts in edges.items():
                if not 0 <= s < nsym:
                    raise AutomatonError(f"state {q}: symbol {s} outside the double alphabet")
                for d in dsts:
                    if not 0 <= d < n:
                        raise AutomatonError(f"state {q}: transition to undeclared state {d}")
        for q in self.initial | self.accepting:
            if not 0 <= q < n:
                raise AutomatonError(f"undeclared state {q}")
        self._deterministic: Optional[bool] = None

    def __len__(self) -> int:
        return len(self.delta)

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def n_transitions(self) -> int:
        return sum(len(d) for edges in self.delta for d in edges.values())

    @property
    def is_deterministic(self) -> bool:
        if self._deterministic is None:
            self._deterministic = len(self.initial) <= 1 and all(
                len(d) == 1 for edges in self.delta for d in edges.values()
            )
        return self._deterministic

    def __repr__(self) -> str:
        kind = "DFA" if self.is_deterministic else "NFA"
        return f"<{kind} over {''.join(self.alphabet.letters)}: {self.n_states} states, {self.n_transitions} transitions>"

    def step(self, states: Iterable[int], symbol: Symbol) -> FrozenSet[int]:
        out = set()
        for q in states:
            d = self.delta[q].get(symbol)
            if d:
                out |= d
        return frozenset(out)

    def accepts(self, word: Sequence[Symbol]) -> bool:
        current = self.initial
        for s in word:
            current = self.step(current, s)
            if not current:
                return False
        return not current.isdisjoint(self.accepting)

    def __contains__(self, word) -> bool:
        return self.accepts(word)

    # DFA helpers

    @property
    def start(self) -> Optional[int]:
        """The initial state of a deterministic automaton (None when empty)."""
        if not self.initial:
            return None
        if len(self.initial) > 1:
            raise AutomatonError("automaton has several initial states")
        return next(iter(self.initial))

    def table(self) -> List[List[int]]:
        """Dense transition table of a DFA; -1 marks a missing transition."""
        if not self.is_deterministic:
            raise AutomatonError("table() needs a deterministic automaton")
        nsym = 2 * len(self.alphabet)
        out = []
        for edges in self.delta:
            row = [-1] * nsym
            for s, d in edges.items():
                (row[s],) = d
            out.append(row)
        return out


# ---------------------------------------------------------------------------
# building blocks


def check_same_alphabet(*automata: FiniteAutomaton) -> Alphabet:
    alphabet = automata[0].alphabet
    for a in automata[1:]:
        if a.alphabet != alphabet:
            raise AutomatonError(
                f"alphabet mismatch: {alphabet.letters!r} vs {a.alphabet.letters!r}"
            )
    return alphabet


def explore(
    alphabet: Alphabet,
    initial: Iterable,
    successors: Callable[[object], Iterable[Tuple[Symbol, object]]],
    is_accepting: Callable[[object], bool],
) -> FiniteAutomaton:
    """Explore an implicitly given automaton from ``initial`` and trim it.

    ``successors(state)`` yields ``(symbol, next_state)`` pairs; states can be
    any hashable values.
    """
    index: Dict[object, int] = {}
    order: List[object] = []
    queue = deque()
    for st in initial:
        if st not in index:
            index[st] = len(order)
            order.append(st)
            queue.append(st)
    edges: List[Dict[Symbol, set]] = [dict() for _ in order]
    while queue:
        st = queue.popleft()
        src = index[st]
        out = edges[src]
        for s, nxt in successors(st):
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(order)
                order.append(nxt)
                edges.append(dict())
                queue.append(nxt)
            out.setdefault(s, set()).add(j)
    init = [index[st] for st in initial]
    accepting = [i for i, st in enumerate(order) if is_accepting(st)]
    return _trim_raw(alphabet, edges, init, accepting)


def _trim_raw(alphabet, edges, initial, accepting) -> FiniteAutomaton:
    n = len(edges)
    initial = sorted(set(initial))
    # backward reachability from accepting states
    preds: List[List[int]] = [[] for _ in range(n)]
    for q, out in enumerate(edges):
        for dsts in out.values():
            for d in dsts:
                preds[d].append(q)
    alive = [False] * n
    stack = list(set(accepting))
    for q in stack:
        alive[q] = True
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if not alive[p]:
                alive[p] = True
                stack.append(p)
    # forward BFS over live states, renumbering in visit order
    new_id: Dict[int, int] = {}
    order: List[int] = []
    queue = deque()
    for q in initial:
        if alive[q] and q not in new_id:
            new_id[q] = len(order)
            order.append(q)
            queue.append(q)
    while queue:
        q = queue.popleft()
        out = edges[q]
        for s in sorted(out):
            for d in sorted(out[s]):
                if alive[d] and d not in new_id:
                    new_id[d] = len(order)
                    order.append(d)
                    queue.append(d)
    delta = []
    for q in order:
        row = {}
        out = edges[q]
        for s in sorted(out):
            dsts = frozenset(new_id[d] for d in out[s] if d in new_id)
            if dsts:
                row[s] = dsts
        delta.append(row)
    acc_set = set(accepting)
    return FiniteAutomaton(
        alphabet,
        delta,
        [new_id[q] for q in initial if q in new_id],
        [new_id[q] for q in order if q in acc_set],
    )


def trim(a: FiniteAutomaton) -> FiniteAutomaton:
    return _trim_raw(a.alphabet, a.delta, a.initial, a.accepting)


def from_transitions(
    alphabet: Alphabet,
    n_states: int,
    transitions: Iterable[Tuple[int, Symbol, int]],
    initial: Iterable[int],
    accepting: Iterable[int],
) -> FiniteAutomaton:
    edges: List[Dict[Symbol, set]] = [dict() for _ in range(n_states)]
    for src, s, dst in transitions:
        if not (0 <= src < n_states and 0 <= dst < n_states):
            raise AutomatonError(f"transition {src} -> {dst} uses an undeclared state")
        alphabet.check_symbol(s)
        edges[src].setdefault(s, set()).add(dst)
    return _trim_raw(alphabet, edges, initial, accepting)


# ---------------------------------------------------------------------------
# constructors


def empty(alphabet: Alphabet) -> FiniteAutomaton:
    return FiniteAutomaton(alphabet, [], [], [])


def epsilon(alphabet: Alphabet) -> FiniteAutomaton:
    return FiniteAutomaton(alphabet, [{}], [0], [0])


def atom(alphabet: Alphabet, symbol: Symbol) -> FiniteAutomaton:
    alphabet.check_symbol(symbol)
    return FiniteAutomaton(alphabet, [{symbol: frozenset([1])}, {}], [0], [1])


def word(alphabet: Alphabet, w: Sequence[Symbol]) -> FiniteAutomaton:
    n = len(w)
    return from_transitions(alphabet, n + 1, [(i, s, i + 1) for i, s in enumerate(w)], [0], [n])


def from_words(alphabet: Alphabet, words: Iterable[Sequence[Symbol]]) -> FiniteAutomaton:
    """Prefix-tree automaton of a finite set of words."""
    trie: List[Dict[Symbol, int]] = [{}]
    final = set()
    for w in words:
        q = 0
        for s in w:
            alphabet.check_symbol(s)
            nxt = trie[q].get(s)
            if nxt is None:
                nxt = trie[q][s] = len(trie)
                trie.append({})
            q = nxt
        final.add(q)
    edges = [{s: {d} for s, d in row.items()} for row in trie]
    return _trim_raw(alphabet, edges, [0], final)


def parse_words(alphabet: Alphabet, *texts: str) -> FiniteAutomaton:
    """Finite language from words in the textual syntax."""
    return from_words(alphabet, [alphabet.parse(t) for t in texts])


def universal(alphabet: Alphabet, symbols: Optional[Iterable[Symbol]] = None) -> FiniteAutomaton:
    """``symbols*`` (the whole double alphabet by default)."""
    syms = list(alphabet.symbols) if symbols is None else sorted(set(symbols))
    return FiniteAutomaton(alphabet, [{s: frozenset([0]) for s in syms}], [0], [0])


def dotted_star(alphabet: Alphabet) -> FiniteAutomaton:
    return universal(alphabet, [make_symbol(i, True) for i in range(len(alphabet))])


def undotted_star(alphabet: Alphabet) -> FiniteAutomaton:
    return universal(alphabet, [make_symbol(i, False) for i in range(len(alphabet))])


def _symbols_plus(alphabet: Alphabet, symbols: Iterable[Symbol]) -> FiniteAutomaton:
    edge = {s: frozenset([1]) for s in sorted(set(symbols))}
    return FiniteAutomaton(alphabet, [edge, dict(edge)], [0], [1])


def dotted_plus(alphabet: Alphabet) -> FiniteAutomaton:
    """Nonempty fully dotted words."""
    return _symbols_plus(alphabet, [make_symbol(i, True) for i in range(len(alphabet))])


def nonempty_words(alphabet: Alphabet) -> FiniteAutomaton:
    return _symbols_plus(alphabet, alphabet.symbols)


# ---------------------------------------------------------------------------
# rational operations


def union(*automata: FiniteAutomaton) -> FiniteAutomaton:
    if not automata:
        raise AutomatonError("union of nothing")
    alphabet = check_same_alphabet(*automata)
    edges, initial, accepting = [], [], []
    for a in automata:
        off = len(edges)
        edges.extend({s: {d + off for d in ds} for s, ds in row.items()} for row in a.delta)
        initial.extend(q + off for q in a.initial)
        accepting.extend(q + off for q in a.accepting)
    return _trim_raw(alphabet, edges, initial, accepting)


def concat(*automata: FiniteAutomaton) -> FiniteAutomaton:
    if not automata:
        raise AutomatonError("concatenation of nothing")
    result = automata[0]
    for b in automata[1:]:
        result = _concat2(result, b)
    return result


def _concat2(a: FiniteAutomaton, b: FiniteAutomaton) -> FiniteAutomaton:
    alphabet = check_same_alphabet(a, b)
    off = len(a.delta)
    edges = [{s: set(ds) for s, ds in row.items()} for row in a.delta]
    edges.extend({s: {d + off for d in ds} for s, ds in row.items()} for row in b.delta)
    b_start_edges: Dict[Symbol, set] = {}
    for q in b.initial:
        for s, ds in b.delta[q].items():
            b_start_edges.setdefault(s, set()).update(d + off for d in ds)
    for f in a.accepting:
        for s, ds in b_start_edges.items():
            edges[f].setdefault(s, set()).update(ds)
    accepting = [q + off for q in b.accepting]
    if not b.initial.isdisjoint(b.accepting):
        accepting.extend(a.accepting)
    return _trim_raw(alphabet, edges, a.initial, accepting)


def _iterate(a: FiniteAutomaton, with_empty: bool) -> FiniteAutomaton:
    n = len(a.delta)
    edges = [{s: set(ds) for s, ds in row.items()} for row in a.delta]
    start_edges: Dict[Symbol, set] = {}
    for q in a.initial:
        for s, ds in a.delta[q].items():
            start_edges.setdefault(s, set()).update(ds)
    for f in a.accepting:
        for s, ds in start_edges.items():
            edges[f].setdefault(s, set()).update(ds)
    edges.append({s: set(ds) for s, ds in start_edges.items()})
    accepting = list(a.accepting)
    if with_empty or not a.initial.isdisjoint(a.accepting):
        accepting.append(n)
    return _trim_raw(a.alphabet, edges, [n], accepting)


def star(a: FiniteAutomaton) -> FiniteAutomaton:
    return _iterate(a, True)


def plus(a: FiniteAutomaton) -> FiniteAutomaton:
    return _iterate(a, False)


def intersect(a: FiniteAutomaton, b: FiniteAutomaton) -> FiniteAutomaton:
    alphabet = check_same_alphabet(a, b)
    da, db = a.delta, b.delta

    def succ(pq):
        p, q = pq
        eq = db[q]
        for s, ps in da[p].items():
            qs = eq.get(s)
            if qs:
                for p2 in ps:
                    for q2 in qs:
                        yield s, (p2, q2)

    return explore(
        alphabet,
        [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)],
        succ,
        lambda pq: pq[0] in a.accepting and pq[1] in b.accepting,
    )


def shuffle(a: FiniteAutomaton, b: FiniteAutomaton) -> FiniteAutomaton:
    """All interleavings of a word of ``a`` with a word of ``b``."""
    alphabet = check_same_alphabet(a, b)
    da, db = a.delta, b.delta

    def succ(pq):
        p, q = pq
        for s, ps in da[p].items():
            for p2 in ps:
                yield s, (p2, q)
        for s, qs in db[q].items():
            for q2 in qs:
                yield s, (p, q2)

    return explore(
        alphabet,
        [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)],
        succ,
        lambda pq: pq[0] in a.accepting and pq[1] in b.accepting,
    )


def shuffle_all(automata: Sequence[FiniteAutomaton]) -> FiniteAutomaton:
    result = automata[0]
    for b in automata[1:]:
        result = shuffle(result, b)
    return result


def _complete_dfa_step(dfa: FiniteAutomaton):
    """A step function on a DFA where state -1 is an absorbing sink."""
    delta = dfa.delta

    def step(q: int, s: Symbol) -> int:
        if q < 0:
            return -1
        d = delta[q].get(s)
        if not d:
            return -1
        (nxt,) = d
        return nxt

    return step


def complement(a: FiniteAutomaton) -> FiniteAutomaton:
    dfa = determinize(a)
    alphabet = a.alphabet
    step = _complete_dfa_step(dfa)
    start = dfa.start if dfa.initial else -1
    syms = list(alphabet.symbols)

    def succ(q):
        for s in syms:
            yield s, step(q, s)

    return explore(alphabet, [start], succ, lambda q: q < 0 or q not in dfa.accepting)


def difference(a: FiniteAutomaton, b: FiniteAutomaton) -> FiniteAutomaton:
    """``L(a) - L(b)``; ``b`` is determinized, ``a`` may stay nondeterministic."""
    alphabet = check_same_alphabet(a, b)
    bd = determinize(b)
    bstep = _complete_dfa_step(bd)
    bstart = bd.start if bd.initial else -1
    da = a.delta

    def succ(pq):
        p, q = pq
        for s, ps in da[p].items():
            q2 = bstep(q, s)
            for p2 in ps:
                yield s, (p2, q2)

    return explore(
        alphabet,
        [(p, bstart) for p in sorted(a.initial)],
        succ,
        lambda pq: pq[0] in a.accepting and (pq[1] < 0 or pq[1] not in bd.accepting),
    )


def map_symbols(a: FiniteAutomaton, f: Callable[[Symbol], Symbol]) -> FiniteAutomaton:
    edges = []
    for row in a.delta:
        out: Dict[Symbol, set] = {}
        for s, ds in row.items():
            out.setdefault(f(s), set()).update(ds)
        edges.append(out)
    return _trim_raw(a.alphabet, edges, a.initial, a.accepting)


_SYMBOL_MAPS: Dict[str, Callable[[Symbol], Symbol]] = {
    "switch": lambda s: s ^ 1,
    "dot": lambda s: s | 1,
    "undot": lambda s: s & ~1,
}


def map_image(a: FiniteAutomaton, f: str | Callable[[Symbol], Symbol]) -> FiniteAutomaton:
    """Image of the language under switch, dot or undot (or any symbol map)."""
    if isinstance(f, str):
        try:
            f = _SYMBOL_MAPS[f]
        except KeyError:
            raise AutomatonError(f"unknown symbol mapping {f!r}") from None
    return map_symbols(a, f)


def match_product(a: FiniteAutomaton, b: FiniteAutomaton) -> FiniteAutomaton:
    """Automaton for ``{u @ v | u in L(a), v in L(b), u @ v defined}``."""
    alphabet = check_same_alphabet(a, b)
    da, db = a.delta, b.delta
    nsym = 2 * len(alphabet)
    # for each symbol s1 of a: the compatible symbols s2 of b and their match
    partners = [
        [(s2, m) for s2 in range(nsym) if (m := match_symbol(s1, s2)) is not None]
        for s1 in range(nsym)
    ]

    def succ(pq):
        p, q = pq
        eq = db[q]
        for s1, ps in da[p].items():
            for s2, m in partners[s1]:
                qs = eq.get(s2)
                if qs:
                    for p2 in ps:
                        for q2 in qs:
                            yield m, (p2, q2)

    return explore(
        alphabet,
        [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)],
        succ,
        lambda pq: pq[0] in a.accepting and pq[1] in b.accepting,
    )


def letter_shuffle(alphabet: Alphabet, per_letter: Sequence[FiniteAutomaton]) -> FiniteAutomaton:
    """``{x | for every letter i, project(x, letter i) in L(per_letter[i])}``.

    Each ``per_letter[i]`` must only use the two symbols of letter ``i``; the
    result is the shuffle of the per-letter languages, built as one product
    (deterministic when the inputs are).
    """
    if len(per_letter) != len(alphabet):
        raise AutomatonError("need one automaton per letter")
    for i, a in enumerate(per_letter):
        check_same_alphabet(per_letter[0], a)
        for row in a.delta:
            for s in row:
                if letter_of(s) != i:
                    raise AutomatonError(f"per-letter automaton {i} uses symbol {s}")
    deltas = [a.delta for a in per_letter]
    k = len(per_letter)

    def succ(state):
        for i in range(k):
            for s, ds in deltas[i][state[i]].items():
                for d in ds:
                    yield s, state[:i] + (d,) + state[i + 1 :]

    starts = list(product(*[sorted(a.initial) for a in per_letter]))
    return explore(
        alphabet,
        starts,
        succ,
        lambda st: all(st[i] in per_letter[i].accepting for i in range(k)),
    )


# ---------------------------------------------------------------------------
# determinization, minimization, decisions


def determinize(a: FiniteAutomaton) -> FiniteAutomaton:
    if a.is_deterministic:
        return a
    delta = a.delta

    def succ(subset):
        moves: Dict[Symbol, set] = {}
        for q in subset:
            for s, ds in delta[q].items():
                moves.setdefault(s, set()).update(ds)
        for s in sorted(moves):
            yield s, frozenset(moves[s])

    start = frozenset(a.initial)
    if not start:
        return empty(a.alphabet)
    return explore(a.alphabet, [start], succ, lambda sub: not sub.isdisjoint(a.accepting))


def minimize(a: FiniteAutomaton) -> FiniteAutomaton:
    """Minimal (partial) DFA by Hopcroft partition refinement."""
    dfa = determinize(a)
    n = dfa.n_states
    if n == 0:
        return dfa
    syms = sorted({s for row in dfa.delta for s in row})
    sink = n
    # inverse transitions of the completed automaton, one map per symbol
    inverse: List[List[List[int]]] = [[[] for _ in range(n + 1)] for _ in syms]
    for k, s in enumerate(syms):
        inv = inverse[k]
        for q, row in enumerate(dfa.delta):
            ds = row.get(s)
            inv[next(iter(ds)) if ds else sink].append(q)
        inv[sink].append(sink)
    acc = set(dfa.accepting)
    rest = set(range(n + 1)) - acc
    blocks: List[set] = [b for b in (acc, rest) if b]
    block_of = [0] * (n + 1)
    for i, b in enumerate(blocks):
        for q in b:
            block_of[q] = i
    pending = set(range(len(blocks))) if len(blocks) == 1 else {
        min(range(2), key=lambda i: len(blocks[i]))
    }
    work = list(pending)
    while work:
        splitter = work.pop()
        pending.discard(splitter)
        members = list(blocks[splitter])
        for inv in inverse:
            touched: Dict[int, List[int]] = {}
            for d in members:
                for q in inv[d]:
                    touched.setdefault(block_of[q], []).append(q)
            for b, qs in touched.items():
                if len(qs) == len(blocks[b]):
                    continue
                part = set(qs)
                blocks[b] -= part
                nb = len(blocks)
                blocks.append(part)
                for q in part:
                    block_of[q] = nb
                if b in pending or len(part) <= len(blocks[b]):
                    pick = nb
                else:
                    pick = b
                if pick not in pending:
                    pending.add(pick)
                    work.append(pick)
    dead = block_of[sink]
    edges: List[Dict[Symbol, set]] = [dict() for _ in blocks]
    for q, row in enumerate(dfa.delta):
        b = block_of[q]
        for s, ds in row.items():
            d = block_of[next(iter(ds))]
            if d != dead:
                edges[b][s] = {d}
    if block_of[dfa.start] == dead:
        return empty(dfa.alphabet)
    return _trim_raw(
        dfa.alphabet,
        edges,
        [block_of[dfa.start]],
        {block_of[q] for q in dfa.accepting},
    )


def is_empty(a: FiniteAutomaton) -> bool:
    # automata are kept trimmed, but stay safe for hand-made instances
    return trim(a).n_states == 0


def includes(big: FiniteAutomaton, small: FiniteAutomaton) -> bool:
    """``L(small) <= L(big)``."""
    return is_empty(difference(small, big))


def equivalent(a: FiniteAutomaton, b: FiniteAutomaton) -> bool:
    return includes(a, b) and includes(b, a)


def counterexample(a: FiniteAutomaton, b: FiniteAutomaton) -> Optional[DottedWord]:
    """A shortest word in the symmetric difference, or None if equivalent."""
    for x, y in ((a, b), (b, a)):
        diff = difference(x, y)
        words = shortest_word(diff)
        if words is not None:
            return words
    return None


def shortest_word(a: FiniteAutomaton) -> Optional[DottedWord]:
    """Length-lexicographically least accepted word."""
    dfa = determinize(a)
    if not dfa.initial:
        return None
    start = dfa.start
    parent: Dict[int, Tuple[int, Symbol]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        if q in dfa.accepting:
            out = []
            while q != start:
                q, s = parent[q]
                out.append(s)
            return tuple(reversed(out))
        row = dfa.delta[q]
        for s in sorted(row):
            (d,) = row[s]
            if d not in seen:
                seen.add(d)
                parent[d] = (q, s)
                queue.append(d)
    return None


def _distance_to_accept(dfa: FiniteAutomaton) -> List[int]:
    n = dfa.n_states
    preds: List[List[int]] = [[] for _ in range(n)]
    for q, row in enumerate(dfa.delta):
        for ds in row.values():
            for d in ds:
                preds[d].append(q)
    dist = [-1] * n
    queue = deque()
    for q in dfa.accepting:
        dist[q] = 0
        queue.append(q)
    while queue:
        q = queue.popleft()
        for p in preds[q]:
            if dist[p] < 0:
                dist[p] = dist[q] + 1
                queue.append(p)
    return dist


def iter_words(a: FiniteAutomaton, max_len: int) -> Iterator[DottedWord]:
    """Accepted words of length <= max_len in length-lexicographic order."""
    if max_len < 0:
        raise AutomatonError("max_len must be >= 0")
    dfa = determinize(a)
    if not dfa.initial:
        return
    dist = _distance_to_accept(dfa)
    layer: List[Tuple[DottedWord, int]] = [((), dfa.start)]
    for n in range(max_len + 1):
        for w, q in layer:
            if q in dfa.accepting:
                yield w
        if n == max_len:
            break
        budget = max_len - n - 1
        nxt = []
        for w, q in layer:
            row = dfa.delta[q]
            for s in sorted(row):
                (d,) = row[s]
                if dist[d] <= budget:
                    nxt.append((w + (s,), d))
        layer = nxt
        if not layer:
            break


def enumerate_words(a: FiniteAutomaton, max_len: int) -> List[DottedWord]:
    return list(iter_words(a, max_len))


# ---------------------------------------------------------------------------
# factorization after the last occurrence of a letter


class Factorization:
    """Per-word split of ``L(dfa)`` right after the last occurrence of a letter.

    Every accepted word ``w`` factors uniquely as ``head . tail`` where the
    head is empty or ends with ``a`` or dotted ``a`` and the tail avoids both.
    Since the automaton is deterministic, the state reached after the head
    identifies the split, so the language is the disjoint union over states
    ``q`` of ``head(q) . tail(q)``.
    """

    def __init__(self, a: FiniteAutomaton, letter: int):
        self.dfa = minimize(a)
        self.letter = letter
        self.letter_symbols = frozenset((make_symbol(letter), make_symbol(letter, True)))

    def split(self, w: Sequence[Symbol]) -> Tuple[DottedWord, DottedWord]:
        cut = 0
        for i, s in enumerate(w):
            if s in self.letter_symbols:
                cut = i + 1
        return tuple(w[:cut]), tuple(w[cut:])

    def split_states(self) -> List[int]:
        """States where some accepted word's head ends."""
        dfa = self.dfa
        if not dfa.initial:
            return []
        out = {dfa.start}
        for row in dfa.delta:
            for s, ds in row.items():
                if s in self.letter_symbols:
                    out |= ds
        return sorted(q for q in out if self.tail(q).n_states)

    def head(self, q: int) -> FiniteAutomaton:
        """Words leading from the start to ``q`` that are empty or end in the letter."""
        dfa = self.dfa
        letters = self.letter_symbols

        def succ(st):
            p, _ = st
            for s, ds in dfa.delta[p].items():
                for d in ds:
                    yield s, (d, s in letters)

        return explore(dfa.alphabet, [(dfa.start, True)], succ, lambda st: st == (q, True))

    def tail(self, q: int) -> FiniteAutomaton:
        """Words avoiding the letter that lead from ``q`` to acceptance."""
        dfa = self.dfa
        letters = self.letter_symbols
        edges = [
            {s: set(ds) for s, ds in row.items() if s not in letters} for row in dfa.delta
        ]
        return _trim_raw(dfa.alphabet, edges, [q], dfa.accepting)

    def pairs(self) -> List[Tuple[FiniteAutomaton, FiniteAutomaton]]:
        out = []
        for q in self.split_states():
            head = self.head(q)
            if head.n_states:
                out.append((head, self.tail(q)))
        return out


def factor_at_last(a: FiniteAutomaton, letter: int | str) -> Factorization:
    if isinstance(letter, str):
        letter = a.alphabet.index(letter)
    if not 0 <= letter < len(a.alphabet):
        raise AlphabetError(f"letter index {letter} out of range")
    return Factorization(a, letter)


# ---------------------------------------------------------------------------
# textual serialization
#
#   alphabet a b
#   states 3
#   initial 0
#   accepting 2
#   0 a 1
#   1 .b 2
#   end


def dumps(a: FiniteAutomaton) -> str:
    lines = [
        "alphabet " + " ".join(a.alphabet.letters),
        f"states {a.n_states}",
        "initial" + "".join(f" {q}" for q in sorted(a.initial)),
        "accepting" + "".join(f" {q}" for q in sorted(a.accepting)),
    ]
    for q, row in enumerate(a.delta):
        for s in sorted(row):
            for d in sorted(row[s]):
                lines.append(f"{q} {a.alphabet.format_symbol(s)} {d}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text: str, alphabet: Optional[Alphabet] = None) -> FiniteAutomaton:
    automaton, rest = load_block([ln for ln in text.splitlines()], 0, alphabet)
    if any(ln.strip() for ln in text.splitlines()[rest:]):
        raise AutomatonError("trailing content after automaton block")
    return automaton


def load_block(lines: List[str], pos: int, alphabet: Optional[Alphabet]):
    header: Dict[str, List[str]] = {}
    transitions = []
    while pos < len(lines):
        raw = lines[pos].split("#", 1)[0].strip()
        pos += 1
        if not raw:
            continue
        fields = raw.split()
        key = fields[0]
        if key == "end":
            break
        if key in ("alphabet", "states", "initial", "accepting"):
            if key in header:
                raise AutomatonError(f"line {pos}: duplicate {key!r}")
            header[key] = fields[1:]
            continue
        if len(fields) != 3:
            raise AutomatonError(f"line {pos}: expected 'src symbol dst', got {raw!r}")
        transitions.append((pos, fields))
    else:
        raise AutomatonError("automaton block not terminated by 'end'")
    for key in ("alphabet", "states", "initial", "accepting"):
        if key not in header:
            raise AutomatonError(f"missing {key!r} line")
    declared = Alphabet(tuple(header["alphabet"]))
    if alphabet is not None and declared != alphabet:
        raise AutomatonError(f"alphabet {declared.letters!r} differs from expected {alphabet.letters!r}")
    try:
        (n,) = [int(x) for x in header["states"]]
        initial = [int(x) for x in header["initial"]]
        accepting = [int(x) for x in header["accepting"]]
        edges = []
        for lineno, (src, sym, dst) in transitions:
            word = declared.parse(sym)
            if len(word) != 1:
                raise AutomatonError(f"line {lineno}: bad symbol {sym!r}")
            edges.append((int(src), word[0], int(dst)))
    except ValueError as exc:
        raise AutomatonError(str(exc)) from exc
    for q in initial + accepting:
        if not 0 <= q < n:
            raise AutomatonError(f"undeclared state {q}")
    return from_transitions(declared, n, edges, initial, accepting), pos
