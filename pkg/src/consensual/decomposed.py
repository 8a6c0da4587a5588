"""Bases split into a scaffold and a fill, and their composition.

A base ``sc | fl`` is decomposed when ``sc`` and ``fl`` are disjoint, no two
scaffold words match, and the fill alone is unproductive.  Then every member
of the consensual language is placed by exactly one scaffold word, helped by
fill words.  Two decomposed bases can be joined (union) when no scaffold of
one matches a scaffold or fill of the other; they can be dot-multiplied
(concatenation) under the slot-set sufficient condition: a common module,
disjoint slots and shiftable fills.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import automata as fa
from .alphabet import DottedWord, match_word, undot
from .automata import FiniteAutomaton
from .congruence import SlotSet, SlotSetError, fill_lang, scaffold_lang
from .recognizer import Recognizer, candidate_words

DEFAULT_BOUND = 10


class DecompositionError(ValueError):
    """A decomposed-form invariant does not hold."""


class JoinError(DecompositionError):
    def __init__(self, message: str, pair: str = "", words: Tuple[DottedWord, DottedWord] | None = None):
        super().__init__(message)
        self.pair = pair
        self.words = words


class ConcatError(DecompositionError):
    pass


@dataclass(frozen=True)
class DecompositionReport:
    disjoint: bool
    scaffold_unmatchable: bool
    fill_unproductive: bool
    fill_check: str  # "exact" or "bounded"
    bound: Optional[int] = None
    problems: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.disjoint and self.scaffold_unmatchable and self.fill_unproductive

    def __str__(self) -> str:
        fill = f"{self.fill_unproductive} ({self.fill_check}"
        fill += f", bound {self.bound})" if self.fill_check == "bounded" else ")"
        lines = [
            f"disjoint: {self.disjoint}",
            f"scaffold self-unmatchable: {self.scaffold_unmatchable}",
            f"fill unproductive: {fill}",
        ]
        lines.extend(f"problem: {p}" for p in self.problems)
        return "\n".join(lines)


@dataclass(frozen=True)
class DecomposedBase:
    scaffold: FiniteAutomaton
    fill: FiniteAutomaton
    provenance: Optional[SlotSet] = None
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if self.scaffold.alphabet != self.fill.alphabet:
            raise DecompositionError("scaffold and fill use different alphabets")

    @property
    def alphabet(self):
        return self.scaffold.alphabet

    @property
    def base(self) -> FiniteAutomaton:
        return fa.union(self.scaffold, self.fill)

    def recognizer(self) -> Recognizer:
        return Recognizer(self.base)

    def check(self, bound: int = DEFAULT_BOUND) -> DecompositionReport:
        return check_decomposed(self.scaffold, self.fill, bound, self.provenance)


def matchable_pair(a: FiniteAutomaton, b: FiniteAutomaton) -> Optional[Tuple[DottedWord, DottedWord]]:
    """Some nonempty ``(u, v)`` with ``u`` in ``a``, ``v`` in ``b`` and ``u @ v`` defined.

    The empty word is ignored: it trivially matches itself and places nothing.
    """
    product = fa.intersect(fa.match_product(a, b), fa.nonempty_words(a.alphabet))
    w = fa.shortest_word(product)
    if w is None:
        return None
    x = undot(w)
    for u in candidate_words(a, x):
        for v in candidate_words(b, x):
            if match_word(u, v) == w:
                return u, v
    raise AssertionError("match product word without a matching pair")


def unmatchable(a: FiniteAutomaton, b: FiniteAutomaton) -> bool:
    product = fa.match_product(a, b)
    return fa.intersect(product, fa.nonempty_words(a.alphabet)).n_states == 0


def check_decomposed(
    sc: FiniteAutomaton,
    fl: FiniteAutomaton,
    bound: int = DEFAULT_BOUND,
    slots: Optional[SlotSet] = None,
) -> DecompositionReport:
    """Check the three decomposed-form conditions.

    Disjointness and scaffold self-unmatchability are decided exactly.  Fill
    unproductivity is exact when ``slots`` is given and the scaffold and fill
    sit inside that slot set's scaffold and fill languages; otherwise no word
    of length <= ``bound`` may be in the consensual language of the fill.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    fa.check_same_alphabet(sc, fl)
    problems: List[str] = []
    alphabet = sc.alphabet

    common = fa.intersect(sc, fl)
    disjoint = common.n_states == 0
    if not disjoint:
        problems.append(f"scaffold and fill share {alphabet.format(fa.shortest_word(common))!r}")

    pair = matchable_pair(sc, sc)
    sc_ok = pair is None
    if pair:
        problems.append(
            f"scaffold words {alphabet.format(pair[0])!r} and {alphabet.format(pair[1])!r} match"
        )

    if fa.intersect(fl, fa.dotted_plus(alphabet)).n_states:
        problems.append("fill accepts a fully dotted word")

    exact = False
    if slots is not None:
        exact = fa.includes(scaffold_lang(alphabet, slots), sc) and fa.includes(
            fill_lang(alphabet, slots), fl
        )
        if not exact:
            problems.append(f"base is not inside the languages of slot set {slots}")
    if exact:
        fill_ok = True
        check = "exact"
    else:
        check = "bounded"
        try:
            members = Recognizer(fl).enumerate(bound)
        except ValueError as exc:
            members = [()]
            problems.append(str(exc))
        fill_ok = not members
        if members:
            problems.append(f"fill alone yields {alphabet.format(members[0])!r}")
    return DecompositionReport(
        disjoint=disjoint,
        scaffold_unmatchable=sc_ok,
        fill_unproductive=fill_ok,
        fill_check=check,
        bound=None if exact else bound,
        problems=tuple(problems),
    )


def _require(report: DecompositionReport, what: str) -> None:
    if not report.ok:
        raise DecompositionError(f"{what} is not in decomposed form:\n{report}")


def check_shiftable(a: FiniteAutomaton) -> bool:
    """Whether padding with dotted words on either side keeps the language."""
    dots = fa.dotted_star(a.alphabet)
    return fa.equivalent(a, fa.concat(dots, a, dots))


def _merged_provenance(b1: DecomposedBase, b2: DecomposedBase) -> Optional[SlotSet]:
    if b1.provenance is None or b2.provenance is None:
        return None
    try:
        return b1.provenance.merge(b2.provenance)
    except SlotSetError:
        return None


def join(b1: DecomposedBase, b2: DecomposedBase, bound: int = DEFAULT_BOUND) -> DecomposedBase:
    """Union of two joinable decomposed bases; raises JoinError otherwise."""
    alphabet = fa.check_same_alphabet(b1.scaffold, b2.scaffold)
    for name, x, y in (
        ("scaffold 1 / fill 2", b1.scaffold, b2.fill),
        ("scaffold 2 / fill 1", b2.scaffold, b1.fill),
        ("scaffold 1 / scaffold 2", b1.scaffold, b2.scaffold),
    ):
        pair = matchable_pair(x, y)
        if pair is not None:
            raise JoinError(
                f"not joinable: {name} match on "
                f"{alphabet.format(pair[0])!r} @ {alphabet.format(pair[1])!r}",
                name,
                pair,
            )
    result = DecomposedBase(
        fa.minimize(fa.union(b1.scaffold, b2.scaffold)),
        fa.minimize(fa.union(b1.fill, b2.fill)),
        _merged_provenance(b1, b2),
    )
    _require(result.check(bound), "joined base")
    return result


def dot_product(
    b1: DecomposedBase,
    b2: DecomposedBase,
    bound: int = DEFAULT_BOUND,
    assume_concatenable: bool = False,
) -> DecomposedBase:
    """``(sc1 . sc2) | fl1 | fl2``.

    Concatenability is established by the slot-set condition (same module,
    disjoint slots, shiftable fills).  ``assume_concatenable`` skips that
    condition for hand-built bases whose concatenability was argued
    elsewhere; the decomposed-form checks still run.
    """
    fa.check_same_alphabet(b1.scaffold, b2.scaffold)
    note = ""
    if not assume_concatenable:
        p1, p2 = b1.provenance, b2.provenance
        if p1 is None or p2 is None:
            raise ConcatError("dot product needs slot-set provenance on both bases")
        if p1.module != p2.module:
            raise ConcatError(f"modules differ: {p1.module} vs {p2.module}")
        if not p1.slots.isdisjoint(p2.slots):
            raise ConcatError(f"slot sets {p1} and {p2} overlap")
        for i, b in ((1, b1), (2, b2)):
            if not check_shiftable(b.fill):
                raise ConcatError(f"fill of base {i} is not shiftable")
    else:
        note = "concatenability assumed"
    result = DecomposedBase(
        fa.minimize(fa.concat(b1.scaffold, b2.scaffold)),
        fa.minimize(fa.union(b1.fill, b2.fill)),
        _merged_provenance(b1, b2),
        note,
    )
    _require(result.check(bound), "dot product")
    return result


# ---------------------------------------------------------------------------
# serialization: provenance line, then SCAFFOLD and FILL automaton blocks


def dumps(base: DecomposedBase) -> str:
    prov = str(base.provenance) if base.provenance is not None else "untagged"
    return (
        f"provenance {prov}\n"
        "SCAFFOLD\n" + fa.dumps(base.scaffold) + "FILL\n" + fa.dumps(base.fill)
    )


def loads(text: str) -> DecomposedBase:
    lines = text.splitlines()
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines):
            raw = lines[pos].split("#", 1)[0].strip()
            pos += 1
            if raw:
                return raw
        raise DecompositionError("unexpected end of base file")

    head = next_line().split(None, 1)
    if head[0] != "provenance" or len(head) != 2:
        raise DecompositionError("base file must start with a provenance line")
    provenance = None if head[1] == "untagged" else SlotSet.parse(head[1])
    if next_line() != "SCAFFOLD":
        raise DecompositionError("expected SCAFFOLD block")
    scaffold, pos = fa.load_block(lines, pos, None)
    if next_line() != "FILL":
        raise DecompositionError("expected FILL block")
    fill, pos = fa.load_block(lines, pos, scaffold.alphabet)
    if any(ln.split("#", 1)[0].strip() for ln in lines[pos:]):
        raise DecompositionError("trailing content after FILL block")
    return DecomposedBase(scaffold, fill, provenance)
