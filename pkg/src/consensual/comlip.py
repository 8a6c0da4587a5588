"""Compile COM-LIP specifications and expressions over them into bases.

For a spec with constant ``c`` and even periods ``p1 .. pq`` and a single
slot ``r`` of an even module ``m`` the base has

* fill ``X``: fill-language words whose undotted letters count exactly one
  period;
* scaffold ``Y <| W``: shuffled ``(R_m(a))*`` blocks, one per letter, with
  ``W = {c + sum h_j p_j : 0 <= h_j < m/2}`` appended.

A scaffold word fixes the offset inside ``W`` and the multiple-of-``m/2``
part of each count; fill words top up the remaining periods.  Expressions
are compiled by giving every leaf its own slot of one common module and
folding union nodes with ``join`` and concatenation nodes with
``dot_product``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Optional, Sequence, Set, Tuple

from . import automata as fa
from .alphabet import Alphabet, ParikhVector, make_symbol
from .automata import FiniteAutomaton
from .congruence import SlotSet, append_shuffle, block_star, fill_lang
from .decomposed import (
    DEFAULT_BOUND,
    DecomposedBase,
    DecompositionError,
    dot_product,
    join,
)
from .expr import ComLipSpec, ConcatExpr, Expr, Leaf, SpecError, UnionExpr, check_expr, leaves


class CompileError(RuntimeError):
    """A construction step failed; with disjoint slots this is a bug."""


def normalize_even(spec: ComLipSpec, double: bool = True) -> List[ComLipSpec]:
    """Rewrite ``spec`` as a union of specs whose periods are all even.

    Every coefficient is ``n = 2 n' + h`` with ``h`` in ``{0, 1}``, so the
    variants are ``c + sum h_j p_j`` with periods ``2 p_j``.  With
    ``double=False`` an already even spec is returned unchanged.
    """
    if not double and spec.all_even:
        return [spec]
    doubled = tuple(tuple(2 * x for x in p) for p in spec.periods)
    out = []
    for hs in product((0, 1), repeat=len(spec.periods)):
        constant = list(spec.constant)
        for h, p in zip(hs, spec.periods):
            if h:
                for i, x in enumerate(p):
                    constant[i] += x
        # only the all-zero choice can keep a zero constant
        out.append(ComLipSpec(tuple(constant), doubled, spec.allow_empty and not any(hs)))
    return out


def _require_even(spec: ComLipSpec) -> None:
    if not spec.all_even:
        raise SpecError(f"spec {spec} has odd period components; apply normalize_even first")


def _require_single(slots: SlotSet) -> int:
    if len(slots.slots) != 1:
        raise SpecError(f"slot set {slots} must hold exactly one slot")
    (r,) = slots.slots
    return r


def placed_count(alphabet: Alphabet, vector: ParikhVector) -> FiniteAutomaton:
    """Words whose undotted letters have Parikh vector ``vector``."""
    vector = tuple(vector)
    if len(vector) != len(alphabet):
        raise SpecError("vector length differs from the alphabet size")
    k = len(alphabet)

    def succ(counts):
        for i in range(k):
            yield make_symbol(i, True), counts
            if counts[i] < vector[i]:
                yield make_symbol(i), counts[:i] + (counts[i] + 1,) + counts[i + 1 :]

    return fa.explore(alphabet, [(0,) * k], succ, lambda c: c == vector)


def build_X(spec: ComLipSpec, slots: SlotSet, alphabet: Alphabet) -> FiniteAutomaton:
    _require_even(spec)
    _require_single(slots)
    fill = fill_lang(alphabet, slots)
    parts = [fa.intersect(fill, placed_count(alphabet, p)) for p in spec.periods]
    return fa.minimize(fa.union(*parts))


def build_Y(alphabet: Alphabet, slots: SlotSet) -> FiniteAutomaton:
    _require_single(slots)
    per_letter = [block_star(alphabet, i, slots) for i in range(len(alphabet))]
    return fa.minimize(fa.letter_shuffle(alphabet, per_letter))


def build_W(spec: ComLipSpec, module: int) -> List[ParikhVector]:
    """``{c + sum h_j p_j : 0 <= h_j < m/2}``, sorted and without duplicates."""
    _require_even(spec)
    out: Set[ParikhVector] = set()
    for hs in product(range(module // 2), repeat=len(spec.periods)):
        v = list(spec.constant)
        for h, p in zip(hs, spec.periods):
            for i, x in enumerate(p):
                v[i] += h * x
        out.add(tuple(v))
    return sorted(out)


def build_D(spec: ComLipSpec, slots: SlotSet, alphabet: Alphabet) -> DecomposedBase:
    if spec.dimension != len(alphabet):
        raise SpecError(f"spec {spec} does not fit alphabet {alphabet.letters}")
    _require_even(spec)
    per_letter = [block_star(alphabet, i, slots) for i in range(len(alphabet))]
    scaffold = append_shuffle(alphabet, per_letter, build_W(spec, slots.module))
    if not spec.empty_member:
        scaffold = fa.minimize(fa.intersect(scaffold, fa.nonempty_words(alphabet)))
    return DecomposedBase(scaffold, build_X(spec, slots, alphabet), slots)


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Compiled:
    base: DecomposedBase
    module: int
    assignment: Tuple[Tuple[ComLipSpec, SlotSet], ...]
    expr: Expr

    def describe(self, alphabet: Alphabet) -> str:
        lines = [f"module m={self.module}, {len(self.assignment)} leaves"]
        for spec, slots in self.assignment:
            (r,) = slots.slots
            lines.append(f"  slot {r}: com({spec})")
        return "\n".join(lines)


def normalize_expr(expr: Expr, double: bool = True) -> Expr:
    """Replace each leaf by the union of its even variants."""
    if isinstance(expr, Leaf):
        variants = normalize_even(expr.spec, double)
        if len(variants) == 1:
            return Leaf(variants[0])
        return UnionExpr(tuple(Leaf(v) for v in variants))
    kids = tuple(normalize_expr(c, double) for c in expr.children)
    return type(expr)(kids)


def choose_module(top_slot: int, module: Optional[int] = None) -> int:
    """Smallest even module with ``top_slot < m/2``, or check a forced one."""
    least = max(4, 2 * top_slot + 2)
    if module is None:
        return least
    if module % 2 or module < least:
        raise SpecError(f"module must be even and >= {least} for slot {top_slot}, got {module}")
    return module


def compile_expr(
    expr: Expr,
    alphabet: Alphabet,
    module: Optional[int] = None,
    double: bool = True,
    bound: int = DEFAULT_BOUND,
    slot_override: Optional[Sequence[int]] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> Compiled:
    """Build one decomposed base for the whole expression.

    ``slot_override`` forces the slot of each leaf (in left-to-right order)
    and skips the composition checks.  It exists to let tests inject slot
    collisions; the result is then generally wrong.
    """
    check_expr(expr, alphabet)
    norm = normalize_expr(expr, double)
    specs = list(leaves(norm))
    if slot_override is None:
        slot_numbers = list(range(1, len(specs) + 1))
    else:
        slot_numbers = list(slot_override)
        if len(slot_numbers) != len(specs) or min(slot_numbers) < 1:
            raise SpecError(f"slot override needs {len(specs)} positive slots, got {slot_numbers}")
    m = choose_module(max(slot_numbers), module)
    assignment = tuple((s, SlotSet.single(m, r)) for s, r in zip(specs, slot_numbers))
    checked = slot_override is None
    it = iter(assignment)

    def build(node: Expr) -> DecomposedBase:
        if isinstance(node, Leaf):
            spec, slots = next(it)
            if progress:
                progress(f"leaf com({spec}) -> {slots}")
            return build_D(spec, slots, alphabet)
        parts = [build(c) for c in node.children]
        acc = parts[0]
        for nxt in parts[1:]:
            acc = _combine(node, acc, nxt, checked, bound)
        return acc

    try:
        base = build(norm)
    except DecompositionError as exc:
        raise CompileError(f"composition failed: {exc}") from exc
    return Compiled(base, m, assignment, expr)


def _combine(node: Expr, b1: DecomposedBase, b2: DecomposedBase, checked: bool, bound: int) -> DecomposedBase:
    if checked:
        if isinstance(node, UnionExpr):
            return join(b1, b2, bound)
        return dot_product(b1, b2, bound)
    if isinstance(node, UnionExpr):
        scaffold = fa.union(b1.scaffold, b2.scaffold)
    elif isinstance(node, ConcatExpr):
        scaffold = fa.concat(b1.scaffold, b2.scaffold)
    else:
        raise CompileError(f"unexpected node {node!r}")
    fill = fa.union(b1.fill, b2.fill)
    return DecomposedBase(fa.minimize(scaffold), fa.minimize(fill), None, "unchecked")
