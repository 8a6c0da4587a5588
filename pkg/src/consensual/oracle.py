"""Ground-truth membership for union/concatenation expressions.

Everything here is plain integer arithmetic on Parikh vectors and string
splitting; no automaton or match is involved, so the results can be used to
check the compiled bases independently.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .alphabet import Alphabet, DottedWord, ParikhVector, is_strong, make_symbol
from .expr import ComLipSpec, ConcatExpr, Expr, Leaf, SpecError, UnionExpr, ZeroPeriodError


def lip_member(v: Sequence[int], spec: ComLipSpec) -> bool:
    """Whether ``v = c + n1 p1 + ... + nq pq`` for some ``n_j >= 0``.

    The zero solution with ``v = c = 0`` counts only when the spec allows
    the empty word.
    """
    v = tuple(v)
    if len(v) != spec.dimension:
        raise SpecError(f"vector {v} has the wrong dimension for {spec}")
    rest = tuple(x - c for x, c in zip(v, spec.constant))
    if any(r < 0 for r in rest):
        return False
    if not any(v):
        return spec.allow_empty
    return _solvable(rest, spec.periods)


@lru_cache(maxsize=1 << 16)
def _solvable(rest: Tuple[int, ...], periods: Tuple[Tuple[int, ...], ...]) -> bool:
    if not any(rest):
        return True
    if not periods:
        return False
    p, others = periods[0], periods[1:]
    if not any(p):
        raise ZeroPeriodError("zero period")
    # every component bounds the coefficient because nothing is negative
    top = min(r // x for r, x in zip(rest, p) if x > 0)
    for n in range(top, -1, -1):
        if _solvable(tuple(r - n * x for r, x in zip(rest, p)), others):
            return True
    return False


def lip_member_naive(v: Sequence[int], spec: ComLipSpec, limit: int = 5) -> bool:
    """Try every coefficient tuple with entries ``<= limit`` (for tests)."""
    v = tuple(v)
    if not any(v):
        return spec.allow_empty and not any(spec.constant)
    for ns in product(range(limit + 1), repeat=len(spec.periods)):
        total = list(spec.constant)
        for n, p in zip(ns, spec.periods):
            for i, x in enumerate(p):
                total[i] += n * x
        if tuple(total) == v:
            return True
    return False


class _Evaluator:
    """Membership of one word's factors, memoized per node."""

    def __init__(self, x: DottedWord, alphabet: Alphabet):
        self.x = x
        self.alphabet = alphabet
        k = len(alphabet)
        # prefix Parikh vectors give factor vectors in O(k)
        self.prefix = [(0,) * k]
        for s in x:
            row = list(self.prefix[-1])
            row[s >> 1] += 1
            self.prefix.append(tuple(row))
        self.memo: Dict[Tuple[int, int, int], bool] = {}

    def vector(self, i: int, j: int) -> ParikhVector:
        lo, hi = self.prefix[i], self.prefix[j]
        return tuple(b - a for a, b in zip(lo, hi))

    def accepts(self, node: Expr, i: int, j: int) -> bool:
        key = (id(node), i, j)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Leaf):
            out = lip_member(self.vector(i, j), node.spec)
        elif isinstance(node, UnionExpr):
            out = any(self.accepts(c, i, j) for c in node.children)
        elif isinstance(node, ConcatExpr):
            out = self._concat(node.children, i, j)
        else:
            raise SpecError(f"unknown expression node {node!r}")
        self.memo[key] = out
        return out

    def _concat(self, children, i: int, j: int) -> bool:
        # reachable split points after each child, left to right
        ends = {i}
        for child in children:
            ends = {e for s in ends for e in range(s, j + 1) if self.accepts(child, s, e)}
            if not ends:
                return False
        return j in ends


def expr_member(x: Sequence[int], expr: Expr, alphabet: Alphabet) -> bool:
    x = tuple(x)
    for s in x:
        alphabet.check_symbol(s)
    if not is_strong(x):
        raise ValueError(f"input {alphabet.format(x)!r} contains dotted letters")
    return _Evaluator(x, alphabet).accepts(expr, 0, len(x))


def expr_enumerate(expr: Expr, alphabet: Alphabet, max_len: int) -> List[DottedWord]:
    """Members of length ``<= max_len`` in length-lexicographic order."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    letters = [make_symbol(i) for i in range(len(alphabet))]
    out: List[DottedWord] = []
    for n in range(max_len + 1):
        for x in product(letters, repeat=n):
            if _Evaluator(x, alphabet).accepts(expr, 0, n):
                out.append(x)
    return out


def leaf_vectors(spec: ComLipSpec, max_len: int) -> List[ParikhVector]:
    """Parikh vectors of the leaf language with total size ``<= max_len``."""
    out = []
    for v in product(range(max_len + 1), repeat=spec.dimension):
        if sum(v) <= max_len and lip_member(v, spec):
            out.append(v)
    return out

