"""COM-LIP specifications and union/concatenation expressions over them.

Expression files are JSON::

    {"alphabet": ["a", "b"],
     "expr": {"union": [
         {"comlip": {"constant": [0, 0], "periods": [[1, 1]]}},
         {"comlip": {"constant": [0, 0], "periods": [[1, 2]]}}]}}

A leaf may carry ``"allow_empty": true``; it only matters when the constant
is zero and decides whether the empty word (all coefficients zero) belongs
to the leaf's language.  It defaults to false, matching ``com((ab)+)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

from .alphabet import Alphabet, AlphabetError, ParikhVector


class SpecError(ValueError):
    """An expression or specification is malformed."""


class ZeroPeriodError(SpecError):
    """A period vector is all zeros."""


@dataclass(frozen=True)
class ComLipSpec:
    """Commutative language whose Parikh image is ``c + N p1 + ... + N pq``."""

    constant: ParikhVector
    periods: Tuple[ParikhVector, ...]
    allow_empty: bool = False

    def __post_init__(self):
        c = tuple(self.constant)
        ps = tuple(tuple(p) for p in self.periods)
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "periods", ps)
        if not ps:
            raise SpecError("at least one period is required")
        for v in (c,) + ps:
            if len(v) != len(c):
                raise SpecError("constant and periods must have the same length")
            if any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in v):
                raise SpecError(f"vector components must be nonnegative integers: {v!r}")
        for p in ps:
            if not any(p):
                raise ZeroPeriodError("zero period")

    @property
    def dimension(self) -> int:
        return len(self.constant)

    @property
    def all_even(self) -> bool:
        return all(x % 2 == 0 for p in self.periods for x in p)

    @property
    def empty_member(self) -> bool:
        """Whether the empty word is in the language."""
        return not any(self.constant) and self.allow_empty

    def __str__(self) -> str:
        ps = " + ".join(f"N{list(p)}" for p in self.periods)
        star = "" if any(self.constant) or self.allow_empty else " (nonempty)"
        return f"{list(self.constant)} + {ps}{star}"


@dataclass(frozen=True)
class Leaf:
    spec: ComLipSpec


@dataclass(frozen=True)
class UnionExpr:
    children: Tuple["Expr", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise SpecError("union needs at least two children")


@dataclass(frozen=True)
class ConcatExpr:
    children: Tuple["Expr", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise SpecError("concatenation needs at least two children")


Expr = Union[Leaf, UnionExpr, ConcatExpr]


def leaf(constant: Sequence[int], *periods: Sequence[int], allow_empty: bool = False) -> Leaf:
    return Leaf(ComLipSpec(tuple(constant), tuple(tuple(p) for p in periods), allow_empty))


def union_of(*children: Expr) -> Expr:
    return children[0] if len(children) == 1 else UnionExpr(children)


def concat_of(*children: Expr) -> Expr:
    return children[0] if len(children) == 1 else ConcatExpr(children)


def leaves(expr: Expr) -> Iterator[ComLipSpec]:
    if isinstance(expr, Leaf):
        yield expr.spec
    else:
        for child in expr.children:
            yield from leaves(child)


def check_expr(expr: Expr, alphabet: Alphabet) -> None:
    for spec in leaves(expr):
        if spec.dimension != len(alphabet):
            raise SpecError(
                f"leaf {spec} has {spec.dimension} components, alphabet has {len(alphabet)} letters"
            )


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Leaf):
        return f"com({expr.spec})"
    op = " | " if isinstance(expr, UnionExpr) else " . "
    return "(" + op.join(format_expr(c) for c in expr.children) + ")"


# ---------------------------------------------------------------------------
# file format


def expr_from_json(obj) -> Expr:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SpecError(f"expression node must be an object with one key, got {obj!r}")
    (key, value), = obj.items()
    if key == "comlip":
        if not isinstance(value, dict):
            raise SpecError("comlip leaf must be an object")
        unknown = set(value) - {"constant", "periods", "allow_empty"}
        if unknown:
            raise SpecError(f"unknown comlip fields {sorted(unknown)}")
        try:
            constant = value["constant"]
            periods = value["periods"]
        except KeyError as exc:
            raise SpecError(f"comlip leaf lacks {exc.args[0]!r}") from None
        if not isinstance(constant, list) or not isinstance(periods, list):
            raise SpecError("constant and periods must be lists")
        allow_empty = value.get("allow_empty", False)
        if not isinstance(allow_empty, bool):
            raise SpecError("allow_empty must be a boolean")
        return Leaf(ComLipSpec(tuple(constant), tuple(tuple(p) if isinstance(p, list) else p for p in periods), allow_empty))
    if key in ("union", "concat"):
        if not isinstance(value, list):
            raise SpecError(f"{key} takes a list of children")
        children = tuple(expr_from_json(c) for c in value)
        return UnionExpr(children) if key == "union" else ConcatExpr(children)
    raise SpecError(f"unknown expression node {key!r}")


def expr_to_json(expr: Expr):
    if isinstance(expr, Leaf):
        spec = expr.spec
        out = {"constant": list(spec.constant), "periods": [list(p) for p in spec.periods]}
        if spec.allow_empty:
            out["allow_empty"] = True
        return {"comlip": out}
    key = "union" if isinstance(expr, UnionExpr) else "concat"
    return {key: [expr_to_json(c) for c in expr.children]}


def loads(text: str) -> Tuple[Alphabet, Expr]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"alphabet", "expr"}:
        raise SpecError('expression file needs exactly the keys "alphabet" and "expr"')
    letters = doc["alphabet"]
    if not isinstance(letters, list) or not all(isinstance(x, str) for x in letters):
        raise SpecError("alphabet must be a list of letters")
    try:
        alphabet = Alphabet(tuple(letters))
    except AlphabetError as exc:
        raise SpecError(str(exc)) from exc
    try:
        expr = expr_from_json(doc["expr"])
    except TypeError as exc:
        raise SpecError(str(exc)) from exc
    check_expr(expr, alphabet)
    return alphabet, expr


def dumps(alphabet: Alphabet, expr: Expr) -> str:
    return json.dumps({"alphabet": list(alphabet.letters), "expr": expr_to_json(expr)}, indent=2) + "\n"


def load(path) -> Tuple[Alphabet, Expr]:
    with open(path) as fh:
        return loads(fh.read())


def all_specs(expr: Expr) -> List[ComLipSpec]:
    return list(leaves(expr))
