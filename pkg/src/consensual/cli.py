"""Command-line front end.

Commands::

    consensual compile       --spec F [--out P]
    consensual member        (--base P | --spec F) --word W
    consensual oracle-member --spec F --word W
    consensual witness       (--base P | --spec F) --word W
    consensual enumerate     (--base P | --spec F) [--max-len N] [--oracle]
    consensual verify        --spec F [--max-len N] [--sample K --seed S] [--jobs J]

Exit status: 0 success or true, 1 false or mismatch, 2 input error,
3 construction failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from . import decomposed as dec
from . import expr as ex
from .alphabet import Alphabet, AlphabetError, DottedWord, make_symbol
from .automata import AutomatonError
from .comlip import CompileError, Compiled, compile_expr
from .decomposed import DEFAULT_BOUND, DecomposedBase, DecompositionError
from .oracle import expr_enumerate, expr_member
from .recognizer import BaseError, Recognizer, WordError

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUILD = 3

EMPTY_WORD = "ε"


class InputError(Exception):
    pass


class BuildError(Exception):
    pass


def _load_spec(path: str) -> Tuple[Alphabet, ex.Expr]:
    try:
        return ex.load(path)
    except ex.ZeroPeriodError as exc:
        raise BuildError(f"{path}: {exc}") from exc
    except (ex.SpecError, OSError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_base(path: str) -> DecomposedBase:
    try:
        with open(path) as fh:
            return dec.loads(fh.read())
    except (OSError, DecompositionError, AutomatonError, AlphabetError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _compile(args, alphabet: Alphabet, expr: ex.Expr) -> Compiled:
    try:
        return compile_expr(
            expr,
            alphabet,
            module=args.module,
            double=not args.no_doubling,
            bound=args.bound,
            slot_override=args.debug_slots,
        )
    except ex.SpecError as exc:
        raise BuildError(str(exc)) from exc
    except (CompileError, DecompositionError) as exc:
        raise BuildError(str(exc)) from exc


def _base_from_args(args) -> Tuple[Alphabet, DecomposedBase]:
    if args.base:
        base = _load_base(args.base)
        return base.alphabet, base
    if args.spec:
        alphabet, expr = _load_spec(args.spec)
        return alphabet, _compile(args, alphabet, expr).base
    raise InputError("either --base or --spec is required")


def _parse_word(alphabet: Alphabet, text: Optional[str]) -> DottedWord:
    if text is None:
        raise InputError("--word is required")
    if text == EMPTY_WORD:
        return ()
    try:
        word = alphabet.parse(text)
    except AlphabetError as exc:
        raise InputError(str(exc)) from exc
    if any(s & 1 for s in word):
        raise InputError(f"word {text!r} contains dotted letters")
    return word


def _show(alphabet: Alphabet, word: DottedWord) -> str:
    return alphabet.format(word) if word else EMPTY_WORD


def _recognizer(base: DecomposedBase) -> Recognizer:
    try:
        return Recognizer(base.base)
    except BaseError as exc:
        raise BuildError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_compile(args) -> int:
    alphabet, expr = _load_spec(args.spec)
    compiled = _compile(args, alphabet, expr)
    print(compiled.describe(alphabet))
    text = dec.dumps(compiled.base)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_member(args) -> int:
    alphabet, base = _base_from_args(args)
    word = _parse_word(alphabet, args.word)
    ok = _recognizer(base).member(word)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_oracle_member(args) -> int:
    if not args.spec:
        raise InputError("--spec is required")
    alphabet, expr = _load_spec(args.spec)
    word = _parse_word(alphabet, args.word)
    ok = expr_member(word, expr, alphabet)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_witness(args) -> int:
    alphabet, base = _base_from_args(args)
    word = _parse_word(alphabet, args.word)
    w = _recognizer(base).witness(word)
    if w is None:
        print(f"{_show(alphabet, word)} is not a member")
        return EXIT_FALSE
    print(w.format(alphabet, word))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.oracle:
        if not args.spec:
            raise InputError("--oracle needs --spec")
        alphabet, expr = _load_spec(args.spec)
        words = expr_enumerate(expr, alphabet, args.max_len)
    else:
        alphabet, base = _base_from_args(args)
        words = _recognizer(base).enumerate(args.max_len)
    for w in words:
        print(_show(alphabet, w))
    return EXIT_OK


def _sample_words(alphabet: Alphabet, count: int, lo: int, hi: int, seed: int) -> List[DottedWord]:
    rng = random.Random(seed)
    letters = [make_symbol(i) for i in range(len(alphabet))]
    return [tuple(rng.choice(letters) for _ in range(rng.randint(lo, hi))) for _ in range(count)]


def _recognizer_side(base: DecomposedBase, max_len: int, samples):
    rec = Recognizer(base.base)
    return rec.enumerate(max_len), [rec.member(x) for x in samples]


def _oracle_side(expr, alphabet, max_len: int, samples):
    return expr_enumerate(expr, alphabet, max_len), [expr_member(x, expr, alphabet) for x in samples]


def verify_report(
    compiled: Compiled, alphabet: Alphabet, max_len: int, samples: Sequence[DottedWord] = (), jobs: int = 1
) -> Tuple[bool, List[str]]:
    """Compare recognizer and oracle; report lines ``+w`` (recognizer only) and ``-w`` (oracle only)."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=2) as pool:
            f1 = pool.submit(_recognizer_side, compiled.base, max_len, samples)
            f2 = pool.submit(_oracle_side, compiled.expr, alphabet, max_len, samples)
            (got, got_s), (want, want_s) = f1.result(), f2.result()
    else:
        got, got_s = _recognizer_side(compiled.base, max_len, samples)
        want, want_s = _oracle_side(compiled.expr, alphabet, max_len, samples)
    extra = sorted(set(got) - set(want), key=lambda w: (len(w), w))
    missing = sorted(set(want) - set(got), key=lambda w: (len(w), w))
    for x, a, b in zip(samples, got_s, want_s):
        if a and not b:
            extra.append(x)
        elif b and not a:
            missing.append(x)
    lines = [f"+{_show(alphabet, w)}" for w in extra] + [f"-{_show(alphabet, w)}" for w in missing]
    summary = (
        f"# max_len {max_len}: recognizer {len(got)} words, oracle {len(want)} words, "
        f"{len(samples)} sampled, {len(lines)} differences"
    )
    return not lines, [summary] + lines


def cmd_verify(args) -> int:
    alphabet, expr = _load_spec(args.spec)
    compiled = _compile(args, alphabet, expr)
    samples = []
    if args.sample:
        samples = _sample_words(alphabet, args.sample, args.max_len + 1, args.max_len + 4, args.seed)
    ok, lines = verify_report(compiled, alphabet, args.max_len, samples, args.jobs)
    print(compiled.describe(alphabet))
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_FALSE


COMMANDS = {
    "compile": cmd_compile,
    "member": cmd_member,
    "oracle-member": cmd_oracle_member,
    "witness": cmd_witness,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def _slot_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad slot list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="consensual",
        description="Compile commutative expressions into consensual bases and cross-check them.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--spec", help="expression file (JSON)")
    parser.add_argument("--base", help="serialized decomposed base")
    parser.add_argument("--word", help=f"input word, e.g. aabb ({EMPTY_WORD} for the empty word)")
    parser.add_argument("--max-len", type=int, default=10, help="enumeration bound (default 10)")
    parser.add_argument(
        "--bound", type=int, default=DEFAULT_BOUND, help="length bound for non-exact unproductivity checks"
    )
    parser.add_argument("--out", help="output file for compile")
    parser.add_argument("--module", type=int, help="force the common module (even, large enough)")
    parser.add_argument("--no-doubling", action="store_true", help="keep already even leaves as they are")
    parser.add_argument("--oracle", action="store_true", help="enumerate with the oracle instead")
    parser.add_argument("--sample", type=int, default=0, help="verify: also test K random longer words")
    parser.add_argument("--seed", type=int, default=0, help="seed for --sample")
    parser.add_argument("--jobs", type=int, default=1, help="verify: run both sides in parallel when > 1")
    # test hook: force leaf slots and skip composition checks
    parser.add_argument("--debug-slots", type=_slot_list, help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.max_len < 0:
        print("error: --max-len must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    if args.bound < 1:
        print("error: --bound must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (InputError, WordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BuildError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_BUILD


if __name__ == "__main__":
    sys.exit(main())
