"""Double alphabet, dotted words and the match operator.

A symbol of the double alphabet is encoded as a small integer
``2 * letter + dotted`` where ``letter`` indexes into an :class:`Alphabet`.
With this encoding the natural integer order puts every dotted symbol right
after its undotted letter, which is the order used for enumeration.

A dotted word is a plain tuple of symbol codes.  Parikh vectors are tuples
of nonnegative integers, one component per letter in alphabet order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence, Tuple

Symbol = int
DottedWord = Tuple[int, ...]
ParikhVector = Tuple[int, ...]

DOT_PREFIX = "."


class AlphabetError(ValueError):
    """Raised for malformed alphabets, symbols or textual words."""


def make_symbol(letter: int, dotted: bool = False) -> Symbol:
    return 2 * letter + (1 if dotted else 0)


def letter_of(symbol: Symbol) -> int:
    return symbol >> 1


def is_dotted(symbol: Symbol) -> bool:
    return bool(symbol & 1)


@dataclass(frozen=True)
class Alphabet:
    """An ordered, nonempty set of single-character terminal letters."""

    letters: Tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise AlphabetError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letters in {letters!r}")
        for letter in letters:
            if len(letter) != 1 or not letter.isascii() or letter == DOT_PREFIX or letter.isspace():
                raise AlphabetError(f"letters must be single ASCII characters, got {letter!r}")

    @classmethod
    def of(cls, letters: Iterable[str] | str) -> "Alphabet":
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def size(self) -> int:
        return len(self.letters)

    @property
    def symbols(self) -> range:
        """All symbol codes of the double alphabet, in enumeration order."""
        return range(2 * len(self.letters))

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise AlphabetError(f"letter {letter!r} not in alphabet {self.letters!r}") from None

    def symbol(self, letter: str, dotted: bool = False) -> Symbol:
        return make_symbol(self.index(letter), dotted)

    def check_symbol(self, symbol: Symbol) -> None:
        if not 0 <= symbol < 2 * len(self.letters):
            raise AlphabetError(f"symbol code {symbol} out of range")

    # textual syntax: "a" is undotted, ".a" is dotted

    def parse(self, text: str) -> DottedWord:
        """Parse the textual word syntax, e.g. ``".ab.b"``; whitespace is ignored."""
        out = []
        dotted = False
        for ch in text:
            if ch.isspace():
                if dotted:
                    raise AlphabetError(f"dot not followed by a letter in {text!r}")
                continue
            if ch == DOT_PREFIX:
                if dotted:
                    raise AlphabetError(f"double dot in {text!r}")
                dotted = True
                continue
            out.append(make_symbol(self.index(ch), dotted))
            dotted = False
        if dotted:
            raise AlphabetError(f"trailing dot in {text!r}")
        return tuple(out)

    def parse_strong(self, text: str) -> DottedWord:
        """Parse a word that must not contain dotted letters."""
        word = self.parse(text)
        if not is_strong(word):
            raise AlphabetError(f"word {text!r} contains dotted letters")
        return word

    def format_symbol(self, symbol: Symbol) -> str:
        letter = self.letters[letter_of(symbol)]
        return DOT_PREFIX + letter if is_dotted(symbol) else letter

    def format(self, word: Sequence[Symbol]) -> str:
        return "".join(self.format_symbol(s) for s in word)

    def format_aligned(self, word: Sequence[Symbol]) -> str:
        """Two characters per position, so that words of equal length line up."""
        return "".join(self.format_symbol(s).rjust(2) for s in word)

    def letter_symbols(self, letter: int) -> Tuple[Symbol, Symbol]:
        """The pair (a, dotted a), i.e. the per-letter set a-tilde."""
        return make_symbol(letter, False), make_symbol(letter, True)


def match_symbol(s1: Symbol, s2: Symbol) -> Optional[Symbol]:
    """Match of two symbols; ``None`` where the match is undefined."""
    if s1 >> 1 != s2 >> 1:
        return None
    d1, d2 = s1 & 1, s2 & 1
    if d1 and d2:
        return s1
    if d1 or d2:
        return s1 & ~1
    return None


def match_word(w1: Sequence[Symbol], w2: Sequence[Symbol]) -> Optional[DottedWord]:
    if len(w1) != len(w2):
        return None
    out = []
    for s1, s2 in zip(w1, w2):
        s = match_symbol(s1, s2)
        if s is None:
            return None
        out.append(s)
    return tuple(out)


def match_all(words: Iterable[Sequence[Symbol]]) -> Optional[DottedWord]:
    """Iterated match of one or more words."""
    it = iter(words)
    try:
        acc: Optional[DottedWord] = tuple(next(it))
    except StopIteration:
        raise ValueError("match_all needs at least one word") from None
    for w in it:
        acc = match_word(acc, w)
        if acc is None:
            return None
    return acc


def switch(word: Sequence[Symbol]) -> DottedWord:
    return tuple(s ^ 1 for s in word)


def dot(word: Sequence[Symbol]) -> DottedWord:
    return tuple(s | 1 for s in word)


def undot(word: Sequence[Symbol]) -> DottedWord:
    return tuple(s & ~1 for s in word)


def is_strong(word: Sequence[Symbol]) -> bool:
    return not any(s & 1 for s in word)


def is_all_dotted(word: Sequence[Symbol]) -> bool:
    return all(s & 1 for s in word)


def project(word: Sequence[Symbol], letters: Iterable[int]) -> DottedWord:
    """Keep the symbols (dotted or not) whose letter is in ``letters``."""
    keep = set(letters)
    return tuple(s for s in word if s >> 1 in keep)


def parikh(word: Sequence[Symbol], alphabet: Alphabet) -> ParikhVector:
    """Letter counts, dotted and undotted occurrences alike."""
    counts = [0] * len(alphabet)
    for s in word:
        counts[s >> 1] += 1
    return tuple(counts)


def parikh_placed(word: Sequence[Symbol], alphabet: Alphabet) -> ParikhVector:
    """Letter counts over the undotted positions only."""
    counts = [0] * len(alphabet)
    for s in word:
        if not s & 1:
            counts[s >> 1] += 1
    return tuple(counts)


def parikh_dotted(word: Sequence[Symbol], alphabet: Alphabet) -> ParikhVector:
    counts = [0] * len(alphabet)
    for s in word:
        if s & 1:
            counts[s >> 1] += 1
    return tuple(counts)


def words_over(alphabet: Alphabet, max_len: int, dotted: bool = False):
    """All words of length <= max_len in length-lexicographic order.

    Only undotted words by default; ``dotted=True`` ranges over the whole
    double alphabet.
    """
    symbols = list(alphabet.symbols) if dotted else [make_symbol(i) for i in range(len(alphabet))]
    for n in range(max_len + 1):
        for w in product(symbols, repeat=n):
            yield w
