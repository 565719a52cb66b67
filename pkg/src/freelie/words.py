"""Lyndon words, standard factorizations and Witt dimensions.

The basis used throughout the package is the Lyndon realization of a Hall
family: a basis element is a Lyndon word over the ordered alphabet together
with the bracketing obtained by recursing on standard factorizations.
Internally words are plain tuples of letter indices, so they compare,
hash and slice cheaply; :class:`Alphabet` maps indices back to names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import (
    AlphabetError,
    ConsistencyError,
    FactorizationError,
    UnboundGeneratorError,
)

Word = tuple  # tuple of letter indices

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Alphabet:
    """Ordered generator names; the total order is the listing order.

    Letter names must be identifier-like and prefix-free (no name may be a
    prefix of another) so that rendered words parse back unambiguously.
    """

    __slots__ = ("letters", "_index")

    def __init__(self, letters):
        if isinstance(letters, str):
            letters = letters.split(",") if "," in letters else list(letters)
        names = tuple(letters)
        if not names:
            raise AlphabetError("alphabet must contain at least one letter")
        if len(set(names)) != len(names):
            raise AlphabetError("duplicate letters in %r" % (names,))
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise AlphabetError("unusable letter name %r" % (name,))
        for name in names:
            for other in names:
                if name is not other and other.startswith(name):
                    raise AlphabetError(
                        "letter %r is a prefix of %r; words would be ambiguous"
                        % (name, other)
                    )
        self.letters = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "Alphabet(%r)" % (list(self.letters),)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnboundGeneratorError(
                "unknown generator %r (alphabet %s)" % (name, list(self.letters))
            ) from None

    def name(self, i: int) -> str:
        return self.letters[i]

    def word_str(self, word: Word) -> str:
        names = [self.letters[i] for i in word]
        if all(len(n) == 1 for n in self.letters):
            return "".join(names)
        return " ".join(names)

    def parse_word(self, text: str) -> Word:
        """Inverse of :meth:`word_str` (greedy longest match on names)."""
        if " " in text:
            return tuple(self.index(part) for part in text.split(" ") if part)
        out = []
        pos = 0
        while pos < len(text):
            for name in sorted(self.letters, key=len, reverse=True):
                if text.startswith(name, pos):
                    out.append(self._index[name])
                    pos += len(name)
                    break
            else:
                raise UnboundGeneratorError(
                    "cannot read a letter at %r in word %r" % (text[pos:], text)
                )
        if not out:
            raise UnboundGeneratorError("empty word string")
        return tuple(out)


def is_lyndon(word: Word) -> bool:
    """True when ``word`` is strictly smaller than all its proper suffixes."""
    if not word:
        return False
    return all(word < word[i:] for i in range(1, len(word)))


@lru_cache(maxsize=None)
def _std_split(word: Word) -> int:
    """Split position of the standard factorization of a Lyndon word.

    The right part is the longest proper suffix that is itself Lyndon,
    i.e. the first position (scanning left to right) whose suffix passes
    the Lyndon test.
    """
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return i
    raise FactorizationError("no factorization for %r" % (word,))


@lru_cache(maxsize=None)
def bracketing_of(word: Word):
    """Binary tree over letter indices from recursive standard factorization."""
    if len(word) == 1:
        return word[0]
    i = _std_split(word)
    return (bracketing_of(word[:i]), bracketing_of(word[i:]))


def foliage(tree) -> Word:
    """Leaf sequence of a bracketing tree."""
    if isinstance(tree, int):
        return (tree,)
    left, right = tree
    return foliage(left) + foliage(right)


@lru_cache(maxsize=None)
def lyndon_words_raw(k: int, degree: int) -> tuple:
    """All length-``degree`` Lyndon words over ``k`` letters, in lex order."""
    return tuple(w for w in product(range(k), repeat=degree) if is_lyndon(w))


@dataclass(frozen=True)
class LyndonWord:
    """A Lyndon word over a fixed alphabet."""

    alphabet: Alphabet
    word: Word

    def __post_init__(self):
        if not self.word or any(
            not isinstance(i, int) or not 0 <= i < len(self.alphabet) for i in self.word
        ):
            raise AlphabetError("word %r does not fit alphabet %r" % (self.word, self.alphabet))
        if not is_lyndon(self.word):
            raise AlphabetError(
                "%r is not a Lyndon word" % (self.alphabet.word_str(self.word),)
            )

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def multidegree(self) -> tuple:
        counts = [0] * len(self.alphabet)
        for i in self.word:
            counts[i] += 1
        return tuple(counts)

    @property
    def letters(self) -> tuple:
        return tuple(self.alphabet.name(i) for i in self.word)

    def __str__(self):
        return self.alphabet.word_str(self.word)

    def __lt__(self, other):
        return (self.degree, self.word) < (other.degree, other.word)


@dataclass(frozen=True)
class BasisElement:
    """A Lyndon word with its standard-factorization bracketing."""

    lyndon: LyndonWord

    @property
    def bracketing(self):
        return bracketing_of(self.lyndon.word)

    @property
    def degree(self) -> int:
        return self.lyndon.degree

    def foliage(self) -> Word:
        return foliage(self.bracketing)

    def __str__(self):
        return _tree_str(self.bracketing, self.lyndon.alphabet)

    def __lt__(self, other):
        return self.lyndon < other.lyndon


def _tree_str(tree, alphabet: Alphabet) -> str:
    if isinstance(tree, int):
        return alphabet.name(tree)
    left, right = tree
    return "[%s,%s]" % (_tree_str(left, alphabet), _tree_str(right, alphabet))


def lyndon_words(alphabet: Alphabet, max_degree: int) -> dict:
    """Lyndon words grouped by degree, each group in lexicographic order."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1, got %r" % (max_degree,))
    k = len(alphabet)
    return {
        d: [LyndonWord(alphabet, w) for w in lyndon_words_raw(k, d)]
        for d in range(1, max_degree + 1)
    }


def standard_factorization(w: LyndonWord):
    """Split ``w = u . v`` with ``v`` the longest proper Lyndon suffix."""
    if w.degree < 2:
        raise FactorizationError("degree-1 word %s has no factorization" % (w,))
    i = _std_split(w.word)
    return (LyndonWord(w.alphabet, w.word[:i]), LyndonWord(w.alphabet, w.word[i:]))


def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _divisors(n: int):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def witt_dimension(k: int, n: int) -> int:
    """Rank of the degree-``n`` homogeneous component over ``k`` generators.

    Computed by Moebius inversion of the necklace count:
    ``(1/n) * sum_{d | n} mu(d) * k**(n/d)``.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1, got (%r, %r)" % (k, n))
    total = sum(_mobius(d) * k ** (n // d) for d in _divisors(n))
    if total % n:
        raise ConsistencyError("Witt sum %d not divisible by %d" % (total, n))
    return total // n
