"""Free-group word arithmetic.

Words are freely reduced sequences of signed letters.  A letter is a nonzero
int: ``+(i+1)`` for generator i, ``-(i+1)`` for its inverse.  Every public
constructor reduces, so downstream code may assume reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import EmptyRelator, ParseError, UnknownGenerator


class Alphabet:
    """An ordered set of generator names with stable indices 0..n-1."""

    def __init__(self, names: Sequence[str]):
        names = list(names)
        if len(names) < 1:
            raise ValueError("alphabet needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names: {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def name(self, index: int) -> str:
        return self.names[index]

    def extend(self, extra: Sequence[str]) -> "Alphabet":
        return Alphabet(self.names + list(extra))

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __repr__(self) -> str:
        return f"Alphabet({self.names!r})"


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class Word:
    """A freely reduced word.  Immutable and hashable."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = (), *, _reduced: bool = False):
        if _reduced:
            object.__setattr__(self, "letters", tuple(letters))
        else:
            object.__setattr__(self, "letters", _free_reduce(letters))

    def __setattr__(self, *a):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.letters < other.letters

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), _reduced=True)

    def conjugate(self, by: "Word") -> "Word":
        """by^-1 * self * by."""
        return by.inverse() * self * by

    def rotate(self, k: int) -> "Word":
        """Cyclic left rotation by k letters.  Only meaningful on cyclically
        reduced words (the result is then still reduced)."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def generators(self) -> set[int]:
        """0-based indices of the generators appearing in the word."""
        return {abs(x) - 1 for x in self.letters}

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    @staticmethod
    def generator(index: int, sign: int = 1) -> "Word":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return Word((sign * (index + 1),), _reduced=True)

    @staticmethod
    def parse(text: str, alphabet: Alphabet) -> "Word":
        """Parse the shared word syntax: whitespace-separated tokens, each
        ``name`` or ``name^<integer>``.  Powers expand; the result reduces.
        The empty string (or "1") parses to the empty word."""
        letters: list[int] = []
        text = text.strip()
        if text in ("", "1"):
            return Word()
        for token in text.split():
            name, _, power = token.partition("^")
            if _ and not power:
                raise ParseError(f"bad token {token!r}")
            try:
                exp = int(power) if power else 1
            except ValueError:
                raise ParseError(f"bad exponent in token {token!r}") from None
            idx = alphabet.index(name)
            letter = idx + 1 if exp >= 0 else -(idx + 1)
            letters.extend([letter] * abs(exp))
        return Word(letters)

    def format(self, alphabet: Alphabet) -> str:
        """Inverse of parse, with runs collapsed into powers."""
        if not self.letters:
            return "1"
        parts: list[str] = []
        i = 0
        while i < len(self.letters):
            x = self.letters[i]
            j = i
            while j < len(self.letters) and self.letters[j] == x:
                j += 1
            run = j - i
            name = alphabet.name(abs(x) - 1)
            exp = run if x > 0 else -run
            parts.append(name if exp == 1 else f"{name}^{exp}")
            i = j
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word({self.letters!r})"


EMPTY = Word()


def reduce_word(letters: Iterable[int]) -> Word:
    """Free reduction of a raw letter sequence."""
    return Word(letters)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Strip conjugation: returns (core, conjugator) with
    w = conjugator * core * conjugator^-1 and core cyclically reduced.
    The conjugator is the stripped prefix."""
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    core = Word(letters[i:j], _reduced=True)
    conjugator = Word(letters[:i], _reduced=True)
    return core, conjugator


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


def conjugacy_equal(u: Word, v: Word) -> bool:
    """True iff u and v are conjugate in the free group: their cyclically
    reduced cores are rotations of one another."""
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    return cu.letters in _rotation_set(cv)


def _rotation_set(w: Word) -> set[tuple[int, ...]]:
    n = len(w)
    doubled = w.letters * 2
    return {doubled[k : k + n] for k in range(n)}


def _least_rotation(letters: tuple[int, ...]) -> int:
    """Booth's algorithm: index of the lexicographically least rotation."""
    n = len(letters)
    doubled = letters + letters
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = f[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(w: Word) -> Word:
    """Lexicographically least rotation of a cyclically reduced word."""
    if not w:
        return w
    return w.rotate(_least_rotation(w.letters))


def _primitive_period(letters: tuple[int, ...]) -> int:
    """Smallest p dividing len(letters) with rotation by p a fixed point."""
    n = len(letters)
    for p in range(1, n + 1):
        if n % p == 0 and letters[p:] + letters[:p] == letters:
            return p
    return n


@dataclass(frozen=True)
class CyclicClass:
    """One cyclic conjugacy class inside a symmetrized closure: the canonical
    (lexicographically least) rotation plus its primitive period.  The class
    contributes exactly `period` distinct closure words, the rotations by
    0..period-1."""

    rep: Word
    period: int

    @property
    def length(self) -> int:
        return len(self.rep)

    def rotations(self) -> list[Word]:
        return [self.rep.rotate(k) for k in range(self.period)]


class SymmetrizedSet:
    """A relator set closed under inversion and cyclic permutation.

    Stored as cyclic classes; the full closure (every rotation of every
    core and inverse core) is materialized lazily, so large relator families
    stay cheap to symmetrize."""

    def __init__(self, alphabet: Alphabet, seeds: Sequence[Word]):
        self.alphabet = alphabet
        self.seeds = list(seeds)
        by_rep: dict[tuple[int, ...], CyclicClass] = {}
        for seed in self.seeds:
            core, _ = cyclic_reduce(seed)
            if not core:
                raise EmptyRelator(
                    f"seed {seed.format(alphabet)!r} reduces to the empty word"
                )
            for base in (core, core.inverse()):
                rep = canonical_rotation(base)
                if rep.letters not in by_rep:
                    by_rep[rep.letters] = CyclicClass(
                        rep=rep, period=_primitive_period(rep.letters))
        self.classes = [by_rep[k] for k in sorted(by_rep)]
        # deterministic comparison key: the sorted class representatives
        self.key = tuple(sorted(by_rep))
        self._closure: Optional[frozenset[Word]] = None

    @property
    def closure(self) -> frozenset[Word]:
        if self._closure is None:
            words: set[Word] = set()
            for cls in self.classes:
                words.update(cls.rotations())
            self._closure = frozenset(words)
        return self._closure

    def total_letters(self) -> int:
        return sum(c.period * c.length for c in self.classes)

    def max_length(self) -> int:
        return max((c.length for c in self.classes), default=0)

    def __len__(self) -> int:
        return sum(c.period for c in self.classes)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.sorted_words())

    def __contains__(self, w: Word) -> bool:
        if len(w) < 2:
            return any(c.rep == w for c in self.classes)
        return any(c.length == len(w) and canonical_rotation(w) == c.rep
                   for c in self.classes)

    def sorted_words(self) -> list[Word]:
        return sorted(self.closure, key=lambda w: w.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetrizedSet) and self.key == other.key

    def __repr__(self) -> str:
        return (f"SymmetrizedSet({len(self)} words in {len(self.classes)} "
                f"cyclic classes over {self.alphabet.names})")


def symmetrize(seeds: Sequence[Word], alphabet: Alphabet) -> SymmetrizedSet:
    return SymmetrizedSet(alphabet, seeds)


@dataclass(frozen=True)
class WordMap:
    """A map generator -> Word, extended to words letterwise."""

    alphabet: Alphabet
    images: tuple[Word, ...]
    involution: bool = False

    def __post_init__(self):
        if len(self.images) != len(self.alphabet):
            raise ValueError("need one image per generator")
        if self.involution:
            for i in range(len(self.alphabet)):
                if self(self.images[i]) != Word.generator(i):
                    raise ValueError(
                        f"map is not an involution at generator "
                        f"{self.alphabet.name(i)!r}"
                    )

    def __call__(self, w: Word) -> Word:
        letters: list[int] = []
        for x in w:
            idx = abs(x) - 1
            if idx >= len(self.images):
                raise UnknownGenerator(f"letter index {idx} outside alphabet")
            img = self.images[idx] if x > 0 else self.images[idx].inverse()
            letters.extend(img.letters)
        return Word(letters)

    @staticmethod
    def from_pairs(
        alphabet: Alphabet, pairs: dict[str, str], involution: bool = False
    ) -> "WordMap":
        """Build from name -> word-text pairs; unmentioned generators map to
        themselves."""
        images = [Word.generator(i) for i in range(len(alphabet))]
        for name, text in pairs.items():
            images[alphabet.index(name)] = Word.parse(text, alphabet)
        return WordMap(alphabet, tuple(images), involution=involution)

    @staticmethod
    def identity(alphabet: Alphabet) -> "WordMap":
        images = tuple(Word.generator(i) for i in range(len(alphabet)))
        return WordMap(alphabet, images, involution=True)


def apply_map(m: WordMap, w: Word) -> Word:
    return m(w)


# The two formal generators used by substitution templates.
XY = Alphabet(["X", "Y"])


def substitute(r: Word, a: Word, b: Word) -> Word:
    """Substitute a for X and b for Y in a template word over {X, Y}."""
    letters: list[int] = []
    for x in r:
        idx = abs(x) - 1
        if idx > 1:
            raise UnknownGenerator("template words may only use X and Y")
        img = (a, b)[idx]
        if x < 0:
            img = img.inverse()
        letters.extend(img.letters)
    return Word(letters)
