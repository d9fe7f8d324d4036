"""Transformations, semi-automata and state sets.

States are the integers ``0 .. n-1``.  A word is a tuple of letter indices and
is always read left to right: ``apply_word(A, S, (x, y))`` applies ``x`` first.
The same order is used for :func:`compose`, so that
``word_transformation(A, u + v) == compose(word_transformation(A, u),
word_transformation(A, v))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]


class DegreeMismatch(ValueError):
    pass


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_members(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Transformation:
    """A total map on ``[n]``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        for i in images:
            if not 0 <= i < n:
                raise ValueError(f"image {i} out of range [0, {n})")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, state: int) -> int:
        return self.images[state]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __repr__(self) -> str:
        return f"Transformation({list(self.images)})"

    def rank(self) -> int:
        return len(set(self.images))

    def is_permutation(self) -> bool:
        return self.rank() == self.n

    def image_mask(self) -> int:
        m = 0
        for i in self.images:
            m |= 1 << i
        return m

    def inverse(self) -> "Transformation":
        if not self.is_permutation():
            raise ValueError("only permutations are invertible")
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Transformation(inv)

    def then(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def is_idempotent(self) -> bool:
        return compose(self, self) == self

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(range(n))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "Transformation":
        return cls([value] * n)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Transformation":
        """Build a permutation from disjoint cycles; fixed points may be omitted."""
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < n:
                    raise ValueError(f"point {a} out of range [0, {n})")
                if a in seen:
                    raise ValueError(f"point {a} occurs in more than one cycle")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls(images)


def compose(first: Transformation, second: Transformation) -> Transformation:
    """Apply ``first``, then ``second``."""
    if first.n != second.n:
        raise DegreeMismatch("degree mismatch")
    s = second.images
    return Transformation(s[i] for i in first.images)


def rank(t: Transformation) -> int:
    return t.rank()


@dataclass(frozen=True)
class StateSet:
    """A subset of ``[n]`` stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 0 or self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} is not a subset of [{self.n}]")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "StateSet":
        m = 0
        for i in members:
            if not 0 <= i < n:
                raise ValueError(f"state {i} out of range [0, {n})")
            m |= 1 << i
        return cls(n, m)

    @classmethod
    def full(cls, n: int) -> "StateSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "StateSet":
        return cls(n, 0)

    def __contains__(self, state: int) -> bool:
        return 0 <= state < self.n and bool(self.mask >> state & 1)

    def __iter__(self) -> Iterator[int]:
        return mask_members(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"

    def _check(self, other: "StateSet"):
        if other.n != self.n:
            raise DegreeMismatch("degree mismatch")

    def complement(self) -> "StateSet":
        return StateSet(self.n, ((1 << self.n) - 1) & ~self.mask)

    def __or__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.n, self.mask | other.mask)

    def __and__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.n, self.mask & ~other.mask)

    def issubset(self, other: "StateSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def to_frozenset(self) -> frozenset[int]:
        return frozenset(self)


def preimage(t: Transformation, s: StateSet) -> StateSet:
    if t.n != s.n:
        raise DegreeMismatch("degree mismatch")
    return StateSet.of(t.n, (q for q, img in enumerate(t.images) if img in s))


def image(t: Transformation, s: StateSet) -> StateSet:
    if t.n != s.n:
        raise DegreeMismatch("degree mismatch")
    return StateSet.of(t.n, (t.images[q] for q in s))


class SemiAutomaton:
    """A complete deterministic semi-automaton on ``[n]``.

    ``letters`` is an ordered sequence of ``(name, Transformation)`` pairs.
    Instances are treated as immutable.
    """

    __slots__ = ("n", "names", "actions", "_index")

    def __init__(self, n: int, letters: Iterable[tuple[str, Transformation]]):
        if n < 1:
            raise ValueError("a semi-automaton needs at least one state")
        names: list[str] = []
        actions: list[Transformation] = []
        for name, action in letters:
            if not name or any(ch.isspace() for ch in name):
                raise ValueError(f"invalid letter name {name!r}")
            if name in names:
                raise ValueError(f"duplicate letter name {name!r}")
            if not isinstance(action, Transformation):
                action = Transformation(action)
            if action.n != n:
                raise DegreeMismatch(f"letter {name!r} has degree {action.n}, expected {n}")
            names.append(name)
            actions.append(action)
        if not names:
            raise ValueError("the alphabet must not be empty")
        self.n = n
        self.names = tuple(names)
        self.actions = tuple(actions)
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def from_dict(cls, letters: dict[str, Sequence[int]]) -> "SemiAutomaton":
        items = [(k, Transformation(v)) for k, v in letters.items()]
        if not items:
            raise ValueError("the alphabet must not be empty")
        return cls(items[0][1].n, items)

    @property
    def letters(self) -> tuple[tuple[str, Transformation], ...]:
        return tuple(zip(self.names, self.actions))

    @property
    def alphabet_size(self) -> int:
        return len(self.actions)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemiAutomaton):
            return NotImplemented
        return self.n == other.n and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={list(t.images)}" for k, t in self.letters)
        return f"SemiAutomaton(n={self.n}, {body})"

    def word(self, text: str | Iterable[str]) -> Word:
        """Translate letter names (whitespace separated) into a word."""
        tokens = text.split() if isinstance(text, str) else list(text)
        try:
            return tuple(self._index[t] for t in tokens)
        except KeyError as exc:
            raise ValueError(f"unknown letter {exc.args[0]!r}") from None

    def spell(self, word: Word) -> str:
        return " ".join(self.names[i] for i in word)

    def check_word(self, word: Word):
        k = len(self.actions)
        for x in word:
            if not 0 <= x < k:
                raise ValueError(f"letter index {x} out of range [0, {k})")

    def full_set(self) -> StateSet:
        return StateSet.full(self.n)


def apply_word(a: SemiAutomaton, s: StateSet, w: Word) -> StateSet:
    if s.n != a.n:
        raise DegreeMismatch("degree mismatch")
    a.check_word(w)
    current = set(s)
    for x in w:
        img = a.actions[x].images
        current = {img[q] for q in current}
    return StateSet.of(a.n, current)


def word_transformation(a: SemiAutomaton, w: Word) -> Transformation:
    a.check_word(w)
    images = list(range(a.n))
    for x in w:
        img = a.actions[x].images
        images = [img[q] for q in images]
    return Transformation(images)


class ImageTable:
    """Fast images of bitmask subsets under every letter of an automaton.

    Each letter gets one lookup table per 8-bit chunk of the mask, so the
    image of a subset costs ``ceil(n / 8)`` lookups.
    """

    def __init__(self, a: SemiAutomaton):
        self.n = a.n
        self.chunks = (a.n + 7) // 8
        self.tables: list[list[list[int]]] = []
        for t in a.actions:
            per_chunk = []
            for c in range(self.chunks):
                base = 8 * c
                width = min(8, a.n - base)
                table = [0] * (1 << width)
                for byte in range(1, 1 << width):
                    low = byte & -byte
                    bit = low.bit_length() - 1
                    table[byte] = table[byte ^ low] | (1 << t.images[base + bit])
                per_chunk.append(table)
            self.tables.append(per_chunk)

    def step(self, mask: int, letter: int) -> int:
        out = 0
        for table in self.tables[letter]:
            if mask:
                out |= table[mask & 0xFF]
            mask >>= 8
        return out

    def successors(self, mask: int) -> list[int]:
        return [self.step(mask, x) for x in range(len(self.tables))]
