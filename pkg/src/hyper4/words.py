"""Freely reduced words over named generators.

A word is a sequence of letters (name, exponent) with exponent +1 or -1,
kept freely reduced.  The compact text form writes a generator as its
lowercase letter and the inverse as the uppercase letter, so "Ab" parses
to a^-1 b.  Concatenation reads left to right: evaluating "xy" against a
matrix assignment yields M(x) @ M(y).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

__all__ = ["Letter", "Word", "parse_word", "EMPTY_WORD"]

Letter = tuple[str, int]

T = TypeVar("T")


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for name, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {exp}")
        if stack and stack[-1][0] == name and stack[-1][1] == -exp:
            stack.pop()
        else:
            stack.append((name, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; use Word.make or parse_word to construct."""

    letters: tuple[Letter, ...]

    @classmethod
    def make(cls, letters: Iterable[Letter]) -> "Word":
        return cls(_free_reduce(letters))

    @classmethod
    def generator(cls, name: str, exp: int = 1) -> "Word":
        return cls(((name, exp),))

    def __mul__(self, other: "Word") -> "Word":
        return Word(_free_reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple((name, -exp) for name, exp in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return EMPTY_WORD
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def cyclic_reduce(self) -> "Word":
        letters = list(self.letters)
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return Word(tuple(letters))

    def evaluate(
        self,
        assignment: Mapping[str, T],
        multiply: Callable[[T, T], T],
        invert: Callable[[T], T],
        identity: T,
    ) -> T:
        """Left-to-right product of the letters under an assignment."""
        out = identity
        for name, exp in self.letters:
            try:
                value = assignment[name]
            except KeyError:
                raise ValueError(f"word uses unknown generator {name!r}") from None
            out = multiply(out, value if exp == 1 else invert(value))
        return out

    def names(self) -> set[str]:
        return {name for name, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(exp for n, exp in self.letters if n == name)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        if all(len(name) == 1 and name.isalpha() and name.islower() for name, _ in self.letters):
            return "".join(name if exp == 1 else name.upper() for name, exp in self.letters)
        return " ".join(name if exp == 1 else f"{name}^-1" for name, exp in self.letters)


EMPTY_WORD = Word(())


def parse_word(text: str) -> Word:
    """Parse compact case-coded syntax: lowercase generator, uppercase inverse.

    "1" (or the empty string) denotes the identity word.
    """
    stripped = text.strip()
    if stripped in ("", "1"):
        return EMPTY_WORD
    letters: list[Letter] = []
    for ch in stripped:
        if ch.isspace():
            continue
        if not ch.isalpha():
            raise ValueError(f"invalid character {ch!r} in word {text!r}")
        letters.append((ch.lower(), 1 if ch.islower() else -1))
    return Word.make(letters)
