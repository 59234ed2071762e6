from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .errors import BraidParseError, StrandMismatchError

# Token index reserved for powers of the half twist.
DELTA_INDEX = 0

_GENERATOR_RE = re.compile(r"^s(?P<index>\d+)(?:\^(?P<exp>[+-]?\d+))?$")
_DELTA_RE = re.compile(r"^D(?:\^(?P<exp>[+-]?\d+))?$")
_INTEGER_RE = re.compile(r"^[+-]?\d+$")
_IDENTITY_TOKENS = {"e"}


def half_twist_letters(n: int) -> List[int]:
    """Positive Artin word of Δ: (s1)(s2 s1)(s3 s2 s1)..."""
    letters: List[int] = []
    for top in range(1, n):
        letters.extend(range(top, 0, -1))
    return letters


@dataclass(frozen=True)
class GeneratorWord:
    """A word in the Artin generators and the half twist.

    ``tokens`` holds ``(index, exponent)`` pairs. A positive index is a generator
    with exponent +1 or -1; index 0 is Δ raised to any integer exponent.
    """

    n: int
    tokens: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BraidParseError(f"strand count must be positive, got {self.n}")
        for index, exp in self.tokens:
            if index == DELTA_INDEX:
                continue
            if not 1 <= index <= self.n - 1:
                raise BraidParseError(f"generator s{index} out of range for n={self.n}")
            if exp not in (1, -1):
                raise BraidParseError(f"generator exponent must be +1 or -1, got {exp}")

    @classmethod
    def parse(cls, n: int, text: str) -> "GeneratorWord":
        cleaned = text.replace(",", " ").replace("[", " ").replace("]", " ")
        cleaned = cleaned.replace("(", " ").replace(")", " ").replace("*", " ")
        raw = cleaned.split()
        if not raw or (len(raw) == 1 and raw[0] in _IDENTITY_TOKENS):
            return cls(n, ())
        if all(_INTEGER_RE.match(tok) for tok in raw):
            return cls.from_letters(n, (int(tok) for tok in raw))

        tokens: List[Tuple[int, int]] = []
        for tok in raw:
            m = _GENERATOR_RE.match(tok)
            if m:
                index = int(m.group("index"))
                exp = int(m.group("exp") or 1)
                if index == 0:
                    raise BraidParseError(f"unknown generator {tok!r}")
                step = 1 if exp > 0 else -1
                tokens.extend((index, step) for _ in range(abs(exp)))
                continue
            m = _DELTA_RE.match(tok)
            if m:
                exp = int(m.group("exp") or 1)
                if exp:
                    tokens.append((DELTA_INDEX, exp))
                continue
            raise BraidParseError(f"unknown token {tok!r}")
        return cls(n, tuple(tokens))

    @classmethod
    def from_letters(cls, n: int, letters: Iterable[int]) -> "GeneratorWord":
        tokens = []
        for letter in letters:
            if letter == 0:
                raise BraidParseError("generator index 0 is not allowed")
            tokens.append((abs(letter), 1 if letter > 0 else -1))
        return cls(n, tuple(tokens))

    def letters(self) -> List[int]:
        """Signed generator indices, with every Δ token expanded."""
        out: List[int] = []
        positive_delta = half_twist_letters(self.n)
        negative_delta = [-i for i in reversed(positive_delta)]
        for index, exp in self.tokens:
            if index == DELTA_INDEX:
                block = positive_delta if exp > 0 else negative_delta
                for _ in range(abs(exp)):
                    out.extend(block)
            else:
                out.append(index * exp)
        return out

    def is_positive(self) -> bool:
        return all(exp > 0 for _, exp in self.tokens)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(self.n, tuple((i, -e) for i, e in reversed(self.tokens)))

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if other.n != self.n:
            raise StrandMismatchError(self.n, other.n)
        return GeneratorWord(self.n, self.tokens + other.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        if not self.tokens:
            return "e"
        parts = []
        for index, exp in self.tokens:
            if index == DELTA_INDEX:
                parts.append("D" if exp == 1 else f"D^{exp}")
            else:
                parts.append(f"s{index}" if exp == 1 else f"s{index}^-1")
        return " ".join(parts)


def random_word(n: int, length: int, rng: random.Random, positive: bool = False) -> GeneratorWord:
    if n < 2:
        return GeneratorWord(n, ())
    letters = []
    for _ in range(length):
        index = rng.randint(1, n - 1)
        if not positive and rng.random() < 0.5:
            index = -index
        letters.append(index)
    return GeneratorWord.from_letters(n, letters)
