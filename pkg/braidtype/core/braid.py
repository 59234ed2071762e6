from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .errors import BraidError, StrandMismatchError
from .words import DELTA_INDEX, GeneratorWord

Perm = Tuple[int, ...]

# Permutations are 0-based: perm[i] is the end position of the strand that starts
# at position i. Products read left to right, so (s * t)[i] == t[s[i]].
RENORM_CACHE_SIZE = 1 << 16


def _identity(n: int) -> Perm:
    return tuple(range(n))


def _half_twist(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _invert(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


def _compose(a: Perm, b: Perm) -> Perm:
    return tuple(b[v] for v in a)


def _complement(a: Perm) -> Perm:
    # s^-1 Δ
    n = len(a)
    inv = _invert(a)
    return tuple(n - 1 - inv[i] for i in range(n))


def _left_complement(a: Perm) -> Perm:
    # Δ s^-1
    n = len(a)
    inv = _invert(a)
    return tuple(inv[n - 1 - i] for i in range(n))


def _tau(a: Perm, k: int) -> Perm:
    if k % 2 == 0:
        return a
    n = len(a)
    return tuple(n - 1 - a[n - 1 - i] for i in range(n))


def _meet(a: Perm, b: Perm) -> Perm:
    """Greedy gcd: strip common atoms from both until none is left."""
    n = len(a)
    qa, qb = list(a), list(b)
    # uinv[v] is the index i with u[i] == v
    uinv = list(range(n))
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if qa[k] > qa[k + 1] and qb[k] > qb[k + 1]:
                qa[k], qa[k + 1] = qa[k + 1], qa[k]
                qb[k], qb[k + 1] = qb[k + 1], qb[k]
                uinv[k], uinv[k + 1] = uinv[k + 1], uinv[k]
                changed = True
    return _invert(tuple(uinv))


@lru_cache(maxsize=RENORM_CACHE_SIZE)
def _renorm(a: Perm, b: Perm) -> Tuple[Perm, Perm]:
    """Make the pair (a, b) left-weighted without changing the product a*b."""
    t = _meet(_complement(a), b)
    if t == _identity(len(a)):
        return a, b
    return _compose(a, t), _compose(_invert(t), b)


def _append(seq: List[Perm], s: Perm) -> None:
    seq.append(s)
    for j in range(len(seq) - 2, -1, -1):
        a, b = _renorm(seq[j], seq[j + 1])
        if a == seq[j]:
            break
        seq[j], seq[j + 1] = a, b


@dataclass(frozen=True)
class SimpleBraid:
    """A permutation braid: every pair of strands crosses at most once."""

    perm: Perm

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise BraidError(f"not a permutation: {self.perm}")

    @classmethod
    def identity(cls, n: int) -> "SimpleBraid":
        return cls(_identity(n))

    @classmethod
    def delta(cls, n: int) -> "SimpleBraid":
        return cls(_half_twist(n))

    @classmethod
    def generator(cls, n: int, i: int) -> "SimpleBraid":
        if not 1 <= i <= n - 1:
            raise BraidError(f"generator s{i} out of range for n={n}")
        perm = list(range(n))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return cls(tuple(perm))

    @classmethod
    def from_letters(cls, n: int, letters: Iterable[int]) -> "SimpleBraid":
        """Build from a positive word, rejecting words that are not simple."""
        perm = _identity(n)
        for letter in letters:
            gen = cls.generator(n, letter).perm
            nxt = _compose(perm, gen)
            if _inversions(nxt) != _inversions(perm) + 1:
                raise BraidError("word is not a permutation braid")
            perm = nxt
        return cls(perm)

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def length(self) -> int:
        return _inversions(self.perm)

    def is_identity(self) -> bool:
        return self.perm == _identity(self.n)

    def is_delta(self) -> bool:
        return self.perm == _half_twist(self.n)

    def left_descents(self) -> List[int]:
        """Generators s_k with s_k dividing this braid on the left."""
        return [k for k in range(1, self.n) if self.perm[k - 1] > self.perm[k]]

    def artin_word(self) -> List[int]:
        perm = list(self.perm)
        word: List[int] = []
        while True:
            for k in range(1, self.n):
                if perm[k - 1] > perm[k]:
                    word.append(k)
                    perm[k - 1], perm[k] = perm[k], perm[k - 1]
                    break
            else:
                return word

    def complement(self) -> "SimpleBraid":
        return SimpleBraid(_complement(self.perm))

    def left_complement(self) -> "SimpleBraid":
        return SimpleBraid(_left_complement(self.perm))

    def tau(self, k: int = 1) -> "SimpleBraid":
        return SimpleBraid(_tau(self.perm, k))

    def meet(self, other: "SimpleBraid") -> "SimpleBraid":
        _check_same_n(self.n, other.n)
        return SimpleBraid(_meet(self.perm, other.perm))

    def divides(self, other: "SimpleBraid") -> bool:
        return self.meet(other) == self

    def __str__(self) -> str:
        word = self.artin_word()
        return " ".join(f"s{i}" for i in word) if word else "e"


def _inversions(perm: Perm) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def _check_same_n(a: int, b: int) -> None:
    if a != b:
        raise StrandMismatchError(a, b)


@dataclass(frozen=True)
class CanonicalBraid:
    """Left normal form Δ^power · x_1 ⋯ x_r with proper, left-weighted factors."""

    n: int
    power: int = 0
    factors: Tuple[SimpleBraid, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BraidError(f"strand count must be positive, got {self.n}")
        if self.n == 1 and (self.power or self.factors):
            raise BraidError("B_1 is trivial")
        for f in self.factors:
            if f.n != self.n:
                raise StrandMismatchError(self.n, f.n)
            if f.is_identity() or f.is_delta():
                raise BraidError("normal-form factors must be proper simple braids")

    # construction

    @classmethod
    def identity(cls, n: int) -> "CanonicalBraid":
        return cls(n, 0, ())

    @classmethod
    def delta(cls, n: int, k: int = 1) -> "CanonicalBraid":
        return cls(n, k if n > 1 else 0, ())

    @classmethod
    def from_simple(cls, s: SimpleBraid) -> "CanonicalBraid":
        return _normalise(s.n, 0, [s.perm])

    @classmethod
    def from_word(cls, word: GeneratorWord) -> "CanonicalBraid":
        return normal_form(word)

    @classmethod
    def parse(cls, n: int, text: str) -> "CanonicalBraid":
        return normal_form(GeneratorWord.parse(n, text))

    # Garside bookkeeping

    @property
    def inf(self) -> int:
        return self.power

    @property
    def sup(self) -> int:
        return self.power + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_identity(self) -> bool:
        return self.power == 0 and not self.factors

    def is_delta_power(self) -> bool:
        return not self.factors

    def is_normalised(self) -> bool:
        return all(is_left_weighted(a, b) for a, b in zip(self.factors, self.factors[1:]))

    def initial_factor(self) -> SimpleBraid:
        return initial_factor(self)

    def final_factor(self) -> SimpleBraid:
        return final_factor(self)

    # arithmetic

    def __mul__(self, other: "CanonicalBraid") -> "CanonicalBraid":
        return multiply(self, other)

    def inverse(self) -> "CanonicalBraid":
        return inverse(self)

    def __pow__(self, k: int) -> "CanonicalBraid":
        base = self if k >= 0 else self.inverse()
        result = CanonicalBraid.identity(self.n)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def tau(self, k: int = 1) -> "CanonicalBraid":
        return tau(self, k)

    def conjugate(self, c: "CanonicalBraid") -> "CanonicalBraid":
        """c^-1 · self · c"""
        return c.inverse() * self * c

    # words

    def to_word(self) -> GeneratorWord:
        tokens: List[Tuple[int, int]] = []
        if self.power:
            tokens.append((DELTA_INDEX, self.power))
        for f in self.factors:
            tokens.extend((i, 1) for i in f.artin_word())
        return GeneratorWord(self.n, tuple(tokens))

    def positive_word(self) -> GeneratorWord:
        if self.power < 0:
            raise BraidError("braid is not positive")
        return GeneratorWord.from_letters(self.n, self.to_word().letters())

    def __str__(self) -> str:
        return str(self.to_word())


def all_simples(n: int) -> List[SimpleBraid]:
    return [SimpleBraid(p) for p in itertools.permutations(range(n))]


def _normalise(n: int, power: int, factors: Iterable[Perm]) -> CanonicalBraid:
    if n == 1:
        return CanonicalBraid(1, 0, ())
    delta = _half_twist(n)
    ident = _identity(n)
    seq: List[Perm] = []
    for f in factors:
        _append(seq, f)
    lead = 0
    while lead < len(seq) and seq[lead] == delta:
        lead += 1
    end = len(seq)
    while end > lead and seq[end - 1] == ident:
        end -= 1
    return CanonicalBraid(n, power + lead, tuple(SimpleBraid(f) for f in seq[lead:end]))


def normal_form(w: GeneratorWord) -> CanonicalBraid:
    n = w.n
    if n == 1:
        return CanonicalBraid(1, 0, ())
    # Walk right to left; each factor is conjugated by the Δ-power to its right.
    acc = 0
    out: List[Perm] = []
    for index, exp in reversed(w.tokens):
        if index == DELTA_INDEX:
            acc += exp
            continue
        gen = SimpleBraid.generator(n, index).perm
        if exp > 0:
            out.append(_tau(gen, acc))
        else:
            # s^-1 = Δ^-1 · (Δ s^-1)
            out.append(_tau(_left_complement(gen), acc))
            acc -= 1
    out.reverse()
    return _normalise(n, acc, out)


def multiply(a: CanonicalBraid, b: CanonicalBraid) -> CanonicalBraid:
    _check_same_n(a.n, b.n)
    q = b.power
    factors = [_tau(f.perm, q) for f in a.factors]
    factors.extend(f.perm for f in b.factors)
    return _normalise(a.n, a.power + q, factors)


def inverse(x: CanonicalBraid) -> CanonicalBraid:
    r = len(x.factors)
    p = x.power
    factors = [
        _tau(_left_complement(x.factors[r - i].perm), i - p - r)
        for i in range(1, r + 1)
    ]
    return _normalise(x.n, -p - r, factors)


def tau(x: CanonicalBraid, k: int = 1) -> CanonicalBraid:
    if k % 2 == 0:
        return x
    return CanonicalBraid(x.n, x.power, tuple(f.tau(k) for f in x.factors))


def complement(s: SimpleBraid) -> SimpleBraid:
    return s.complement()


def meet(s: SimpleBraid, t: SimpleBraid) -> SimpleBraid:
    return s.meet(t)


def is_left_weighted(s: SimpleBraid, t: SimpleBraid) -> bool:
    return s.complement().meet(t).is_identity()


def gcd_with_delta_power(x: CanonicalBraid, k: int) -> CanonicalBraid:
    """x ∧ Δ^k, read off the normal form."""
    if k <= x.power:
        return CanonicalBraid.delta(x.n, k)
    j = min(k - x.power, len(x.factors))
    return CanonicalBraid(x.n, x.power, x.factors[:j])


def initial_factor(x: CanonicalBraid) -> SimpleBraid:
    if not x.factors:
        return SimpleBraid.identity(x.n)
    return x.factors[0].tau(-x.power)


def final_factor(x: CanonicalBraid) -> SimpleBraid:
    if not x.factors:
        return SimpleBraid.delta(x.n)
    return x.factors[-1]


def rev(x: CanonicalBraid) -> CanonicalBraid:
    """Image under the anti-automorphism that fixes every generator."""
    p = x.power
    factors = [_tau(_invert(f.perm), p) for f in reversed(x.factors)]
    return _normalise(x.n, p, factors)


def positive_simple_factors(x: CanonicalBraid) -> Sequence[SimpleBraid]:
    """Factor list with the Δ-power spelled out; requires inf(x) >= 0."""
    if x.power < 0:
        raise BraidError("braid is not positive")
    return (SimpleBraid.delta(x.n),) * x.power + x.factors
