"""Simple closed curves in the punctured disc and the braid action on them.

A curve is stored as the reduced cyclic word of its free homotopy class in the
free group on x_1..x_n, where x_j runs from a basepoint below the disc, around
puncture j clockwise, and back. Letters are signed puncture indices. The round
curve enclosing punctures lo..hi is the word x_lo ⋯ x_hi.

Braids act on the right, one Artin generator at a time:

    s_i:    x_i -> x_i x_(i+1) x_i^-1,   x_(i+1) -> x_i
    s_i^-1: x_i -> x_(i+1),              x_(i+1) -> x_(i+1)^-1 x_i x_(i+1)

The full twist acts as an inner automorphism, so only the parity of the
Δ-exponent matters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .braid import CanonicalBraid, SimpleBraid, normal_form
from .errors import BraidError, NotInvariantError
from .words import GeneratorWord, half_twist_letters

Word = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class RoundCurve:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 1 <= self.lo < self.hi:
            raise BraidError(f"round curve needs 1 <= lo < hi, got ({self.lo}, {self.hi})")

    def validate(self, n: int) -> "RoundCurve":
        if self.hi > n or (self.lo, self.hi) == (1, n):
            raise BraidError(f"({self.lo}, {self.hi}) is not a non-degenerate round curve in B_{n}")
        return self

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def punctures(self) -> range:
        return range(self.lo, self.hi + 1)

    def contains(self, other: "RoundCurve") -> bool:
        """Strict nesting: ``other`` lies inside this curve."""
        return self != other and self.lo <= other.lo and other.hi <= self.hi

    def disjoint(self, other: "RoundCurve") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def compatible(self, other: "RoundCurve") -> bool:
        return self == other or self.disjoint(other) or self.contains(other) or other.contains(self)

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class CurveCoord:
    """A curve as a canonical cyclic word.

    ``word`` is cyclically reduced and is the lexicographically least rotation of
    either the word or its inverse, so one free homotopy class has exactly one
    stored form. The round curve x_2 x_3 is stored as ``(-3, -2)``.
    """

    n: int
    word: Word

    def __post_init__(self) -> None:
        if not self.word:
            raise BraidError("curve word must be non-empty")
        for letter in self.word:
            if not 1 <= abs(letter) <= self.n:
                raise BraidError(f"letter {letter} out of range for n={self.n}")

    @classmethod
    def from_letters(cls, n: int, letters: Iterable[int]) -> "CurveCoord":
        return cls(n, _canonical(_cyclic_reduce(list(letters))))

    def ray_crossings(self) -> Tuple[int, ...]:
        """How often the curve crosses the vertical ray above each puncture."""
        counts = [0] * self.n
        for letter in self.word:
            counts[abs(letter) - 1] += 1
        return tuple(counts)

    def __str__(self) -> str:
        return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in self.word)


@dataclass(frozen=True)
class RoundFamily:
    curves: FrozenSet[RoundCurve]
    orbits: Tuple[Tuple[RoundCurve, ...], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        listed = sorted(self.curves)
        for i, a in enumerate(listed):
            for b in listed[i + 1:]:
                if not a.compatible(b):
                    raise BraidError(f"curves {a} and {b} overlap")

    @classmethod
    def of(cls, curves: Iterable[Union[RoundCurve, Tuple[int, int]]]) -> "RoundFamily":
        items = frozenset(c if isinstance(c, RoundCurve) else RoundCurve(*c) for c in curves)
        return cls(items, ())

    def intervals(self) -> List[Tuple[int, int]]:
        return [(c.lo, c.hi) for c in sorted(self.curves)]

    def __contains__(self, c: object) -> bool:
        return c in self.curves

    def __len__(self) -> int:
        return len(self.curves)


def _free_reduce(word: Sequence[int]) -> List[int]:
    out: List[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def _cyclic_reduce(word: Sequence[int]) -> List[int]:
    w = _free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def _canonical(word: Sequence[int]) -> Word:
    if not word:
        return ()
    inv = [-a for a in reversed(word)]
    best = None
    for w in (list(word), inv):
        for k in range(len(w)):
            cand = tuple(w[k:] + w[:k])
            if best is None or cand < best:
                best = cand
    return best  # type: ignore[return-value]


@lru_cache(maxsize=None)
def _substitution(letter: int) -> Dict[int, Word]:
    i = abs(letter)
    if letter > 0:
        images = {i: (i, i + 1, -i), i + 1: (i,)}
    else:
        images = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
    for j, img in list(images.items()):
        images[-j] = tuple(-a for a in reversed(img))
    return images


def _apply_letter(word: Sequence[int], letter: int) -> List[int]:
    table = _substitution(letter)
    out: List[int] = []
    for a in word:
        img = table.get(a)
        if img is None:
            out.append(a)
        else:
            out.extend(img)
    return _cyclic_reduce(out)


def _apply_letters(word: Sequence[int], letters: Iterable[int]) -> List[int]:
    w = list(word)
    for letter in letters:
        w = _apply_letter(w, letter)
    return w


def _acting_letters(x: Union[GeneratorWord, CanonicalBraid]) -> List[int]:
    if isinstance(x, CanonicalBraid):
        letters = half_twist_letters(x.n) if x.power % 2 else []
        for f in x.factors:
            letters.extend(_factor_letters(f.perm))
        return letters
    letters = []
    for index, exp in x.tokens:
        if index == 0:
            if exp % 2:
                letters.extend(half_twist_letters(x.n))
        else:
            letters.append(index * exp)
    return letters


@lru_cache(maxsize=4096)
def _factor_letters(perm: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(SimpleBraid(perm).artin_word())


def round_curves(n: int) -> List[RoundCurve]:
    return [RoundCurve(lo, hi) for lo in range(1, n + 1) for hi in range(lo + 1, n + 1) if (lo, hi) != (1, n)]


def _round_letters(c: RoundCurve) -> List[int]:
    return list(c.punctures())


@lru_cache(maxsize=None)
def _round_table(n: int) -> Dict[Word, RoundCurve]:
    return {_canonical(_round_letters(c)): c for c in round_curves(n)}


def coord_of_round(c: RoundCurve, n: int) -> CurveCoord:
    c.validate(n)
    return CurveCoord(n, _canonical(_round_letters(c)))


def act(coord: CurveCoord, x: Union[GeneratorWord, CanonicalBraid]) -> CurveCoord:
    if x.n != coord.n:
        raise BraidError(f"curve lives in D_{coord.n} but braid has {x.n} strands")
    word = _apply_letters(coord.word, _acting_letters(x))
    return CurveCoord(coord.n, _canonical(word))


def roundness(coord: CurveCoord) -> Optional[RoundCurve]:
    return _round_table(coord.n).get(coord.word)


def delta_image(c: RoundCurve, n: int) -> RoundCurve:
    return RoundCurve(n + 1 - c.hi, n + 1 - c.lo)


@lru_cache(maxsize=1 << 16)
def _simple_round_image(c: RoundCurve, perm: Tuple[int, ...]) -> Optional[RoundCurve]:
    n = len(perm)
    word = _apply_letters(_round_letters(c), _factor_letters(perm))
    return _round_table(n).get(_canonical(word))


def round_image(c: RoundCurve, x: CanonicalBraid) -> Optional[RoundCurve]:
    """Image of a round curve if it is round, walking the normal form factor by factor.

    A round image forces every intermediate image under a prefix of the normal
    form to be round, so the walk stops at the first non-round one.
    """
    cur = delta_image(c, x.n) if x.power % 2 else c
    for f in x.factors:
        nxt = _simple_round_image(cur, f.perm)
        if nxt is None:
            return None
        cur = nxt
    return cur


def is_invariant(family: RoundFamily, x: CanonicalBraid) -> bool:
    return all(round_image(c, x) in family.curves for c in family.curves)


def _round_orbits(x: CanonicalBraid) -> List[Tuple[RoundCurve, ...]]:
    curves = round_curves(x.n)
    cap = len(curves)
    done: Set[RoundCurve] = set()
    orbits: List[Tuple[RoundCurve, ...]] = []
    for c in curves:
        if c in done:
            continue
        orbit = [c]
        closed = False
        cur = c
        for _ in range(cap):
            nxt = round_image(cur, x)
            if nxt is None:
                break
            if nxt == c:
                closed = True
                break
            if nxt in orbit:
                raise RuntimeError(f"orbit of {c} is not a cycle")
            orbit.append(nxt)
            cur = nxt
        else:
            raise RuntimeError(f"orbit of {c} exceeded {cap} round curves")
        done.update(orbit)
        if closed and all(a.compatible(b) for a in orbit for b in orbit):
            orbits.append(tuple(orbit))
    return orbits


def _orbits_compatible(a: Tuple[RoundCurve, ...], b: Tuple[RoundCurve, ...]) -> bool:
    return all(u.compatible(v) for u in a for v in b)


def invariant_round_families(x: CanonicalBraid) -> List[RoundFamily]:
    """All maximal families of round curves that x permutes."""
    if x.n < 3:
        return []
    orbits = _round_orbits(x)
    if not orbits:
        return []
    k = len(orbits)
    adjacent = [
        {j for j in range(k) if j != i and _orbits_compatible(orbits[i], orbits[j])}
        for i in range(k)
    ]
    cliques: List[FrozenSet[int]] = []

    def expand(r: Set[int], p: Set[int], x_: Set[int]) -> None:
        if not p and not x_:
            cliques.append(frozenset(r))
            return
        for v in sorted(p):
            expand(r | {v}, p & adjacent[v], x_ & adjacent[v])
            p = p - {v}
            x_ = x_ | {v}

    expand(set(), set(range(k)), set())
    families = []
    for clique in cliques:
        members = tuple(orbits[i] for i in sorted(clique))
        curves = frozenset(c for orbit in members for c in orbit)
        families.append(RoundFamily(curves, members))
    families.sort(key=lambda f: f.intervals())
    return families


def subbraid(word: GeneratorWord, strands: Iterable[int]) -> GeneratorWord:
    """Keep only the crossings among strands that start in ``strands``."""
    keep = set(strands)
    if not keep:
        raise BraidError("subbraid needs at least one strand")
    if not keep <= set(range(1, word.n + 1)):
        raise BraidError(f"strands {sorted(keep)} out of range for n={word.n}")
    at = list(range(1, word.n + 1))  # strand occupying each position
    out: List[int] = []
    for letter in word.letters():
        i = abs(letter)
        left, right = at[i - 1], at[i]
        if left in keep and right in keep:
            rank = sum(1 for s in at[: i - 1] if s in keep) + 1
            out.append(rank if letter > 0 else -rank)
        at[i - 1], at[i] = right, left
    return GeneratorWord.from_letters(len(keep), out)


def component_strands(
    n: int,
    family: RoundFamily,
    curve: Optional[RoundCurve] = None,
    representatives: Optional[Mapping[RoundCurve, int]] = None,
) -> List[int]:
    """Punctures directly inside ``curve`` plus one per outermost inner curve.

    ``curve=None`` stands for the boundary of the disc.
    """
    reps = dict(representatives or {})
    if curve is None:
        enclosed = set(range(1, n + 1))
        inner = list(family.curves)
    else:
        if curve not in family.curves:
            raise BraidError(f"{curve} is not in the family")
        enclosed = set(curve.punctures())
        inner = [d for d in family.curves if curve.contains(d)]
    outermost = [d for d in inner if not any(e.contains(d) for e in inner)]
    strands = set(enclosed)
    for d in outermost:
        strands -= set(d.punctures())
        rep = reps.get(d, d.lo)
        if rep not in d.punctures():
            raise BraidError(f"representative {rep} is not inside {d}")
        strands.add(rep)
    return sorted(strands)


def round_component(
    x: CanonicalBraid,
    family: RoundFamily,
    curve: Optional[RoundCurve] = None,
    representatives: Optional[Mapping[RoundCurve, int]] = None,
) -> CanonicalBraid:
    """Component along a family whose image under x is again round."""
    for c in family.curves:
        c.validate(x.n)
        if round_image(c, x) is None:
            raise NotInvariantError(f"image of {c} is not round")
    strands = component_strands(x.n, family, curve, representatives)
    return normal_form(subbraid(x.to_word(), strands))


def component(
    x: CanonicalBraid,
    family: RoundFamily,
    curve: Optional[RoundCurve] = None,
    representatives: Optional[Mapping[RoundCurve, int]] = None,
) -> CanonicalBraid:
    for c in family.curves:
        c.validate(x.n)
    if not is_invariant(family, x):
        raise NotInvariantError("family is not invariant under the braid")
    return round_component(x, family, curve, representatives)
