"""Invariant almost-round curves of positive braids, found by labelling a dance.

A positive word is read as a dance of punctures: the letter s_i exchanges the
punctures at positions i and i+1 clockwise, the left one passing over to the
right and the right one passing under to the left. For a pair of pure,
non-crossing endpoint strands (p, q), every other puncture lying between the
endpoints is labelled "a" (the arc from p to q passes below it) or "b" (the arc
passes above it), or stays unlabelled. Labels are forced along the dance:

* a puncture entering over the left endpoint becomes "a", one entering under
  the right endpoint becomes "b";
* an "a" puncture may not leave under the left endpoint, a "b" puncture may not
  leave over the right endpoint;
* when two punctures between the endpoints cross, an "a" passing under forces
  the one passing over to be "a", and a "b" passing over forces the one passing
  under to be "b";
* labels are constant while a puncture stays between the endpoints, and the
  labelling repeats with the period of the dance.
"""
from __future__ import annotations

import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .braid import CanonicalBraid
from .curves import CurveCoord, RoundFamily, act, invariant_round_families, is_invariant
from .errors import BraidError, InvalidPairError, NegativeLetterError, RigidCasePreconditionError
from .sliding import is_rigid
from .words import GeneratorWord

logger = logging.getLogger("braidtype.reduction")


class Label(str, Enum):
    ABOVE = "a"
    BELOW = "b"
    NONE = "."

    @property
    def glyph(self) -> str:
        return "·" if self is Label.NONE else self.value


class Contradiction(str, Enum):
    RULE_3B = "rule-3b"
    INVARIANCE = "invariance"


@dataclass(frozen=True)
class DanceStep:
    position: int  # swaps positions position and position + 1
    over: int  # strand moving right, passing over
    under: int  # strand moving left, passing under


@dataclass(frozen=True)
class Dance:
    n: int
    steps: Tuple[DanceStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def final_positions(self) -> Tuple[int, ...]:
        """End position of each strand, indexed by starting position - 1."""
        at = list(range(1, self.n + 1))
        for st in self.steps:
            i = st.position
            at[i - 1], at[i] = at[i], at[i - 1]
        final = [0] * self.n
        for pos, strand in enumerate(at, start=1):
            final[strand - 1] = pos
        return tuple(final)

    def crossing_pairs(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((min(st.over, st.under), max(st.over, st.under)) for st in self.steps)

    def valid_pairs(self) -> List[Tuple[int, int]]:
        final = self.final_positions()
        crossed = self.crossing_pairs()
        return [
            (p, q)
            for p in range(1, self.n + 1)
            for q in range(p + 1, self.n + 1)
            if final[p - 1] == p and final[q - 1] == q and (p, q) not in crossed
        ]


def dance(word: GeneratorWord) -> Dance:
    if not word.is_positive():
        raise NegativeLetterError("the dance is only defined for positive words")
    at = list(range(1, word.n + 1))
    steps = []
    for i in word.letters():
        left, right = at[i - 1], at[i]
        steps.append(DanceStep(i, left, right))
        at[i - 1], at[i] = right, left
    return Dance(word.n, tuple(steps))


@dataclass(frozen=True)
class Labelling:
    """Labels by position for each timestep 0..ℓ of one period of the dance."""

    pair: Tuple[int, int]
    rows: Tuple[Tuple[Label, ...], ...]

    def initial(self) -> Tuple[Label, ...]:
        return self.rows[0]

    def grid(self) -> List[str]:
        return ["".join(label.glyph for label in row) for row in self.rows]


@dataclass(frozen=True)
class LabelSearchOutcome:
    pair: Tuple[int, int]
    labelling: Optional[Labelling]
    contradiction: Optional[Contradiction]
    steps: int
    stable: bool


def _check_pair(d: Dance, p: int, q: int) -> None:
    if not 1 <= p < q <= d.n:
        raise InvalidPairError(f"pair ({p}, {q}) out of range for n={d.n}")
    final = d.final_positions()
    if final[p - 1] != p or final[q - 1] != q:
        raise InvalidPairError(f"strands {p} and {q} are not both pure")
    if (p, q) in d.crossing_pairs():
        raise InvalidPairError(f"strands {p} and {q} cross")


def _endpoint_track(d: Dance, p: int, q: int) -> List[Tuple[int, int]]:
    """0-based positions of the two endpoint strands at each timestep."""
    left, right = p - 1, q - 1
    track = [(left, right)]
    for st in d.steps:
        j = st.position - 1
        if j == left:
            left = j + 1
        elif j + 1 == left:
            left = j
        elif j == right:
            right = j + 1
        elif j + 1 == right:
            right = j
        track.append((left, right))
    return track


def search_labels(d: Dance, pair: Tuple[int, int], repetitions: Optional[int] = None) -> LabelSearchOutcome:
    """Forced-label propagation over ``repetitions`` passes of the dance (2n by default).

    The rows of the last pass are kept; ``stable`` is false when that pass still
    had to force a label.
    """
    p, q = pair
    _check_pair(d, p, q)
    n = d.n
    labels = [Label.NONE] * n
    left, right = p - 1, q - 1
    if repetitions is None:
        repetitions = 2 * n
    if repetitions < 1:
        raise BraidError(f"label search needs at least one pass, got {repetitions}")
    rows: List[Tuple[Label, ...]] = []
    steps = 0
    stable = True

    def fail(kind: Contradiction) -> LabelSearchOutcome:
        logger.debug("pair %s: %s contradiction after %d steps", pair, kind.value, steps)
        return LabelSearchOutcome(pair, None, kind, steps, False)

    for rep in range(repetitions):
        final = rep == repetitions - 1
        if final:
            rows = [tuple(labels)]
        for st in d.steps:
            j = st.position - 1
            k = j + 1
            a, b = labels[j], labels[k]
            if j == left:
                if b is Label.ABOVE:
                    return fail(Contradiction.RULE_3B)
                labels[j] = labels[k] = Label.NONE
                left = k
            elif k == left:
                labels[j], labels[k] = Label.NONE, Label.ABOVE
                left = j
            elif j == right:
                labels[j], labels[k] = Label.BELOW, Label.NONE
                right = k
            elif k == right:
                if a is Label.BELOW:
                    return fail(Contradiction.RULE_3B)
                labels[j] = labels[k] = Label.NONE
                right = j
            elif left < j and k < right:
                if b is Label.ABOVE and a is not Label.ABOVE:
                    if a is Label.BELOW:
                        return fail(Contradiction.INVARIANCE)
                    a = Label.ABOVE
                    stable = stable and not final
                if a is Label.BELOW and b is not Label.BELOW:
                    if b is Label.ABOVE:
                        return fail(Contradiction.INVARIANCE)
                    b = Label.BELOW
                    stable = stable and not final
                labels[j], labels[k] = b, a
            else:
                labels[j], labels[k] = b, a
            steps += 1
            if final:
                rows.append(tuple(labels))

    if rows[0] != rows[-1]:
        return fail(Contradiction.INVARIANCE)
    return LabelSearchOutcome(pair, Labelling(pair, tuple(rows)), None, steps, stable)


def label_search(word: GeneratorWord, pair: Tuple[int, int]) -> Optional[Labelling]:
    return search_labels(dance(word), pair).labelling


def verify_labelling(d: Dance, labelling: Labelling) -> List[str]:
    """Re-check every labelling rule step by step; returns the violations found."""
    p, q = labelling.pair
    rows = labelling.rows
    problems: List[str] = []
    if len(rows) != len(d) + 1:
        return [f"expected {len(d) + 1} rows, got {len(rows)}"]
    track = _endpoint_track(d, p, q)
    for t, row in enumerate(rows):
        if len(row) != d.n:
            problems.append(f"t={t}: row has {len(row)} entries")
            continue
        left, right = track[t]
        for j, label in enumerate(row):
            if (j <= left or j >= right) and label is not Label.NONE:
                problems.append(f"t={t}: position {j + 1} is outside the endpoints but labelled")
        if t == len(d):
            break
        st = d.steps[t]
        j = st.position - 1
        k = j + 1
        nxt = rows[t + 1]
        for m in range(d.n):
            if m not in (j, k) and nxt[m] != row[m]:
                problems.append(f"t={t}: label at position {m + 1} changed without a crossing")
        a, b = row[j], row[k]
        if j == left:
            if b is Label.ABOVE:
                problems.append(f"t={t}: 'a' puncture leaves under the left endpoint")
        elif k == left:
            if nxt[k] is not Label.ABOVE:
                problems.append(f"t={t}: puncture entering over the left endpoint is not 'a'")
        elif j == right:
            if nxt[j] is not Label.BELOW:
                problems.append(f"t={t}: puncture entering under the right endpoint is not 'b'")
        elif k == right:
            if a is Label.BELOW:
                problems.append(f"t={t}: 'b' puncture leaves over the right endpoint")
        elif left < j and k < right:
            if nxt[k] != a or nxt[j] != b:
                problems.append(f"t={t}: crossing punctures changed labels")
            if b is Label.ABOVE and a is not Label.ABOVE:
                problems.append(f"t={t}: 'a' passes under a puncture not labelled 'a'")
            if a is Label.BELOW and b is not Label.BELOW:
                problems.append(f"t={t}: 'b' passes over a puncture not labelled 'b'")
    if track[-1] != track[0]:
        problems.append("endpoint strands are not pure")
    if rows[0] != rows[-1]:
        problems.append("labelling is not periodic")
    return problems


def _complete_with_above(d: Dance, labelling: Labelling) -> Labelling:
    p, q = labelling.pair
    track = _endpoint_track(d, p, q)
    rows = []
    for (left, right), row in zip(track, labelling.rows):
        rows.append(
            tuple(
                Label.ABOVE if left < j < right and label is Label.NONE else label
                for j, label in enumerate(row)
            )
        )
    return Labelling(labelling.pair, tuple(rows))


def arc_curve_letters(pair: Tuple[int, int], initial: Tuple[Label, ...]) -> List[int]:
    """Boundary of a neighbourhood of the arc, as a cyclic word."""
    p, q = pair
    top = [j for j in range(p, q + 1) if initial[j - 1] is not Label.ABOVE]
    bottom = [-j for j in range(q, p - 1, -1) if initial[j - 1] is Label.BELOW]
    return top + bottom


@dataclass(frozen=True)
class AlmostRoundWitness:
    word: GeneratorWord
    pair: Tuple[int, int]
    labelling: Labelling
    enclosed: Tuple[int, ...]
    power: Optional[int] = None
    source: Optional[CanonicalBraid] = None
    side: Optional[str] = None

    kind = "almost-round"

    def curve(self) -> CurveCoord:
        return CurveCoord.from_letters(self.word.n, arc_curve_letters(self.pair, self.labelling.initial()))

    def verify(self) -> bool:
        n = self.word.n
        if not 2 <= len(self.enclosed) < n:
            return False
        if self.source is not None and self.power is not None and self.side is not None:
            if CanonicalBraid.from_word(self.word) != _positive_side(self.source ** self.power, self.side):
                return False
        if verify_labelling(dance(self.word), self.labelling):
            return False
        curve = self.curve()
        return act(curve, self.word) == curve


@dataclass(frozen=True)
class RoundFamilyWitness:
    family: RoundFamily
    braid: CanonicalBraid
    power: int = 1

    kind = "round-family"

    def verify(self) -> bool:
        if not self.family.curves:
            return False
        for c in self.family.curves:
            c.validate(self.braid.n)
        return is_invariant(self.family, self.braid ** self.power)


ReductionWitness = Union[RoundFamilyWitness, AlmostRoundWitness]


def almost_round_invariant_arc(word: GeneratorWord, workers: int = 1) -> Optional[AlmostRoundWitness]:
    d = dance(word)
    pairs = d.valid_pairs()
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(lambda pair: search_labels(d, pair), pairs))
    else:
        outcomes = []
        for pair in pairs:
            outcome = search_labels(d, pair)
            outcomes.append(outcome)
            if outcome.labelling is not None:
                break
    for outcome in outcomes:
        if outcome.labelling is None:
            continue
        p, q = outcome.pair
        labelling = outcome.labelling
        initial = labelling.initial()
        enclosed = [p] + [j for j in range(p + 1, q) if initial[j - 1] is Label.NONE] + [q]
        if len(enclosed) == d.n:
            labelling = _complete_with_above(d, labelling)
            enclosed = [p, q]
        return AlmostRoundWitness(word, outcome.pair, labelling, tuple(enclosed))
    return None


def _positive_side(beta_k: CanonicalBraid, side: str) -> CanonicalBraid:
    if side == "left":
        # Δ^-inf · β^k
        return CanonicalBraid(beta_k.n, 0, beta_k.factors)
    return beta_k.inverse() * CanonicalBraid.delta(beta_k.n, beta_k.sup)


def rigid_case_classify(
    beta: CanonicalBraid,
    cache: Optional[Dict[CanonicalBraid, Optional[ReductionWitness]]] = None,
    workers: int = 1,
) -> Optional[ReductionWitness]:
    """Search the first n powers of a rigid, non-periodic braid for a reduction curve."""
    if beta.canonical_length == 0 or not is_rigid(beta):
        raise RigidCasePreconditionError("rigid-case search needs a rigid braid of positive canonical length")
    memo = cache if cache is not None else {}
    power = CanonicalBraid.identity(beta.n)
    for k in range(1, beta.n + 1):
        power = power * beta
        if power in memo:
            hit = memo[power]
        else:
            hit = _scan_power(power, workers)
            memo[power] = hit
        if hit is not None:
            return dataclasses.replace(hit, power=k, **_source_field(hit, beta))
    return None


def _source_field(hit: ReductionWitness, beta: CanonicalBraid) -> Dict[str, CanonicalBraid]:
    if isinstance(hit, RoundFamilyWitness):
        return {"braid": beta}
    return {"source": beta}


def _scan_power(beta_k: CanonicalBraid, workers: int) -> Optional[ReductionWitness]:
    families = invariant_round_families(beta_k)
    if families:
        return RoundFamilyWitness(families[0], beta_k, 1)
    if beta_k.inf % 2 or beta_k.sup % 2:
        return None
    for side in ("left", "right"):
        positive = _positive_side(beta_k, side)
        witness = almost_round_invariant_arc(positive.positive_word(), workers)
        if witness is not None:
            return dataclasses.replace(witness, side=side)
    return None
