from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .braid import CanonicalBraid, SimpleBraid, final_factor, initial_factor
from .errors import BraidError, ZeroLengthError

# Guard against runaway trajectories; the orbit is finite, so hitting this is a bug.
MAX_SLIDES = 200_000

logger = logging.getLogger("braidtype.sliding")


@dataclass(frozen=True)
class SlideStep:
    braid: CanonicalBraid
    conjugator: SimpleBraid


@dataclass(frozen=True)
class SlidingTrajectory:
    """Iterated cyclic sliding from a start element up to the first repetition.

    ``tail`` runs from the start element to the circuit entry, ``circuit`` is the
    periodic part. Each step stores the element and the prefix it is slid by.
    """

    tail: Tuple[SlideStep, ...]
    circuit: Tuple[SlideStep, ...]
    t: int

    @property
    def steps(self) -> int:
        return self.t

    @property
    def start(self) -> CanonicalBraid:
        return (self.tail or self.circuit)[0].braid

    @property
    def entry(self) -> CanonicalBraid:
        return self.circuit[0].braid

    def all_steps(self) -> Tuple[SlideStep, ...]:
        return self.tail + self.circuit


@dataclass(frozen=True)
class Rigidity:
    k: int
    r: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, self.r)

    def __str__(self) -> str:
        return f"{self.k}/{self.r}"


@dataclass(frozen=True)
class Stabilization:
    braid: CanonicalBraid
    conjugator: CanonicalBraid
    slides: int
    max_trajectory: int
    shortcut_at: Optional[int] = None


def preferred_prefix(x: CanonicalBraid) -> SimpleBraid:
    if not x.factors:
        return SimpleBraid.identity(x.n)
    return initial_factor(x).meet(final_factor(x).complement())


def cyclic_sliding(x: CanonicalBraid) -> Tuple[CanonicalBraid, SimpleBraid]:
    s = preferred_prefix(x)
    if s.is_identity():
        return x, s
    return x.conjugate(CanonicalBraid.from_simple(s)), s


def sliding_trajectory(x: CanonicalBraid) -> SlidingTrajectory:
    seen: Dict[CanonicalBraid, int] = {}
    steps = []
    current = x
    for k in range(MAX_SLIDES):
        j = seen.get(current)
        if j is not None:
            return SlidingTrajectory(tuple(steps[:j]), tuple(steps[j:]), k)
        seen[current] = k
        nxt, s = cyclic_sliding(current)
        steps.append(SlideStep(current, s))
        current = nxt
    raise RuntimeError(f"sliding orbit did not repeat within {MAX_SLIDES} steps")


def in_sliding_circuit(x: CanonicalBraid) -> bool:
    return not sliding_trajectory(x).tail


def _conjugator_product(trajectory: SlidingTrajectory) -> CanonicalBraid:
    product = CanonicalBraid.identity(trajectory.start.n)
    for step in trajectory.all_steps():
        if not step.conjugator.is_identity():
            product = product * CanonicalBraid.from_simple(step.conjugator)
    return product


def preferred_conjugator(y: CanonicalBraid) -> CanonicalBraid:
    return _conjugator_product(sliding_trajectory(y))


def stabilize(x: CanonicalBraid, m: int, shortcut: bool = True) -> Stabilization:
    """Element of SC^[m](x) following x_[i] = x_[i-1]^P(x_[i-1]^i).

    With ``shortcut`` the recursion stops once the current element lies in its
    sliding circuit and has two-sided rigidity, since then all of its powers lie
    in their circuits too.
    """
    if m < 1:
        raise BraidError(f"m must be positive, got {m}")
    alpha = x
    power = CanonicalBraid.identity(x.n)  # alpha^(i-1)
    conjugator = CanonicalBraid.identity(x.n)
    slides = 0
    longest = 0
    for i in range(1, m + 1):
        if shortcut and has_two_sided_rigidity(alpha) and in_sliding_circuit(alpha):
            logger.debug("stabilized early at step %d of %d", i - 1, m)
            return Stabilization(alpha, conjugator, slides, longest, shortcut_at=i - 1)
        power = power * alpha
        trajectory = sliding_trajectory(power)
        slides += trajectory.t
        longest = max(longest, trajectory.t)
        p = _conjugator_product(trajectory)
        if not p.is_identity():
            alpha = alpha.conjugate(p)
            conjugator = conjugator * p
        # alpha^i after conjugation by P is the circuit entry
        power = trajectory.entry
    return Stabilization(alpha, conjugator, slides, longest)


def stabilized_representative(x: CanonicalBraid, m: int) -> Tuple[CanonicalBraid, CanonicalBraid]:
    result = stabilize(x, m, shortcut=False)
    return result.braid, result.conjugator


def rigidity(x: CanonicalBraid) -> Rigidity:
    r = x.canonical_length
    if r == 0:
        raise ZeroLengthError("rigidity is undefined for powers of Δ")
    p = x.power
    square = x * x
    if square.power != 2 * p:
        return Rigidity(0, r)
    k = 0
    for got, factor in zip(square.factors, x.factors):
        if got != factor.tau(p):
            break
        k += 1
    return Rigidity(k, r)


def is_rigid(x: CanonicalBraid) -> bool:
    if not x.factors:
        return True
    return x.factors[-1].complement().meet(x.factors[0].tau(x.power)).is_identity()


def has_two_sided_rigidity(x: CanonicalBraid) -> bool:
    if not x.factors:
        return True
    square = x * x
    return (
        square.inf == 2 * x.inf
        and initial_factor(square) == initial_factor(x)
        and square.sup == 2 * x.sup
        and final_factor(square) == final_factor(x)
    )


def power_with_two_sided_rigidity(y: CanonicalBraid, cap: int) -> Optional[int]:
    power = CanonicalBraid.identity(y.n)
    for m in range(1, cap + 1):
        power = power * y
        if has_two_sided_rigidity(power):
            return m
    return None
