from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

from .braid import CanonicalBraid
from .curves import invariant_round_families
from .errors import BraidError
from .reduction import ReductionWitness, RoundFamilyWitness, rigid_case_classify
from .sliding import Stabilization, is_rigid, preferred_conjugator, stabilize

DEFAULT_LOGGER_NAME = "braidtype"
CAP_ENV_VAR = "BRAIDTYPE_STABILIZATION_CAP"
WORKERS_ENV_VAR = "BRAIDTYPE_WORKERS"
DEFAULT_WORKERS = 4


def default_stabilization_cap(n: int) -> int:
    """||Δ||^3 - ||Δ||^2"""
    d = n * (n - 1) // 2
    return max(1, d ** 3 - d ** 2)


@dataclass(frozen=True)
class ClassifierConfig:
    stabilization_cap: Optional[int] = None
    parallel: bool = False
    workers: int = DEFAULT_WORKERS
    stabilize_shortcut: bool = True
    settle_on_rigid_power: bool = True

    def __post_init__(self) -> None:
        if self.stabilization_cap is not None and self.stabilization_cap < 1:
            raise BraidError(f"stabilization cap must be at least 1, got {self.stabilization_cap}")
        if self.workers < 1:
            raise BraidError(f"workers must be at least 1, got {self.workers}")

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None, **overrides) -> "ClassifierConfig":
        env = os.environ if env is None else env
        values: Dict[str, object] = {}
        raw_cap = env.get(CAP_ENV_VAR, "").strip()
        if raw_cap:
            try:
                values["stabilization_cap"] = int(raw_cap)
            except ValueError as exc:
                raise BraidError(f"{CAP_ENV_VAR} must be an integer, got {raw_cap!r}") from exc
        raw_workers = env.get(WORKERS_ENV_VAR, "").strip()
        if raw_workers:
            try:
                values["workers"] = int(raw_workers)
            except ValueError as exc:
                raise BraidError(f"{WORKERS_ENV_VAR} must be an integer, got {raw_workers!r}") from exc
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)  # type: ignore[arg-type]

    def cap_for(self, n: int) -> int:
        return self.stabilization_cap if self.stabilization_cap is not None else default_stabilization_cap(n)


class Verdict(str, Enum):
    PERIODIC = "periodic"
    REDUCIBLE = "reducible"
    PSEUDO_ANOSOV = "pseudo-anosov"


@dataclass(frozen=True)
class PeriodicWitness:
    k: int
    d: int

    def verify(self, x: CanonicalBraid) -> bool:
        return x ** self.k == CanonicalBraid.delta(x.n, self.d)


@dataclass
class ClassifierStats:
    cap: int = 0
    sliding_steps: int = 0
    longest_trajectory: int = 0
    powers_examined: int = 0
    rigid_case_calls: int = 0
    heuristic: bool = False

    def as_dict(self) -> Dict[str, object]:
        return {
            "cap": self.cap,
            "sliding_steps": self.sliding_steps,
            "longest_trajectory": self.longest_trajectory,
            "powers_examined": self.powers_examined,
            "rigid_case_calls": self.rigid_case_calls,
            "heuristic": self.heuristic,
        }


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    stats: ClassifierStats = field(compare=False)
    periodic: Optional[PeriodicWitness] = None
    witness: Optional[ReductionWitness] = None
    stage: Optional[str] = None
    representative: Optional[CanonicalBraid] = None
    conjugator: Optional[CanonicalBraid] = None
    audit: Tuple[str, ...] = ()

    def verify(self, x: CanonicalBraid) -> bool:
        """Independent re-check of the certificate against the input braid."""
        if self.verdict is Verdict.PERIODIC:
            return self.periodic is not None and self.periodic.verify(x)
        if self.verdict is Verdict.REDUCIBLE:
            if self.witness is None or self.representative is None or self.conjugator is None:
                return False
            if x.conjugate(self.conjugator) != self.representative:
                return False
            return self.witness.verify()
        return True


def is_periodic(x: CanonicalBraid) -> Optional[Tuple[int, int]]:
    n = x.n
    if n == 1:
        return (1, 0)
    power = x ** (n - 1)
    if power.is_delta_power():
        return (n - 1, power.power)
    power = power * x
    if power.is_delta_power():
        return (n, power.power)
    return None


class Classifier:
    """Decide the Nielsen-Thurston type of a braid.

    The stages run in order: periodicity by powers, stabilization into
    SC^[N], round families of the representative, then rigid powers and rigid
    preferred conjugators of its powers.
    """

    def __init__(self, config: Optional[ClassifierConfig] = None, logger: Optional[logging.Logger] = None) -> None:
        self.config = config or ClassifierConfig()
        base_logger = logger or logging.getLogger(DEFAULT_LOGGER_NAME)
        self.logger = base_logger.getChild(self.__class__.__name__.lower())
        self._warned_caps: set = set()

    def _workers(self) -> int:
        return self.config.workers if self.config.parallel else 1

    def _cap(self, n: int) -> Tuple[int, bool]:
        cap = self.config.cap_for(n)
        reduced = cap < default_stabilization_cap(n)
        if reduced and (n, cap) not in self._warned_caps:
            self._warned_caps.add((n, cap))
            self.logger.warning(
                "stabilization cap %d is below %d for n=%d; pseudo-Anosov verdicts are heuristic",
                cap,
                default_stabilization_cap(n),
                n,
            )
        return cap, reduced

    def classify(self, x: CanonicalBraid) -> Classification:
        n = x.n
        cap, reduced = self._cap(n)
        stats = ClassifierStats(cap=cap)

        periodic = is_periodic(x)
        if periodic is not None:
            self.logger.info("periodic: x^%d = Δ^%d", *periodic)
            return Classification(Verdict.PERIODIC, stats, periodic=PeriodicWitness(*periodic))

        stab = stabilize(x, cap, shortcut=self.config.stabilize_shortcut)
        stats.sliding_steps = stab.slides
        stats.longest_trajectory = stab.max_trajectory
        y = stab.braid
        self.logger.debug("stabilized after %d slides (longest trajectory %d)", stab.slides, stab.max_trajectory)

        families = invariant_round_families(y)
        if families:
            self.logger.info("round family %s preserved by the representative", families[0].intervals())
            return Classification(
                Verdict.REDUCIBLE,
                stats,
                witness=RoundFamilyWitness(families[0], y, 1),
                stage="round-family",
                representative=y,
                conjugator=stab.conjugator,
            )

        cache: Dict[CanonicalBraid, Optional[ReductionWitness]] = {}
        workers = self._workers()
        power = CanonicalBraid.identity(n)
        audit = ["periodic", "round-family"]
        for m in range(1, cap + 1):
            power = power * y
            stats.powers_examined = m
            if power.canonical_length == 0:
                continue
            if is_rigid(power):
                stats.rigid_case_calls += 1
                witness = rigid_case_classify(power, cache, workers)
                if witness is not None:
                    self.logger.info("rigid power y^%d preserves a %s", m, witness.kind)
                    return self._reducible(stats, witness, "rigid-power", stab)
                if self.config.settle_on_rigid_power:
                    self.logger.info("rigid power y^%d preserves no curve", m)
                    audit.append(f"rigid-power:{m}")
                    return Classification(
                        Verdict.PSEUDO_ANOSOV, stats, representative=y, conjugator=stab.conjugator, audit=tuple(audit)
                    )
                continue
            conj = preferred_conjugator(power)
            if conj.canonical_length > 0 and is_rigid(conj):
                stats.rigid_case_calls += 1
                witness = rigid_case_classify(conj, cache, workers)
                if witness is not None:
                    self.logger.info("rigid conjugator P(y^%d) preserves a %s", m, witness.kind)
                    return self._reducible(stats, witness, "rigid-conjugator", stab)

        audit.append(f"powers:{cap}")
        stats.heuristic = reduced
        return Classification(
            Verdict.PSEUDO_ANOSOV, stats, representative=y, conjugator=stab.conjugator, audit=tuple(audit)
        )

    def _reducible(self, stats: ClassifierStats, witness: ReductionWitness, stage: str, stab: Stabilization) -> Classification:
        return Classification(
            Verdict.REDUCIBLE,
            stats,
            witness=witness,
            stage=stage,
            representative=stab.braid,
            conjugator=stab.conjugator,
        )


def classify(x: CanonicalBraid, cfg: Optional[ClassifierConfig] = None) -> Classification:
    return Classifier(cfg).classify(x)
