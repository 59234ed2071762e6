from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .braid import CanonicalBraid
from .classifier import Classification, PeriodicWitness
from .curves import RoundFamily
from .reduction import AlmostRoundWitness, ReductionWitness, RoundFamilyWitness


@dataclass
class BatchRecord:
    """One classified (or rejected) input line."""

    sequence: int
    input: str
    n: int
    classification: Optional[Classification] = None
    error: Optional[str] = None
    seconds: float = 0.0
    internal: bool = False

    @property
    def ok(self) -> bool:
        return self.error is None


def family_to_list(family: RoundFamily) -> List[List[List[int]]]:
    orbits = family.orbits or tuple((c,) for c in sorted(family.curves))
    return [[[c.lo, c.hi] for c in orbit] for orbit in orbits]


def witness_to_dict(witness: ReductionWitness) -> Dict[str, Any]:
    if isinstance(witness, RoundFamilyWitness):
        return {
            "kind": witness.kind,
            "orbits": family_to_list(witness.family),
            "power": witness.power,
        }
    if isinstance(witness, AlmostRoundWitness):
        out: Dict[str, Any] = {
            "kind": witness.kind,
            "pair": list(witness.pair),
            "enclosed": list(witness.enclosed),
            "labelling": witness.labelling.grid(),
            "curve": list(witness.curve().word),
            "word": str(witness.word),
        }
        if witness.power is not None:
            out["power"] = witness.power
        if witness.side is not None:
            out["side"] = witness.side
        return out
    raise TypeError(f"unknown witness type {type(witness).__name__}")


def periodic_to_dict(witness: PeriodicWitness) -> Dict[str, Any]:
    return {"kind": "periodic", "k": witness.k, "d": witness.d}


def classification_to_dict(input_text: str, n: int, result: Classification) -> Dict[str, Any]:
    witness: Optional[Dict[str, Any]] = None
    if result.periodic is not None:
        witness = periodic_to_dict(result.periodic)
    elif result.witness is not None:
        witness = witness_to_dict(result.witness)
        witness["stage"] = result.stage
        if result.conjugator is not None:
            witness["conjugator"] = str(result.conjugator)
        if result.representative is not None:
            witness["representative"] = str(result.representative)
    return {
        "input": input_text,
        "n": n,
        "verdict": result.verdict.value,
        "witness": witness,
        "stats": result.stats.as_dict(),
    }


def record_to_dict(record: BatchRecord) -> Dict[str, Any]:
    if record.classification is None:
        return {"input": record.input, "n": record.n, "error": record.error}
    return classification_to_dict(record.input, record.n, record.classification)


def braid_to_dict(x: CanonicalBraid) -> Dict[str, Any]:
    return {
        "normal_form": str(x),
        "inf": x.inf,
        "sup": x.sup,
        "canonical_length": x.canonical_length,
        "factors": [f.artin_word() for f in x.factors],
    }


def grid_lines(witness: AlmostRoundWitness) -> List[str]:
    return [f"t={t:<3d} {row}" for t, row in enumerate(witness.labelling.grid())]


def format_witness(witness: ReductionWitness) -> List[str]:
    if isinstance(witness, RoundFamilyWitness):
        lines = [f"witness: {witness.kind} (power {witness.power})"]
        for orbit in family_to_list(witness.family):
            lines.append("  " + " ".join(f"[{lo},{hi}]" for lo, hi in orbit))
        return lines
    lines = [
        f"witness: {witness.kind}",
        f"pair: {witness.pair[0]},{witness.pair[1]}",
        "enclosed: " + ",".join(str(p) for p in witness.enclosed),
    ]
    if witness.power is not None:
        lines.append(f"power: {witness.power} ({witness.side} side)")
    lines.append("labelling:")
    lines.extend("  " + line for line in grid_lines(witness))
    return lines


def format_classification(input_text: str, result: Classification) -> List[str]:
    lines = [f"{input_text}: {result.verdict.value}"]
    if result.periodic is not None:
        lines.append(f"  x^{result.periodic.k} = D^{result.periodic.d}")
    elif result.witness is not None:
        lines.append(f"  stage: {result.stage}")
        lines.extend("  " + line for line in format_witness(result.witness))
    if result.stats.heuristic:
        lines.append(f"  note: heuristic under cap {result.stats.cap}")
    return lines


class Reporter:
    def __init__(self, out_dir: Path) -> None:
        self.out_dir = out_dir

    def write_all(self, records: Sequence[BatchRecord]) -> Dict[str, int]:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        index = [record_to_dict(r) for r in records]
        (self.out_dir / "index.json").write_text(json.dumps(index, indent=2), encoding="utf-8")

        counts = Counter(item.get("verdict", "error") for item in index)
        lines = ["# Classification Summary", ""]
        for verdict in ("periodic", "reducible", "pseudo-anosov", "error"):
            lines.append(f"- {verdict}: {counts.get(verdict, 0)}")
        lines += ["", "| # | input | n | result |", "|---|---|---|---|"]
        for i, item in enumerate(index, start=1):
            result = item.get("verdict") or f"error: {item.get('error')}"
            lines.append(f"| {i} | `{item['input']}` | {item['n']} | {result} |")
        lines.append("")
        (self.out_dir / "summary.md").write_text("\n".join(lines), encoding="utf-8")
        return {"records": len(index), "errors": counts.get("error", 0)}
