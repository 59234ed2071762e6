from __future__ import annotations

import argparse

from ..core.curves import invariant_round_families
from ..core.reporting import family_to_list
from .base import WordCommand


class CurvesCommand(WordCommand):
    NAME = "curves"
    HELP = "List the maximal families of round curves a braid preserves."

    def run(self, args: argparse.Namespace) -> int:
        families = invariant_round_families(self.braid(args))
        payload = {"input": args.word, "n": args.n, "families": [family_to_list(f) for f in families]}
        lines = []
        for i, family in enumerate(payload["families"], start=1):
            lines.append(f"family {i}:")
            lines.extend("  " + " ".join(f"[{lo},{hi}]" for lo, hi in orbit) for orbit in family)
        if not families:
            lines.append("no invariant round curves")
        self.emit(args, payload, lines)
        return 0
