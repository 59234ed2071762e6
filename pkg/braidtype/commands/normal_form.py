from __future__ import annotations

import argparse

from ..core.reporting import braid_to_dict
from .base import WordCommand


class NormalFormCommand(WordCommand):
    NAME = "nf"
    HELP = "Print the left normal form of a braid."

    def run(self, args: argparse.Namespace) -> int:
        x = self.braid(args)
        lines = [str(x)]
        if args.verbose:
            lines.append(f"inf={x.inf} sup={x.sup} len={x.canonical_length}")
        self.emit(args, {"input": args.word, "n": args.n, **braid_to_dict(x)}, lines)
        return 0
