from __future__ import annotations

import argparse

from ..core.errors import BraidError
from ..core.reduction import almost_round_invariant_arc, rigid_case_classify
from ..core.reporting import format_witness, witness_to_dict
from ..core.sliding import is_rigid
from ..core.words import GeneratorWord
from .base import WordCommand


class ReduceCommand(WordCommand):
    NAME = "reduce"
    HELP = "Search for an invariant almost-round curve (positive words) or run the rigid-case scan (rigid braids)."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--workers", type=int, default=1, help="Threads for the search over endpoint pairs.")

    def run(self, args: argparse.Namespace) -> int:
        word = GeneratorWord.parse(args.n, args.word)
        if word.is_positive() and len(word):
            witness = almost_round_invariant_arc(word, workers=args.workers)
        else:
            x = self.braid(args)
            if x.canonical_length == 0 or not is_rigid(x):
                raise BraidError("reduce needs a positive word or a rigid braid of positive canonical length")
            witness = rigid_case_classify(x, workers=args.workers)
        if witness is None:
            self.emit(args, {"input": args.word, "n": args.n, "witness": None}, ["no witness"])
            return 0
        payload = {"input": args.word, "n": args.n, "witness": witness_to_dict(witness)}
        self.emit(args, payload, format_witness(witness))
        return 0
