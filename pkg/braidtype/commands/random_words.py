from __future__ import annotations

import argparse
import random

from ..core.words import random_word
from .base import Command


class RandomCommand(Command):
    NAME = "random"
    HELP = "Generate random braid words from a seed."
    DEFAULT_LENGTH = 10

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("-l", "--length", type=int, default=self.DEFAULT_LENGTH, help="Letters per word.")
        parser.add_argument("--seed", type=int, required=True, help="Seed for the generator.")
        parser.add_argument("--count", type=int, default=1, help="Number of words to print.")
        parser.add_argument("--positive", action="store_true", help="Only positive letters.")

    def run(self, args: argparse.Namespace) -> int:
        if args.length < 0 or args.count < 0:
            self.logger.error("length and count must be non-negative")
            return 2
        rng = random.Random(args.seed)
        words = [str(random_word(args.n, args.length, rng, positive=args.positive)) for _ in range(args.count)]
        payload = {"n": args.n, "seed": args.seed, "words": words}
        self.emit(args, payload, words)
        return 0
