from __future__ import annotations

import argparse

from ..core.classifier import Classifier
from ..core.reporting import classification_to_dict, format_classification
from .base import WordCommand, add_classifier_arguments, classifier_config


class ClassifyCommand(WordCommand):
    NAME = "classify"
    HELP = "Decide whether a braid is periodic, reducible or pseudo-Anosov."

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        add_classifier_arguments(parser)

    def run(self, args: argparse.Namespace) -> int:
        x = self.braid(args)
        classifier = Classifier(classifier_config(args), self.logger)
        result = classifier.classify(x)
        if not result.verify(x):
            raise RuntimeError(f"certificate for {args.word!r} failed to re-verify")
        self.emit(
            args,
            classification_to_dict(args.word, args.n, result),
            format_classification(args.word, result),
        )
        return 0
