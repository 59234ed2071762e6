from __future__ import annotations

import argparse
import json
from pathlib import Path

from ..core.batch import BatchClassifier
from ..core.reporting import Reporter, format_classification, record_to_dict
from ..core.utils import parse_batch, read_batch_text
from .base import Command, add_classifier_arguments, classifier_config


class BatchCommand(Command):
    NAME = "batch"
    HELP = "Classify every word of a file whose first line is 'n=<int>'."
    NEEDS_N = False

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", type=Path, help="Batch file.")
        parser.add_argument("--out", type=Path, default=None, help="Directory for index.json and summary.md.")
        parser.add_argument("--no-progress", action="store_true", help="Disable the progress bar.")
        add_classifier_arguments(parser)

    def run(self, args: argparse.Namespace) -> int:
        n, lines = parse_batch(read_batch_text(args.path))
        if n < 2:
            self.logger.error("batch header must declare n >= 2, got %d", n)
            return 2
        config = classifier_config(args)
        runner = BatchClassifier(
            n,
            lines,
            config,
            config.workers,
            logger=self.logger.parent,
            verbose=args.verbose,
            show_progress=not args.no_progress,
        )
        records = runner.run()

        for record in records:
            if args.format == "json":
                print(json.dumps(record_to_dict(record), ensure_ascii=False))
            elif record.classification is None:
                print(f"{record.input}: error: {record.error}")
            else:
                print("\n".join(format_classification(record.input, record.classification)))

        if args.out is not None:
            Reporter(args.out).write_all(records)
        if any(r.internal for r in records):
            return 1
        return 0 if all(r.ok for r in records) else 2
