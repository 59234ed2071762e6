from __future__ import annotations

import argparse
import json
import logging
from typing import Any, Dict, List

from ..core.braid import CanonicalBraid
from ..core.classifier import DEFAULT_LOGGER_NAME, ClassifierConfig


class Command:
    """
    Base class for CLI subcommands. Subclasses set NAME and HELP at the top and
    override add_arguments and run. Settings should live up top.
    """
    NAME: str = "base"
    HELP: str = ""
    NEEDS_N: bool = True

    def __init__(self) -> None:
        base_logger = logging.getLogger(DEFAULT_LOGGER_NAME)
        self.logger = base_logger.getChild(self.__class__.__name__.lower())

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def run(self, args: argparse.Namespace) -> int:
        raise NotImplementedError("run must be implemented in subclasses")

    def emit(self, args: argparse.Namespace, payload: Dict[str, Any], lines: List[str]) -> None:
        if args.format == "json":
            print(json.dumps(payload, ensure_ascii=False))
        else:
            for line in lines:
                print(line)


class WordCommand(Command):
    """Commands that act on one braid word given on the command line."""
    ABSTRACT = True

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("word", help="Braid word, e.g. 's1 s2^-1 D^2' or '1 -2'.")

    def braid(self, args: argparse.Namespace) -> CanonicalBraid:
        return CanonicalBraid.parse(args.n, args.word)


def add_classifier_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cap", type=int, default=None, help="Stabilization cap N (default ||Δ||^3 - ||Δ||^2, or $BRAIDTYPE_STABILIZATION_CAP).")
    parser.add_argument("--parallel", action="store_true", help="Run the arc search over endpoint pairs on a thread pool.")
    parser.add_argument("--workers", type=int, default=None, help="Worker threads (default 4, or $BRAIDTYPE_WORKERS).")
    parser.add_argument("--no-settle", action="store_true", help="Keep scanning powers after the first rigid power preserves no curve.")


def classifier_config(args: argparse.Namespace) -> ClassifierConfig:
    overrides: Dict[str, Any] = {"stabilization_cap": args.cap, "workers": args.workers}
    if args.parallel:
        overrides["parallel"] = True
    if args.no_settle:
        overrides["settle_on_rigid_power"] = False
    return ClassifierConfig.from_env(**overrides)
