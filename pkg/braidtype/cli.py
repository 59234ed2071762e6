import argparse
import sys
from typing import Dict, List, Optional

from .commands.base import Command
from .core.batch import configure_logging
from .core.errors import BraidError
from .core.loader import discover_commands


def build_arg_parser(commands: Optional[Dict[str, Command]] = None) -> argparse.ArgumentParser:
    commands = commands if commands is not None else discover_commands()
    p = argparse.ArgumentParser(
        prog="braidtype",
        description="Garside normal forms, sliding circuits and Nielsen-Thurston classification of braids.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name, command in commands.items():
        c = sub.add_parser(name, help=command.HELP, description=command.HELP)
        if command.NEEDS_N:
            c.add_argument("-n", "--strands", dest="n", type=int, required=True, help="Strand count (at least 2).")
        c.add_argument("--format", choices=("text", "json"), default="text", help="Output format.")
        c.add_argument("--verbose", action="store_true", help="Enable verbose logging output.")
        c.add_argument(
            "--debug",
            action="append",
            default=[],
            metavar="LOGGER",
            help="Log DEBUG records from one braidtype child logger, e.g. sliding (repeatable).",
        )
        command.add_arguments(c)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    commands = discover_commands()
    parser = build_arg_parser(commands)
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 2:
        parser.error(f"-n must be at least 2, got {args.n}")

    logger = configure_logging(verbose=args.verbose, debug=args.debug)
    command = commands[args.command]
    try:
        return command.run(args)
    except BraidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        if args.verbose:
            logger.exception("Internal error in %s", args.command)
        else:
            logger.error("Internal error in %s: %s", args.command, exc)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
