from __future__ import annotations

import argparse

from ..core.errors import ZeroLengthError
from ..core.sliding import cyclic_sliding, has_two_sided_rigidity, is_rigid, rigidity, sliding_trajectory
from .base import WordCommand


class SlideCommand(WordCommand):
    NAME = "slide"
    HELP = "Apply one cyclic sliding and print the result and the preferred prefix."

    def run(self, args: argparse.Namespace) -> int:
        x = self.braid(args)
        slid, prefix = cyclic_sliding(x)
        payload = {"input": args.word, "n": args.n, "slid": str(slid), "prefix": prefix.artin_word()}
        self.emit(args, payload, [str(slid), f"prefix: {prefix}"])
        return 0


class CircuitCommand(WordCommand):
    NAME = "circuit"
    HELP = "Iterate cyclic sliding until the first repetition and print the sliding circuit."

    def run(self, args: argparse.Namespace) -> int:
        trajectory = sliding_trajectory(self.braid(args))
        tail = [str(step.braid) for step in trajectory.tail]
        circuit = [str(step.braid) for step in trajectory.circuit]
        payload = {"input": args.word, "n": args.n, "tail": tail, "circuit": circuit, "steps": trajectory.steps}
        lines = [f"tail ({len(tail)}):"] + [f"  {b}" for b in tail]
        lines += [f"circuit ({len(circuit)}):"] + [f"  {b}" for b in circuit]
        self.emit(args, payload, lines)
        return 0


class RigidityCommand(WordCommand):
    NAME = "rigidity"
    HELP = "Print the rigidity k/r of a braid and whether it is rigid."

    def run(self, args: argparse.Namespace) -> int:
        x = self.braid(args)
        try:
            ratio = str(rigidity(x))
        except ZeroLengthError:
            ratio = None
        payload = {
            "input": args.word,
            "n": args.n,
            "rigidity": ratio,
            "rigid": is_rigid(x),
            "two_sided": has_two_sided_rigidity(x),
        }
        lines = [ratio or "undefined (power of D)", f"rigid: {'yes' if payload['rigid'] else 'no'}"]
        self.emit(args, payload, lines)
        return 0
