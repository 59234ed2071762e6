"""Brute-force Nielsen-Thurston type, by searching the whole super summit set."""
from collections import deque

from braidtype.core.braid import CanonicalBraid, all_simples
from braidtype.core.classifier import Verdict
from braidtype.core.curves import invariant_round_families
from braidtype.core.sliding import sliding_trajectory


def super_summit_set(x: CanonicalBraid):
    start = sliding_trajectory(x).entry
    simples = [CanonicalBraid.from_simple(s) for s in all_simples(x.n)]
    seen = {start}
    queue = deque([start])
    while queue:
        y = queue.popleft()
        for s in simples:
            z = y.conjugate(s)
            if z.inf == start.inf and z.sup == start.sup and z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def oracle_verdict(x: CanonicalBraid) -> Verdict:
    n = x.n
    for k in (n - 1, n):
        if (x ** k).is_delta_power():
            return Verdict.PERIODIC
    # some element of the super summit set of a reducible braid keeps a round family
    for y in super_summit_set(x):
        if invariant_round_families(y):
            return Verdict.REDUCIBLE
    return Verdict.PSEUDO_ANOSOV
