import itertools
import random
from typing import Dict, Iterator, List

import pytest

from braidtype.core.braid import CanonicalBraid
from braidtype.core.words import GeneratorWord


def braid(n: int, text: str) -> CanonicalBraid:
    return CanonicalBraid.parse(n, text)


def all_words(n: int, max_len: int, positive: bool = False) -> Iterator[GeneratorWord]:
    """Every word in the generators up to ``max_len`` letters, shortest first."""
    alphabet = list(range(1, n))
    if not positive:
        alphabet += [-i for i in range(1, n)]
    for length in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=length):
            yield GeneratorWord.from_letters(n, letters)


def distinct_braids(n: int, max_len: int) -> List[CanonicalBraid]:
    seen: Dict[CanonicalBraid, None] = {}
    for w in all_words(n, max_len):
        seen.setdefault(CanonicalBraid.from_word(w), None)
    return list(seen)


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(20240611)
