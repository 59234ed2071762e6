import itertools

import pytest

from braidtype.core.braid import (
    CanonicalBraid,
    SimpleBraid,
    all_simples,
    gcd_with_delta_power,
    initial_factor,
    is_left_weighted,
    multiply,
    normal_form,
    rev,
)
from braidtype.core.errors import BraidError, StrandMismatchError
from braidtype.core.words import GeneratorWord, random_word

from .conftest import braid


def _is_prefix(s: SimpleBraid, t: SimpleBraid) -> bool:
    # s is a prefix of t iff s^-1 t is simple iff the lengths add up
    inv = [0] * s.n
    for i, v in enumerate(s.perm):
        inv[v] = i
    quotient = SimpleBraid(tuple(t.perm[v] for v in inv))
    return s.length + quotient.length == t.length


def test_braid_relation_gives_delta():
    x = braid(3, "s1 s2 s1")
    assert x.power == 1 and x.factors == ()
    assert str(x) == "D"


def test_inverse_generator_normal_form():
    x = braid(3, "s1^-1")
    assert x.power == -1
    assert x.factors == (SimpleBraid.from_letters(3, [1, 2]),)


def test_square_of_generator_keeps_two_factors():
    x = braid(3, "s2 s2")
    s2 = SimpleBraid.generator(3, 2)
    assert x.power == 0
    assert x.factors == (s2, s2)
    assert is_left_weighted(s2, s2)


def test_multiply_examples():
    d = CanonicalBraid.delta(3)
    assert (d * d) == CanonicalBraid.delta(3, 2)
    product = braid(3, "s1") * braid(3, "s2")
    assert product.power == 0
    assert product.factors == (SimpleBraid.from_letters(3, [1, 2]),)
    assert multiply(braid(3, "s1"), braid(3, "s1^-1")).is_identity()
    assert multiply(braid(3, "s1 s2"), braid(3, "s1")) == CanonicalBraid.delta(3)


def test_inverse_examples():
    assert CanonicalBraid.delta(4, 3).inverse() == CanonicalBraid.delta(4, -3)
    assert CanonicalBraid.identity(4).inverse() == CanonicalBraid.identity(4)


def test_mismatched_strands():
    with pytest.raises(StrandMismatchError):
        braid(3, "s1") * braid(4, "s1")


def test_degenerate_strand_counts():
    assert braid(1, "") == CanonicalBraid.identity(1)
    x = braid(2, "s1 s1 s1^-1 s1")
    assert x == CanonicalBraid.delta(2, 2)
    assert braid(2, "s1^-1").power == -1


def test_random_words_are_in_normal_form(rng):
    for _ in range(300):
        n = rng.randint(2, 7)
        x = normal_form(random_word(n, rng.randint(0, 30), rng))
        assert x.is_normalised()
        assert all(not f.is_identity() and not f.is_delta() for f in x.factors)


def test_normal_form_agrees_with_letterwise_products(rng):
    for _ in range(200):
        n = rng.randint(2, 6)
        w = random_word(n, rng.randint(0, 20), rng)
        product = CanonicalBraid.identity(n)
        for letter in w.letters():
            product = product * normal_form(GeneratorWord.from_letters(n, [letter]))
        assert product == normal_form(w)


def test_relator_insertion_does_not_change_normal_form(rng):
    for _ in range(300):
        n = rng.randint(3, 7)
        letters = random_word(n, rng.randint(0, 20), rng).letters()
        i = rng.randint(1, n - 2)
        j = rng.choice([k for k in range(1, n) if abs(k - i) > 1] or [i])
        relators = [
            [i, -i],
            [-i, i],
            [i, i + 1, i, -(i + 1), -i, -(i + 1)],
            [i, j, -i, -j] if j != i else [i, -i],
        ]
        at = rng.randint(0, len(letters))
        longer = letters[:at] + rng.choice(relators) + letters[at:]
        assert normal_form(GeneratorWord.from_letters(n, longer)) == normal_form(
            GeneratorWord.from_letters(n, letters)
        )


def test_multiply_inverse_round_trip(rng):
    for _ in range(300):
        n = rng.randint(2, 6)
        x = normal_form(random_word(n, rng.randint(0, 25), rng))
        y = normal_form(random_word(n, rng.randint(0, 25), rng))
        assert (x * x.inverse()).is_identity()
        assert (x.inverse() * x).is_identity()
        assert x.inverse().inf == -x.sup
        assert x.inverse().sup == -x.inf
        assert (x * y).inverse() == y.inverse() * x.inverse()
        assert (x * y).canonical_length <= x.canonical_length + y.canonical_length


def test_multiply_is_associative(rng):
    for _ in range(150):
        n = rng.randint(2, 5)
        x, y, z = (normal_form(random_word(n, rng.randint(0, 12), rng)) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_inverse_word_matches_inverse_braid(rng):
    for _ in range(200):
        n = rng.randint(2, 6)
        w = random_word(n, rng.randint(0, 20), rng)
        assert normal_form(w.inverse()) == normal_form(w).inverse()


def test_to_word_reparses(rng):
    for _ in range(200):
        n = rng.randint(2, 6)
        x = normal_form(random_word(n, rng.randint(0, 20), rng))
        assert CanonicalBraid.parse(n, str(x)) == x


def test_powers_and_delta_conjugation(rng):
    for _ in range(100):
        n = rng.randint(2, 5)
        x = normal_form(random_word(n, rng.randint(0, 10), rng))
        assert x ** 3 == x * x * x
        assert x ** -2 == (x * x).inverse()
        assert x ** 0 == CanonicalBraid.identity(n)
        d = CanonicalBraid.delta(n)
        assert x.conjugate(d) == x.tau()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_meet_is_greatest_common_prefix(n):
    simples = all_simples(n)
    for s, t in itertools.product(simples, repeat=2):
        m = s.meet(t)
        assert m == t.meet(s)
        assert _is_prefix(m, s) and _is_prefix(m, t)
        for u in simples:
            if _is_prefix(u, s) and _is_prefix(u, t):
                assert _is_prefix(u, m)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complement_laws(n):
    delta = CanonicalBraid.delta(n)
    for s in all_simples(n):
        assert CanonicalBraid.from_simple(s) * CanonicalBraid.from_simple(s.complement()) == delta
        assert CanonicalBraid.from_simple(s.left_complement()) * CanonicalBraid.from_simple(s) == delta
        assert s.tau().tau() == s
        assert s.length + s.complement().length == n * (n - 1) // 2
        assert s.divides(SimpleBraid.delta(n))
        assert SimpleBraid.from_letters(n, s.artin_word()) == s


def test_simple_braids_reject_repeated_crossings():
    with pytest.raises(BraidError):
        SimpleBraid.from_letters(3, [1, 1])


def test_delta_length():
    for n in range(2, 7):
        assert SimpleBraid.delta(n).length == n * (n - 1) // 2
        assert CanonicalBraid.delta(n).sup == 1


def test_rev_reverses_words(rng):
    for _ in range(150):
        n = rng.randint(2, 6)
        w = random_word(n, rng.randint(0, 15), rng)
        reversed_word = GeneratorWord.from_letters(n, list(reversed(w.letters())))
        assert rev(normal_form(w)) == normal_form(reversed_word)
        assert rev(rev(normal_form(w))) == normal_form(w)


def test_gcd_with_delta_power():
    x = braid(3, "D s1 s2 s2")
    assert gcd_with_delta_power(x, 0) == CanonicalBraid.identity(3)
    assert gcd_with_delta_power(x, 1) == CanonicalBraid.delta(3)
    assert gcd_with_delta_power(x, 2).sup == 2
    assert gcd_with_delta_power(x, 5) == x


def test_initial_factor_of_positive_braid():
    x = braid(4, "s1 s3 s2")
    assert initial_factor(x) == SimpleBraid.from_letters(4, [1, 3, 2])
    assert initial_factor(CanonicalBraid.delta(4, 2)).is_identity()
