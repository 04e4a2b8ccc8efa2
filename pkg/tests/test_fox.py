import random

import pytest

import gen
from arrcover.fox import (Character, InvalidCharacter, Presentation, Word, commutator, fox_derivative,
                          fox_matrix, free_reduce, validate_character)
from arrcover.laurent import LaurentMatrix, LaurentPoly, ONE, T

x, y = 0, 1


def test_free_reduce():
    assert free_reduce(Word(((x, 1), (x, -1)))) == Word()
    assert free_reduce(Word(((x, 1), (y, 1), (y, -1), (x, 1)))) == Word(((x, 1), (x, 1)))
    w = Word(((x, 1), (y, -1)))
    assert free_reduce(w) == w


def test_derivative_examples():
    for a in (-2, 1, 3):
        assert fox_derivative(Word(((x, -1),)), x, [a]) == LaurentPoly.monomial(-a, -1)
    assert fox_derivative(Word.from_powers([(x, 4)]), x, [1]) == LaurentPoly.geometric(1, 4)
    for b in (-1, 2):
        assert fox_derivative(commutator(x, y), x, [0, b]) == ONE - LaurentPoly.monomial(b)


def test_derivative_index_out_of_range():
    with pytest.raises(IndexError):
        fox_derivative(Word(((x, 1),)), 3, [1])


def test_validate_character():
    torus = Presentation(("x", "y"), (commutator(x, y),))
    assert validate_character(torus, Character((5, -7)))
    bad = validate_character(Presentation(("x",), (Word(((x, 1), (x, 1))),)), Character((1,)))
    assert not bad and bad.relator == 0
    with pytest.raises(InvalidCharacter):
        fox_matrix(Presentation(("x",), (Word(((x, 1), (x, 1))),)), Character((1,)))


def test_fox_matrix_examples():
    torus = Presentation(("x", "y"), (commutator(x, y),))
    assert fox_matrix(torus, Character((1, 1))) == LaurentMatrix.from_rows([[ONE - T, T - ONE]])
    assert fox_matrix(Presentation(("x",)), Character((1,))).shape == (0, 1)


def test_presentation_rejects_unknown_generator():
    with pytest.raises(ValueError):
        Presentation(("x",), (Word(((1, 1),)),))


def test_fundamental_identity():
    """sum_g (dw/dg)(t^w_g - 1) = t^w(word) - 1."""
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randint(1, 4)
        w = gen.random_word(rng, m, 10)
        weights = [rng.randint(-3, 3) for _ in range(m)]
        lhs = LaurentPoly()
        for g in range(m):
            lhs = lhs + fox_derivative(w, g, weights) * LaurentPoly.t_power_minus_one(weights[g])
        assert lhs == LaurentPoly.t_power_minus_one(w.weight(weights))


def test_insensitive_to_inserted_cancelling_pairs():
    rng = random.Random(8)
    for _ in range(100):
        m = rng.randint(1, 4)
        w = gen.random_word(rng, m, 8)
        k = rng.randint(0, len(w))
        g = rng.randrange(m)
        e = rng.choice((1, -1))
        padded = Word(w.letters[:k] + ((g, e), (g, -e)) + w.letters[k:])
        weights = [rng.randint(-3, 3) for _ in range(m)]
        for h in range(m):
            assert fox_derivative(padded, h, weights) == fox_derivative(w, h, weights)
