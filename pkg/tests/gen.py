"""Seeded random instances shared by the test modules."""

from __future__ import annotations

import math
import random
from functools import reduce

import numpy as np

from arrcover.arrangement import MarkedArrangement, character_from_weights
from arrcover.fox import Character, Presentation, Word
from arrcover.intlinalg import column_echelon


def random_arrangement(rng: random.Random, max_s: int = 4, max_m: int = 5) -> MarkedArrangement:
    ms = [rng.randint(2, max_m) for _ in range(rng.randint(2, max_s))]
    return MarkedArrangement.from_multiplicities(ms)


def _split(flat, ms):
    out, k = [], 0
    for m in ms:
        out.append(flat[k:k + m - 1])
        k += m - 1
    return out


def random_character(rng: random.Random, A: MarkedArrangement, eps: int = 1, wmax: int = 3,
                     nonzero_points: bool = False, tries: int = 1000):
    """Integral character with the given ``eps`` and weights in ``[-wmax, wmax]``.

    The weights must sum to ``-eps``; with ``nonzero_points`` every ``eps_i`` of a
    point with ``m_i > 2`` is nonzero.
    """
    count = sum(m - 1 for m in A.multiplicities)
    for _ in range(tries):
        flat = [rng.randint(-wmax, wmax) for _ in range(count - 1)]
        last = -eps - sum(flat)
        if abs(last) > wmax:
            continue
        flat.append(last)
        if reduce(math.gcd, flat, eps) != 1:
            continue
        pw = _split(flat, A.multiplicities)
        if nonzero_points and any(m > 2 and eps + sum(ws) == 0 for m, ws in zip(A.multiplicities, pw)):
            continue
        return character_from_weights(A, eps, pw)
    raise RuntimeError("no character found")


def random_eps1_instance(rng: random.Random, max_s: int = 4, max_m: int = 5, wmax: int = 3):
    while True:
        A = random_arrangement(rng, max_s, max_m)
        try:
            return A, random_character(rng, A, 1, wmax)
        except RuntimeError:
            continue


def random_divisor_instance(rng: random.Random, max_s: int = 4, max_m: int = 4, wmax: int = 3):
    """eps != 0 and eps_i != 0 whenever m_i > 2."""
    while True:
        A = random_arrangement(rng, max_s, max_m)
        eps = rng.choice([e for e in range(-wmax, wmax + 1) if e])
        try:
            return A, random_character(rng, A, eps, wmax, nonzero_points=True)
        except RuntimeError:
            continue


def suite_eps1(seed: int = 20261018, count: int = 200):
    rng = random.Random(seed)
    return [random_eps1_instance(rng) for _ in range(count)]


def random_word(rng: random.Random, m: int, max_len: int) -> Word:
    return Word(tuple((rng.randrange(m), rng.choice((1, -1))) for _ in range(rng.randint(1, max_len))))


def exponent_matrix(P: Presentation) -> np.ndarray:
    E = np.zeros((P.num_relators, P.num_generators), dtype=np.int64)
    for k, r in enumerate(P.relators):
        for g in range(P.num_generators):
            E[k, g] = r.exponent_sum(g)
    return E


def integral_characters(P: Presentation) -> np.ndarray:
    """Columns spanning the integer characters of ``P`` (kernel of the exponent-sum matrix)."""
    E = exponent_matrix(P)
    if E.shape[0] == 0:
        return np.eye(P.num_generators, dtype=np.int64)
    r, V, _ = column_echelon(E)
    return V[:, r:]


def random_presentation_with_character(rng: random.Random, N: int, max_gens: int = 5, max_len: int = 10):
    """Random presentation plus an integral character whose N-fold cover is connected."""
    while True:
        m = rng.randint(1, max_gens)
        rels = tuple(random_word(rng, m, max_len) for _ in range(rng.randint(0, max(m - 1, 0) + 1)))
        P = Presentation(tuple(f"x{g}" for g in range(m)), rels)
        K = integral_characters(P)
        if K.shape[1] == 0:
            continue
        coeffs = [rng.randint(-2, 2) for _ in range(K.shape[1])]
        w = [int(sum(int(K[g, j]) * c for j, c in enumerate(coeffs))) for g in range(m)]
        if not any(w) or reduce(math.gcd, w, N) != 1:
            continue
        return P, Character(tuple(w))
