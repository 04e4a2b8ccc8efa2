import json
import random

import numpy as np
import pytest

import gen
from arrcover.arrangement import (HypothesisError, MarkedArrangement, betti_formula, boundary_presentation,
                                  character_from_weights, milnor_character, presentation_character)
from arrcover.cover import (Verdict, alexander_module, betti_bound, boundary_cover_h1, build_complex, certify,
                            divisor_check, h1_cover, predicted_betti_from_alexander)
from arrcover.fox import Character, InvalidCharacter, Presentation, Word, commutator
from arrcover.intlinalg import companion, rank_over

circle = Presentation(("x",))
torus = Presentation(("x", "y"), (commutator(0, 1),))
A22 = MarkedArrangement(3, (2, 2))
chi22 = character_from_weights(A22, 1, [[0], [-1]])
A33 = MarkedArrangement(5, (3, 3))
chi33 = character_from_weights(A33, 1, [[1, 1], [-1, -2]])


def test_circle_complex():
    cx = build_complex(circle, Character((1,)), 3)
    assert cx.d2.shape == (3, 0)
    assert np.array_equal(cx.d1, (companion(3) - np.eye(3, dtype=np.int64)).T)
    rep = h1_cover(circle, Character((1,)), 3)
    assert rep.free_rank == 1 and rep.torsion == ()
    assert h1_cover(circle, Character((1,)), 5).free_rank == 1


def test_boundary_complex_is_a_chain_complex():
    P, c = boundary_presentation(A22), presentation_character(A22, chi22)
    cx = build_complex(P, c, 4)
    assert not np.any(cx.d1 @ cx.d2)


def test_trivial_cover_is_the_base():
    P = Presentation(("x", "y"), (Word(((0, 1), (0, 1), (1, 1), (1, 1))), Word(((1, 1),) * 4)))
    # weights must kill both relators: x^2 y^2 and y^4 force weights (0, 0); a mod-2 character works
    chi = Character((1, 1), modulus=2)
    cx = build_complex(P, chi, 1)
    assert not np.any(cx.d1)
    rep = h1_cover(P, chi, 1)
    assert rep.free_rank == 0 and sorted(rep.torsion) == [2, 4]


def test_h1_examples():
    rep = boundary_cover_h1(A22, chi22, 4)
    assert rep.free_rank == 2 and rep.torsion == ()
    rep = h1_cover(torus, Character((1, 0)), 2)
    assert rep.free_rank == 2 and rep.torsion == ()


def test_torsion_and_uct():
    # Z x Z/6; the index-3 subgroup <x^3, y> is again Z x Z/6
    P = Presentation(("x", "y"), (commutator(0, 1), Word(((1, 1),) * 6)))
    rep = h1_cover(P, Character((1, 0)), 3, fields=(0, 2, 3, 5))
    assert rep.free_rank == 1 and rep.torsion == (6,)
    assert rep.field_betti == {0: 1, 2: 2, 3: 2, 5: 1}


def test_field_betti_ge_free_rank():
    rng = random.Random(21)
    for _ in range(30):
        N = rng.randint(1, 6)
        P, c = gen.random_presentation_with_character(rng, N)
        rep = h1_cover(P, c, N, fields=(0, 2, 3, 5, 7))
        assert rep.field_betti[0] == rep.free_rank
        for p in (2, 3, 5, 7):
            assert rep.field_betti[p] >= rep.free_rank
            assert (rep.field_betti[p] == rep.free_rank) == (not any(d % p == 0 for d in rep.torsion))


def test_connectedness_rank_of_d1():
    rng = random.Random(22)
    for _ in range(30):
        N = rng.randint(1, 6)
        P, c = gen.random_presentation_with_character(rng, N)
        cx = build_complex(P, c, N)
        assert rank_over(cx.d1, 0) == N - 1


def test_modulus_must_be_divisible():
    with pytest.raises(InvalidCharacter):
        build_complex(circle, Character((1,), modulus=4), 3)


def test_bound_examples():
    for N in range(1, 9):
        assert betti_bound(A22, chi22, N) == 2
    assert betti_bound(A33, chi33, 6) == 7
    A16 = MarkedArrangement(16, (4,) * 5)
    assert betti_bound(A16, milnor_character(A16), 16) == 45
    with pytest.raises(HypothesisError):
        betti_bound(A33, character_from_weights(A33, -1, [[1, 1], [-1, 0]]), 4)


def test_certify_examples():
    A16 = MarkedArrangement(16, (4,) * 5)
    cert = certify(A16, milnor_character(A16), 16)
    assert cert.verdict is Verdict.BOUND_ONLY and cert.bound == 45 and cert.mode_flag == "mod-N"
    for N in range(1, 9):
        cert = certify(A22, chi22, N)
        assert cert.verdict is Verdict.TORSION_FREE and cert.rank == 2
    cert = certify(A33, chi33, 6)
    assert cert.verdict is Verdict.BOUND_ONLY and cert.bound == 7
    assert [ok for _, ok in cert.hypotheses_log] == [True, False, False]
    for n in (3, 5, 7, 11):
        A = MarkedArrangement.from_multiplicities((n - 2, 3)) if n > 3 else A22
        assert certify(A, milnor_character(A), A.n).verdict is Verdict.TORSION_FREE
    chi = character_from_weights(A33, -1, [[1, 1], [-1, 0]])
    cert = certify(A33, chi, 5)
    assert cert.verdict is Verdict.INCONCLUSIVE and cert.bound is None
    json.dumps(cert.to_json())


def test_integral_eps_one_mod_n_uses_mod_flag():
    chi = character_from_weights(A33, 4, [[1, 1], [-3, -3]])
    cert = certify(A33, chi, 3)
    assert cert.mode_flag == "mod-N" and cert.verdict is not Verdict.INCONCLUSIVE
    assert boundary_cover_h1(A33, chi, 3).field_betti[0] == cert.bound


def test_divisor_examples():
    assert divisor_check(A22, chi22, 0).divides
    assert divisor_check(A33, chi33, 2).divides
    A32 = MarkedArrangement(4, (3, 2))
    chi = character_from_weights(A32, 1, [[0, 1], [-2]])
    for p in (0, 2, 3):
        assert divisor_check(A32, chi, p).divides
    with pytest.raises(HypothesisError):
        divisor_check(A33, character_from_weights(A33, 1, [[-1, 0], [0, 0]]), 0)


def test_alexander_prediction_matches_covers():
    rng = random.Random(23)
    for _ in range(40):
        A, chi = gen.random_eps1_instance(rng, max_s=3, max_m=4)
        P, c = boundary_presentation(A), presentation_character(A, chi)
        for p in (0, 2, 3):
            mod = alexander_module(P, c, p)
            for N in range(1, 7):
                b = h1_cover(P, c, N, fields=(p,), integral=False).field_betti[p]
                assert predicted_betti_from_alexander(mod, N) == b


def test_mod_n_betti_formula():
    rng = random.Random(24)
    for _ in range(40):
        A = gen.random_arrangement(rng)
        chi = milnor_character(A)
        for N in (d for d in range(1, A.n + 1) if A.n % d == 0):
            rep = boundary_cover_h1(A, chi, N)
            assert rep.torsion == () or any(
                m > 2 and np.gcd(e, N) > 1 for m, e in zip(A.multiplicities, chi.epsilon_i))
            for p, b in rep.field_betti.items():
                assert b == betti_formula(A, chi, N)
