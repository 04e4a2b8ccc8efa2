"""Homology of the N-fold cyclic cover attached to a presentation and a character.

Cellular chains of the cover of the presentation 2-complex: one vertex, one
edge per generator and one face per relator in each of the ``N`` sheets. The
face boundaries are the Alexander matrix with ``t -> C_N`` and the edge
boundaries are the blocks ``C_N^w - I``. Column-vector convention throughout:
``d1`` is ``N x mN``, ``d2`` is ``mN x lN`` and ``d1 @ d2 = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Iterable

import numpy as np

from .arrangement import (ArrangementCharacter, HypothesisError, MarkedArrangement,
                          alexander_divisor, betti_formula, boundary_presentation,
                          presentation_character)
from .fieldpoly import FieldPoly, ModuleInvariants, poly_kernel_and_snf
from .fox import Character, InvalidCharacter, Presentation, boundary_column, fox_matrix
from .intlinalg import (FieldSelector, QQ, as_field, column_echelon, gcd_mod, int_matmul,
                        rank_over, snf_int, substitute)

DEFAULT_FIELDS = (0, 2, 3, 5)


class InconsistencyError(RuntimeError):
    """Two computations that must agree did not."""


@dataclass(frozen=True)
class CoverChainComplex:
    N: int
    d2: np.ndarray
    d1: np.ndarray
    num_generators: int
    num_relators: int

    def check(self) -> None:
        prod = int_matmul(self.d1, self.d2)
        if np.any(prod != 0):
            raise InconsistencyError("d1 @ d2 != 0 in the cover chain complex")


@dataclass(frozen=True)
class CoverHomologyReport:
    """First homology of a cyclic cover: ``Z^free_rank + sum Z/torsion``."""

    free_rank: int
    torsion: tuple[int, ...]
    field_betti: dict[int, int] = field(default_factory=dict)
    connected: bool = True

    def same_group(self, other: CoverHomologyReport) -> bool:
        return self.free_rank == other.free_rank and sorted(self.torsion) == sorted(other.torsion)

    def describe(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def _check_modulus(chi: Character, N: int) -> None:
    if N < 1:
        raise ValueError(f"cover degree must be >= 1, got {N}")
    if chi.modulus is not None and chi.modulus % N:
        raise InvalidCharacter(f"character to Z/{chi.modulus} does not factor through Z/{N}")


def build_complex(P: Presentation, chi: Character, N: int) -> CoverChainComplex:
    _check_modulus(chi, N)
    M = fox_matrix(P, chi)
    m = P.num_generators
    d2 = substitute(M, N).T
    d1 = substitute(boundary_column(chi), N).T
    if d2.size == 0:
        d2 = np.zeros((m * N, P.num_relators * N), dtype=np.int64)
    cx = CoverChainComplex(N, np.ascontiguousarray(d2), np.ascontiguousarray(d1), m, P.num_relators)
    cx.check()
    return cx


def _connected(chi: Character, N: int) -> bool:
    return reduce(math.gcd, chi.weights, N) == 1


def field_betti(cx: CoverChainComplex, K: FieldSelector | int) -> int:
    """``dim ker d1 - rank d2`` over ``K`` from ranks alone."""
    K = as_field(K)
    c1 = cx.num_generators * cx.N
    return c1 - rank_over(cx.d1, K) - rank_over(cx.d2, K)


def integral_h1(cx: CoverChainComplex) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of ``ker d1 / im d2`` over Z via an integer kernel basis."""
    c1 = cx.num_generators * cx.N
    r, _V, Vinv = column_echelon(cx.d1)
    Y = int_matmul(Vinv, cx.d2)
    if np.any(Y[:r] != 0):
        raise InconsistencyError("image of d2 is not inside ker d1")
    X = Y[r:]
    if X.shape[0] == 0:
        return 0, ()
    sf = snf_int(X)
    return (c1 - r) - sf.rank, sf.torsion


def h1_cover(P: Presentation, chi: Character, N: int,
             fields: Iterable[int] = DEFAULT_FIELDS, integral: bool = True) -> CoverHomologyReport:
    cx = build_complex(P, chi, N)
    betti = {int(p): field_betti(cx, p) for p in fields}
    if integral:
        free, torsion = integral_h1(cx)
    else:
        free, torsion = betti.get(0, field_betti(cx, 0)), ()
    report = CoverHomologyReport(free, torsion, betti, _connected(chi, N))
    if integral:
        _check_uct(report)
    return report


def _check_uct(report: CoverHomologyReport) -> None:
    """Field Betti numbers must match the integral group (H_0 is free)."""
    for p, b in report.field_betti.items():
        expect = report.free_rank + (0 if p == 0 else sum(1 for d in report.torsion if d % p == 0))
        if b != expect:
            raise InconsistencyError(
                f"Betti number over {'Q' if p == 0 else f'F{p}'} is {b} but the integral group "
                f"predicts {expect}")


# arrangement-level operations ---------------------------------------------


def _eps_hypothesis(chi: ArrangementCharacter, N: int) -> tuple[bool, str]:
    """Returns (holds, label). Integral characters with eps != 1 may still
    satisfy the mod-N form ``eps = 1 mod N``."""
    if chi.modulus is None and chi.eps == 1:
        return True, "integral"
    if (chi.eps - 1) % N == 0:
        return True, "mod-N"
    return False, "integral" if chi.modulus is None else "mod-N"


def betti_bound(A: MarkedArrangement, chi: ArrangementCharacter, N: int) -> int:
    """``(n-1) + sum (m_i - 2)(gcd(eps_i, N) - 1)`` under the ``eps = 1`` hypothesis."""
    ok, _ = _eps_hypothesis(chi, N)
    if not ok:
        raise HypothesisError(f"Betti bound needs eps = 1 (or eps = 1 mod {N}), got eps={chi.eps}")
    return betti_formula(A, chi.normalized(), N)


class Verdict(str, Enum):
    TORSION_FREE = "TorsionFree"
    BOUND_ONLY = "BoundOnly"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    bound: int | None
    hypotheses_log: tuple[tuple[str, bool], ...]
    mode_flag: str
    rank: int | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "bound": self.bound,
            "rank": self.rank,
            "mode": self.mode_flag,
            "hypotheses": [{"hypothesis": h, "pass": ok} for h, ok in self.hypotheses_log],
        }


def certify(A: MarkedArrangement, chi: ArrangementCharacter, N: int) -> Certificate:
    """Check the torsion-freeness hypotheses for the N-fold cover of the complement.

    ``TorsionFree`` means H_1 of the cover is ``Z^(n-1)``; ``BoundOnly`` attaches
    only the Betti bound; ``Inconclusive`` when ``eps = 1`` fails.
    """
    eps_ok, mode = _eps_hypothesis(chi, N)
    eps_label = "eps = 1" if mode == "integral" else f"eps = 1 mod {N}"
    log = [(eps_label, eps_ok)]
    if not eps_ok:
        return Certificate(Verdict.INCONCLUSIVE, None, tuple(log), mode)
    for i, (m, e) in enumerate(zip(A.multiplicities, chi.epsilon_i), start=1):
        if m > 2:
            log.append((f"gcd(eps_{i}, N) = 1 (m_{i}={m}, eps_{i}={e}, N={N})", gcd_mod(e, N) == 1))
    bound = betti_bound(A, chi, N)
    if all(ok for _, ok in log):
        return Certificate(Verdict.TORSION_FREE, bound, tuple(log), mode, rank=A.n - 1)
    return Certificate(Verdict.BOUND_ONLY, bound, tuple(log), mode)


def boundary_cover_h1(A: MarkedArrangement, chi: ArrangementCharacter, N: int,
                      fields: Iterable[int] = DEFAULT_FIELDS, integral: bool = True) -> CoverHomologyReport:
    """H_1 of the N-fold cover of the boundary manifold along the marked line."""
    return h1_cover(boundary_presentation(A), presentation_character(A, chi), N, fields, integral)


@dataclass(frozen=True)
class DivisorCheck:
    field: FieldSelector
    alexander: ModuleInvariants
    divisor: FieldPoly
    divides: bool

    @property
    def delta(self) -> FieldPoly:
        return self.alexander.order


def alexander_module(P: Presentation, chi: Character, K: FieldSelector | int = QQ) -> ModuleInvariants:
    """``H_1`` of the infinite cyclic cover as a ``K[t^±]``-module."""
    if chi.modulus is not None:
        raise InvalidCharacter("the infinite cyclic cover needs an integral character")
    M = fox_matrix(P, chi)
    D1 = boundary_column(chi).transpose()
    return poly_kernel_and_snf(D1, M.transpose(), K)


def divisor_check(A: MarkedArrangement, chi: ArrangementCharacter,
                  K: FieldSelector | int = QQ) -> DivisorCheck:
    """Does the Alexander polynomial of the boundary manifold divide the divisor polynomial?"""
    K = as_field(K)
    div = alexander_divisor(A, chi)
    module = alexander_module(boundary_presentation(A), presentation_character(A, chi), K)
    p = K.characteristic
    target = FieldPoly.from_laurent(div.value, p)
    if target.is_zero():
        raise HypothesisError(f"divisor polynomial vanishes over {K.label}")
    divides = module.free_rank == 0 and module.order.divides(target)
    return DivisorCheck(K, module, target, divides)


def predicted_betti_from_alexander(module: ModuleInvariants, N: int) -> int:
    """``1 + sum deg gcd(f_k, t^N - 1)``: Betti number of a connected N-fold cover
    whose infinite cyclic cover has torsion Alexander module ``module``."""
    from .fieldpoly import poly_gcd

    p = module.field.characteristic
    tn = FieldPoly([-1] + [0] * (N - 1) + [1], p)
    return 1 + module.free_rank * N + sum(poly_gcd(f, tn).deg for f in module.factors)
