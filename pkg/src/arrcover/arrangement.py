"""Line arrangements seen from a marked line ``H``.

An arrangement of ``n`` lines is recorded by the multiplicities ``m_1..m_s``
of the multiple points of ``H``; the other lines through point ``i`` are
``H_{i,2}..H_{i,m_i}``. A character gives the meridian of ``H`` weight
``eps`` and the meridian of ``H_{i,j}`` weight ``eps_{i,j}``.

The boundary manifold of a neighbourhood of ``H`` has fundamental group
generated by ``alpha`` (meridian of ``H``), ``beta_i`` (fiber class at point
``i``, of weight ``eps_i = eps + sum_j eps_{i,j}``) and ``alpha_{i,j}`` for
``2 <= j <= m_i - 1``, with relators ``alpha^(1-s) beta_1 ... beta_s``,
``[alpha, beta_i]`` and ``[alpha_{i,j}, beta_i]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

from .fox import Character, Presentation, Word, commutator
from .intlinalg import gcd_mod
from .laurent import LaurentMatrix, LaurentPoly, ONE, T, ZERO

Mode = Union[str, int]  # "integral" or a modulus N


class ArrangementError(ValueError):
    """Invalid marked arrangement; ``field`` names the offending datum."""

    def __init__(self, message: str, field: str = "points"):
        super().__init__(message)
        self.field = field


class CharacterError(ValueError):
    def __init__(self, message: str, field: str = "weights"):
        super().__init__(message)
        self.field = field


class ShapeError(CharacterError):
    pass


class SumConstraintError(CharacterError):
    pass


class SurjectivityError(CharacterError):
    pass


class HypothesisError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    field: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MarkedArrangement:
    n: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(int(m) for m in self.multiplicities))

    @property
    def s(self) -> int:
        return len(self.multiplicities)

    @classmethod
    def from_multiplicities(cls, ms: Sequence[int]) -> MarkedArrangement:
        ms = tuple(ms)
        return cls(1 + sum(m - 1 for m in ms), ms)


def validate_arrangement(A: MarkedArrangement) -> Verdict:
    if A.s < 2:
        return Verdict(False, f"an essential arrangement has at least 2 multiple points on H, got s={A.s}",
                       "points")
    for i, m in enumerate(A.multiplicities):
        if m < 2:
            return Verdict(False, f"points[{i}]: multiplicity m={m} is below 2", f"points[{i}].m")
    expected = 1 + sum(m - 1 for m in A.multiplicities)
    if A.n != expected:
        return Verdict(False, f"n={A.n} but the line count identity n = 1 + sum(m_i - 1) "
                              f"gives {expected}", "n")
    return Verdict(True)


def require_valid(A: MarkedArrangement) -> None:
    v = validate_arrangement(A)
    if not v:
        raise ArrangementError(v.reason, v.field or "points")


@dataclass(frozen=True)
class ArrangementCharacter:
    """Weights of the meridians: ``eps`` for ``H`` and ``point_weights[i]``
    ``= (eps_{i,2}, ..., eps_{i,m_i})`` for the other lines through point ``i``.

    ``mode`` is ``"integral"`` or a modulus ``N`` (character to Z/N).
    """

    eps: int
    point_weights: tuple[tuple[int, ...], ...]
    mode: Mode = "integral"

    def __post_init__(self):
        object.__setattr__(self, "point_weights",
                           tuple(tuple(int(w) for w in ws) for ws in self.point_weights))

    @property
    def modulus(self) -> int | None:
        return None if self.mode == "integral" else int(self.mode)

    @property
    def epsilon_i(self) -> tuple[int, ...]:
        return tuple(self.eps + sum(ws) for ws in self.point_weights)

    def all_weights(self) -> tuple[int, ...]:
        return (self.eps,) + tuple(w for ws in self.point_weights for w in ws)

    def eps_is_one(self) -> bool:
        """The ``eps = 1`` hypothesis (``eps = 1 mod N`` for a mod-N character)."""
        if self.modulus is None:
            return self.eps == 1
        return (self.eps - 1) % self.modulus == 0

    def normalized(self) -> ArrangementCharacter:
        """Mod-N character with ``eps = 1 mod N`` rewritten to store ``eps = 1``."""
        if self.modulus is not None and self.eps != 1 and self.eps_is_one():
            return ArrangementCharacter(1, self.point_weights, self.mode)
        return self


def character_from_weights(A: MarkedArrangement, eps: int, point_weights: Sequence[Sequence[int]],
                           mode: Mode = "integral") -> ArrangementCharacter:
    require_valid(A)
    if mode != "integral":
        if isinstance(mode, bool) or not isinstance(mode, int) or mode < 1:
            raise ShapeError(f"mode must be 'integral' or a positive modulus, got {mode!r}", "mode")
    if len(point_weights) != A.s:
        raise ShapeError(f"expected weights for {A.s} points, got {len(point_weights)}", "points")
    for i, (m, ws) in enumerate(zip(A.multiplicities, point_weights)):
        if len(ws) != m - 1:
            raise ShapeError(f"points[{i}].weights: expected m-1={m - 1} weights, got {len(ws)}",
                             f"points[{i}].weights")
    chi = ArrangementCharacter(int(eps), point_weights, mode)
    total = (1 - A.s) * chi.eps + sum(chi.epsilon_i)
    weights = chi.all_weights()
    if chi.modulus is None:
        if total != 0:
            raise SumConstraintError(
                f"weight sum (1-s)*eps + sum(eps_i) = {total}, must be 0 "
                "(a character kills the product of all meridians)")
        g = reduce(math.gcd, weights, 0)
        if g != 1:
            raise SurjectivityError(f"gcd of all weights is {g}; the character is not onto Z")
    else:
        N = chi.modulus
        if total % N:
            raise SumConstraintError(
                f"weight sum (1-s)*eps + sum(eps_i) = {total} is not 0 mod {N}")
        g = reduce(math.gcd, weights, N)
        if g != 1:
            raise SurjectivityError(f"gcd of all weights with N={N} is {g}; the character is not onto Z/{N}")
    return chi


def milnor_character(A: MarkedArrangement) -> ArrangementCharacter:
    """All meridians to 1 in Z/n."""
    return character_from_weights(A, 1, [[1] * (m - 1) for m in A.multiplicities], A.n)


def williams_parameters(A: MarkedArrangement) -> tuple[ArrangementCharacter, int]:
    require_valid(A)
    return milnor_character(A), A.n


# presentation layout -------------------------------------------------------


def generator_layout(A: MarkedArrangement) -> list[tuple[str, tuple[int, ...]]]:
    """Generators in matrix-column order as ``(kind, indices)``.

    Order: ``alpha, beta_1, alpha_{1,2} .. alpha_{1,m_1-1}, beta_2, ...``.
    """
    out = [("alpha", ())]
    for i, m in enumerate(A.multiplicities, start=1):
        out.append(("beta", (i,)))
        out.extend(("alpha", (i, j)) for j in range(2, m))
    return out


def _name(kind: str, idx: tuple[int, ...]) -> str:
    if not idx:
        return kind
    return f"{kind}_{','.join(map(str, idx))}" if len(idx) > 1 else f"{kind}_{idx[0]}"


def boundary_presentation(A: MarkedArrangement) -> Presentation:
    require_valid(A)
    layout = generator_layout(A)
    index = {key: k for k, key in enumerate(layout)}
    alpha = 0
    betas = [index[("beta", (i,))] for i in range(1, A.s + 1)]
    long = Word.from_powers([(alpha, 1 - A.s)] + [(b, 1) for b in betas])
    relators = [long]
    for i, m in enumerate(A.multiplicities, start=1):
        b = index[("beta", (i,))]
        relators.append(commutator(alpha, b))
        relators.extend(commutator(index[("alpha", (i, j))], b) for j in range(2, m))
    return Presentation(tuple(_name(k, idx) for k, idx in layout), tuple(relators))


def presentation_character(A: MarkedArrangement, chi: ArrangementCharacter) -> Character:
    """Weights of ``alpha, beta_i, alpha_{i,j}`` in generator order."""
    weights = [chi.eps]
    for m, ws, e_i in zip(A.multiplicities, chi.point_weights, chi.epsilon_i):
        weights.append(e_i)
        weights.extend(ws[:m - 2])
    return Character(tuple(weights), chi.modulus)


def _check_shapes(A: MarkedArrangement, chi: ArrangementCharacter) -> None:
    require_valid(A)
    if len(chi.point_weights) != A.s or any(
            len(ws) != m - 1 for m, ws in zip(A.multiplicities, chi.point_weights)):
        raise ShapeError("character shape does not match the arrangement")


def _tp(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


def direct_alexander(A: MarkedArrangement, chi: ArrangementCharacter) -> LaurentMatrix:
    """Alexander matrix of the boundary presentation written down block by block.

    Independent of the Fox-calculus code path; rows follow the relator order and
    columns the generator order of :func:`boundary_presentation`.
    """
    _check_shapes(A, chi)
    n, s, eps = A.n, A.s, chi.eps
    eps_i = chi.epsilon_i
    rows = [[ZERO] * n for _ in range(n)]
    # (t^(eps(1-s)) - 1) / (t^eps - 1); at eps = 0 the quotient is the limit 1 - s
    if eps:
        rows[0][0] = LaurentPoly.t_power_minus_one(eps * (1 - s)).exact_div(
            LaurentPoly.t_power_minus_one(eps))
    else:
        rows[0][0] = LaurentPoly.constant(1 - s)
    col = 1
    prefix = eps * (1 - s)
    r = 1
    for i, m in enumerate(A.multiplicities):
        beta_col = col
        rows[0][beta_col] = _tp(prefix)
        prefix += eps_i[i]
        one_minus = ONE - _tp(eps_i[i])
        # row [alpha, beta_i]
        rows[r][0] = one_minus
        rows[r][beta_col] = _tp(eps) - ONE
        r += 1
        for j in range(2, m):
            a_col = beta_col + (j - 1)
            rows[r][beta_col] = _tp(chi.point_weights[i][j - 2]) - ONE
            rows[r][a_col] = one_minus
            r += 1
        col += m - 1
    return LaurentMatrix.from_rows(rows, n)


def diagonal_form(A: MarkedArrangement, chi: ArrangementCharacter) -> LaurentMatrix:
    """``diag(0, t^(1-s), (t-1) x (s-1), (1 - t^eps_i) x (m_i - 2) ...)``."""
    _check_shapes(A, chi)
    if not chi.eps_is_one():
        mod = "" if chi.modulus is None else f" mod {chi.modulus}"
        raise HypothesisError(f"diagonal form needs eps = 1{mod}, got eps={chi.eps}")
    chi = chi.normalized()
    diag = [ZERO, _tp(1 - A.s)] + [T - ONE] * (A.s - 1)
    for m, e_i in zip(A.multiplicities, chi.epsilon_i):
        diag.extend([ONE - _tp(e_i)] * (m - 2))
    return LaurentMatrix.diagonal(diag)


@dataclass(frozen=True)
class DivisorPolynomial:
    value: LaurentPoly

    def to_pairs(self) -> list[list[int]]:
        return self.value.to_pairs()


def divisor_hypotheses(A: MarkedArrangement, chi: ArrangementCharacter) -> list[tuple[str, bool]]:
    out = [("integral character", chi.modulus is None), ("eps != 0", chi.eps != 0)]
    for i, (m, e_i) in enumerate(zip(A.multiplicities, chi.epsilon_i), start=1):
        if m > 2:
            out.append((f"eps_{i} != 0 (m_{i}={m} > 2)", e_i != 0))
    return out


def alexander_divisor(A: MarkedArrangement, chi: ArrangementCharacter) -> DivisorPolynomial:
    """Canonical form of ``(t-1)(t^eps - 1)^(s-2) prod_i (t^eps_i - 1)^(m_i - 2)``."""
    _check_shapes(A, chi)
    for label, ok in divisor_hypotheses(A, chi):
        if not ok:
            raise HypothesisError(f"divisor bound needs {label}")
    value = (T - ONE) * LaurentPoly.t_power_minus_one(chi.eps) ** (A.s - 2)
    for m, e_i in zip(A.multiplicities, chi.epsilon_i):
        value = value * LaurentPoly.t_power_minus_one(e_i) ** (m - 2)
    return DivisorPolynomial(value.canonical())


def betti_formula(A: MarkedArrangement, chi: ArrangementCharacter, N: int) -> int:
    """``(n - 1) + sum_i (m_i - 2)(gcd(eps_i, N) - 1)``."""
    return (A.n - 1) + sum((m - 2) * (gcd_mod(e, N) - 1)
                           for m, e in zip(A.multiplicities, chi.epsilon_i))
