"""Free-group words, Fox derivatives and Alexander matrices specialized along an
integer character ``generator -> t^weight``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent import LaurentMatrix, LaurentPoly

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    """Element of a free group as a sequence of ``(generator, ±1)`` letters."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if e not in (1, -1) or g < 0:
                raise ValueError(f"bad letter {(g, e)}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_powers(cls, powers: Iterable[tuple[int, int]]) -> Word:
        """Build ``g1^k1 g2^k2 ...`` from ``(generator, exponent)`` pairs."""
        out: list[Letter] = []
        for g, k in powers:
            sign = 1 if k > 0 else -1
            out.extend([(g, sign)] * abs(k))
        return cls(tuple(out))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, g: int) -> int:
        return sum(e for h, e in self.letters if h == g)

    def weight(self, weights: Sequence[int]) -> int:
        return sum(e * weights[g] for g, e in self.letters)

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        return " ".join(names[g] if e == 1 else f"{names[g]}^-1" for g, e in self.letters)


def commutator(a: int, b: int) -> Word:
    """``[a, b] = a b a^-1 b^-1``."""
    return Word(((a, 1), (b, 1), (a, -1), (b, -1)))


def free_reduce(w: Word) -> Word:
    """Cancel adjacent ``g g^-1`` pairs until none remain."""
    stack: list[Letter] = []
    for g, e in w.letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generator_names", tuple(self.generator_names))
        object.__setattr__(self, "relators", tuple(self.relators))
        m = len(self.generator_names)
        for k, r in enumerate(self.relators):
            bad = [g for g in r.generators() if g >= m]
            if bad:
                raise ValueError(f"relator {k} uses generator index {bad[0]} but only {m} generators")

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    @property
    def num_relators(self) -> int:
        return len(self.relators)

    def format(self) -> str:
        gens = ", ".join(self.generator_names)
        rels = ", ".join(r.format(self.generator_names) for r in self.relators)
        return f"<{gens} | {rels}>"


@dataclass(frozen=True)
class Character:
    """Homomorphism to Z (or Z/modulus) given by one weight per generator."""

    weights: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.modulus is not None and self.modulus < 1:
            raise ValueError("modulus must be positive")

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class CharacterVerdict:
    ok: bool
    relator: int | None = None
    weight: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class InvalidCharacter(ValueError):
    pass


def validate_character(P: Presentation, chi: Character) -> CharacterVerdict:
    """Accept iff every relator has total weight 0 (mod ``chi.modulus`` if set)."""
    if len(chi.weights) != P.num_generators:
        return CharacterVerdict(False, reason=(
            f"character has {len(chi.weights)} weights for {P.num_generators} generators"))
    for k, r in enumerate(P.relators):
        w = r.weight(chi.weights)
        bad = w % chi.modulus != 0 if chi.modulus else w != 0
        if bad:
            where = f" mod {chi.modulus}" if chi.modulus else ""
            return CharacterVerdict(False, k, w, f"relator {k} has weight {w} != 0{where}")
    return CharacterVerdict(True)


def fox_derivative(w: Word, g: int, chi: Character | Sequence[int]) -> LaurentPoly:
    """Fox derivative ``d w / d x_g`` pushed to Z[t^±] by ``x_h -> t^weight(h)``.

    Single left-to-right pass: a letter ``g`` contributes ``+t^prefix`` and a
    letter ``g^-1`` contributes ``-t^(prefix - weight(g))``.
    """
    weights = chi.weights if isinstance(chi, Character) else tuple(chi)
    if not 0 <= g < len(weights):
        raise IndexError(f"generator index {g} out of range for {len(weights)} generators")
    terms: dict[int, int] = {}
    prefix = 0
    for h, e in free_reduce(w).letters:
        if e == 1:
            if h == g:
                terms[prefix] = terms.get(prefix, 0) + 1
            prefix += weights[h]
        else:
            prefix -= weights[h]
            if h == g:
                terms[prefix] = terms.get(prefix, 0) - 1
    return LaurentPoly(terms)


def fox_matrix(P: Presentation, chi: Character) -> LaurentMatrix:
    """Relator-by-generator matrix of specialized Fox derivatives."""
    verdict = validate_character(P, chi)
    if not verdict:
        raise InvalidCharacter(verdict.reason)
    m = P.num_generators
    entries = [fox_derivative(r, g, chi) for r in P.relators for g in range(m)]
    return LaurentMatrix(P.num_relators, m, entries)


def boundary_column(chi: Character) -> LaurentMatrix:
    """Column ``(t^w_g - 1)_g``: the boundary of each 1-cell in the infinite cyclic cover."""
    return LaurentMatrix(len(chi.weights), 1,
                         [LaurentPoly.t_power_minus_one(w) for w in chi.weights])
