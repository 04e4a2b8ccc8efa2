"""Reidemeister-Schreier rewriting for the kernel of ``G -> Z/N``.

A brute-force check on the cover computations: it rewrites the relators of
the index-N subgroup and abelianizes, with no Fox calculus involved.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .cover import CoverHomologyReport, DEFAULT_FIELDS
from .fox import Character, InvalidCharacter, Presentation, Word, free_reduce, validate_character
from .intlinalg import snf_int


class DisconnectedCover(ValueError):
    pass


@dataclass(frozen=True)
class CosetTable:
    """Generator ``g`` sends coset ``r`` to ``r + w_g mod N``."""

    N: int
    weights: tuple[int, ...]

    def act(self, r: int, g: int, e: int = 1) -> int:
        return (r + e * self.weights[g]) % self.N

    def is_transitive(self) -> bool:
        return reduce(math.gcd, self.weights, self.N) == 1


@dataclass(frozen=True)
class SchreierRewriting:
    table: CosetTable
    transversal: tuple[Word | None, ...]
    tree: frozenset[tuple[int, int]]  # (coset, generator) edges that are trivial
    presentation: Presentation
    num_relators_before: int
    num_generators_before: int


def _transversal(table: CosetTable) -> tuple[list[Word], set[tuple[int, int]]]:
    N, weights = table.N, table.weights
    reps: list[Word | None] = [None] * N
    tree: set[tuple[int, int]] = set()
    reps[0] = Word()
    g0 = next((g for g, w in enumerate(weights) if math.gcd(w % N, N) == 1), None)
    if g0 is not None:
        # powers of one generator whose weight is a unit mod N
        r = 0
        for k in range(1, N):
            nxt = table.act(r, g0)
            reps[nxt] = Word(((g0, 1),) * k)
            tree.add((r, g0))
            r = nxt
        return reps, tree
    # otherwise a breadth-first spanning tree of the coset graph
    queue = deque([0])
    while queue:
        r = queue.popleft()
        for g in range(len(weights)):
            nxt = table.act(r, g)
            if reps[nxt] is None:
                reps[nxt] = reps[r] * Word(((g, 1),))
                tree.add((r, g))
                queue.append(nxt)
    return reps, tree


def rewrite(P: Presentation, chi: Character, N: int) -> SchreierRewriting:
    v = validate_character(P, chi)
    if not v:
        raise InvalidCharacter(v.reason)
    if chi.modulus is not None and chi.modulus % N:
        raise InvalidCharacter(f"character to Z/{chi.modulus} does not factor through Z/{N}")
    table = CosetTable(N, chi.weights)
    if not table.is_transitive():
        raise DisconnectedCover(f"gcd of weights with N={N} is not 1; the cover is disconnected")
    reps, tree = _transversal(table)
    m = P.num_generators
    index: dict[tuple[int, int], int] = {}
    names = []
    for r in range(N):
        for g in range(m):
            if (r, g) not in tree:
                index[(r, g)] = len(names)
                names.append(f"{P.generator_names[g]}@{r}")
    relators = []
    for rel in P.relators:
        for r0 in range(N):
            letters = []
            r = r0
            for g, e in rel.letters:
                if e == 1:
                    key = (r, g)
                    r = table.act(r, g)
                else:
                    r = table.act(r, g, -1)
                    key = (r, g)
                if key in index:
                    letters.append((index[key], e))
            if r != r0:
                raise InvalidCharacter("relator does not close up in the coset graph")
            relators.append(free_reduce(Word(tuple(letters))))
    return SchreierRewriting(table, tuple(reps), frozenset(tree), Presentation(tuple(names), tuple(relators)),
                             P.num_relators * N, m * N)


def schreier_presentation(P: Presentation, chi: Character, N: int) -> Presentation:
    return rewrite(P, chi, N).presentation


def abelianization(P: Presentation) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of ``P`` made abelian."""
    m = P.num_generators
    rel = np.zeros((len(P.relators), m), dtype=np.int64)
    for k, w in enumerate(P.relators):
        for g, e in w.letters:
            rel[k, g] += e
    if m == 0:
        return 0, ()
    sf = snf_int(rel) if rel.size else None
    rank = sf.rank if sf else 0
    torsion = sf.torsion if sf else ()
    return m - rank, torsion


def oracle_h1(P: Presentation, chi: Character, N: int,
              fields=DEFAULT_FIELDS) -> CoverHomologyReport:
    free, torsion = abelianization(schreier_presentation(P, chi, N))
    betti = {int(p): free + (0 if p == 0 else sum(1 for d in torsion if d % p == 0)) for p in fields}
    return CoverHomologyReport(free, torsion, betti, True)
