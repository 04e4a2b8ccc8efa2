"""Exact integer matrices: Smith normal form, ranks over Q and F_p, companion
matrices and the block substitution ``t -> C_N``.

Integer matrices are plain 2-D numpy arrays. Work is done in ``int64`` while
entries stay small and silently promoted to ``dtype=object`` (Python ints)
when a step could overflow, so every result is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .laurent import LaurentMatrix, LaurentPoly

# int64 work is safe while every product formed stays below this
_SAFE = 1 << 62


@dataclass(frozen=True)
class FieldSelector:
    """Coefficient field: the rationals (``characteristic == 0``) or F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise ValueError(f"field characteristic must be 0 or a prime, got {p}")

    @property
    def label(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = FieldSelector(0)


def as_field(K: FieldSelector | int) -> FieldSelector:
    return K if isinstance(K, FieldSelector) else FieldSelector(int(K))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def gcd_mod(k: int, N: int) -> int:
    """``gcd(k mod N, N)`` with ``gcd(0, N) = N``."""
    return math.gcd(k % N, N)


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` (zeros trailing).

    The list has ``min(rows, cols)`` entries; ``cols`` is kept so the cokernel
    ``Z^(cols - rank) + sum Z/d_k`` can be read off.
    """

    invariant_factors: tuple[int, ...]
    rows: int = 0
    cols: int = 0

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def cokernel_free_rank(self) -> int:
        """Free rank of the cokernel of the map ``Z^cols -> Z^rows``."""
        return self.rows - self.rank

    @property
    def kernel_rank(self) -> int:
        return self.cols - self.rank


def as_int_matrix(M, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce to a 2-D integer array (``int64`` when it fits, else ``object``)."""
    A = np.asarray(M)
    if A.size == 0:
        r = A.shape[0] if A.ndim == 2 else (rows or 0)
        c = A.shape[1] if A.ndim == 2 else (cols or 0)
        return np.zeros((r if rows is None else rows, c if cols is None else cols), dtype=np.int64)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D integer matrix, got shape {A.shape}")
    if A.dtype == object:
        if all(isinstance(x, (int, np.integer)) for x in A.flat):
            big = max(abs(int(x)) for x in A.flat)
            if big < (1 << 31):
                return A.astype(np.int64)
            return np.array([[int(x) for x in row] for row in A], dtype=object)
        raise TypeError("integer matrix entries required")
    if not np.issubdtype(A.dtype, np.integer):
        raise TypeError(f"integer matrix required, got dtype {A.dtype}")
    return A.astype(np.int64)


def _absmax(v: np.ndarray) -> int:
    if v.size == 0:
        return 0
    return int(np.max(np.abs(v)))


def _sub_outer(A: np.ndarray, rows, cols, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``A[rows, cols] -= outer(u, v)`` exactly; returns ``A`` (possibly promoted to object).

    ``cols=None`` means ``rows`` is already a full index (e.g. from ``np.ix_``).
    """
    key = rows if cols is None else (rows, cols)
    if A.dtype != object:
        bound = _absmax(u) * _absmax(v) + _absmax(A[key])
        if bound >= _SAFE:
            A = A.astype(object)
            u = u.astype(object)
            v = v.astype(object)
    A[key] -= np.outer(u, v)
    return A


def _diagonal_to_invariants(diag: list[int]) -> list[int]:
    units = [d for d in diag if d == 1]
    rest = [d for d in diag if d != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = math.gcd(a, b)
            if g != a:
                rest[i], rest[j] = g, a // g * b
    return units + sorted(rest)


def _smith_diagonal(M: np.ndarray) -> list[int]:
    """Diagonalize by unimodular row/column operations; return |diagonal| (nonzero only)."""
    A = M.copy()
    m, n = A.shape
    diag: list[int] = []
    k = 0
    while k < m and k < n:
        sub = A[k:, k:]
        nzr, nzc = np.nonzero(sub)
        if nzr.size == 0:
            break
        vals = np.abs(sub[nzr, nzc])
        best = int(np.argmin(vals))
        i, j = k + int(nzr[best]), k + int(nzc[best])
        if i != k:
            A[[k, i], :] = A[[i, k], :]
        if j != k:
            A[:, [k, j]] = A[:, [j, k]]
        while True:
            p = A[k, k]
            col = A[k + 1:, k]
            if col.any():
                A = _sub_outer(A, slice(k + 1, None), slice(k, None), col // p, A[k, k:])
            row = A[k, k + 1:]
            if row.any():
                A = _sub_outer(A, slice(k, None), slice(k + 1, None), A[k:, k], row // A[k, k])
            col_nz = np.nonzero(A[k + 1:, k])[0]
            row_nz = np.nonzero(A[k, k + 1:])[0]
            if col_nz.size == 0 and row_nz.size == 0:
                break
            # remainders are strictly smaller than the pivot: bring the smallest in
            cand = [(abs(int(A[k + 1 + r, k])), 0, k + 1 + r) for r in col_nz]
            cand += [(abs(int(A[k, k + 1 + c])), 1, k + 1 + c) for c in row_nz]
            _, axis, idx = min(cand)
            if axis == 0:
                A[[k, idx], :] = A[[idx, k], :]
            else:
                A[:, [k, idx]] = A[:, [idx, k]]
        diag.append(abs(int(A[k, k])))
        k += 1
    return diag


def snf_int(M) -> SmithForm:
    """Smith normal form over Z (invariant factors only).

    >>> snf_int([[2, 0], [0, 3]]).invariant_factors
    (1, 6)
    """
    A = as_int_matrix(M)
    m, n = A.shape
    diag = _smith_diagonal(A) if A.size else []
    factors = _diagonal_to_invariants(diag)
    factors += [0] * (min(m, n) - len(factors))
    return SmithForm(tuple(factors), m, n)


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    if p < (1 << 31):
        A = np.array(A % p, dtype=np.int64) if A.dtype != object else \
            np.array([[int(x) % p for x in row] for row in A], dtype=np.int64)
    else:
        A = np.array([[int(x) % p for x in row] for row in A], dtype=object)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], :] = A[[piv, r], :]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            A[below, c:] = (A[below, c:] - np.outer(A[below, c], A[r, c:])) % p
        r += 1
    return r


def _rank_rational(A: np.ndarray) -> int:
    """Rank over Q by Euclidean row reduction over Z (rows only, no column moves)."""
    A = A.copy()
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = r + np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                break
            piv = int(nz[np.argmin(np.abs(A[nz, c]))])
            if piv != r:
                A[[r, piv], :] = A[[piv, r], :]
            others = r + 1 + np.nonzero(A[r + 1:, c])[0]
            if others.size == 0:
                r += 1
                break
            A = _sub_outer(A, np.ix_(others, np.arange(c, n)), None,
                           A[others, c] // A[r, c], A[r, c:])
    return r


def rank_over(M, K: FieldSelector | int = QQ) -> int:
    """Rank of an integer matrix after reducing its entries into ``K``."""
    K = as_field(K)
    A = as_int_matrix(M)
    if A.size == 0:
        return 0
    if K.characteristic == 0:
        return _rank_rational(A)
    return _rank_mod_p(A, K.characteristic)


def companion(N: int) -> np.ndarray:
    """Cyclic permutation matrix ``C_N``: ones on the superdiagonal and bottom-left."""
    return companion_power(N, 1)


def companion_power(N: int, k: int) -> np.ndarray:
    """``C_N^k`` for any integer ``k`` (entry ``(i, i + k mod N)`` is one)."""
    if N < 1:
        raise ValueError(f"companion matrix needs N >= 1, got {N}")
    C = np.zeros((N, N), dtype=np.int64)
    idx = np.arange(N)
    C[idx, (idx + k) % N] = 1
    return C


def substitute(M: LaurentMatrix, N: int) -> np.ndarray:
    """Replace every entry ``p(t)`` of ``M`` by the ``N x N`` block ``p(C_N)``."""
    if N < 1:
        raise ValueError(f"substitution needs N >= 1, got {N}")
    big = any(abs(c) >= (1 << 40) for e in M.entries for _, c in e.items())
    out = np.zeros((M.rows * N, M.cols * N), dtype=object if big else np.int64)
    idx = np.arange(N)
    for i in range(M.rows):
        for j in range(M.cols):
            entry = M[i, j]
            if entry.is_zero():
                continue
            for e, c in entry.items():
                out[i * N + idx, j * N + (idx + e) % N] += c
    return out


def substitute_poly(p: LaurentPoly, N: int) -> np.ndarray:
    return substitute(LaurentMatrix(1, 1, [p]), N)


def lemma_rank(N: int, k: int, K: FieldSelector | int = QQ) -> int:
    """``rank_K(C_N^k - I_N)``; equals ``N - gcd(k, N)``."""
    return rank_over(companion_power(N, k) - np.eye(N, dtype=np.int64), K)


def column_echelon(A: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    """Unimodular ``V`` (and ``V^-1``) with ``A @ V = [H | 0]``, ``H`` of full column rank.

    Returns ``(r, V, Vinv)`` where ``r`` is the rank; the last ``cols - r``
    columns of ``V`` are a Z-basis of the integer kernel of ``A``.
    """
    A = as_int_matrix(A).astype(object)
    m, n = A.shape
    V = np.eye(n, dtype=np.int64).astype(object)
    Vinv = V.copy()
    r = 0
    for i in range(m):
        if r == n:
            break
        while True:
            nz = r + np.nonzero(A[i, r:])[0]
            if nz.size == 0:
                break
            piv = int(nz[np.argmin(np.abs(A[i, nz]))])
            if piv != r:
                A[:, [r, piv]] = A[:, [piv, r]]
                V[:, [r, piv]] = V[:, [piv, r]]
                Vinv[[r, piv], :] = Vinv[[piv, r], :]
            others = r + 1 + np.nonzero(A[i, r + 1:])[0]
            if others.size == 0:
                r += 1
                break
            q = A[i, others] // A[i, r]
            A[:, others] -= np.outer(A[:, r], q)
            V[:, others] -= np.outer(V[:, r], q)
            Vinv[r, :] += q @ Vinv[others, :]
    return r, V, Vinv


def int_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product, in ``int64`` when safe."""
    A = as_int_matrix(A)
    B = as_int_matrix(B)
    inner = A.shape[1]
    if A.dtype != object and B.dtype != object and \
            _absmax(A) * _absmax(B) * max(inner, 1) < _SAFE:
        return A @ B
    return as_int_matrix(A.astype(object) @ B.astype(object))


def determinantal_divisors(M) -> list[int]:
    """gcd of all k x k minors for k = 1..min(shape); brute force, small matrices only."""
    from itertools import combinations

    A = [[int(x) for x in row] for row in as_int_matrix(M)]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = math.gcd(g, _det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def _det(M: Sequence[Sequence[int]]) -> int:
    from fractions import Fraction

    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(det)


def gcd_all(values) -> int:
    return reduce(math.gcd, (int(v) for v in values), 0)
