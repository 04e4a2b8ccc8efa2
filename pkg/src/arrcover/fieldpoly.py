"""Univariate polynomials over Q or F_p, Smith form over K[t], and the torsion
invariants of ``ker(D1) / im(D2)`` for Laurent chain complexes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intlinalg import FieldSelector, as_field
from .laurent import LaurentMatrix, LaurentPoly


class FieldPoly:
    """Dense polynomial over K, coefficients stored low degree first.

    ``p == 0`` means the rationals (``Fraction`` coefficients); otherwise
    coefficients live in ``range(p)``.
    """

    __slots__ = ("c", "p")

    def __init__(self, coeffs: Sequence, p: int = 0):
        self.p = p
        if p:
            c = [int(x) % p for x in coeffs]
        else:
            c = [Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def from_laurent(cls, f: LaurentPoly, p: int = 0, shift: int = 0) -> FieldPoly:
        """Image of ``t^shift * f``; all exponents must end up nonnegative."""
        if f.is_zero():
            return cls((), p)
        lo = f.min_exp + shift
        if lo < 0:
            raise ValueError(f"t^{shift} * ({f}) is not a polynomial")
        coeffs = [0] * (f.max_exp + shift + 1)
        for e, c in f.items():
            coeffs[e + shift] = c
        return cls(coeffs, p)

    def zero(self) -> FieldPoly:
        return FieldPoly((), self.p)

    def one(self) -> FieldPoly:
        return FieldPoly((1,), self.p)

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    @property
    def lc(self):
        return self.c[-1]

    def _inv(self, a):
        return pow(a, -1, self.p) if self.p else 1 / a

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FieldPoly((other,), self.p)
        if not isinstance(other, FieldPoly):
            return NotImplemented
        return self.p == other.p and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.p, self.c))

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in range(self.deg, -1, -1):
            a = self.c[e]
            if a:
                mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
                coef = str(a)
                parts.append(coef if not mono else (mono if a == 1 else f"{coef}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")

    def __add__(self, other: FieldPoly) -> FieldPoly:
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        return FieldPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)], self.p)

    def __neg__(self) -> FieldPoly:
        return FieldPoly([-x for x in self.c], self.p)

    def __sub__(self, other: FieldPoly) -> FieldPoly:
        return self + (-other)

    def __mul__(self, other) -> FieldPoly:
        if not isinstance(other, FieldPoly):
            return FieldPoly([x * other for x in self.c], self.p)
        if not self.c or not other.c:
            return self.zero()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return FieldPoly(out, self.p)

    __rmul__ = __mul__

    def __divmod__(self, other: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        d = other.deg
        inv = self._inv(other.lc)
        quot = [0] * max(len(rem) - d, 0)
        p = self.p
        for top in range(len(rem) - 1, d - 1, -1):
            a = rem[top]
            if p:
                a %= p
            if not a:
                continue
            q = a * inv
            if p:
                q %= p
            quot[top - d] = q
            for j, y in enumerate(other.c):
                rem[top - d + j] -= q * y
        return FieldPoly(quot, p), FieldPoly(rem[:d] if d > 0 else [], p)

    def __floordiv__(self, other: FieldPoly) -> FieldPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: FieldPoly) -> FieldPoly:
        return divmod(self, other)[1]

    def monic(self) -> FieldPoly:
        if not self.c:
            return self
        return self * self._inv(self.lc)

    def strip_t(self) -> FieldPoly:
        """Remove the largest power of ``t`` dividing ``self`` (a unit in K[t^±])."""
        k = 0
        while k < len(self.c) and not self.c[k]:
            k += 1
        return FieldPoly(self.c[k:], self.p)

    def divides(self, other: FieldPoly) -> bool:
        if not self.c:
            return not other.c
        return (other % self).is_zero()

    def to_pairs(self) -> list[list]:
        """``[[exp, coef], ...]`` with integer coefficients where possible."""
        out = []
        for e, a in enumerate(self.c):
            if a:
                if isinstance(a, Fraction):
                    a = int(a) if a.denominator == 1 else str(a)
                out.append([e, a])
        return out


def poly_gcd(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_prod(polys: Sequence[FieldPoly], p: int) -> FieldPoly:
    out = FieldPoly((1,), p)
    for f in polys:
        out = out * f
    return out


def laurent_to_field(M: LaurentMatrix, p: int, row_shift: Sequence[int] | None = None,
                     col_shift: Sequence[int] | None = None) -> list[list[FieldPoly]]:
    rs = row_shift or [0] * M.rows
    cs = col_shift or [0] * M.cols
    return [[FieldPoly.from_laurent(M[i, j], p, rs[i] + cs[j]) for j in range(M.cols)]
            for i in range(M.rows)]


def _min_exps(entries) -> int:
    nz = [e.min_exp for e in entries if not e.is_zero()]
    return min(nz) if nz else 0


def column_echelon_poly(A: list[list[FieldPoly]], ncols: int, p: int):
    """K[t]-unimodular ``V``, ``V^-1`` with ``A V = [H | 0]``, ``H`` full column rank."""
    A = [list(r) for r in A]
    one, zero = FieldPoly((1,), p), FieldPoly((), p)
    V = [[one if i == j else zero for j in range(ncols)] for i in range(ncols)]
    Vinv = [list(r) for r in V]
    r = 0

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    for row in A:
        if r == ncols:
            break
        while True:
            nz = [j for j in range(r, ncols) if row[j]]
            if not nz:
                break
            piv = min(nz, key=lambda j: row[j].deg)
            if piv != r:
                swap_cols(r, piv)
            others = [j for j in range(r + 1, ncols) if row[j]]
            if not others:
                r += 1
                break
            for j in others:
                q = row[j] // row[r]
                if q.is_zero():
                    continue
                for M in (A, V):
                    for rr in M:
                        if rr[r]:
                            rr[j] = rr[j] - q * rr[r]
                Vinv[r] = [x + q * y for x, y in zip(Vinv[r], Vinv[j])]
    return r, V, Vinv


def _matmul(A: list[list[FieldPoly]], B: list[list[FieldPoly]], inner: int, ncols: int, p: int):
    zero = FieldPoly((), p)
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            acc = zero
            for k in range(inner):
                if row[k]:
                    b = B[k][j]
                    if b:
                        acc = acc + row[k] * b
            new.append(acc)
        out.append(new)
    return out


def smith_poly(A: list[list[FieldPoly]], ncols: int, p: int) -> list[FieldPoly]:
    """Monic invariant factors of a matrix over K[t] (zero factors omitted)."""
    A = [list(r) for r in A]
    m, n = len(A), ncols
    diag: list[FieldPoly] = []
    k = 0
    while k < m and k < n:
        cands = [(A[i][j].deg, i, j) for i in range(k, m) for j in range(k, n) if A[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        A[k], A[i] = A[i], A[k]
        for row in A:
            row[k], row[j] = row[j], row[k]
        while True:
            piv = A[k][k]
            for i in range(k + 1, m):
                if A[i][k]:
                    q = A[i][k] // piv
                    if q:
                        A[i] = A[i][:k] + [a - q * b for a, b in zip(A[i][k:], A[k][k:])]
            for j in range(k + 1, n):
                if A[k][j]:
                    q = A[k][j] // piv
                    if q:
                        for i in range(k, m):
                            if A[i][k]:
                                A[i][j] = A[i][j] - q * A[i][k]
            left = [(A[i][k].deg, 0, i) for i in range(k + 1, m) if A[i][k]]
            left += [(A[k][j].deg, 1, j) for j in range(k + 1, n) if A[k][j]]
            if not left:
                break
            _, axis, idx = min(left)
            if axis == 0:
                A[k], A[idx] = A[idx], A[k]
            else:
                for row in A:
                    row[k], row[idx] = row[idx], row[k]
        diag.append(A[k][k].monic())
        k += 1
    # diagonal -> invariant factors
    rest = [d for d in diag if d.deg > 0]
    units = [d for d in diag if d.deg == 0]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = poly_gcd(a, b)
            if g != a:
                rest[i], rest[j] = g, ((a // g) * b).monic()
    rest.sort(key=lambda f: f.deg)
    return units + rest


class ChainConditionError(ValueError):
    """``D1 @ D2`` is not zero over the chosen field."""

    def __init__(self, i: int, j: int, entry):
        super().__init__(f"D1 @ D2 has nonzero entry ({i}, {j}) = {entry}")
        self.position = (i, j)
        self.entry = entry


@dataclass(frozen=True)
class ModuleInvariants:
    """``K[t^±]``-module ``ker(D1)/im(D2)``: free rank and monic torsion invariants."""

    free_rank: int
    factors: tuple[FieldPoly, ...]
    field: FieldSelector

    @property
    def order(self) -> FieldPoly:
        """Product of the torsion factors (the Alexander polynomial)."""
        return poly_prod(self.factors, self.field.characteristic)


def poly_kernel_and_snf(D1: LaurentMatrix, D2: LaurentMatrix,
                        K: FieldSelector | int = 0) -> ModuleInvariants:
    """Torsion invariants of ``ker(D1)/im(D2)`` over ``K[t^±]``.

    Column convention: ``D1`` is ``c0 x c1`` and ``D2`` is ``c1 x c2``; the
    composite ``D1 @ D2`` must vanish over ``K``.
    """
    K = as_field(K)
    p = K.characteristic
    if D1.cols != D2.rows:
        raise ValueError(f"shape mismatch: D1 is {D1.shape}, D2 is {D2.shape}")
    prod = D1 @ D2
    for i in range(prod.rows):
        for j in range(prod.cols):
            e = FieldPoly.from_laurent(prod[i, j], p, -_min_exps([prod[i, j]]))
            if e:
                raise ChainConditionError(i, j, prod[i, j])
    c1 = D1.cols
    # clear negative exponents with units: rows of D1, columns of D2
    rs = [-_min_exps(D1.row(i)) for i in range(D1.rows)]
    cs = [-_min_exps([D2[i, j] for i in range(D2.rows)]) for j in range(D2.cols)]
    A1 = laurent_to_field(D1, p, row_shift=rs)
    A2 = laurent_to_field(D2, p, col_shift=cs)
    r, _V, Vinv = column_echelon_poly(A1, c1, p)
    Y = _matmul(Vinv, A2, c1, D2.cols, p)
    if any(x for row in Y[:r] for x in row):
        raise ChainConditionError(-1, -1, "image of D2 leaves the kernel of D1")
    X = Y[r:]
    inv = smith_poly(X, D2.cols, p)
    free_rank = (c1 - r) - len(inv)
    torsion = []
    for f in inv:
        f = f.strip_t().monic()
        if f.deg > 0:
            torsion.append(f)
    return ModuleInvariants(free_rank, tuple(torsion), K)
