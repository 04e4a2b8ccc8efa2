"""Integer Laurent polynomials in one variable ``t`` and matrices over them."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class LaurentPoly:
    """Sparse element of Z[t, t^-1].

    ``terms`` maps exponent -> nonzero integer coefficient. Instances are
    immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            c = int(c)
            if c:
                acc[int(e)] = acc.get(int(e), 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    # constructors

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> LaurentPoly:
        return cls({exp: coef})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def t_power_minus_one(cls, k: int) -> LaurentPoly:
        """``t^k - 1`` (zero when ``k == 0``)."""
        return cls([(k, 1), (0, -1)])

    @classmethod
    def geometric(cls, step: int, count: int) -> LaurentPoly:
        """The quotient ``(t^(step*count) - 1) / (t^step - 1)`` as a finite sum.

        For ``count >= 0`` this is ``sum_{j<count} t^(j*step)``; for negative
        ``count`` it is ``-sum_{j=1}^{|count|} t^(-j*step)``. The formula stays
        meaningful at ``step == 0`` (it evaluates to ``count``).
        """
        if count >= 0:
            return cls([(j * step, 1) for j in range(count)])
        return cls([(-j * step, -1) for j in range(1, -count + 1)])

    # basic protocol

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                mono = "t" if e == 1 else f"t^{e}" if e > 0 else f"t^({e})"
                if abs(c) != 1:
                    mono = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    @property
    def leading_coefficient(self) -> int:
        return self._terms[self.max_exp]

    def width(self) -> int:
        """``max_exp - min_exp``, the degree after clearing negative powers."""
        return self.max_exp - self.min_exp if self._terms else -1

    # arithmetic

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * k: c ** (-k)})
            raise ValueError("only units ±t^e may be raised to negative powers")
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / other``; raises ``ValueError`` unless exact in Z[t^±]."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        # both shifted to have a nonzero constant term; divisibility is then polynomial
        num = self.shift(-self.min_exp)
        den = other.shift(-other.min_exp)
        d, lead = den.max_exp, den.leading_coefficient
        rem = dict(num._terms)
        quot: dict[int, int] = {}
        while rem and max(rem) >= d:
            top = max(rem)
            c, r = divmod(rem[top], lead)
            if r:
                break
            e = top - d
            quot[e] = c
            for de, dc in den._terms.items():
                v = rem.get(e + de, 0) - c * dc
                if v:
                    rem[e + de] = v
                else:
                    rem.pop(e + de, None)
        if rem:
            raise ValueError(f"{self} is not divisible by {other} over Z[t^±]")
        return LaurentPoly(quot).shift(self.min_exp - other.min_exp)

    def canonical(self) -> LaurentPoly:
        """Representative of the class modulo units ±t^k.

        Minimal exponent moved to 0 and leading coefficient made positive.
        """
        if not self._terms:
            return self
        p = self.shift(-self.min_exp)
        return -p if p.leading_coefficient < 0 else p

    def substitute_unit(self, k: int) -> LaurentPoly:
        """Image under ``t -> t^k``."""
        return LaurentPoly([(e * k, c) for e, c in self._terms.items()])

    def evaluate(self, x):
        """Evaluate at a number (negative powers need an invertible ``x``)."""
        total = 0
        for e, c in self._terms.items():
            total += c * (x ** e)
        return total

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> LaurentPoly:
        return cls((int(e), int(c)) for e, c in pairs)


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


class LaurentMatrix:
    """Dense ``rows x cols`` matrix of :class:`LaurentPoly`, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[LaurentPoly] | None = None):
        if entries is None:
            entries = [ZERO] * (rows * cols)
        entries = tuple(e if isinstance(e, LaurentPoly) else LaurentPoly.constant(e)
                        for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly | int]], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def diagonal(cls, diag: Sequence[LaurentPoly | int]) -> LaurentMatrix:
        n = len(diag)
        entries = [ZERO] * (n * n)
        for i, d in enumerate(diag):
            entries[i * n + i] = d
        return cls(n, n, entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[LaurentPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix(self.cols, self.rows,
                             [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self[i, k]
                    if a:
                        b = other[k, j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return LaurentMatrix(self.rows, other.cols, out)

    def scale_row(self, i: int, factor: LaurentPoly) -> LaurentMatrix:
        rows = self.to_rows()
        rows[i] = [factor * e for e in rows[i]]
        return LaurentMatrix.from_rows(rows, self.cols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"LaurentMatrix({self.rows}x{self.cols}: [{body}])"
