"""Exact arithmetic kernel: fields, dense matrices, binomials and rank.

Integers are Python ints and rationals are :class:`fractions.Fraction`, so
nothing here can overflow or round.  Prime-field entries are stored as plain
ints reduced into ``[0, p)``; the owning :class:`FieldSpec` carries ``p``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

MAX_PRIME = 2**61

SIZE_CAP_ENV = "FOOLRANK_SIZE_CAP"


class FieldMismatchError(ValueError):
    pass


class SizeCapError(ValueError):
    pass


def size_cap(default: int) -> int:
    """Return the materialization cap, honouring ``FOOLRANK_SIZE_CAP``."""
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise SizeCapError(f"{SIZE_CAP_ENV}={raw!r} is not an integer") from None
    if cap < 1:
        raise SizeCapError(f"{SIZE_CAP_ENV} must be positive, got {cap}")
    return cap


def check_cap(n: int, default: int, what: str = "matrix size") -> None:
    cap = size_cap(default)
    if n > cap:
        raise SizeCapError(f"{what} {n} exceeds cap {cap} (set {SIZE_CAP_ENV} to override)")


def is_prime(p: int) -> bool:
    """Deterministic trial division; only meant for ``p <= 2**61``."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    limit = math.isqrt(p)
    d = 5
    while d <= limit:
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient, valid for any integers n and k.

    For ``k >= 0`` this is n(n-1)...(n-k+1) / k!, which is an integer even
    when n is negative; for ``k < 0`` it is 0.  The falling factorial is
    accumulated by multiplying and then dividing exactly, so every
    intermediate value is itself a binomial coefficient.
    """
    if k < 0:
        return 0
    result = 1
    for i in range(k):
        result = result * (n - i) // (i + 1)
        if result == 0:
            break
    return result


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise TypeError(f"field modulus must be an int, got {self.p!r}")
            if self.p > MAX_PRIME:
                raise ValueError(f"modulus {self.p} exceeds 2**61")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, tag: str) -> FieldSpec:
        """Parse ``"rational"`` or ``"gf:p"``."""
        tag = tag.strip().lower()
        if tag in ("rational", "q"):
            return cls.rational()
        if tag.startswith("gf:"):
            try:
                p = int(tag[3:])
            except ValueError:
                raise ValueError(f"bad field tag {tag!r}") from None
            return cls.gf(p)
        raise ValueError(f"bad field tag {tag!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def tag(self) -> str:
        return "rational" if self.p is None else f"gf:{self.p}"

    def __str__(self) -> str:
        return self.tag

    def coerce(self, value) -> Fraction | int:
        """Map an int, Fraction or numeric string into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool):
            value = int(value)
        if self.p is None:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} to a rational")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {value!r} to GF({self.p})")

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def neg(self, a):
        return -a if self.p is None else -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def format(self, value) -> str:
        return str(value)


RATIONAL = FieldSpec.rational()


class GFElement:
    """A residue modulo a prime, for callers who want operator arithmetic.

    Matrices store bare ints; this wrapper is a convenience at the edges.
    """

    __slots__ = ("residue", "p")

    def __init__(self, value: int, p: int):
        if not is_prime(p) or p > MAX_PRIME:
            raise ValueError(f"{p} is not prime")
        self.residue = value % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def _make(self, value: int) -> GFElement:
        out = object.__new__(GFElement)
        out.residue = value % self.p
        out.p = self.p
        return out

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(self.residue - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.residue)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._make(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.residue)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._make(self.residue * pow(o, -1, self.p))

    def inverse(self) -> GFElement:
        return self._make(pow(self.residue, -1, self.p))

    def __eq__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self.residue == o

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"GFElement({self.residue}, {self.p})"


class ExactMatrix:
    """Dense immutable matrix over a :class:`FieldSpec`.

    Entries are normalized on construction (``Fraction`` for the rationals,
    ints in ``[0, p)`` for GF(p)); ``rows`` is a tuple of tuples.
    """

    __slots__ = ("field", "n_rows", "n_cols", "rows")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable], *, n_cols: int | None = None):
        coerce = field.coerce
        data = tuple(tuple(coerce(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix must have at least one row")
        width = len(data[0]) if n_cols is None else n_cols
        if width < 1:
            raise ValueError("matrix must have at least one column")
        for row in data:
            if len(row) != width:
                raise ValueError("ragged rows")
        self.field = field
        self.n_rows = len(data)
        self.n_cols = width
        self.rows = data

    @classmethod
    def _trusted(cls, field: FieldSpec, rows: tuple) -> ExactMatrix:
        # rows already normalized by the caller
        m = object.__new__(cls)
        m.field = field
        m.n_rows = len(rows)
        m.n_cols = len(rows[0])
        m.rows = rows
        return m

    @classmethod
    def identity(cls, n: int, field: FieldSpec = RATIONAL) -> ExactMatrix:
        one, zero = field.one(), field.zero()
        return cls._trusted(field, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, field: FieldSpec = RATIONAL) -> ExactMatrix:
        zero = field.zero()
        return cls._trusted(field, tuple((zero,) * n_cols for _ in range(n_rows)))

    @classmethod
    def from_function(cls, field: FieldSpec, n_rows: int, n_cols: int, fn) -> ExactMatrix:
        return cls(field, ((fn(i, j) for j in range(n_cols)) for i in range(n_rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        if self.n_rows * self.n_cols <= 64:
            body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
            return f"ExactMatrix({self.field}, [{body}])"
        return f"ExactMatrix({self.field}, {self.n_rows}x{self.n_cols})"

    def entries(self) -> list:
        """Row-major flat list of entries."""
        return [x for row in self.rows for x in row]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix._trusted(self.field, tuple(zip(*self.rows)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix._trusted(
            self.field, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> ExactMatrix:
        return self.submatrix(row_perm, col_perm)

    def map(self, fn) -> ExactMatrix:
        return ExactMatrix(self.field, ((fn(x) for x in row) for row in self.rows))

    def scale_row(self, i: int, c) -> ExactMatrix:
        c = self.field.coerce(c)
        mul = self.field.mul
        rows = list(self.rows)
        rows[i] = tuple(mul(c, x) for x in rows[i])
        return ExactMatrix._trusted(self.field, tuple(rows))

    def hadamard(self, other: ExactMatrix) -> ExactMatrix:
        """Entrywise product."""
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        mul = self.field.mul
        return ExactMatrix._trusted(self.field, tuple(
            tuple(mul(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def over(self, field: FieldSpec) -> ExactMatrix:
        """Reinterpret the entries in another field (e.g. reduce mod p)."""
        if field == self.field:
            return self
        if not self.field.is_rational and not field.is_rational:
            raise FieldMismatchError(f"cannot map {self.field} to {field}")
        return ExactMatrix(field, self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)


def _same_field(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    n_cols = len(work[0])
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        inv = pow(prow[col], -1, p)
        prow = [x * inv % p for x in prow]
        work[rank] = prow
        for i in range(rank + 1, len(work)):
            c = work[i][col]
            if c:
                row = work[i]
                work[i] = [(a - c * b) % p for a, b in zip(row, prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def _rank_gf2_bits(rows: Sequence[int]) -> int:
    """Rank of GF(2) rows packed as int bitsets (xor basis by leading bit)."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def pack_gf2_rows(m: ExactMatrix) -> list[int]:
    out = []
    for row in m.rows:
        v = 0
        for j, x in enumerate(row):
            if x:
                v |= 1 << j
        out.append(v)
    return out


def rank_gf(m: ExactMatrix, bitpacked: bool | None = None) -> int:
    """Rank over GF(p) by Gaussian elimination.

    For p = 2 the rows are packed into int bitsets unless ``bitpacked`` is
    False; ``bitpacked=True`` on another prime is an error.
    """
    p = m.field.p
    if p is None:
        raise FieldMismatchError("rank_gf needs a prime-field matrix")
    if bitpacked is None:
        bitpacked = p == 2
    if bitpacked:
        if p != 2:
            raise FieldMismatchError("bit-packed elimination is only for GF(2)")
        return _rank_gf2_bits(pack_gf2_rows(m))
    return _rank_mod_p([list(r) for r in m.rows], p)


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free elimination on integer rows; pivot is the first nonzero."""
    work = [r for r in rows if any(r)]
    if not work:
        return 0
    n_cols = len(work[0])
    prev = 1
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        piv = prow[col]
        tail = prow[col + 1:]
        survivors = work[:rank + 1]
        for i in range(rank + 1, len(work)):
            row = work[i]
            c = row[col]
            if c:
                new = [(piv * a - c * b) // prev for a, b in zip(row[col + 1:], tail)]
            elif piv == prev:
                new = row[col + 1:]
            else:
                new = [piv * a // prev for a in row[col + 1:]]
            # keep the row width; columns <= col are dead from here on
            if any(new):
                survivors.append([0] * (col + 1) + new)
        work = survivors
        prev = piv
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_rational(m: ExactMatrix) -> int:
    """Exact rank over Q via Bareiss elimination.

    Each row is first scaled by the lcm of its denominators, which leaves the
    rank unchanged and lets elimination run on integers only.
    """
    if not m.field.is_rational:
        raise FieldMismatchError("rank_rational needs a rational matrix")
    int_rows = []
    for row in m.rows:
        den = reduce(math.lcm, (x.denominator for x in row), 1)
        if den == 1:
            int_rows.append([x.numerator for x in row])
        else:
            int_rows.append([x.numerator * (den // x.denominator) for x in row])
    return _bareiss_rank(int_rows)


def rank(m: ExactMatrix) -> int:
    """Rank in the matrix's own field."""
    return rank_rational(m) if m.field.is_rational else rank_gf(m)
