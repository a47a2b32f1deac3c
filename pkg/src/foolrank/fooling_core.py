"""Fooling-set checks, the n <= rank**2 report, Kronecker powers, fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_algebra import ExactMatrix, FieldSpec, _same_field, check_cap, rank

DEFAULT_KRON_CAP = 5000


class NotFoolingError(ValueError):
    pass


def _require_square(m: ExactMatrix) -> None:
    if not m.is_square:
        raise ValueError(f"expected a square matrix, got {m.n_rows}x{m.n_cols}")


def is_fooling_matrix(m: ExactMatrix) -> bool:
    """Nonzero diagonal and M[k][l] * M[l][k] == 0 for every k != l."""
    _require_square(m)
    rows = m.rows
    n = m.n_rows
    for k in range(n):
        rk = rows[k]
        if rk[k] == 0:
            return False
        for l in range(k + 1, n):
            # only the zero pattern matters, so test for zeros directly
            if rk[l] != 0 and rows[l][k] != 0:
                return False
    return True


def is_strict_fooling(m: ExactMatrix) -> bool:
    """Fooling, and no off-diagonal pair (k, l), (l, k) is doubly zero."""
    if not is_fooling_matrix(m):
        return False
    rows = m.rows
    n = m.n_rows
    return all(rows[k][l] != 0 or rows[l][k] != 0 for k in range(n) for l in range(k + 1, n))


@dataclass(frozen=True)
class ZeroPattern:
    n_rows: int
    n_cols: int
    mask: tuple[tuple[bool, ...], ...]

    @classmethod
    def of(cls, m: ExactMatrix) -> ZeroPattern:
        return cls(m.n_rows, m.n_cols, tuple(tuple(x != 0 for x in row) for row in m.rows))

    def is_identity(self) -> bool:
        return self.n_rows == self.n_cols and all(
            v == (i == j) for i, row in enumerate(self.mask) for j, v in enumerate(row))


@dataclass(frozen=True)
class BoundReport:
    n: int
    rank: int
    rank_squared: int
    ratio: Fraction
    bound_holds: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "rank_squared": self.rank_squared,
            "ratio": str(self.ratio),
            "bound_holds": self.bound_holds,
        }


def bound_report(m: ExactMatrix) -> BoundReport:
    """Size, exact rank and n / rank**2 for a fooling-set matrix.

    Raises NotFoolingError on anything else, since the bound says nothing
    about non-fooling matrices.
    """
    if not is_fooling_matrix(m):
        raise NotFoolingError("matrix is not a fooling-set matrix")
    n = m.n_rows
    k = rank(m)
    report = BoundReport(n, k, k * k, Fraction(n, k * k), n <= k * k)
    if not report.bound_holds:
        # a fooling matrix has rank >= sqrt(n); reaching here means a rank bug
        raise AssertionError(f"n={n} exceeds rank**2={k * k}")
    return report


def kronecker(a: ExactMatrix, b: ExactMatrix, cap: int = DEFAULT_KRON_CAP) -> ExactMatrix:
    _same_field(a, b)
    check_cap(max(a.n_rows * b.n_rows, a.n_cols * b.n_cols), cap)
    mul = a.field.mul
    rows = tuple(
        tuple(mul(x, y) for x in ra for y in rb)
        for ra in a.rows
        for rb in b.rows
    )
    return ExactMatrix._trusted(a.field, rows)


def tensor_power(m: ExactMatrix, k: int, cap: int = DEFAULT_KRON_CAP) -> ExactMatrix:
    """k-fold Kronecker product of m with itself."""
    if k < 1:
        raise ValueError(f"tensor power must be >= 1, got {k}")
    check_cap(max(m.n_rows, m.n_cols) ** k, cap)
    out = m
    for _ in range(k - 1):
        out = kronecker(out, m, cap)
    return out


def build_inner_product_matrix(m: int) -> ExactMatrix:
    """2**m x 2**m matrix of <x, y> mod 2, strings in lexicographic order.

    Index x has its first coordinate as the most significant bit, so
    lexicographic order on strings is numeric order on indices.
    """
    if not 1 <= m <= 12:
        raise ValueError(f"inner-product matrix needs 1 <= m <= 12, got {m}")
    size = 1 << m
    rows = tuple(tuple((x & y).bit_count() & 1 for y in range(size)) for x in range(size))
    return ExactMatrix._trusted(FieldSpec.gf(2), rows)
