"""Rational fooling-set matrices of size C(r+1, 2) and rank r.

The matrix is assembled from Toeplitz blocks whose entries are signed
binomial coefficients f_t(i, j).  Inside a block the indices i, j are
1-based; global matrix indices are 0-based.  Block (u, v), for
u, v = 1..r, has shape (r + 1 - u) x (r + 1 - v) and parameter t = u - v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exact_algebra import RATIONAL, ExactMatrix, binomial, check_cap

DEFAULT_MAX_R = 60


def f_t_value(t: int, i: int, j: int) -> int:
    if i < 1 or j < 1:
        raise ValueError(f"block indices are 1-based, got ({i}, {j})")
    if t > 0:
        return binomial(t - 1, j - i - 1)
    if i < j:
        return (-1) ** (j - i) * binomial(-t - 1 + j - i, -t - 1)
    sign = -1 if (i - j - t) % 2 else 1
    return sign * binomial(i - j - 1, -t)


@dataclass(frozen=True)
class BlockIndex:
    t: int
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError(f"block shape must be positive, got {self.r}x{self.s}")


def block_rows(t: int, r: int, s: int) -> list[list[int]]:
    # Toeplitz: the value only depends on i - j
    by_diff = {d: f_t_value(t, max(1, 1 + d), max(1, 1 - d)) for d in range(1 - s, r)}
    return [[by_diff[i - j] for j in range(s)] for i in range(r)]


def build_block(idx: BlockIndex) -> ExactMatrix:
    """The r x s block F_t^{r,s} with entries f_t(i, j)."""
    return ExactMatrix(RATIONAL, block_rows(idx.t, idx.r, idx.s))


@dataclass(frozen=True)
class BlockPlacement:
    u: int
    v: int
    t: int
    row_offset: int
    col_offset: int
    height: int
    width: int


@dataclass(frozen=True)
class AssembledM:
    r: int
    matrix: ExactMatrix
    block_layout: tuple[BlockPlacement, ...]

    @property
    def size(self) -> int:
        return self.matrix.n_rows


def block_layout(r: int) -> tuple[BlockPlacement, ...]:
    offsets = [0]
    for u in range(1, r + 1):
        offsets.append(offsets[-1] + r + 1 - u)
    return tuple(
        BlockPlacement(u, v, u - v, offsets[u - 1], offsets[v - 1], r + 1 - u, r + 1 - v)
        for u in range(1, r + 1)
        for v in range(1, r + 1)
    )


def build_M(r: int, max_r: int = DEFAULT_MAX_R) -> AssembledM:
    """Assemble the C(r+1, 2)-square block matrix for a given rank r."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    size = r * (r + 1) // 2
    check_cap(size, max_r * (max_r + 1) // 2)
    layout = block_layout(r)
    grid = [[0] * size for _ in range(size)]
    for b in layout:
        vals = block_rows(b.t, b.height, b.width)
        for i, row in enumerate(vals):
            grid[b.row_offset + i][b.col_offset:b.col_offset + b.width] = row
    return AssembledM(r, ExactMatrix(RATIONAL, grid), layout)


def verify_block_recurrence(ts: Iterable[int] | int, i_max: int, j_max: int) -> bool:
    """Check f_t(i, j) = f_{t-1}(i, j) + f_{t-1}(i + 1, j) on a window."""
    if i_max < 1 or j_max < 1:
        raise ValueError("window must be at least 1x1")
    if isinstance(ts, int):
        ts = [ts]
    return all(
        f_t_value(t, i, j) == f_t_value(t - 1, i, j) + f_t_value(t - 1, i + 1, j)
        for t in ts
        for i in range(1, i_max + 1)
        for j in range(1, j_max + 1)
    )
