"""Maximum fooling-set submatrix search.

Two nonzero cells (r1, c1), (r2, c2) can sit in the same fooling-set
submatrix iff r1 != r2, c1 != c2 and host[r1][c2] * host[r2][c1] == 0.  That
relation is pairwise, so a largest fooling-set submatrix is exactly a
maximum clique of the compatibility graph on nonzero cells.

Cells are numbered in (row, col) order.  The exact search returns the
lexicographically least maximum clique in that numbering, which keeps
certificates reproducible whether or not the search runs in parallel.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .exact_algebra import ExactMatrix, check_cap

log = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 4096


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class FoolingCertificate:
    n_rows: int
    n_cols: int
    cells: tuple[tuple[int, int], ...]
    optimal: bool = True

    @property
    def size(self) -> int:
        return len(self.cells)

    def as_dict(self) -> dict:
        return {
            "host": [self.n_rows, self.n_cols],
            "size": self.size,
            "optimal": self.optimal,
            "cells": [list(c) for c in self.cells],
        }

    @classmethod
    def from_dict(cls, d: dict) -> FoolingCertificate:
        n_rows, n_cols = d["host"]
        return cls(n_rows, n_cols, tuple((int(a), int(b)) for a, b in d["cells"]),
                   bool(d.get("optimal", True)))


@dataclass(frozen=True)
class ConflictGraph:
    """Compatibility graph; ``adjacency[v]`` is a bitset of neighbours."""

    cells: tuple[tuple[int, int], ...]
    adjacency: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.cells)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def n_edges(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2


def _compatible(m: ExactMatrix, a: tuple[int, int], b: tuple[int, int]) -> bool:
    (r1, c1), (r2, c2) = a, b
    if r1 == r2 or c1 == c2:
        return False
    return m.rows[r1][c2] == 0 or m.rows[r2][c1] == 0


def build_conflict_graph(m: ExactMatrix, cap: int = DEFAULT_VERTEX_CAP) -> ConflictGraph:
    cells = tuple((i, j) for i, row in enumerate(m.rows) for j, x in enumerate(row) if x != 0)
    check_cap(len(cells), cap, "nonzero cell count")
    adj = [0] * len(cells)
    for u in range(len(cells)):
        for v in range(u + 1, len(cells)):
            if _compatible(m, cells[u], cells[v]):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return ConflictGraph(cells, tuple(adj))


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _greedy_clique(adj: tuple[int, ...], n: int) -> list[int]:
    """Pick the candidate of largest residual degree, lowest index on ties."""
    cand = (1 << n) - 1
    clique = []
    while cand:
        best, best_deg = -1, -1
        for v in _bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > best_deg:
                best, best_deg = v, d
        clique.append(best)
        cand &= adj[best]
    return sorted(clique)


def _suffix_color_bounds(cand: int, adj: tuple[int, ...]) -> list[tuple[int, int]]:
    """Vertices of ``cand`` ascending, each with a clique bound for its suffix.

    Colours greedily from the highest index down; the colour count after
    reaching v bounds the clique number of {w in cand : w >= v}.
    """
    order = list(_bits(cand))
    classes: list[int] = []
    out = []
    for v in reversed(order):
        a = adj[v]
        for ci, members in enumerate(classes):
            if not a & members:
                classes[ci] = members | (1 << v)
                break
        else:
            classes.append(1 << v)
        out.append((v, len(classes)))
    out.reverse()
    return out


class _Search:
    def __init__(self, adj: tuple[int, ...], floor: int, budget: int | None):
        self.adj = adj
        # only cliques strictly larger than ``floor`` are recorded
        self.best_size = floor
        self.best: list[int] | None = None
        self.budget = budget
        self.nodes = 0

    def expand(self, clique: list[int], cand: int) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhausted
        if not cand:
            if len(clique) > self.best_size:
                self.best_size = len(clique)
                self.best = list(clique)
            return
        base = len(clique)
        for v, bound in _suffix_color_bounds(cand, self.adj):
            if base + bound <= self.best_size:
                return
            clique.append(v)
            # later vertices only: each clique is visited once, in lex order
            self.expand(clique, cand & self.adj[v] & ~((2 << v) - 1))
            clique.pop()


def _search_root(adj, n, root, floor, budget):
    """Best clique whose least vertex is ``root``; returns (clique, nodes, done)."""
    s = _Search(adj, floor, budget)
    later = ((1 << n) - 1) & ~((2 << root) - 1)
    try:
        s.expand([root], adj[root] & later)
    except BudgetExhausted:
        return s.best, s.nodes, False
    return s.best, s.nodes, True


_WORKER_STATE: tuple = ()


def _init_worker(adj, n, floor, budget):
    global _WORKER_STATE
    _WORKER_STATE = (adj, n, floor, budget)


def _search_root_in_worker(root):
    adj, n, floor, budget = _WORKER_STATE
    return _search_root(adj, n, root, floor, budget)


def max_fooling_submatrix(
    m: ExactMatrix,
    mode: str = "exact",
    budget: int | None = None,
    workers: int = 1,
    cap: int = DEFAULT_VERTEX_CAP,
) -> FoolingCertificate:
    """Largest fooling-set submatrix of ``m`` as a certificate.

    ``mode="greedy"`` returns a maximal certificate quickly.  ``mode="exact"``
    runs branch and bound over the compatibility graph; ``budget`` caps the
    number of search nodes, and when it runs out the best certificate found
    so far is returned with ``optimal=False``.  ``workers > 1`` spreads the
    top-level branches over processes; the result does not depend on it
    unless the budget runs out (the parallel path splits the budget evenly
    across top-level branches).
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    g = build_conflict_graph(m, cap)
    n = g.n_vertices
    if n == 0:
        return FoolingCertificate(m.n_rows, m.n_cols, (), True)
    adj = g.adjacency
    greedy = _greedy_clique(adj, n)
    if mode == "greedy":
        cells = tuple(g.cells[v] for v in greedy)
        return FoolingCertificate(m.n_rows, m.n_cols, cells, False)

    # Floor at greedy size - 1 so a tie with greedy is still found in lex order.
    floor = len(greedy) - 1
    best: list[int] | None = None
    complete = True
    if workers > 1 and n > 1:
        per_root = None if budget is None else max(1, budget // n)
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(adj, n, floor, per_root)) as pool:
            results = list(pool.map(_search_root_in_worker, range(n),
                                    chunksize=max(1, n // (4 * workers))))
        for clique, _, done in results:
            complete &= done
            if clique is not None and (best is None or len(clique) > len(best)):
                best = clique
    else:
        s = _Search(adj, floor, budget)
        try:
            for v in range(n):
                # roots are visited in order, so a later root must beat, not tie
                s.expand([v], adj[v] & ~((2 << v) - 1))
        except BudgetExhausted:
            complete = False
        best = s.best
        log.debug("exact search visited %d nodes", s.nodes)
    if best is None:
        best = greedy
    cells = tuple(g.cells[v] for v in best)
    return FoolingCertificate(m.n_rows, m.n_cols, cells, complete)


def verify_certificate(m: ExactMatrix, cert: FoolingCertificate) -> bool:
    if (cert.n_rows, cert.n_cols) != m.shape:
        return False
    cells = cert.cells
    for r, c in cells:
        if not (0 <= r < m.n_rows and 0 <= c < m.n_cols) or m.rows[r][c] == 0:
            return False
    if len({r for r, _ in cells}) != len(cells) or len({c for _, c in cells}) != len(cells):
        return False
    rows = m.rows
    for a in range(len(cells)):
        r1, c1 = cells[a]
        for b in range(a + 1, len(cells)):
            r2, c2 = cells[b]
            if rows[r1][c2] != 0 and rows[r2][c1] != 0:
                return False
    return True


def certificate_submatrix(m: ExactMatrix, cert: FoolingCertificate) -> ExactMatrix:
    """The selected submatrix, rows and columns paired so the cells land on the diagonal."""
    if not cert.cells:
        raise ValueError("empty certificate")
    return m.submatrix([r for r, _ in cert.cells], [c for _, c in cert.cells])
