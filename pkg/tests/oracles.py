"""Brute-force reference computations, kept independent of the package code."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def binomial_oracle(n: int, k: int) -> int:
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # upper negation: C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


def det_leibniz(a: list[list]) -> Fraction:
    n = len(a)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= a[i][perm[i]]
            if term == 0:
                break
        total += term
    return total


def rank_by_minors(rows: list[list]) -> int:
    """Largest k with a nonzero k x k minor."""
    n_rows, n_cols = len(rows), len(rows[0])
    for k in range(min(n_rows, n_cols), 0, -1):
        for ri in itertools.combinations(range(n_rows), k):
            for ci in itertools.combinations(range(n_cols), k):
                if det_leibniz([[rows[i][j] for j in ci] for i in ri]) != 0:
                    return k
    return 0


def rank_by_span(rows: list[list[int]], p: int) -> int:
    """log_p of the size of the row space, by enumerating every combination."""
    n_cols = len(rows[0])
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(n_cols)))
    k = round(math.log(len(span), p))
    assert p**k == len(span)
    return k


def max_fooling_by_enumeration(rows: list[list]) -> int:
    """Largest k such that some k rows, k cols and pairing form a fooling matrix."""
    n_rows, n_cols = len(rows), len(rows[0])
    for k in range(min(n_rows, n_cols), 0, -1):
        for ri in itertools.combinations(range(n_rows), k):
            for ci in itertools.combinations(range(n_cols), k):
                for perm in itertools.permutations(ci):
                    if all(rows[ri[a]][perm[a]] != 0 for a in range(k)) and all(
                        rows[ri[a]][perm[b]] == 0 or rows[ri[b]][perm[a]] == 0
                        for a in range(k)
                        for b in range(a + 1, k)
                    ):
                        return k
    return 0


def unroll(p: int, coeffs: list[int], initial: list[int], length: int) -> list[int]:
    f = list(initial)
    r = len(initial)
    while len(f) < length:
        k = len(f) - r
        f.append(sum(c * f[k + j] for j, c in enumerate(coeffs)) % p)
    return f[:length]


def period_by_comparison(seq: list[int], max_p: int) -> int | None:
    """Least P with seq[k + P] == seq[k] across the whole (long) list."""
    for P in range(1, max_p + 1):
        if all(seq[k + P] == seq[k] for k in range(len(seq) - P)):
            return P
    return None
