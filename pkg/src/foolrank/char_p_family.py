"""Circulant fooling-set matrices over GF(p) from a linear recurring sequence.

The sequence is f(k + r) = -f(k) - f(k + 1) with f(0) = 1 and
f(1) = ... = f(r - 1) = 0, extended to all of Z.  For r = p**t + 1 the
circulant M[k][l] = f(k - l) of size r(r - 1) + 1 is a fooling-set matrix of
rank r over GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_algebra import ExactMatrix, FieldSpec, check_cap, is_prime

DEFAULT_SIZE_CAP = 5000


@dataclass(frozen=True)
class SequencePlan:
    """Recurrence f(k + r) = sum_j coefficients[j] * f(k + j) over GF(p).

    ``initial`` holds f(0), ..., f(r - 1).
    """

    p: int
    r: int
    coefficients: tuple[int, ...]
    initial: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.r < 1:
            raise ValueError(f"recurrence order must be >= 1, got {self.r}")
        if len(self.coefficients) != self.r or len(self.initial) != self.r:
            raise ValueError("need exactly r coefficients and r initial values")
        object.__setattr__(self, "coefficients", tuple(c % self.p for c in self.coefficients))
        object.__setattr__(self, "initial", tuple(c % self.p for c in self.initial))

    @classmethod
    def canonical(cls, p: int, r: int) -> SequencePlan:
        if r < 2:
            raise ValueError(f"canonical recurrence needs r >= 2, got {r}")
        coeffs = [0] * r
        coeffs[0] = -1
        coeffs[1] = -1
        return cls(p, r, tuple(coeffs), (1,) + (0,) * (r - 1))

    @property
    def reversible(self) -> bool:
        return self.coefficients[0] != 0

    @property
    def is_canonical(self) -> bool:
        return self.r >= 2 and self == SequencePlan.canonical(self.p, self.r)

    def step(self, state: tuple[int, ...]) -> int:
        """Next value after the window ``state`` = (f(k), ..., f(k + r - 1))."""
        return sum(a * x for a, x in zip(self.coefficients, state)) % self.p

    def step_back(self, state: tuple[int, ...]) -> int:
        """f(k - 1) from the window (f(k), ..., f(k + r - 1))."""
        # f(k - 1 + r) = a0 f(k - 1) + sum_{j>=1} a_j f(k - 1 + j)
        p = self.p
        rest = sum(a * x for a, x in zip(self.coefficients[1:], state[:-1]))
        inv = pow(self.coefficients[0], -1, p)
        return (state[-1] - rest) * inv % p


@dataclass(frozen=True)
class CharPParams:
    p: int
    t: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")

    @property
    def r(self) -> int:
        return self.p**self.t + 1

    @property
    def n(self) -> int:
        r = self.r
        return r * (r - 1) + 1

    @property
    def plan(self) -> SequencePlan:
        return SequencePlan.canonical(self.p, self.r)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.n, self.r**2)


def sequence_window(plan: SequencePlan, lo: int, hi: int) -> list[int]:
    """Values f(lo), ..., f(hi - 1) of the two-sided sequence."""
    if lo >= hi:
        raise ValueError(f"empty window [{lo}, {hi})")
    if lo < 0 and not plan.reversible:
        raise ValueError("negative indices need a reversible recurrence (nonzero a0)")
    r = plan.r
    # forward part f(0..max(hi, r))
    fwd = list(plan.initial)
    while len(fwd) < hi:
        fwd.append(plan.step(tuple(fwd[-r:])))
    if lo >= 0:
        return fwd[lo:hi]
    back = []  # f(-1), f(-2), ...
    window = list(plan.initial)
    for _ in range(-lo):
        prev = plan.step_back(tuple(window))
        back.append(prev)
        window = [prev] + window[:-1]
    back.reverse()
    values = back + fwd
    return values[:hi - lo]


def build_circulant(params: CharPParams, cap: int = DEFAULT_SIZE_CAP) -> ExactMatrix:
    """The n x n matrix M[k][l] = f(k - l) over GF(p), 0-based indices."""
    n = params.n
    check_cap(n, cap)
    return circulant_from_plan(params.plan, n)


def circulant_from_plan(plan: SequencePlan, n: int, cap: int = DEFAULT_SIZE_CAP) -> ExactMatrix:
    check_cap(n, cap)
    vals = sequence_window(plan, -(n - 1), n)
    off = n - 1
    rows = tuple(tuple(vals[k - l + off] for l in range(n)) for k in range(n))
    return ExactMatrix._trusted(FieldSpec.gf(plan.p), rows)


def verify_zero_blocks(plan: SequencePlan) -> bool:
    """Check f(jr + i) = 0 for j = 0..r-2 and i = 1..r-1-j."""
    r = plan.r
    f = sequence_window(plan, 0, (r - 1) * r)
    return all(f[j * r + i] == 0 for j in range(r - 1) for i in range(1, r - j))


def minimal_period(plan: SequencePlan, bound: int) -> Optional[int]:
    """Least P <= bound with f(k + P) = f(k) for all k, or None.

    Walks the state vector (f(k), ..., f(k + r - 1)) and records each state
    in a dict; the sequence is purely periodic exactly when the first repeated
    state is the initial one.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    state = plan.initial
    seen = {state: 0}
    for k in range(1, bound + 1):
        state = state[1:] + (plan.step(state),)
        first = seen.get(state)
        if first is not None:
            return k if first == 0 else None
        seen[state] = k
    return None


def verify_cross_condition(params: CharPParams) -> bool:
    """Check f(k) * f(n - k) = 0 for k = 1..n-1."""
    n = params.n
    f = sequence_window(params.plan, 0, n)
    p = params.p
    return all(f[k] * f[n - k] % p == 0 for k in range(1, n))


@dataclass(frozen=True)
class RecurrenceReport:
    period: Optional[int]
    fooling_ok: bool
    ratio: Optional[Fraction]


def explore_recurrence(plan: SequencePlan, bound: int) -> RecurrenceReport:
    """Period and fooling behaviour of an arbitrary reversible recurrence.

    ``fooling_ok`` means the period-P circulant built from the sequence is a
    fooling-set matrix: f(0) != 0 and f(k) f(-k) = 0 for 0 < k < P.  The
    ratio P / r**2 is reported only in that case.  Nothing here judges
    whether a plan is good; it just reports.
    """
    if not plan.reversible:
        raise ValueError("explore_recurrence needs a reversible recurrence (nonzero a0)")
    period = minimal_period(plan, bound)
    if period is None:
        return RecurrenceReport(None, False, None)
    f = sequence_window(plan, 0, period)
    ok = f[0] != 0 and all(f[k] * f[period - k] % plan.p == 0 for k in range(1, period))
    return RecurrenceReport(period, ok, Fraction(period, plan.r**2) if ok else None)


def paper_period(p: int, r: int) -> Optional[int]:
    """r(r - 1) + 1 when r = p**t + 1 for some t >= 1, else None."""
    q = r - 1
    if q < p:
        return None
    while q % p == 0:
        q //= p
    if q != 1:
        return None
    return r * (r - 1) + 1
