"""Tail functions, the Chebyshev reference tail, rearrangements, tail norms.

A tail function maps t > 0 to the measure of {|f| >= t}: left-continuous,
non-increasing, vanishing at infinity.  Functions are represented here
only through their tails (every quantity in this library is
rearrangement-invariant), either as finite step functions or as analytic
callables.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Iterable, List, Tuple, Union

from .errors import MassOverflow
from .young import YoungFunction

__all__ = [
    "StepTail",
    "AnalyticTail",
    "TailFunction",
    "TailRepFunction",
    "step_tail",
    "chebyshev_tail",
    "dilate",
    "decreasing_rearrangement",
    "tail_norm",
]

_CAP = 2.0 ** 64


@dataclass(frozen=True, eq=False)
class StepTail:
    """Left-continuous step tail: level ``levels[i]`` on (thresholds[i-1], thresholds[i]].

    ``thresholds`` are the distinct function values in increasing order;
    past the last threshold the tail is 0.  An empty step tail is the tail
    of the zero function.
    """

    thresholds: Tuple[float, ...]
    levels: Tuple[float, ...]

    def __post_init__(self):
        if len(self.thresholds) != len(self.levels):
            raise ValueError("thresholds and levels must have equal length")
        if any(b <= a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("thresholds must be strictly increasing")
        if any(t <= 0.0 or not math.isfinite(t) for t in self.thresholds):
            raise ValueError("thresholds must be positive and finite")
        if any(b >= a for a, b in zip(self.levels, self.levels[1:])):
            raise ValueError("levels must be strictly decreasing")
        if self.levels and self.levels[-1] <= 0.0:
            raise ValueError("levels must be positive")

    @staticmethod
    def from_pieces(pieces: Iterable[Tuple[float, float]]) -> "StepTail":
        """Tail of a simple function taking value v_j on mass m_j (v >= 0)."""
        masses = {}
        for v, m in pieces:
            if v < 0.0 or not math.isfinite(v):
                raise ValueError(f"piece value {v!r} must be finite and non-negative")
            if m <= 0.0 or not math.isfinite(m):
                raise ValueError(f"piece mass {m!r} must be finite and positive")
            if v > 0.0:
                masses[v] = masses.get(v, 0.0) + m
        values = sorted(masses)
        levels = []
        acc = 0.0
        for v in reversed(values):
            acc += masses[v]
            levels.append(acc)
        levels.reverse()
        return StepTail(tuple(values), tuple(levels))

    def value(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError("tail functions are defined for t > 0")
        i = bisect_left(self.thresholds, t)
        if i == len(self.thresholds):
            return 0.0
        return self.levels[i]

    def pieces(self) -> List[Tuple[float, float]]:
        """Recover (value, mass) pairs from the jump structure."""
        out = []
        for i, t in enumerate(self.thresholds):
            nxt = self.levels[i + 1] if i + 1 < len(self.levels) else 0.0
            out.append((t, self.levels[i] - nxt))
        return out

    @property
    def is_zero(self) -> bool:
        return not self.thresholds

    @property
    def top_level(self) -> float:
        return self.levels[0] if self.levels else 0.0


@dataclass(frozen=True, eq=False)
class AnalyticTail:
    """Tail given by a callable t -> measure{|f| >= t}, t > 0."""

    fn: Callable[[float], float]
    label: str = ""

    def value(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError("tail functions are defined for t > 0")
        v = self.fn(t)
        if v != v or v < 0.0:
            raise ValueError(f"tail callable returned {v!r} at t={t!r}")
        return v

    @property
    def is_zero(self) -> bool:
        return False


TailFunction = Union[StepTail, AnalyticTail]


@dataclass(frozen=True, eq=False)
class TailRepFunction:
    """Canonical representation of a measurable function: tail + total mass."""

    tail: TailFunction
    total_mass: float

    def __post_init__(self):
        if not (self.total_mass > 0.0):
            raise ValueError("total mass must be positive (may be inf)")
        if isinstance(self.tail, StepTail) and self.tail.levels:
            if self.tail.top_level > self.total_mass * (1.0 + 1e-12):
                raise MassOverflow(
                    f"tail carries mass {self.tail.top_level!r} above the total"
                    f" {self.total_mass!r}"
                )


def step_tail(
    pieces: Iterable[Tuple[float, float]], total_mass: float = 1.0
) -> TailRepFunction:
    """Tail representation of a simple function; MassOverflow if pieces exceed the total."""
    tail = StepTail.from_pieces(pieces)
    return TailRepFunction(tail, total_mass)


def chebyshev_tail(N: YoungFunction, total_mass: float) -> AnalyticTail:
    """The reference tail min(total_mass, 1/N(t)) from the Chebyshev bound.

    With infinite total mass this is 1/N(t); the min with infinity is the
    finite branch.
    """
    if not (total_mass > 0.0):
        raise ValueError("total mass must be positive (may be inf)")

    def fn(t: float) -> float:
        n = N(t)
        if n == 0.0:
            return total_mass
        inv = 1.0 / n
        return inv if inv < total_mass else total_mass

    return AnalyticTail(fn, label=f"min(mass, 1/{N.describe()})")


def dilate(T: TailFunction, c: float) -> TailFunction:
    """Tail of c*f when T is the tail of f: t -> T(t/c)."""
    if not (c > 0.0 and math.isfinite(c)):
        raise ValueError("dilation factor must be positive and finite")
    if isinstance(T, StepTail):
        return StepTail(tuple(t * c for t in T.thresholds), T.levels)
    return AnalyticTail(lambda t: T.value(t / c), label=f"dilate({T.label}, {c:g})")


def decreasing_rearrangement(T: TailFunction, s: float) -> float:
    """Generalized left inverse inf{t > 0 : T(t) <= s} at level s."""
    if not (s >= 0.0):
        raise ValueError("level must be non-negative")
    if isinstance(T, StepTail):
        if T.is_zero or T.top_level <= s:
            return 0.0
        for i in range(len(T.thresholds)):
            nxt = T.levels[i + 1] if i + 1 < len(T.levels) else 0.0
            if nxt <= s:
                return T.thresholds[i]
        return T.thresholds[-1]
    # analytic: the set {T <= s} is an upper ray; bisect its boundary
    lo = hi = 1.0
    if T.value(hi) <= s:
        while hi > 1e-300 and T.value(hi * 0.5) <= s:
            hi *= 0.5
        lo = hi * 0.5
        if lo <= 1e-300:
            return 0.0
    else:
        while hi < _CAP and T.value(hi) > s:
            hi *= 2.0
        if hi >= _CAP:
            return math.inf
        lo = hi * 0.5
    for _ in range(200):
        if hi - lo <= 1e-13 * hi:
            break
        mid = 0.5 * (lo + hi)
        if T.value(mid) <= s:
            hi = mid
        else:
            lo = mid
    return hi


def _feasible_step(T: StepTail, theta: TailFunction, K: float) -> bool:
    # levels are held on left-open intervals, so domination binds at the
    # right endpoint of each constancy interval
    for t, level in zip(T.thresholds, T.levels):
        if level > theta.value(t / K):
            return False
    return True


_GRID_DECADES = range(-15, 16)
_GRID_PER_DECADE = 20


def _feasible_analytic(T: AnalyticTail, theta: TailFunction, K: float) -> bool:
    # sample in s = t/K coordinates: the reference tail's transition region
    # is then independent of the candidate K, so no violation can escape
    # the grid by sliding off with K
    worst_s = None
    worst_margin = math.inf
    step = 1.0 / _GRID_PER_DECADE
    for e10 in _GRID_DECADES:
        for j in range(_GRID_PER_DECADE):
            s = 10.0 ** (e10 + j * step)
            tv = T.value(s * K)
            th = theta.value(s)
            if tv > th:
                return False
            margin = th - tv
            if margin < worst_margin:
                worst_margin = margin
                worst_s = s
    # refine around the tightest point to catch violations between grid nodes
    if worst_s is not None:
        lo, hi = worst_s * 10.0 ** (-step), worst_s * 10.0 ** step
        for _ in range(2):
            ss = [lo * (hi / lo) ** (i / 40.0) for i in range(41)]
            margins = [(theta.value(s) - T.value(s * K), s) for s in ss]
            if any(m < 0.0 for m, _ in margins):
                return False
            worst = min(margins)[1]
            lo, hi = worst * 0.9, worst * 1.1
    return True


def tail_norm(T: TailFunction, theta: TailFunction, rel_tol: float = 1e-12) -> float:
    """Scaling norm against a reference tail.

    The infimum of K > 0 such that T(t) <= theta(t/K) for every t > 0;
    feasibility is monotone in K, so the infimum is found by bisection
    between a halving lower bracket and a doubling upper bracket.  Returns
    0 for the zero tail and inf when no K dominates.
    """
    if isinstance(T, StepTail) and T.is_zero:
        return 0.0
    feasible = (
        (lambda K: _feasible_step(T, theta, K))
        if isinstance(T, StepTail)
        else (lambda K: _feasible_analytic(T, theta, K))
    )
    hi = 1.0
    while not feasible(hi):
        hi *= 2.0
        if hi > _CAP:
            return math.inf
    lo = hi * 0.5
    while feasible(lo):
        hi = lo
        lo *= 0.5
        if lo < 1.0 / _CAP:
            return 0.0
    for _ in range(300):
        if hi - lo <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi
