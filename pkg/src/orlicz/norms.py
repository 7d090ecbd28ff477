"""Modulars, the Luxemburg norm, the weak Orlicz norm, Lebesgue-Riesz norms.

Everything is computed from tail representations.  For a step tail the
modular is an exact finite sum over the jump structure; for an analytic
tail it is the integration-by-parts form

    int_0^inf T(t) d N(t/k) = int_0^inf T(t) N'(t/k) / k dt,

whose boundary terms vanish whenever the result is finite, evaluated by
the quadrature kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

from .errors import BudgetExceeded, Inconclusive, NotDominated
from .numerics import DEFAULT_SPEC, FiniteOrDivergent, LadderTrace, QuadratureSpec, integrate
from .tails import StepTail, TailRepFunction, chebyshev_tail, tail_norm
from .young import YoungFunction

__all__ = [
    "NormResult",
    "modular",
    "luxemburg_norm",
    "weak_norm",
    "lebesgue_norm",
    "coupling_check",
    "CouplingReport",
    "NORM_CAP",
]

NORM_CAP = 2.0 ** 64


class _ModularOverflow(Exception):
    """Integrand exceeded the floating-point range at a sample point."""


@dataclass(frozen=True)
class NormResult:
    """A computed norm with the modular at the returned scale and a method trace."""

    value: float
    modular_at_value: Optional[float]
    trace: Dict[str, object]

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)


def modular(N: YoungFunction, f: TailRepFunction, k: float,
            spec: Optional[QuadratureSpec] = None) -> FiniteOrDivergent:
    """The quantity int N(|f|/k) dmu computed through the tail of f.

    Exact sum over (value, mass) pieces for step tails; kernel quadrature
    of T(t) N'(t/k)/k for analytic tails.  Divergence verdicts propagate.
    """
    if not (k > 0.0):
        raise ValueError("modular scale k must be positive")
    tail = f.tail
    if isinstance(tail, StepTail):
        total = 0.0
        for v, m in tail.pieces():
            total += N(v / k) * m
        if math.isinf(total):
            return FiniteOrDivergent.divergent(
                LadderTrace((), note=f"exact modular sum overflows at k={k:g}")
            )
        return FiniteOrDivergent.finite(total)

    def integrand(t: float) -> float:
        T = tail.value(t)
        if T == 0.0:
            return 0.0
        d = N.derivative(t / k)
        if d == 0.0:
            return 0.0
        v = T * d / k
        if v == math.inf:
            # at small k the growth of N' overtakes the tail's decay while
            # both factors are still representable separately: the modular
            # is far beyond 1 there, which is all the callers need to know
            raise _ModularOverflow(t)
        return v

    try:
        return integrate(integrand, 0.0, math.inf, spec or DEFAULT_SPEC)
    except _ModularOverflow as exc:
        return FiniteOrDivergent.divergent(
            LadderTrace((), note=f"integrand overflow near t={exc.args[0]:g} at k={k:g}")
        )


def _modular_above_one(N, f, k, spec) -> bool:
    """Bisection predicate: treat a divergent modular as > 1."""
    r = modular(N, f, k, spec)
    return r.is_divergent or r.value > 1.0


def luxemburg_norm(N: YoungFunction, f: TailRepFunction,
                   rel_tol: float = 1e-12,
                   spec: Optional[QuadratureSpec] = None) -> NormResult:
    """The strong (Luxemburg) norm inf{k > 0 : modular(f, k) <= 1}.

    The modular is non-increasing in k, so the infimum is bisected between
    a bracket with modular(lo) >= 1 >= modular(hi).  If the modular stays
    divergent while k doubles up to 2^64 the norm is infinite (the cap is
    recorded in the trace).  An inconclusive modular anywhere aborts with
    BudgetExceeded rather than silently guessing a side.
    """
    tail = f.tail
    if isinstance(tail, StepTail) and tail.is_zero:
        return NormResult(0.0, 0.0, {"iterations": 0, "note": "zero function"})

    evals = 0

    def above(k: float) -> bool:
        nonlocal evals
        evals += 1
        try:
            return _modular_above_one(N, f, k, spec)
        except (BudgetExceeded, Inconclusive) as exc:
            raise BudgetExceeded(
                f"modular at k={k:g} could not be classified: {exc}"
            ) from exc

    hi = 1.0
    while above(hi):
        hi *= 2.0
        if hi > NORM_CAP:
            return NormResult(
                math.inf, None,
                {"iterations": evals, "note": f"modular above 1 up to cap {NORM_CAP:g}"},
            )
    lo = hi * 0.5
    if hi == 1.0:
        while not above(lo):
            hi = lo
            lo *= 0.5
            if lo < 1.0 / NORM_CAP:
                return NormResult(
                    0.0, None,
                    {"iterations": evals, "note": "modular below 1 down to cap"},
                )
    iters = 0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if above(mid):
            lo = mid
        else:
            hi = mid
        iters += 1
        if iters > 400:
            break
    mod_at = modular(N, f, hi, spec)
    return NormResult(
        hi,
        mod_at.value if mod_at.is_finite else None,
        {"iterations": iters, "modular_evaluations": evals + 1,
         "bracket": (lo, hi)},
    )


def weak_norm(N: YoungFunction, f: TailRepFunction,
              rel_tol: float = 1e-12) -> NormResult:
    """The weak Orlicz norm: scaling norm of T[f] against the Chebyshev tail."""
    theta = chebyshev_tail(N, f.total_mass)
    value = tail_norm(f.tail, theta, rel_tol)
    return NormResult(value, None, {"reference": theta.label})


def lebesgue_norm(f: TailRepFunction, p: float,
                  spec: Optional[QuadratureSpec] = None) -> FiniteOrDivergent:
    """(int |f|^p dmu)^(1/p) through the tail: (p int t^(p-1) T(t) dt)^(1/p)."""
    if not (p >= 1.0):
        raise ValueError("Lebesgue exponent must satisfy p >= 1")
    tail = f.tail
    if isinstance(tail, StepTail):
        if tail.is_zero:
            return FiniteOrDivergent.finite(0.0)
        total = 0.0
        for v, m in tail.pieces():
            total += v ** p * m
        if math.isinf(total):
            return FiniteOrDivergent.divergent(
                LadderTrace((), note="exact moment sum overflows")
            )
        return FiniteOrDivergent.finite(total ** (1.0 / p))

    def integrand(t: float) -> float:
        T = tail.value(t)
        if T == 0.0:
            return 0.0
        return p * t ** (p - 1.0) * T

    r = integrate(integrand, 0.0, math.inf, spec or DEFAULT_SPEC)
    if r.is_divergent:
        return r
    return FiniteOrDivergent.finite(r.value ** (1.0 / p))


@dataclass(frozen=True)
class CouplingReport:
    """Monotone-coupling check: dominated tails give dominated modulars."""

    modular_dominated: FiniteOrDivergent
    modular_dominating: FiniteOrDivergent
    holds: bool


def coupling_check(N: YoungFunction, f: TailRepFunction, g: TailRepFunction,
                   spec: Optional[QuadratureSpec] = None) -> CouplingReport:
    """Verify T[f] <= T[g] pointwise, then modular(f) <= modular(g) at k = 1.

    Raises NotDominated when the pointwise precondition fails.  A divergent
    dominating modular dominates everything; a divergent dominated modular
    can only be matched by a divergent dominating one.
    """
    ft, gt = f.tail, g.tail
    if isinstance(ft, StepTail) and isinstance(gt, StepTail):
        probes = sorted(set(ft.thresholds) | set(gt.thresholds))
    else:
        probes = [10.0 ** (e / 4.0) for e in range(-48, 49)]
    for t in probes:
        if ft.value(t) > gt.value(t) * (1.0 + 1e-12):
            raise NotDominated(f"T[f]({t:g}) = {ft.value(t):g} exceeds T[g]({t:g}) = {gt.value(t):g}")

    mf = modular(N, f, 1.0, spec)
    mg = modular(N, g, 1.0, spec)
    if mg.is_divergent:
        holds = True
    elif mf.is_divergent:
        holds = False
    else:
        holds = mf.value <= mg.value * (1.0 + 1e-12) + 1e-15
    return CouplingReport(mf, mg, holds)
