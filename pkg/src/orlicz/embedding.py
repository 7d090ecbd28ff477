"""Coincidence criterion, embedding constant, extremal function, reports.

The strong and weak Orlicz spaces over a given measure coincide (with
equivalent norms) exactly when some scaling C > 0 makes the integral of
N(C t) against the differential of the Chebyshev reference tail finite.
When they coincide, the optimal constant in strong <= k * weak is the
unique root k0 > 1 of Q(k) = 1, where Q is the embedding modular

    Q(k) = int N(N^{-1}(w)/k) dw / w^2    over (1/total_mass, infinity),

i.e. the modular of the extremal function (whose tail IS the reference
tail) at scale k.  Q is continuous, strictly decreasing, infinite at 1+
and vanishing at infinity, and the bound is attained by that extremal
function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, DivergentModular, Inconclusive, NonConvergence
from .numerics import (DEFAULT_SPEC, FiniteOrDivergent, LadderTrace,
                       QuadratureSpec, integrate)
from .tails import TailRepFunction, chebyshev_tail
from .young import YoungFunction

__all__ = [
    "unit_threshold",
    "embedding_modular",
    "coincidence_criterion",
    "CriterionResult",
    "embedding_constant",
    "extremal_function",
    "embedding_report",
    "EmbeddingReport",
    "DEFAULT_C_LADDER",
    "ANALYTIC_VERDICTS",
]

DEFAULT_C_LADDER = (1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125)

# Builtin families have known verdicts on finite-mass spaces; the numeric
# classifier runs anyway and the report records whether it concurred.
ANALYTIC_VERDICTS = {
    "power": "non-coincident",
    "exp_m": "coincident",
    "delta": "non-coincident",
}

COINCIDENT = "coincident"
NON_COINCIDENT = "non-coincident"
INCONCLUSIVE = "inconclusive"


def unit_threshold(N: YoungFunction, total_mass: float) -> float:
    """The argument where N crosses 1/total_mass; 0 on infinite-mass spaces.

    This is where the Chebyshev reference tail leaves its plateau.
    """
    if not (total_mass > 0.0):
        raise ValueError("total mass must be positive (may be inf)")
    if math.isinf(total_mass):
        return 0.0
    return N.inverse(1.0 / total_mass)


class _IntegrandOverflow(Exception):
    """Criterion integrand left the floating-point range at a sample point."""


def _scaled_integrand(N: YoungFunction, c: float):
    def f(w: float) -> float:
        v = N(c * N.inverse(w)) / (w * w)
        if v == math.inf:
            raise _IntegrandOverflow(w)
        return v

    return f


def _criterion_integral(N, c, lower, spec) -> FiniteOrDivergent:
    try:
        return integrate(_scaled_integrand(N, c), lower, math.inf, spec)
    except _IntegrandOverflow as exc:
        return FiniteOrDivergent.divergent(
            LadderTrace((), note=f"integrand overflow near w={exc.args[0]:g} at scaling {c:g}")
        )


def embedding_modular(
    N: YoungFunction,
    k: float,
    total_mass: float,
    spec: Optional[QuadratureSpec] = None,
) -> FiniteOrDivergent:
    """Q(k): the modular of the extremal function at scale k.

    Computed in the substituted form with lower limit 1/total_mass (zero
    for infinite mass, where the integrand may also diverge at the lower
    end and the classifier runs there too).
    """
    if not (k > 0.0):
        raise ValueError("scale k must be positive")
    if not (total_mass > 0.0):
        raise ValueError("total mass must be positive (may be inf)")
    lower = 0.0 if math.isinf(total_mass) else 1.0 / total_mass
    return _criterion_integral(N, 1.0 / k, lower, spec or DEFAULT_SPEC)


@dataclass(frozen=True)
class CriterionResult:
    """Numeric coincidence verdict with the scaling trail that produced it."""

    verdict: str
    witness: Optional[float]
    trail: Tuple[Tuple[float, str, Optional[float]], ...]


def coincidence_criterion(
    N: YoungFunction,
    total_mass: float,
    c_ladder: Sequence[float] = DEFAULT_C_LADDER,
    spec: Optional[QuadratureSpec] = None,
) -> CriterionResult:
    """Scan decreasing scalings C for a finite criterion integral.

    Finiteness propagates downward in C, so the scan stops at the first
    (largest) finite witness.  Non-coincident requires a conclusive
    divergent verdict at every tested C; anything mixed stays
    inconclusive, never silently resolved.
    """
    if not c_ladder or any(c <= 0.0 for c in c_ladder):
        raise ValueError("c_ladder must be non-empty and positive")
    if any(b >= a for a, b in zip(c_ladder, c_ladder[1:])):
        raise ValueError("c_ladder must be strictly decreasing")
    if not (total_mass > 0.0):
        raise ValueError("total mass must be positive (may be inf)")

    spec = spec or DEFAULT_SPEC
    lower = 0.0 if math.isinf(total_mass) else 1.0 / total_mass
    trail: List[Tuple[float, str, Optional[float]]] = []
    saw_inconclusive = False
    for c in c_ladder:
        try:
            r = _criterion_integral(N, c, lower, spec)
        except (BudgetExceeded, Inconclusive):
            trail.append((c, INCONCLUSIVE, None))
            saw_inconclusive = True
            continue
        if r.is_finite:
            trail.append((c, "finite", r.value))
            return CriterionResult(COINCIDENT, c, tuple(trail))
        trail.append((c, "divergent", None))
    if saw_inconclusive:
        return CriterionResult(INCONCLUSIVE, None, tuple(trail))
    return CriterionResult(NON_COINCIDENT, None, tuple(trail))


def _resolve_verdict(
    N: YoungFunction, total_mass: float, numeric: str
) -> Tuple[str, Optional[str], Optional[str]]:
    """Combine the numeric verdict with the analytic family override.

    Overrides apply only on finite-mass spaces: with infinite total mass
    the reference tail blows up at 0 and no builtin family coincides, so
    the numeric verdict stands on its own.
    """
    override = None
    if math.isfinite(total_mass):
        override = ANALYTIC_VERDICTS.get(N.family)
    if override is None:
        return numeric, None, None
    if numeric == override:
        agreement = "agreed"
    elif numeric == INCONCLUSIVE:
        agreement = "inconclusive"
    else:
        agreement = "disagreed"
    return override, override, agreement


def _k0_search(
    N: YoungFunction,
    total_mass: float,
    q_tol: float,
    spec: Optional[QuadratureSpec],
) -> Tuple[float, List[Tuple[float, str, Optional[float]]]]:
    """Root of Q(k) = 1 by doubling from k = 2, then bisection.

    Divergent Q counts as Q > 1 (the true value there exceeds 1 anyway
    since Q is decreasing with Q(1+) infinite).  The returned k satisfies
    |Q(k) - 1| <= q_tol.
    """
    trace: List[Tuple[float, str, Optional[float]]] = []

    def q(k: float) -> FiniteOrDivergent:
        r = embedding_modular(N, k, total_mass, spec)
        trace.append((k, r.tag, r.value))
        return r

    r2 = q(2.0)
    if r2.is_divergent or r2.value >= 1.0:
        lo, hi = 2.0, 4.0
        while True:
            r = q(hi)
            if r.is_finite and r.value < 1.0:
                break
            lo = hi
            hi *= 2.0
            if hi > 2.0 ** 40:
                raise DivergentModular(
                    "embedding modular stayed at or above 1 up to k = 2^40"
                )
    else:
        lo, hi = 1.0, 2.0
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        r = q(mid)
        if r.is_finite and abs(r.value - 1.0) <= q_tol:
            return mid, trace
        if r.is_divergent or r.value > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4.0 * math.ulp(hi):
            raise NonConvergence(
                f"k0 bracket collapsed at [{lo!r}, {hi!r}] before |Q-1| <= {q_tol:g}"
            )
    raise NonConvergence("k0 bisection exceeded its iteration cap")


def embedding_constant(
    N: YoungFunction,
    total_mass: float,
    q_tol: float = 1e-8,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """The exact constant k0 in strong <= k0 * weak, when the spaces coincide.

    Raises DivergentModular when the coincidence criterion fails (the
    constant is then infinite).
    """
    crit = coincidence_criterion(N, total_mass, spec=spec)
    verdict, _, _ = _resolve_verdict(N, total_mass, crit.verdict)
    if verdict != COINCIDENT:
        raise DivergentModular(
            f"criterion verdict for {N.describe()} at mass {total_mass:g} is {verdict}"
        )
    k0, _ = _k0_search(N, total_mass, q_tol, spec)
    if k0 <= 1.0:
        raise NonConvergence(f"computed embedding constant {k0!r} not above 1")
    return k0


def extremal_function(N: YoungFunction, total_mass: float) -> TailRepFunction:
    """The function whose tail is exactly the Chebyshev reference tail.

    It has unit weak norm, and when the spaces coincide its strong norm
    equals the embedding constant (the bound is attained).
    """
    return TailRepFunction(chebyshev_tail(N, total_mass), total_mass)


@dataclass(frozen=True)
class EmbeddingReport:
    family: str
    param: Optional[float]
    total_mass: float
    unit_threshold: float
    verdict: str
    numeric_verdict: str
    override_verdict: Optional[str]
    classifier_agreement: Optional[str]
    witness_constant: Optional[float]
    embedding_constant: Optional[float]
    embedding_constant_modular: Optional[float]
    sharp: bool
    criterion_trail: Tuple[Tuple[float, str, Optional[float]], ...]
    q_trace: Tuple[Tuple[float, str, Optional[float]], ...]

    def __post_init__(self):
        has_k0 = self.embedding_constant is not None
        if has_k0 != (self.verdict == COINCIDENT):
            raise ValueError("embedding constant present iff verdict is coincident")
        if has_k0 and not (1.0 < self.embedding_constant < math.inf):
            raise ValueError("embedding constant must lie in (1, inf)")

    def to_dict(self) -> Dict[str, object]:
        def num(x):
            if x is None:
                return None
            return "inf" if math.isinf(x) else x

        return {
            "family": self.family,
            "param": self.param,
            "total_mass": num(self.total_mass),
            "unit_threshold": self.unit_threshold,
            "verdict": self.verdict,
            "numeric_verdict": self.numeric_verdict,
            "override_verdict": self.override_verdict,
            "classifier_agreement": self.classifier_agreement,
            "witness_constant": self.witness_constant,
            "embedding_constant": self.embedding_constant,
            "embedding_constant_modular": self.embedding_constant_modular,
            "sharp": self.sharp,
            "criterion_trail": [list(x) for x in self.criterion_trail],
            "q_trace": [list(x) for x in self.q_trace],
        }


def embedding_report(
    N: YoungFunction,
    total_mass: float,
    q_tol: float = 1e-8,
    spec: Optional[QuadratureSpec] = None,
) -> EmbeddingReport:
    """Full coincidence report: verdict, witness, constant, evaluation traces."""
    crit = coincidence_criterion(N, total_mass, spec=spec)
    verdict, override, agreement = _resolve_verdict(N, total_mass, crit.verdict)

    k0 = None
    q_at_k0 = None
    q_trace: Tuple[Tuple[float, str, Optional[float]], ...] = ()
    if verdict == COINCIDENT:
        k0, trace = _k0_search(N, total_mass, q_tol, spec)
        q_trace = tuple(trace)
        q_at_k0 = trace[-1][2]

    return EmbeddingReport(
        family=N.family,
        param=N.param,
        total_mass=total_mass,
        unit_threshold=unit_threshold(N, total_mass),
        verdict=verdict,
        numeric_verdict=crit.verdict,
        override_verdict=override,
        classifier_agreement=agreement,
        witness_constant=crit.witness,
        embedding_constant=k0,
        embedding_constant_modular=q_at_k0,
        sharp=verdict == COINCIDENT,
        criterion_trail=crit.trail,
        q_trace=q_trace,
    )
