"""Deterministic quadrature, bracketed root finding, divergence classification.

Finite segments are handled by adaptive Gauss-Kronrod (7-15) panels.
Semi-infinite integrals run on a decade cutoff ladder: each decade is
integrated adaptively, the local log-log slope of the integrand is tracked
at the cutoffs, and the remainder past the last cutoff is estimated by
power-law extrapolation.  The same slope trace drives the divergence
classifier: persistent slope >= -1 - margin together with non-shrinking
decade contributions means the integral cannot be finite.

Everything here is pure and reproducible: fixed node sets, fixed
evaluation order, no randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from scipy.optimize import brentq as _brentq

from .errors import (
    BudgetExceeded,
    Inconclusive,
    NonConvergence,
    NonEvaluable,
    NoSignChange,
)

__all__ = [
    "QuadratureSpec",
    "FiniteOrDivergent",
    "LadderPoint",
    "LadderTrace",
    "DEFAULT_SPEC",
    "integrate",
    "find_root",
    "divergence_classify",
]

_DEFAULT_LADDER = tuple(10.0 ** j for j in range(13))  # 1.0 .. 1e12


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the quadrature kernel.

    ``slope_margin`` is the width of the dead band around the critical
    exponent -1 used by the divergence classifier; ``persistence`` is how
    many consecutive decades of suspicious slope are required before a
    divergent verdict fires.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 52
    max_panels: int = 8192
    ladder: Tuple[float, ...] = _DEFAULT_LADDER
    slope_margin: float = 0.05
    persistence: int = 3
    sub_decades: int = 12

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 4 or self.max_panels < 16:
            raise ValueError("subdivision budget too small")
        if len(self.ladder) < 2 or any(
            b <= a for a, b in zip(self.ladder, self.ladder[1:])
        ):
            raise ValueError("cutoff ladder must be strictly increasing")
        if not (0.0 < self.slope_margin < 1.0):
            raise ValueError("slope_margin must lie in (0, 1)")
        if self.persistence < 2:
            raise ValueError("persistence must be at least 2")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class LadderPoint:
    """One cutoff of the decade ladder: sample, local slope, running integral."""

    cutoff: float
    value: float
    slope: Optional[float]
    partial: float


@dataclass(frozen=True)
class LadderTrace:
    points: Tuple[LadderPoint, ...]
    note: str = ""

    def __str__(self):
        rows = ", ".join(
            f"(w={p.cutoff:.3g}, f={p.value:.3g}, slope={p.slope if p.slope is None else round(p.slope, 4)})"
            for p in self.points
        )
        return f"{self.note}: [{rows}]"


@dataclass(frozen=True)
class FiniteOrDivergent:
    """Outcome of an improper integral: a finite value or divergence evidence."""

    tag: str
    value: Optional[float] = None
    evidence: Optional[LadderTrace] = None

    @staticmethod
    def finite(value: float) -> "FiniteOrDivergent":
        return FiniteOrDivergent("finite", value=value)

    @staticmethod
    def divergent(evidence: LadderTrace) -> "FiniteOrDivergent":
        return FiniteOrDivergent("divergent", evidence=evidence)

    @property
    def is_finite(self) -> bool:
        return self.tag == "finite"

    @property
    def is_divergent(self) -> bool:
        return self.tag == "divergent"

    def require_finite(self) -> float:
        if not self.is_finite:
            raise ValueError(f"expected a finite integral, got divergent ({self.evidence})")
        return self.value


# Gauss-Kronrod 7-15 nodes and weights on [-1, 1].  Positive abscissae only;
# odd-indexed entries together with the centre form the embedded Gauss rule.
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
)
_WGK_CENTER = 0.209482141084728
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119)
_WG_CENTER = 0.417959183673469


def _checked(f: Callable[[float], float], x: float) -> float:
    v = f(x)
    if v != v:
        raise NonEvaluable(f"integrand returned NaN at x={x!r}")
    if v < 0.0:
        raise NonEvaluable(f"integrand returned a negative value {v!r} at x={x!r}")
    if v == math.inf:
        raise NonEvaluable(f"integrand overflowed at x={x!r}")
    return v


def _panel(f, a, b):
    """Kronrod value and Kronrod-vs-Gauss error estimate on [a, b]."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = _checked(f, c)
    resk = _WGK_CENTER * fc
    resg = _WG_CENTER * fc
    for i in range(7):
        dx = h * _XGK[i]
        v = _checked(f, c - dx) + _checked(f, c + dx)
        resk += _WGK[i] * v
        if i % 2 == 1:
            resg += _WG[i // 2] * v
    resk *= h
    resg *= h
    if not math.isfinite(resk):
        raise NonEvaluable(f"panel sum overflowed on [{a!r}, {b!r}]")
    return resk, abs(resk - resg)


def _adaptive_finite(f, a, b, spec: QuadratureSpec, abs_budget: float):
    """Greedy adaptive refinement; returns (value, error_estimate)."""
    if b <= a:
        return 0.0, 0.0
    resk, err = _panel(f, a, b)
    panels = [[err, a, b, resk, 0]]
    total, toterr = resk, err
    while True:
        tol = max(abs_budget, spec.rel_tol * abs(total))
        if toterr <= tol:
            break
        worst = 0
        we = -1.0
        for i, p in enumerate(panels):
            if p[0] > we:
                we = p[0]
                worst = i
        perr, pa, pb, pval, pdepth = panels[worst]
        if pdepth >= spec.max_depth:
            raise BudgetExceeded(
                f"max subdivision depth {spec.max_depth} reached on [{pa!r}, {pb!r}]"
            )
        if len(panels) >= spec.max_panels:
            raise BudgetExceeded(f"panel budget {spec.max_panels} exhausted")
        mid = 0.5 * (pa + pb)
        if not (pa < mid < pb):
            raise BudgetExceeded(f"interval [{pa!r}, {pb!r}] no longer splittable")
        lval, lerr = _panel(f, pa, mid)
        rval, rerr = _panel(f, mid, pb)
        panels[worst] = [lerr, pa, mid, lval, pdepth + 1]
        panels.append([rerr, mid, pb, rval, pdepth + 1])
        total += lval + rval - pval
        toterr += lerr + rerr - perr
    panels.sort(key=lambda p: p[1])
    value = 0.0
    errsum = 0.0
    for p in panels:
        value += p[3]
        errsum += p[0]
    return value, errsum


def _ladder_pass(f, cuts, spec: QuadratureSpec, abs_budget, downward):
    """Sweep the decade segments defined by ``cuts`` and classify the far end.

    ``cuts`` runs away from the bulk of the integral: increasing for an
    upper tail, decreasing toward zero for a lower endpoint.  Returns
    (value, error) for a finite verdict, a divergent FiniteOrDivergent
    otherwise; raises Inconclusive / BudgetExceeded when the cutoffs are
    exhausted without a verdict.
    """
    prev_probe = _checked(f, cuts[0])
    partial = 0.0
    err = 0.0
    points = []
    flags = []
    estimates = []
    prev_accel = None
    for i in range(1, len(cuts)):
        c_prev, c = cuts[i - 1], cuts[i]
        lo, hi = (c, c_prev) if downward else (c_prev, c)
        seg_budget = max(abs_budget, 0.05 * spec.rel_tol * abs(partial))
        seg, segerr = _adaptive_finite(f, lo, hi, spec, seg_budget)
        partial += seg
        err += segerr
        probe = _checked(f, c)
        slope = None
        if probe > 0.0 and prev_probe > 0.0:
            slope = math.log(probe / prev_probe) / math.log(c / c_prev)
        points.append(LadderPoint(c, probe, slope, partial))

        if slope is None:
            suspicious = False
        elif downward:
            suspicious = slope <= -1.0 + spec.slope_margin
        else:
            suspicious = slope >= -1.0 - spec.slope_margin
        flags.append(suspicious)

        # "moving" guards against declaring divergence on contributions that
        # are pure roundoff; the decay rate itself is judged by the slope
        moving = seg > 32.0 * math.ulp(max(abs(partial), seg))
        if (
            moving
            and len(flags) >= spec.persistence
            and all(flags[-spec.persistence:])
        ):
            trace = LadderTrace(
                tuple(points),
                note="decade contributions not Cauchy and local exponent"
                f" within {spec.slope_margin} of -1",
            )
            return FiniteOrDivergent.divergent(trace), err

        remainder = None
        if probe == 0.0:
            remainder = 0.0
        elif slope is not None:
            if downward and slope > -1.0 + spec.slope_margin:
                remainder = probe * c / (slope + 1.0)
            elif not downward and slope < -1.0 - spec.slope_margin:
                remainder = probe * c / (-slope - 1.0)
        if remainder is not None:
            estimates.append(partial + remainder)
            # Richardson step: successive estimates drift geometrically when
            # the tail model misses a secondary power component; cancel the
            # leading term from the last three estimates.
            best = estimates[-1]
            diff = None
            if len(estimates) >= 2:
                diff = estimates[-1] - estimates[-2]
                if len(estimates) >= 3:
                    prev_diff = estimates[-2] - estimates[-3]
                    if prev_diff != 0.0:
                        ratio = diff / prev_diff
                        if 0.0 < ratio < 0.95:
                            best = estimates[-1] + diff * ratio / (1.0 - ratio)
            tol_here = 0.5 * max(abs_budget, spec.rel_tol * abs(best))
            if diff is not None:
                settled = abs(diff) <= tol_here or (
                    prev_accel is not None
                    and len(estimates) >= 3
                    and abs(best - prev_accel) <= tol_here
                )
                if settled:
                    return FiniteOrDivergent.finite(best), err + abs(diff)
            prev_accel = best
        else:
            estimates.clear()
            prev_accel = None
        prev_probe = probe

    trace = LadderTrace(tuple(points), note="cutoff ladder exhausted without a verdict")
    crossings = sum(1 for x, y in zip(flags, flags[1:]) if x != y)
    if crossings >= 3:
        raise Inconclusive(
            "local exponent oscillates across the divergence threshold", trace
        )
    raise BudgetExceeded(
        "cutoff ladder exhausted without convergence or a divergence verdict", trace
    )


def _up_cuts(start: float, spec: QuadratureSpec):
    cuts = [start]
    for c in spec.ladder:
        if c > start * (1.0 + 1e-12):
            cuts.append(c)
    while len(cuts) < 4:
        cuts.append(cuts[-1] * 10.0)
    return cuts


def _down_cuts(top: float, spec: QuadratureSpec):
    return [top * 10.0 ** (-j) for j in range(spec.sub_decades + 1)]


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: Optional[QuadratureSpec] = None,
    *,
    lower_singularity: Optional[float] = None,
) -> FiniteOrDivergent:
    """Integrate a non-negative function over (a, b), b possibly infinite.

    When ``lower_singularity`` is alpha in (0, 1), the integral computed is
    ``int (z - a)^(-alpha) * f(z) dz``: ``f`` is the regular cofactor and
    the singular factor is absorbed exactly by the substitution
    z - a = s^(1/(1-alpha)).  Without it, ``f`` is the full integrand and
    endpoints may carry at most mild (logarithmic or small-power)
    integrable singularities.

    Returns finite(value) or divergent(trace); raises Inconclusive when the
    slope classifier cannot decide and BudgetExceeded when budgets run out.
    """
    spec = spec or DEFAULT_SPEC
    if not math.isfinite(a):
        raise ValueError("lower limit must be finite")
    if b <= a:
        if b == a:
            return FiniteOrDivergent.finite(0.0)
        raise ValueError("integration bounds must satisfy a < b")

    if lower_singularity is not None:
        alpha = lower_singularity
        if not (0.0 < alpha < 1.0):
            raise ValueError("lower_singularity must lie in (0, 1)")
        q = 1.0 / (1.0 - alpha)

        if math.isinf(b):
            # exactify the singular head, then ladder the plain integrand
            head_top = a + 1.0 if a + 1.0 > a else a * 2.0
            head = integrate(
                f, a, head_top, spec, lower_singularity=alpha
            ).require_finite()

            def full(z):
                return f(z) * (z - a) ** (-alpha)

            rest = integrate(full, head_top, math.inf, spec)
            if rest.is_divergent:
                return rest
            return FiniteOrDivergent.finite(head + rest.value)

        s_top = (b - a) ** (1.0 - alpha)

        def transformed(s):
            return f(a + s ** q)

        value, _ = _adaptive_finite(transformed, 0.0, s_top, spec, spec.abs_tol)
        return FiniteOrDivergent.finite(q * value)

    if math.isinf(b):
        parts = 0.0
        if a == 0.0:
            base = spec.ladder[0]
            down, _ = _ladder_pass(f, _down_cuts(base, spec), spec, spec.abs_tol, True)
            if down.is_divergent:
                return down
            parts += down.value
            start = base
        else:
            start = a
        up, _ = _ladder_pass(f, _up_cuts(start, spec), spec, spec.abs_tol, False)
        if up.is_divergent:
            return up
        return FiniteOrDivergent.finite(parts + up.value)

    value, _ = _adaptive_finite(f, a, b, spec, spec.abs_tol)
    return FiniteOrDivergent.finite(value)


def divergence_classify(
    f: Callable[[float], float],
    a: float,
    spec: Optional[QuadratureSpec] = None,
) -> FiniteOrDivergent:
    """Classify the upper tail of ``int_a^inf f``.

    Divergent verdicts require both non-shrinking decade contributions and
    a local log-log slope persistently within ``slope_margin`` of -1.
    Finite verdicts return the ladder value with the extrapolated tail
    folded in.  Slope oscillation across the threshold raises Inconclusive;
    an exhausted ladder without any verdict raises BudgetExceeded.
    """
    return integrate(f, a, math.inf, spec)


def find_root(
    g: Callable[[float], float],
    bracket: Sequence[float],
    tol: float = 1e-12,
) -> float:
    """Root of a continuous function inside a sign-changing bracket.

    Brent's method; the returned point lies within ``tol`` of a sign
    change.  Deterministic for fixed inputs.
    """
    lo, hi = bracket
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"invalid bracket ({lo!r}, {hi!r})")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    glo = g(lo)
    ghi = g(hi)
    if glo != glo or ghi != ghi:
        raise NonEvaluable("bracket endpoint evaluated to NaN")
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0.0) == (ghi > 0.0):
        raise NoSignChange(
            f"g({lo!r})={glo!r} and g({hi!r})={ghi!r} have the same sign"
        )
    root, info = _brentq(
        g, lo, hi, xtol=tol, rtol=8.881784197001252e-16, maxiter=200, full_output=True
    )
    if not info.converged:
        raise NonConvergence(f"root refinement stalled after {info.iterations} iterations")
    return root
