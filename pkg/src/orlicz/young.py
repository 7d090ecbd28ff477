"""Young-Orlicz functions: builtin families, custom wrappers, validation.

A Young function N is even, continuous, convex, N(0) = 0, strictly
increasing to infinity, with N(u)/u -> 0 at 0 and -> infinity at infinity.
Three parametric families are built in:

    power(p):   |u|^p                          p > 1
    exp_m(m):   exp(|u|^m / m) - 1             m > 0
    delta(D):   exp((ln(1 + |u|))^D) - 1       D > 1

Note exp_m(1) fails the small-argument limit (N(u)/u -> 1, not 0); it is
admitted anyway because the embedding machinery only needs monotonicity
and the inverse, and the exponential family is used down to m = 1.
``validate_young`` reports such violations instead of refusing them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .errors import BadParameter

__all__ = [
    "YoungFunction",
    "make_young",
    "power_young",
    "exp_young",
    "delta_young",
    "custom_young",
    "validate_young",
    "ValidationReport",
    "Violation",
    "delta2_estimate",
    "Delta2Estimate",
]

_EXP_CAP = 700.0  # exp overflows just above 709; keep headroom


@dataclass(frozen=True, eq=False)
class YoungFunction:
    """A validated Young-Orlicz function with evaluator, inverse, derivative.

    Evaluation goes through abs(u), so evenness is exact by construction.
    The inverse must satisfy N(N^{-1}(w)) = w to 1e-10 relative on a log
    grid; builtin families have analytic inverses and derivatives, custom
    functions may omit the derivative (central differences are used).
    """

    family: str
    param: Optional[float]
    _evaluate: Callable[[float], float]
    _inverse: Callable[[float], float]
    _derivative: Optional[Callable[[float], float]] = None
    label: str = ""

    def __call__(self, u: float) -> float:
        return self._evaluate(abs(u))

    def inverse(self, w: float) -> float:
        if w < 0.0:
            raise ValueError("inverse argument must be non-negative")
        if w == 0.0:
            return 0.0
        return self._inverse(w)

    def derivative(self, u: float) -> float:
        u = abs(u)
        if self._derivative is not None:
            return self._derivative(u)
        if u == 0.0:
            return 0.0
        h = u * 1e-6
        return (self._evaluate(u + h) - self._evaluate(u - h)) / (2.0 * h)

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.param is None:
            return self.family
        return f"{self.family}({self.param:g})"


def _power_family(p: float) -> YoungFunction:
    def ev(u):
        try:
            return u ** p
        except OverflowError:
            return math.inf

    def inv(w):
        if math.isinf(w):
            return math.inf
        return w ** (1.0 / p)

    def der(u):
        if u == 0.0:
            return 0.0
        try:
            return p * u ** (p - 1.0)
        except OverflowError:
            return math.inf

    return YoungFunction("power", p, ev, inv, der, f"power({p:g})")


def _exp_family(m: float) -> YoungFunction:
    def ev(u):
        try:
            x = u ** m / m
        except OverflowError:
            return math.inf
        if x > _EXP_CAP:
            return math.inf
        return math.expm1(x)

    def inv(w):
        if math.isinf(w):
            return math.inf
        return (m * math.log1p(w)) ** (1.0 / m)

    def der(u):
        if u == 0.0:
            return 1.0 if m == 1.0 else 0.0
        try:
            x = u ** m / m
            if x > _EXP_CAP:
                return math.inf
            return u ** (m - 1.0) * math.exp(x)
        except OverflowError:
            return math.inf

    return YoungFunction("exp_m", m, ev, inv, der, f"exp_m({m:g})")


def _delta_family(d: float) -> YoungFunction:
    def ev(u):
        x = math.log1p(u) ** d
        if x > _EXP_CAP:
            return math.inf
        return math.expm1(x)

    def inv(w):
        if math.isinf(w):
            return math.inf
        return math.expm1(math.log1p(w) ** (1.0 / d))

    def der(u):
        if u == 0.0:
            return 0.0
        L = math.log1p(u)
        x = L ** d
        if x > _EXP_CAP:
            return math.inf
        return math.exp(x) * d * L ** (d - 1.0) / (1.0 + u)

    return YoungFunction("delta", d, ev, inv, der, f"delta({d:g})")


def _roundtrip_check(N: YoungFunction, rel: float = 1e-10) -> None:
    for e in range(-6, 13):
        w = 10.0 ** e
        u = N.inverse(w)
        back = N(u)
        if not math.isfinite(back) or abs(back - w) > rel * w:
            raise BadParameter(
                f"inverse inconsistent for {N.describe()}: N(N^-1({w:g})) = {back!r}"
            )


def make_young(family: str, param: float) -> YoungFunction:
    """Build a builtin family member; raises BadParameter out of range."""
    if family == "power":
        if not (param > 1.0 and math.isfinite(param)):
            raise BadParameter("power family requires p > 1")
        N = _power_family(float(param))
    elif family == "exp_m":
        if not (param > 0.0 and math.isfinite(param)):
            raise BadParameter("exp_m family requires m > 0")
        N = _exp_family(float(param))
    elif family == "delta":
        if not (param > 1.0 and math.isfinite(param)):
            raise BadParameter("delta family requires Delta > 1")
        N = _delta_family(float(param))
    else:
        raise BadParameter(f"unknown family {family!r}")
    _roundtrip_check(N)
    return N


def power_young(p: float) -> YoungFunction:
    return make_young("power", p)


def exp_young(m: float) -> YoungFunction:
    return make_young("exp_m", m)


def delta_young(d: float) -> YoungFunction:
    return make_young("delta", d)


def custom_young(
    evaluate: Callable[[float], float],
    inverse: Callable[[float], float],
    derivative: Optional[Callable[[float], float]] = None,
    label: str = "custom",
) -> YoungFunction:
    """Wrap user callables as a Young function.

    The inverse is mandatory (norm and embedding integrals are
    parameterized by it) and must round-trip to 1e-10 relative.  Convexity
    and the limit ratios are not enforced here; run ``validate_young`` to
    audit them.
    """
    def guarded(u: float) -> float:
        try:
            return evaluate(u)
        except OverflowError:
            return math.inf

    N = YoungFunction("custom", None, guarded, inverse, derivative, label)
    if N(0.0) != 0.0:
        raise BadParameter("custom Young function must satisfy N(0) = 0")
    _roundtrip_check(N)
    return N


@dataclass(frozen=True)
class Violation:
    kind: str
    location: float
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def _log_grid(lo: float, hi: float, n: int) -> List[float]:
    la, lb = math.log10(lo), math.log10(hi)
    return [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]


def validate_young(
    N: YoungFunction, grid: Optional[List[float]] = None
) -> ValidationReport:
    """Audit monotonicity, midpoint convexity, limit ratios, inverse.

    Report-only: callers decide what to do with violations.
    """
    if grid is None:
        grid = _log_grid(1e-6, 1e6, 121)
    if not grid or any(g <= 0.0 for g in grid):
        raise ValueError("validation grid must be non-empty and positive")
    grid = sorted(grid)
    out: List[Violation] = []

    vals = [N(u) for u in grid]
    for u, v in zip(grid, vals):
        if v != v or v < 0.0:
            out.append(Violation("range", u, f"N({u:g}) = {v!r}"))

    for (a, va), (b, vb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if math.isinf(va) or math.isinf(vb):
            continue
        if vb <= va:
            out.append(
                Violation("monotonicity", b, f"N({b:g}) = {vb:g} <= N({a:g}) = {va:g}")
            )
        mid = 0.5 * (a + b)
        vm = N(mid)
        if vm > 0.5 * (va + vb) * (1.0 + 1e-12):
            out.append(
                Violation(
                    "convexity",
                    mid,
                    f"N(mid) = {vm:g} exceeds chord value {(0.5 * (va + vb)):g}",
                )
            )

    # N(u)/u must shrink toward 0 and grow toward infinity across the grid
    finite = [(u, v) for u, v in zip(grid, vals) if math.isfinite(v) and v > 0.0]
    if len(finite) >= 3:
        r0 = finite[0][1] / finite[0][0]
        r1 = finite[1][1] / finite[1][0]
        if r0 > r1 * (1.0 + 1e-9):
            out.append(
                Violation(
                    "small_limit",
                    finite[0][0],
                    f"N(u)/u = {r0:g} grows toward 0 (next ratio {r1:g})",
                )
            )
        rn = finite[-1][1] / finite[-1][0]
        rp = finite[-2][1] / finite[-2][0]
        if rn < rp * (1.0 - 1e-9):
            out.append(
                Violation(
                    "large_limit",
                    finite[-1][0],
                    f"N(u)/u = {rn:g} shrinks toward infinity (previous {rp:g})",
                )
            )

    for e in range(-4, 5):
        w = 10.0 ** e
        u = N.inverse(w)
        back = N(u)
        if not math.isfinite(back) or abs(back - w) > 1e-10 * w:
            out.append(Violation("inverse", w, f"N(N^-1({w:g})) = {back!r}"))

    u_probe = 1.2345
    if N(-u_probe) != N(u_probe):
        out.append(Violation("evenness", u_probe, "N(-u) != N(u)"))

    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class Delta2Estimate:
    supremum: float
    unbounded: bool


def delta2_estimate(
    N: YoungFunction, u_range: Optional[List[float]] = None
) -> Delta2Estimate:
    """Estimate sup N(2u)/N(u); flag growth without bound.

    The flag fires when the ratio increases monotonically across the top
    two decades of the range (or N(2u) overflows while N(u) is finite).
    """
    if u_range is None:
        u_range = _log_grid(1e-4, 1e6, 201)
    u_range = sorted(u for u in u_range if u > 0.0)
    if not u_range:
        raise ValueError("u_range must contain positive points")
    sup = 0.0
    ratios: List[Tuple[float, float]] = []
    for u in u_range:
        nu = N(u)
        if nu <= 0.0 or not math.isfinite(nu):
            continue
        n2 = N(2.0 * u)
        if math.isinf(n2):
            return Delta2Estimate(math.inf, True)
        r = n2 / nu
        ratios.append((u, r))
        if r > sup:
            sup = r
    if not ratios:
        raise ValueError("could not evaluate N on the supplied range")
    top = ratios[-1][0]
    tail = [r for u, r in ratios if u >= top / 100.0]
    unbounded = len(tail) >= 3 and all(
        b > a * (1.0 + 1e-12) for a, b in zip(tail, tail[1:])
    )
    return Delta2Estimate(sup, unbounded)
