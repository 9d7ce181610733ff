"""Arc lengths, surface areas and multiplicity-counted enclosed volumes.

Infinite parameter domains are handled in one of two ways, recorded on the
returned :class:`QuadratureResult`:

* exponentially decaying ends (t for R > 1, alpha for R < 1) are cut at a
  point where an explicit upper bound on the discarded tail is below
  ``tail_fraction * tol``; the bound is added to the error estimate;
* algebraically decaying ends (R = 1) are compactified with ``x = tan(u)``,
  which leaves a bounded integrand on a finite rectangle and no tail.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .adaptive import QuadratureError, QuadratureResult, adaptive_1d, adaptive_2d
from .pseudosphere import SurfacePatch, area_density, surface_point
from .tractrix import (
    Regime, TractrixParams, UnsupportedRegimeError, eval_curve, singular_parameters,
)

FOUR_PI = 4.0 * math.pi
TWO_PI_OVER_3 = 2.0 * math.pi / 3.0

PartialsFn = Callable[[np.ndarray, np.ndarray], tuple]


def unit_area_closed_form(R: float) -> float:
    """Area of one component of a unit of the R < 1 pseudosphere."""
    a = math.sqrt((1.0 + R) / (1.0 - R))
    return 4.0 * (math.atan(a) - math.atan(1.0 / a))


def _raise_unless(result: QuadratureResult, what: str) -> QuadratureResult:
    if not result.converged:
        raise QuadratureError(
            f"{what}: no convergence within the evaluation budget "
            f"(error estimate {result.error_estimate:.3e})", result)
    return result


def arc_length(p: TractrixParams, interval: tuple[float, float], tol: float = 1e-10,
               max_evals: int = 500_000) -> QuadratureResult:
    """Integral of the speed |f'| over ``interval``, split at the cusps."""
    a, b = interval
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("arc length needs a finite interval")
    lo, hi = min(a, b), max(a, b)
    cusps = singular_parameters(p, (lo, hi)) if hi > lo else []
    res = adaptive_1d(lambda t: eval_curve(p, t).speed, a, b, tol,
                      max_evals=max_evals, breakpoints=cusps)
    return _raise_unless(res, "arc length")


# -- generic surface pipeline -------------------------------------------------

def _area_integrand(partials: PartialsFn):
    def g(t, a):
        f, ft, fa = partials(t, a)
        return np.linalg.norm(np.cross(ft, fa), axis=-1)
    return g


def _flux_integrand(partials: PartialsFn):
    def g(t, a):
        f, ft, fa = partials(t, a)
        return np.einsum("...i,...i->...", f, np.cross(ft, fa)) / 3.0
    return g


def parametric_area(partials: PartialsFn, t_range, a_range, tol: float,
                    t_breaks: Sequence[float] = ()) -> QuadratureResult:
    """Area of a finite parametric patch from |f_t x f_a|."""
    return adaptive_2d(_area_integrand(partials), t_range, a_range, tol, x_breaks=t_breaks)


def parametric_flux_volume(partials: PartialsFn, t_range, a_range, tol: float,
                           t_breaks: Sequence[float] = ()) -> QuadratureResult:
    """Signed (1/3) flux of the position field through a finite parametric patch."""
    return adaptive_2d(_flux_integrand(partials), t_range, a_range, tol, x_breaks=t_breaks)


# -- domain handling ------------------------------------------------------------

def _cut_point(bound: Callable[[float], float], budget: float, start: float = 1.0) -> float:
    """Smallest x on a doubling-then-bisection grid with bound(x) <= budget."""
    hi = start
    while not bound(hi) <= budget:
        hi *= 2.0
        if hi > 1e6:
            raise ValueError("tail bound does not decay")
    lo = 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if bound(mid) <= budget:
            hi = mid
        else:
            lo = mid
    return hi


def _tail_integral_sech2(A: float, R: float) -> float:
    # int_A^inf d(alpha) / (cosh(alpha) - R)^2, bounded via cosh - R >= cosh (1 - R/cosh A)
    shrink = 1.0 - R / math.cosh(A)
    if shrink <= 0:
        return math.inf
    return (1.0 - math.tanh(A)) / shrink ** 2


def _supercritical_tail(s: SurfacePatch, kind: str, a_len: float) -> Callable[[float], float]:
    R, lam = s.R, s.lam
    rho = math.sqrt(R * R - 1.0)

    def area_tail(T):
        den = R * math.cosh(lam * T) - 1.0
        return 2.0 * a_len * rho / den if den > 0 else math.inf

    def volume_tail(T):
        # |f| <= R + 1, |f_t| <= lam / (1 - 1/(R cosh lam T)), |f_a| <= rho / (R cosh lam t - 1)
        ch = math.cosh(lam * T)
        kappa = 1.0 - 2.0 / (R * math.exp(lam * T))
        if R * ch <= 1.0 or kappa <= 0:
            return math.inf
        ft_max = lam / (1.0 - 1.0 / (R * ch))
        integral = 2.0 * math.exp(-lam * T) / (R * lam * kappa)
        return 2.0 * (R + 1.0) * ft_max * rho * a_len * integral / 3.0

    return area_tail if kind == "area" else volume_tail


def _subcritical_tail(s: SurfacePatch, kind: str, t_len: float) -> Callable[[float], float]:
    R, lam = s.R, s.lam

    def area_tail(A):
        return 2.0 * (1.0 - R * R) * t_len * _tail_integral_sech2(A, R)

    def volume_tail(A):
        # |f| <= R + 1, |f_t| <= lam R / (cosh a - R), |f_a| <= sqrt(1 - R^2) / (cosh a - R)
        return 2.0 * (R + 1.0) * lam * R * math.sqrt(1.0 - R * R) * t_len \
            * _tail_integral_sech2(A, R) / 3.0

    return area_tail if kind == "area" else volume_tail


def _tan_mapped(g):
    def h(u, v):
        return g(np.tan(u), np.tan(v)) / (np.cos(u) ** 2 * np.cos(v) ** 2)
    return h


def _surface_integral(s: SurfacePatch, integrand, kind: str, tol: float,
                      tail_fraction: float, max_evals: int) -> QuadratureResult:
    (t0, t1), (a0, a1) = s.t_range, s.alpha_range
    regime = s.regime
    tail_budget = tail_fraction * tol
    truncation = "none"
    tail = 0.0

    if regime is Regime.CRITICAL and not all(map(math.isfinite, (t0, t1, a0, a1))):
        if all(map(math.isfinite, (t0, t1))) or all(map(math.isfinite, (a0, a1))):
            raise ValueError("R = 1 patches must be either finite or infinite in both coordinates")
        g = _tan_mapped(integrand)
        t_rng, a_rng = (math.atan(t0), math.atan(t1)), (math.atan(a0), math.atan(a1))
        res = adaptive_2d(g, t_rng, a_rng, tol, max_evals=max_evals,
                          x_breaks=[0.0] if t_rng[0] < 0 < t_rng[1] else [])
        res.truncation = "compactified: t = tan(u), alpha = tan(v)"
        return res

    if regime is Regime.SUPERCRITICAL and not (math.isfinite(t0) and math.isfinite(t1)):
        if not (math.isfinite(a0) and math.isfinite(a1)):
            raise ValueError("alpha range must be finite for R > 1")
        ends = (not math.isfinite(t0)) + (not math.isfinite(t1))
        one_end = _supercritical_tail(s, kind, a1 - a0)
        bound = lambda T: ends * one_end(T) / 2.0
        T = _cut_point(bound, tail_budget, start=1.0 / s.lam)
        tail = bound(T)
        t0, t1 = (max(t0, -T), min(t1, T))
        truncation = f"t cut at |t| = {T!r} (tail bound {tail:.3e})"
    elif regime is Regime.SUBCRITICAL and not (math.isfinite(a0) and math.isfinite(a1)):
        if not (math.isfinite(t0) and math.isfinite(t1)):
            raise ValueError("t range must be finite for R < 1")
        ends = (not math.isfinite(a0)) + (not math.isfinite(a1))
        one_end = _subcritical_tail(s, kind, t1 - t0)
        bound = lambda A: ends * one_end(A) / 2.0
        A = _cut_point(bound, tail_budget, start=1.0)
        tail = bound(A)
        a0, a1 = (max(a0, -A), min(a1, A))
        truncation = f"alpha cut at |alpha| = {A!r} (tail bound {tail:.3e})"

    breaks = singular_parameters(s.curve(0.0), (t0, t1))
    res = adaptive_2d(integrand, (t0, t1), (a0, a1), tol - tail,
                      max_evals=max_evals, x_breaks=breaks)
    res.truncation = truncation
    res.truncation_bound = tail
    res.error_estimate += tail
    res.converged = res.converged and res.error_estimate <= tol
    return res


def _partials(s: SurfacePatch) -> PartialsFn:
    def fn(t, a):
        p = surface_point(s, t, a)
        return p.f, p.f_t, p.f_a
    return fn


def surface_area(s: SurfacePatch, tol: float = 1e-6, density: str = "metric",
                 tail_fraction: float = 0.01, max_evals: int = 4_000_000) -> QuadratureResult:
    """Area of a patch; the default patch is the complete surface (R >= 1) or one unit component (R < 1).

    ``density="metric"`` integrates sqrt(det g) of the closed-form metric,
    ``density="partials"`` uses |f_t x f_a| from the exact partials.
    """
    if tol < 1e-12:
        raise ValueError("tolerance below attainable accuracy")
    if density == "metric":
        integrand = lambda t, a: area_density(s, t, a)
    elif density == "partials":
        integrand = _area_integrand(_partials(s))
    else:
        raise ValueError(f"unknown density {density!r}")
    res = _surface_integral(s, integrand, "area", tol, tail_fraction, max_evals)
    if s == SurfacePatch(s.R, s.branch):
        res.target = FOUR_PI if s.regime is not Regime.SUBCRITICAL else unit_area_closed_form(s.R)
    return _raise_unless(res, "surface area")


def enclosed_volume(s: SurfacePatch, tol: float = 1e-6, tail_fraction: float = 0.01,
                    max_evals: int = 4_000_000) -> QuadratureResult:
    """Volume counted with multiplicity, as |(1/3) flux of x| over the closed immersed surface.

    The two mirror halves t < 0 and t > 0 are integrated separately and their
    signed fluxes are reported in ``parts``.  For R < 1 the flux through the
    default patch (one unit component) is returned with no target.
    """
    integrand = _flux_integrand(_partials(s))
    if s.regime is Regime.SUBCRITICAL:
        res = _surface_integral(s, integrand, "volume", tol, tail_fraction, max_evals)
        res.parts = {"signed_flux": res.value}
        res.value = abs(res.value)
        return _raise_unless(res, "enclosed volume")
    t0, t1 = s.t_range
    halves = []
    for lo, hi in ((t0, min(t1, 0.0)), (max(t0, 0.0), t1)):
        if hi > lo:
            half = SurfacePatch(s.R, s.branch, (lo, hi), s.alpha_range)
            halves.append(_surface_integral(half, integrand, "volume", tol / 2,
                                            tail_fraction, max_evals // 2))
    signed = math.fsum(h.value for h in halves)
    res = QuadratureResult(
        value=abs(signed),
        error_estimate=math.fsum(h.error_estimate for h in halves),
        evaluations=sum(h.evaluations for h in halves),
        converged=all(h.converged for h in halves),
        truncation="; ".join(dict.fromkeys(h.truncation for h in halves)),
        truncation_bound=math.fsum(h.truncation_bound for h in halves),
        parts={"signed_t_negative": halves[0].value, "signed_t_positive": halves[-1].value}
        if len(halves) == 2 else {"signed": signed},
    )
    if s == SurfacePatch(s.R, s.branch):
        res.target = TWO_PI_OVER_3
    return _raise_unless(res, "enclosed volume")


def area_r_independence(R_list: Sequence[float], tol: float = 1e-6) -> list[tuple[float, float]]:
    """Complete area for each radius R >= 1."""
    out = []
    for R in R_list:
        if R < 1:
            raise UnsupportedRegimeError("complete area is finite and R-independent only for R >= 1")
        out.append((R, surface_area(SurfacePatch(R), tol).value))
    return out
