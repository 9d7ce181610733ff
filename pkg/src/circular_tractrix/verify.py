"""Invariant suite for one circular tractrix and the pseudosphere it belongs to."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .frenet import frame_from_derivatives, is_planar
from .pseudosphere import (
    SurfacePatch, coordinate_circle_check, curvature_line_probe, metric_analytic,
    metric_numeric, surface_tracing_residual,
)
from .rear_track import residual_of_closed_form
from .tractrix import (
    Regime, TractrixParams, asymptotic_bound_check, directrix_point, eval_curve, eval_xi,
    period_data, position, rotate_z, singular_parameters,
)


@dataclass(frozen=True)
class Check:
    check: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _check(name, values, tol, lower=False) -> Check:
    values = np.atleast_1d(np.asarray(values, float))
    if lower:
        worst = float(np.min(values))
        ok = bool(worst > tol)
    else:
        worst = float(np.max(values))
        ok = bool(worst <= tol)
    return Check(name, int(values.size), worst, tol, ok)


def _window(p: TractrixParams) -> tuple[float, float]:
    if p.regime is Regime.SUBCRITICAL:
        T = 2.0 * math.pi / p.lam
        return (-2.0 * T, 2.0 * T)
    return (-10.0, 10.0)


def regular_samples(p: TractrixParams, n: int, rng, margin: float = 1e-3) -> np.ndarray:
    """``n`` random parameters in the default window with |xi2| >= margin."""
    lo, hi = _window(p)
    out = np.empty(0)
    while out.size < n:
        t = rng.uniform(lo, hi, 2 * n)
        t = t[np.abs(eval_xi(p, t)[:, 1]) >= margin]
        out = np.concatenate([out, t])
    return out[:n]


def surface_for(p: TractrixParams) -> SurfacePatch:
    branch = 1 if p.c1 > 0 or p.regime is not Regime.SUBCRITICAL else -1
    return SurfacePatch(p.R, branch)


def run_suite(p: TractrixParams, n: int = 1000, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    t = regular_samples(p, n, rng)
    s = eval_curve(p, t)
    checks = [Check("constraint", 1, p.residual, 1e-12, p.residual <= 1e-12)]

    xi2 = s.xi[:, 1]
    checks.append(_check("speed_identity", np.abs(s.speed - np.abs(xi2)), 1e-10))
    c = directrix_point(p, t)
    checks.append(_check("unit_segment", np.abs(np.linalg.norm(s.f - c, axis=-1) - 1.0), 1e-10))
    tip = s.f + s.d1 / xi2[:, None]
    checks.append(_check("tracing_relation", np.linalg.norm(tip - c, axis=-1), 1e-9))

    fm = position(p, -t)
    mirror = np.abs(fm * np.array([1.0, -1.0, 1.0]) - s.f)
    checks.append(_check("mirror_symmetry", mirror.max(axis=-1), 1e-12))

    if p.regime is Regime.SUBCRITICAL:
        pd = period_data(p)
        shifted = position(p, t + pd.T)
        checks.append(_check("periodicity", np.linalg.norm(shifted - rotate_z(s.f, pd.phi), axis=-1), 1e-10))
    else:
        gap, bound = asymptotic_bound_check(p, t[t != 0])
        checks.append(_check("asymptotic_bound_ratio", gap / bound, 1.0 - 1e-15))

    h = 1e-6
    far = t[np.abs(xi2) > 1e-2]
    sp, sm = eval_curve(p, far + h), eval_curve(p, far - h)
    here = eval_curve(p, far)
    fd_errs = []
    for exact, fd in ((here.d1, (sp.f - sm.f) / (2 * h)),
                      (here.d2, (sp.d1 - sm.d1) / (2 * h)),
                      (here.d3, (sp.d2 - sm.d2) / (2 * h))):
        scale = np.maximum(np.linalg.norm(exact, axis=-1, keepdims=True), 1.0)
        fd_errs.append(np.max(np.abs(exact - fd) / scale, axis=-1))
    checks.append(_check("derivatives_vs_finite_differences", np.max(fd_errs, axis=0), 1e-6))

    T, N, B, kappa, tau = frame_from_derivatives(here.d1, here.d2, here.d3)
    dot = lambda a, b: np.einsum("...i,...i->...", a, b)
    ortho = np.max(np.abs(np.stack([
        dot(T, N), dot(T, B), dot(N, B), dot(T, T) - 1, dot(N, N) - 1, dot(B, B) - 1,
        np.linalg.norm(B - np.cross(T, N), axis=-1)])), axis=0)
    checks.append(_check("frenet_orthonormality", ortho, 1e-10))
    if is_planar(p):
        checks.append(_check("torsion_planar", np.abs(tau), 1e-10))
    else:
        checks.append(_check("torsion_nonvanishing", np.abs(tau), 1e-6, lower=True))

    checks.append(_check("rear_track_ode_residual",
                         residual_of_closed_form(p, _window(p), n), 1e-9))

    surf = surface_for(p)
    if p.regime is Regime.SUPERCRITICAL:
        alpha = rng.uniform(0.0, 2.0 * math.pi, t.size)
    else:
        alpha = rng.uniform(-3.0, 3.0, t.size)
    A, Nm = metric_analytic(surf, t, alpha), metric_numeric(surf, t, alpha)
    checks.append(_check("metric_oracle", np.max(np.abs(np.stack(A) - np.stack(Nm)), axis=0), 1e-9))
    alpha2 = np.roll(alpha, 1)
    E1, _, G1 = metric_numeric(surf, t, alpha)
    E2, _, G2 = metric_numeric(surf, t, alpha2)
    checks.append(_check("isothermic_ratio", np.abs(E1 / G1 - E2 / G2) / np.maximum(1.0, E1 / G1), 1e-10))
    F, M = curvature_line_probe(surf, t, alpha)
    checks.append(_check("curvature_lines", np.maximum(np.abs(F), np.abs(M)), 1e-9))
    checks.append(_check("surface_tracing", surface_tracing_residual(surf, t, alpha), 1e-9))
    edges = singular_parameters(p, _window(p))
    radii = [abs(coordinate_circle_check(surf, te).radius_numeric - 1.0) for te in edges]
    checks.append(_check("cuspidal_edges_unit", radii, 1e-10))
    return checks
