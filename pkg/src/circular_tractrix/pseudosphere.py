"""Circular pseudospheres: the surfaces swept by one-parameter families of circular tractrices.

The surface coordinates are ``(t, alpha)``; ``alpha`` runs over the
constraint curve of the family constants (circle angle for R > 1, rational
parameter for R = 1, hyperbolic angle for R < 1 with a branch sign on c1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import jets
from .frenet import frame_from_derivatives
from .jets import Jet
from .tractrix import (
    CUSP_TOL, Regime, SingularEvaluationError, TractrixParams, regime_lambda,
    rotate_xi, singular_parameters, xi_components,
)


@dataclass(frozen=True)
class SurfacePatch:
    R: float
    branch: int = 1
    t_range: Optional[tuple[float, float]] = None
    alpha_range: Optional[tuple[float, float]] = None

    def __post_init__(self):
        regime = Regime.from_radius(self.R)
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        if self.t_range is None:
            if regime is Regime.SUBCRITICAL:
                t_range = (0.0, math.pi / regime_lambda(self.R))
            else:
                t_range = (-math.inf, math.inf)
            object.__setattr__(self, "t_range", t_range)
        if self.alpha_range is None:
            if regime is Regime.SUPERCRITICAL:
                alpha_range = (0.0, 2.0 * math.pi)
            else:
                alpha_range = (-math.inf, math.inf)
            object.__setattr__(self, "alpha_range", alpha_range)

    @property
    def regime(self) -> Regime:
        return Regime.from_radius(self.R)

    @property
    def lam(self) -> float:
        return regime_lambda(self.R)

    def constants(self, alpha):
        """(c1, c2) along the family; ``alpha`` may be a jet."""
        regime = self.regime
        if regime is Regime.SUPERCRITICAL:
            s, c = jets.sincos(alpha)
            return c, s
        if regime is Regime.CRITICAL:
            return 1.0 + alpha * alpha, 2.0 * alpha
        s, c = jets.sinhcosh(alpha)
        return self.branch * c, s

    def curve(self, alpha: float) -> TractrixParams:
        c1, c2 = self.constants(float(alpha))
        return TractrixParams(self.R, float(c1), float(c2))


def _position_jets(s: SurfacePatch, t, alpha):
    c1, c2 = s.constants(alpha)
    xi = xi_components(s.R, t, c1, c2)
    return xi, rotate_xi(s.R, t, xi)


@dataclass(frozen=True)
class SurfaceSample:
    f: np.ndarray
    f_t: np.ndarray
    f_a: np.ndarray
    xi: np.ndarray
    f_tt: Optional[np.ndarray] = None
    f_ta: Optional[np.ndarray] = None
    f_aa: Optional[np.ndarray] = None

    @property
    def normal(self) -> np.ndarray:
        n = np.cross(self.f_t, self.f_a)
        return n / np.linalg.norm(n, axis=-1, keepdims=True)


def surface_point(s: SurfacePatch, t, alpha, second: bool = False) -> SurfaceSample:
    """Position and exact partials; with ``second=True`` also the Hessian blocks."""
    t, alpha = np.broadcast_arrays(np.asarray(t, float), np.asarray(alpha, float))
    order = 2 if second else 1
    xi, f_tdir = _position_jets(s, Jet.variable(t, order), alpha)
    _, f_adir = _position_jets(s, t, Jet.variable(alpha, order))
    out = dict(
        f=jets.derivatives(f_tdir, 0),
        f_t=jets.derivatives(f_tdir, 1),
        f_a=jets.derivatives(f_adir, 1),
        xi=np.stack(np.broadcast_arrays(*(x.value for x in xi)), axis=-1),
    )
    if second:
        # mixed partial by polarization along the diagonal direction (1, 1)
        _, f_diag = _position_jets(s, Jet.variable(t, 2), Jet.variable(alpha, 2))
        f_tt = jets.derivatives(f_tdir, 2)
        f_aa = jets.derivatives(f_adir, 2)
        out.update(f_tt=f_tt, f_aa=f_aa,
                   f_ta=0.5 * (jets.derivatives(f_diag, 2) - f_tt - f_aa))
    return SurfaceSample(**out)


class MetricTensor(NamedTuple):
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray


def _metric_jets(s: SurfacePatch, t, alpha):
    """(E, G) of the closed-form first fundamental form; F vanishes identically."""
    R, lam = s.R, s.lam
    regime = s.regime
    if regime is Regime.SUPERCRITICAL:
        sh, ch = jets.sinhcosh(lam * t)
        den = jets.cos(alpha) + R * ch
        q = (R * R - 1.0) / (den * den)
        return q * sh * sh, q
    if regime is Regime.CRITICAL:
        den = 1.0 + alpha * alpha + t * t
        q = 4.0 / (den * den)
        return q * t * t, q
    sn, _ = jets.sincos(lam * t)
    den = s.branch * jets.cosh(alpha) + R * jets.cos(lam * t)
    q = (1.0 - R * R) / (den * den)
    return q * sn * sn, q


def metric_analytic(s: SurfacePatch, t, alpha) -> MetricTensor:
    t, alpha = np.broadcast_arrays(np.asarray(t, float), np.asarray(alpha, float))
    E, G = _metric_jets(s, t, alpha)
    return MetricTensor(E, np.zeros_like(E), G)


def metric_numeric(s: SurfacePatch, t, alpha) -> MetricTensor:
    """First fundamental form from dot products of the exact partials."""
    p = surface_point(s, t, alpha)
    dot = lambda a, b: np.einsum("...i,...i->...", a, b)
    return MetricTensor(dot(p.f_t, p.f_t), dot(p.f_t, p.f_a), dot(p.f_a, p.f_a))


def area_density(s: SurfacePatch, t, alpha) -> np.ndarray:
    """sqrt(det g) from the closed-form metric."""
    E, F, G = metric_analytic(s, t, alpha)
    return np.sqrt(np.maximum(E * G - F * F, 0.0))


def coordinate_circle_radius(s: SurfacePatch, t):
    t = np.asarray(t, float)
    R, lam = s.R, s.lam
    if s.regime is Regime.SUPERCRITICAL:
        return math.sqrt(R * R - 1.0) / np.sqrt(R * R * np.cosh(lam * t) ** 2 - 1.0)
    if s.regime is Regime.CRITICAL:
        return 1.0 / np.sqrt(t * t + 1.0)
    return math.sqrt(1.0 - R * R) / np.sqrt(1.0 - R * R * np.cos(lam * t) ** 2)


class CircleCheck(NamedTuple):
    radius_numeric: float
    radius_spread: float
    torsion_max: float


def _alpha_samples(s: SurfacePatch, n: int) -> np.ndarray:
    if s.regime is Regime.SUPERCRITICAL:
        return np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    return np.linspace(-3.0, 3.0, n)


def coordinate_circle_check(s: SurfacePatch, t: float, n: int = 64) -> CircleCheck:
    """Curvature and torsion of the t = const curve over a sweep of alpha.

    A circle has constant curvature and zero torsion; the returned radius is
    the mean of 1/curvature and the spread is its max deviation from that mean.
    """
    alpha = _alpha_samples(s, n)
    tt = np.full_like(alpha, float(t))
    _, f = _position_jets(s, tt, Jet.variable(alpha, 3))
    _, _, _, kappa, tau = frame_from_derivatives(*(jets.derivatives(f, k) for k in (1, 2, 3)))
    if np.any(~np.isfinite(kappa)) or np.any(kappa <= 0):
        raise SingularEvaluationError(f"the coordinate curve t={t} degenerates")
    radius = 1.0 / kappa
    mean = float(np.mean(radius))
    return CircleCheck(mean, float(np.max(np.abs(radius - mean))), float(np.max(np.abs(tau))))


def gauss_curvature(s: SurfacePatch, t, alpha):
    """Intrinsic Gauss curvature of the orthogonal metric E dt^2 + G dalpha^2.

    K = -1/(2W) [ (E_a / W)_a + (G_t / W)_t ],  W = sqrt(E G).
    """
    t, alpha = np.broadcast_arrays(np.asarray(t, float), np.asarray(alpha, float))
    Ea, Ga = _metric_jets(s, t, Jet.variable(alpha, 2))
    Et, Gt = _metric_jets(s, Jet.variable(t, 2), alpha)
    E, G = Ea.value, Ga.value
    if np.any(E <= 0):
        raise SingularEvaluationError("Gauss curvature is undefined on a cuspidal edge (E = 0)")
    W = np.sqrt(E * G)
    E_a, E_aa, G_a = Ea.derivative(1), Ea.derivative(2), Ga.derivative(1)
    G_t, G_tt, E_t = Gt.derivative(1), Gt.derivative(2), Et.derivative(1)
    W_a = (E_a * G + E * G_a) / (2.0 * W)
    W_t = (E_t * G + E * G_t) / (2.0 * W)
    term_a = E_aa / W - E_a * W_a / W ** 2
    term_t = G_tt / W - G_t * W_t / W ** 2
    return -(term_a + term_t) / (2.0 * W)


def gauss_curvature_extrinsic(s: SurfacePatch, t, alpha):
    """(LN - M^2)/(EG - F^2) from the second fundamental form; an independent route."""
    p = surface_point(s, t, alpha, second=True)
    n = p.normal
    dot = lambda a, b: np.einsum("...i,...i->...", a, b)
    E, F, G = dot(p.f_t, p.f_t), dot(p.f_t, p.f_a), dot(p.f_a, p.f_a)
    L, M, N = dot(p.f_tt, n), dot(p.f_ta, n), dot(p.f_aa, n)
    return (L * N - M * M) / (E * G - F * F)


def curvature_line_probe(s: SurfacePatch, t, alpha):
    """Off-diagonal coefficients (F, M) of both fundamental forms.

    Both vanish exactly when the coordinate lines are lines of curvature.
    """
    p = surface_point(s, t, alpha, second=True)
    if np.any(np.abs(p.xi[..., 1]) < CUSP_TOL):
        raise SingularEvaluationError("normal undefined on a cuspidal edge")
    F = np.einsum("...i,...i->...", p.f_t, p.f_a)
    M = np.einsum("...i,...i->...", p.f_ta, p.normal)
    return F, M


def surface_tracing_residual(s: SurfacePatch, t, alpha):
    p = surface_point(s, t, alpha)
    xi2 = p.xi[..., 1]
    if np.any(np.abs(xi2) < CUSP_TOL):
        raise SingularEvaluationError("tracing residual is undefined on a cuspidal edge")
    t = np.broadcast_to(np.asarray(t, float), xi2.shape)
    R = s.R
    c = np.stack([R * np.cos(t / R), R * np.sin(t / R), np.zeros_like(t)], axis=-1)
    return np.linalg.norm(p.f + p.f_t / xi2[..., None] - c, axis=-1)


def cuspidal_edges(s: SurfacePatch, window: tuple[float, float]) -> list[float]:
    """t-values of the singular coordinate circles inside ``window``."""
    return singular_parameters(s.curve(0.0), window)
