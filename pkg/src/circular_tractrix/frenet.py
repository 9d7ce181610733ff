"""Frenet apparatus of circular tractrices and of generic space curves."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tractrix import (
    Regime, SingularEvaluationError, TractrixParams, eval_curve,
    singular_parameters,
)

REGULAR_TOL = 1e-10
CURVATURE_TOL = 1e-12
PLANAR_TOL = 1e-12


class VanishingCurvatureError(ValueError):
    pass


@dataclass(frozen=True)
class FrenetData:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    t: np.ndarray


def frame_from_derivatives(d1, d2, d3):
    """Frenet frame, curvature and torsion from the first three derivatives.

    Works for any regular parametrization; the arguments have a trailing
    axis of length 3.
    """
    d1, d2, d3 = (np.asarray(d, dtype=float) for d in (d1, d2, d3))
    speed = np.linalg.norm(d1, axis=-1)
    cross = np.cross(d1, d2)
    cross_norm = np.linalg.norm(cross, axis=-1)
    kappa = cross_norm / speed ** 3
    tau = np.einsum("...i,...i->...", cross, d3) / cross_norm ** 2
    T = d1 / speed[..., None]
    B = cross / cross_norm[..., None]
    N = np.cross(B, T)
    return T, N, B, kappa, tau


def frenet(p: TractrixParams, t) -> FrenetData:
    s = eval_curve(p, t)
    if np.any(np.abs(s.xi[..., 1]) < REGULAR_TOL):
        raise SingularEvaluationError("Frenet data is undefined at a cusp")
    T, N, B, kappa, tau = frame_from_derivatives(s.d1, s.d2, s.d3)
    if np.any(kappa < CURVATURE_TOL):
        raise VanishingCurvatureError("curvature vanishes; normal and torsion undefined")
    return FrenetData(T, N, B, kappa, tau, s.t)


def is_planar(p: TractrixParams) -> bool:
    """Decided from the constants: the planar members have c2 = 0 and c1 = ±1."""
    if abs(p.c2) > PLANAR_TOL:
        return False
    if p.regime is Regime.CRITICAL:
        return abs(p.c1 - 1.0) <= PLANAR_TOL
    return abs(abs(p.c1) - 1.0) <= PLANAR_TOL


def torsion_profile(p: TractrixParams, window: tuple[float, float], n: int,
                    margin: float = 1e-3):
    """Torsion at ``n`` equally spaced samples of a window free of cusps."""
    a, b = window
    if n < 1:
        raise ValueError("n must be positive")
    if singular_parameters(p, (a - margin, b + margin)):
        raise SingularEvaluationError(f"window {window!r} contains or touches a cusp")
    t = np.linspace(a, b, n)
    return list(zip(t.tolist(), frenet(p, t).tau.tolist()))


def asymptotic_curvature(p: TractrixParams) -> float:
    """Curvature of the asymptotic circle (R > 1)."""
    if p.regime is not Regime.SUPERCRITICAL:
        raise ValueError("asymptotic circle exists only for R > 1")
    return 1.0 / math.sqrt(p.R ** 2 - 1.0)
