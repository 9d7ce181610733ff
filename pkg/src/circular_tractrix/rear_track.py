"""Rear track of a unit-length bicycle whose front wheel follows a directrix.

With rod ``u = c - x`` held at unit length, the rear wheel moves along the
rod with the projected front velocity::

    dx/dt = <c - x, c'> (c - x)

Integration is classical RK4 followed by projection of ``x`` back onto the
unit sphere around ``c(t)``; the projection distance is logged per step.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np
from scipy.interpolate import CubicSpline

from .tractrix import (
    CUSP_TOL, TractrixParams, asymptotic_circle, directrix_point, directrix_velocity, eval_curve,
    eval_xi, position,
)


class RodConstraintError(ValueError):
    """The rear point is not at unit distance from the front point."""


@dataclass(frozen=True)
class Directrix:
    """Front-wheel path: ``evaluate(t) -> (point, velocity)``."""
    evaluate: Callable[[float], tuple[np.ndarray, np.ndarray]]
    arc_length: bool = True
    name: str = "directrix"

    def __call__(self, t: float):
        return self.evaluate(t)


def circle_directrix(R: float) -> Directrix:
    """The circle of radius R in the plane x3 = 0, parametrized by arc length."""
    if not R > 0:
        raise ValueError("radius must be positive")

    def ev(t):
        c, s = math.cos(t / R), math.sin(t / R)
        return np.array([R * c, R * s, 0.0]), np.array([-s, c, 0.0])
    return Directrix(ev, True, f"circle R={R!r}")


def line_directrix(origin=(0.0, 0.0, 0.0), direction=(0.0, 1.0, 0.0)) -> Directrix:
    o = np.asarray(origin, float)
    d = np.asarray(direction, float)
    d = d / np.linalg.norm(d)
    return Directrix(lambda t: (o + t * d, d.copy()), True, "line")


def polyline_directrix(t, points, arc_length: bool = False) -> Directrix:
    """Cubic-spline interpolation through sampled directrix points."""
    t = np.asarray(t, float)
    pts = np.asarray(points, float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(t) != len(pts):
        raise ValueError("need matching t values and (n, 3) points")
    spline = CubicSpline(t, pts, axis=0)
    deriv = spline.derivative()
    return Directrix(lambda s: (spline(s), deriv(s)), arc_length, "polyline")


def load_directrix_csv(path: str | Path, arc_length: bool = False) -> Directrix:
    """Read ``t, x, y, z`` rows (an optional header line is skipped)."""
    rows = []
    with open(path, newline="") as fh:
        lines = [r for r in csv.reader(fh) if r and not r[0].strip().startswith("#")]
    for i, row in enumerate(lines):
        try:
            rows.append([float(v) for v in row[:4]])
        except ValueError:
            if i > 0:
                raise ValueError(f"{path}: bad row {row!r}") from None
    if len(rows) < 4:
        raise ValueError(f"{path}: need at least 4 samples")
    data = np.array(rows)
    return polyline_directrix(data[:, 0], data[:, 1:4], arc_length)


@dataclass
class RearTrackState:
    t: float
    x: np.ndarray


def _velocity(d: Directrix, t: float, x: np.ndarray) -> np.ndarray:
    c, dc = d(t)
    u = c - x
    return np.dot(u, dc) * u


def rear_track_ode(d: Directrix, state: RearTrackState, rod_tol: float = 1e-6) -> np.ndarray:
    c, _ = d(state.t)
    rod = np.linalg.norm(c - state.x)
    if abs(rod - 1.0) > rod_tol:
        raise RodConstraintError(f"rod length {rod!r} at t={state.t!r}")
    return _velocity(d, state.t, np.asarray(state.x, float))


@dataclass
class RearTrack:
    t: np.ndarray
    x: np.ndarray
    renormalization: np.ndarray     # |rod| - 1 before projection, per step
    cusp_crossings: list = field(default_factory=list)

    @property
    def states(self) -> list[RearTrackState]:
        return [RearTrackState(float(t), x) for t, x in zip(self.t, self.x)]

    def __iter__(self) -> Iterator[RearTrackState]:
        return iter(self.states)

    def __len__(self) -> int:
        return len(self.t)

    @property
    def max_drift(self) -> float:
        return float(np.max(np.abs(self.renormalization))) if len(self.renormalization) else 0.0


def integrate(d: Directrix, x0, t0: float, t1: float, h: float = 1e-3,
              rod_tol: float = 1e-9) -> RearTrack:
    """Fixed-step RK4 with per-step projection onto the rod constraint.

    Steps where the rod's along-track speed changes sign are the cusps of the
    rear track; they are integrated through and listed in ``cusp_crossings``.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    x = np.asarray(x0, float).copy()
    c, dc = d(t0)
    rod = np.linalg.norm(c - x)
    if abs(rod - 1.0) > rod_tol:
        raise RodConstraintError(f"initial rod length {rod!r} differs from 1")
    n = max(1, int(math.ceil(abs(t1 - t0) / h - 1e-9)))
    step = (t1 - t0) / n
    ts = t0 + step * np.arange(n + 1)
    xs = np.empty((n + 1, 3))
    xs[0] = x
    drift = np.empty(n)
    crossings = []
    along = np.dot(c - x, dc)
    for i in range(n):
        t = ts[i]
        k1 = _velocity(d, t, x)
        k2 = _velocity(d, t + step / 2, x + step / 2 * k1)
        k3 = _velocity(d, t + step / 2, x + step / 2 * k2)
        k4 = _velocity(d, t + step, x + step * k3)
        x = x + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        c, dc = d(ts[i + 1])
        u = c - x
        rod = np.linalg.norm(u)
        drift[i] = rod - 1.0
        x = c - u / rod
        xs[i + 1] = x
        new_along = np.dot(c - x, dc)
        if along != 0 and new_along != 0 and (along > 0) != (new_along > 0):
            crossings.append(float(t + step * along / (along - new_along)))
        along = new_along
    return RearTrack(ts, xs, drift, crossings)


def residual_of_closed_form(p: TractrixParams, window: tuple[float, float], n: int = 1000) -> float:
    """Max over samples of |f' - <c - f, c'> (c - f)| for the closed form."""
    t = np.linspace(window[0], window[1], n)
    s = eval_curve(p, t)
    u = directrix_point(p, t) - s.f
    rhs = np.einsum("...i,...i->...", u, directrix_velocity(p, t))[..., None] * u
    return float(np.max(np.linalg.norm(s.d1 - rhs, axis=-1)))


def asymptotic_circle_residual(p: TractrixParams, window: tuple[float, float],
                               n: int = 1000) -> float:
    """ODE residual of the exceptional solutions f+ and f- (R > 1), with exact derivatives."""
    t = np.linspace(window[0], window[1], n)
    R, lam = p.R, p.lam
    rho = math.sqrt(R * R - 1.0)
    c, s = np.cos(t / R), np.sin(t / R)
    worst = 0.0
    for sign in (1, -1):
        f = asymptotic_circle(p, t, sign)
        df = lam / R * np.stack([-rho * s + sign * c, rho * c + sign * s, np.zeros_like(t)], axis=-1)
        u = directrix_point(p, t) - f
        rhs = np.einsum("...i,...i->...", u, directrix_velocity(p, t))[..., None] * u
        worst = max(worst, float(np.max(np.linalg.norm(df - rhs, axis=-1))))
    return worst


def compare_with_closed_form(p: TractrixParams, t0: float, t1: float, h: float = 1e-3):
    """Integrate from the closed-form point at ``t0``; return (track, sup-norm gap)."""
    if abs(eval_xi(p, t0)[1]) < CUSP_TOL:
        raise ValueError("refusing to start the comparison exactly at a cusp")
    track = integrate(circle_directrix(p.R), position(p, t0), t0, t1, h)
    gap = float(np.max(np.linalg.norm(track.x - position(p, track.t), axis=-1)))
    return track, gap
