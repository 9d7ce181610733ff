"""Closed-form circular tractrices in the three radius regimes.

Every evaluator accepts scalar or array parameters ``t``; vector-valued
results carry a trailing axis of length 3.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import jets
from .jets import Jet

CONSTRAINT_TOL = 1e-12
DENOMINATOR_TOL = 1e-14
CUSP_TOL = 1e-12


class SingularEvaluationError(ValueError):
    """Raised when a formula would divide by a vanishing quantity."""


class UnsupportedRegimeError(ValueError):
    pass


class Regime(enum.Enum):
    SUPERCRITICAL = "supercritical"
    CRITICAL = "critical"
    SUBCRITICAL = "subcritical"

    @classmethod
    def from_radius(cls, R: float) -> "Regime":
        if not (np.isfinite(R) and R > 0):
            raise ValueError(f"directrix radius must be a positive finite number, got {R!r}")
        if R > 1:
            return cls.SUPERCRITICAL
        if R == 1:
            return cls.CRITICAL
        return cls.SUBCRITICAL


def regime_lambda(R: float) -> float:
    regime = Regime.from_radius(R)
    if regime is Regime.SUPERCRITICAL:
        return math.sqrt(R * R - 1.0) / R
    if regime is Regime.SUBCRITICAL:
        return math.sqrt(1.0 - R * R) / R
    return 0.0


def constraint_residual(regime: Regime, c1, c2):
    """Residual of the family constraint on (c1, c2), relative to the size of the constants."""
    if regime is Regime.SUPERCRITICAL:
        res = c1 * c1 + c2 * c2 - 1.0
    elif regime is Regime.CRITICAL:
        res = 4.0 * (c1 - 1.0) - c2 * c2
    else:
        res = c1 * c1 - c2 * c2 - 1.0
    return np.abs(res) / np.maximum(1.0, c1 * c1 + c2 * c2)


@dataclass(frozen=True)
class TractrixParams:
    R: float
    c1: float
    c2: float

    def __post_init__(self):
        if not (math.isfinite(self.c1) and math.isfinite(self.c2)):
            raise ValueError("family constants must be finite")
        res = constraint_residual(self.regime, self.c1, self.c2)
        if res > CONSTRAINT_TOL:
            raise ValueError(
                f"constants (c1={self.c1!r}, c2={self.c2!r}) violate the "
                f"{self.regime.value} constraint (residual {res:.3e})")

    @property
    def regime(self) -> Regime:
        return Regime.from_radius(self.R)

    @property
    def lam(self) -> float:
        return regime_lambda(self.R)

    @property
    def residual(self) -> float:
        return float(constraint_residual(self.regime, self.c1, self.c2))


def make_params(R: float, selector: float, branch: int = 1) -> TractrixParams:
    """Build parameters from a point on the regime's constraint curve.

    ``selector`` is the angle (R > 1), the rational parameter (R = 1) or the
    hyperbolic angle (R < 1).  ``branch`` picks the sign of ``c1`` for R < 1.
    """
    regime = Regime.from_radius(R)
    if not math.isfinite(selector):
        raise ValueError(f"selector must be finite, got {selector!r}")
    if regime is Regime.SUPERCRITICAL:
        c1, c2 = math.cos(selector), math.sin(selector)
    elif regime is Regime.CRITICAL:
        c1, c2 = 1.0 + selector * selector, 2.0 * selector
    else:
        if branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        c1, c2 = branch * math.cosh(selector), math.sinh(selector)
    return TractrixParams(float(R), c1, c2)


# -- closed forms -----------------------------------------------------------

def _check_denominator(den) -> None:
    value = den.value if isinstance(den, Jet) else den
    if np.any(np.abs(value) < DENOMINATOR_TOL):
        raise SingularEvaluationError("denominator of the closed form vanishes")


def xi_components(R: float, t, c1, c2):
    """(xi1, xi2, xi3) for scalar/array/jet arguments; c1, c2 may be jets too."""
    regime = Regime.from_radius(R)
    if regime is Regime.SUPERCRITICAL:
        lam = regime_lambda(R)
        sh, ch = jets.sinhcosh(lam * t)
        den = c1 / R + ch
        _check_denominator(den)
        return (R - 1.0 / R) * ch / den, lam * sh / den, lam * c2 / den
    if regime is Regime.CRITICAL:
        den = c1 + t * t
        _check_denominator(den)
        return 2.0 / den, 2.0 * t / den, c2 / den
    lam = regime_lambda(R)
    s, c = jets.sincos(lam * t)
    den = c1 / R + c
    _check_denominator(den)
    return (R - 1.0 / R) * c / den, -lam * s / den, lam * c2 / den


def rotate_xi(R: float, t, xi):
    """Assemble the position vector from the xi-triple via the rotation by t/R."""
    s, c = jets.sincos(t / R)
    x1 = xi[0] * c + xi[1] * s
    x2 = -xi[1] * c + xi[0] * s
    return x1, x2, xi[2]


def eval_xi(p: TractrixParams, t) -> np.ndarray:
    xi = xi_components(p.R, np.asarray(t, dtype=float), p.c1, p.c2)
    return np.stack(np.broadcast_arrays(*xi), axis=-1)


def position(p: TractrixParams, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    f = rotate_xi(p.R, t, xi_components(p.R, t, p.c1, p.c2))
    return np.stack(np.broadcast_arrays(*f), axis=-1)


@dataclass(frozen=True)
class CurveSample:
    t: np.ndarray
    xi: np.ndarray
    f: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray

    @property
    def speed(self) -> np.ndarray:
        return np.linalg.norm(self.d1, axis=-1)


def eval_curve(p: TractrixParams, t) -> CurveSample:
    """Position and exact derivatives up to third order."""
    t = np.asarray(t, dtype=float)
    tj = Jet.variable(t, order=3)
    xi = xi_components(p.R, tj, p.c1, p.c2)
    f = rotate_xi(p.R, tj, xi)
    return CurveSample(
        t=t,
        xi=np.stack([x.value for x in xi], axis=-1),
        f=jets.derivatives(f, 0),
        d1=jets.derivatives(f, 1),
        d2=jets.derivatives(f, 2),
        d3=jets.derivatives(f, 3),
    )


def directrix_point(p: TractrixParams, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    R = p.R
    return np.stack([R * np.cos(t / R), R * np.sin(t / R), np.zeros_like(t)], axis=-1)


def directrix_velocity(p: TractrixParams, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    R = p.R
    return np.stack([-np.sin(t / R), np.cos(t / R), np.zeros_like(t)], axis=-1)


def tracing_residual(p: TractrixParams, t):
    """Distance between the tip of the unit tangent segment and the directrix.

    Raises :class:`SingularEvaluationError` at a cusp, where the segment
    direction is not defined.
    """
    s = eval_curve(p, t)
    xi2 = s.xi[..., 1]
    if np.any(np.abs(xi2) < CUSP_TOL):
        raise SingularEvaluationError("tracing residual is undefined at a cusp")
    tip = s.f + s.d1 / xi2[..., None]
    return np.linalg.norm(tip - directrix_point(p, t), axis=-1)


def singular_parameters(p: TractrixParams, window: tuple[float, float]) -> list[float]:
    a, b = window
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise ValueError(f"bad window {window!r}")
    if p.regime is Regime.SUBCRITICAL:
        step = math.pi / p.lam
        out = [n * step for n in range(math.ceil(a / step), math.floor(b / step) + 1)]
    else:
        out = [0.0] if a <= 0.0 <= b else []
    if out:
        ts = np.array(out)
        xi2 = eval_xi(p, ts)[:, 1]
        # rounding of sin(lam t) near n*pi grows with |t|
        if np.any(np.abs(xi2) > CUSP_TOL * np.maximum(1.0, np.abs(ts))):
            raise ArithmeticError("closed-form cusp set failed its post-check")
    return out


# -- asymptotics ------------------------------------------------------------

def asymptotic_circle(p: TractrixParams, t, sign: int = 1) -> np.ndarray:
    """The parametrizations f+ (sign=+1) and f- (sign=-1) of the asymptotic circle (R > 1)."""
    if p.regime is not Regime.SUPERCRITICAL:
        raise UnsupportedRegimeError("the asymptotic circle exists only for R > 1")
    t = np.asarray(t, dtype=float)
    lam, R = p.lam, p.R
    rho = math.sqrt(R * R - 1.0)
    c, s = np.cos(t / R), np.sin(t / R)
    return lam * np.stack([rho * c + sign * s, rho * s - sign * c, np.zeros_like(t)], axis=-1)


@dataclass(frozen=True)
class AsymptoticTarget:
    kind: str                      # "circle" | "point" | "point_pair"
    radius: float = 0.0
    points: tuple = ()
    f_plus: Optional[Callable] = None
    f_minus: Optional[Callable] = None


def asymptotic_target(p: TractrixParams) -> AsymptoticTarget:
    if p.regime is Regime.SUPERCRITICAL:
        return AsymptoticTarget(
            "circle", radius=math.sqrt(p.R ** 2 - 1.0),
            f_plus=lambda t: asymptotic_circle(p, t, +1),
            f_minus=lambda t: asymptotic_circle(p, t, -1))
    if p.regime is Regime.CRITICAL:
        return AsymptoticTarget("point", points=((0.0, 0.0, 0.0),))
    h = math.sqrt(1.0 - p.R ** 2)
    return AsymptoticTarget("point_pair", points=((0.0, 0.0, -h), (0.0, 0.0, h)))


def asymptotic_bound_check(p: TractrixParams, t):
    """Return ``(gap, bound)``; the curve stays strictly inside the bound."""
    t = np.asarray(t, dtype=float)
    if p.regime is Regime.SUBCRITICAL:
        raise UnsupportedRegimeError("no asymptotic bound for R < 1")
    f = position(p, t)
    if p.regime is Regime.CRITICAL:
        if np.any(t == 0):
            raise ValueError("the R = 1 bound is stated for t != 0")
        return np.linalg.norm(f, axis=-1), 2.0 / np.abs(t)
    lam = p.lam
    ref = np.where((t >= 0)[..., None], asymptotic_circle(p, t, +1), asymptotic_circle(p, t, -1))
    return np.linalg.norm(f - ref, axis=-1), 2.0 * np.exp(-lam * np.abs(t))


# -- R < 1 structure ----------------------------------------------------------

def unit_length(p: TractrixParams) -> float:
    """Arc length between consecutive cusps (R < 1)."""
    if p.regime is not Regime.SUBCRITICAL:
        raise UnsupportedRegimeError("units exist only for R < 1")
    c1, R = p.c1, p.R
    return math.copysign(1.0, c1) * math.log(abs((c1 + R) / (c1 - R)))


@dataclass(frozen=True)
class PeriodData:
    """Shifting t by ``T`` rotates the curve counter-clockwise by ``phi`` about the x3-axis."""
    T: float
    phi: float
    closed: bool
    petals: Optional[int] = None
    windings: Optional[int] = None


def period_data(p: TractrixParams, nu_rational: Optional[tuple[int, int]] = None) -> PeriodData:
    """Period in t, rotation angle per period, and (given an exact ν = p/q) the closing counts.

    Closedness is only asserted when the caller supplies √(1 - R²) as a
    fraction; a float alone cannot certify rationality.
    """
    if p.regime is not Regime.SUBCRITICAL:
        raise UnsupportedRegimeError("periodicity is defined only for R < 1")
    nu = math.sqrt(1.0 - p.R ** 2)
    T = 2.0 * math.pi / p.lam
    phi = 2.0 * math.pi / nu
    if nu_rational is None:
        return PeriodData(T, phi, False)
    num, den = nu_rational
    if not (isinstance(num, int) and isinstance(den, int)) or num <= 0 or den <= 0:
        raise ValueError(f"nu must be a pair of positive integers, got {nu_rational!r}")
    if math.gcd(num, den) != 1:
        raise ValueError(f"nu = {num}/{den} is not in lowest terms")
    if abs(num / den - nu) > 1e-12:
        raise ValueError(f"nu = {num}/{den} does not match sqrt(1 - R^2) = {nu!r}")
    # n * phi = 2 pi n den / num lies in 2 pi Z iff num divides n
    return PeriodData(T, phi, True, petals=num, windings=den)


def rotate_z(points, angle: float) -> np.ndarray:
    """Rotate points counter-clockwise about the x3-axis."""
    points = np.asarray(points, dtype=float)
    c, s = math.cos(angle), math.sin(angle)
    x, y = points[..., 0], points[..., 1]
    return np.stack([c * x - s * y, s * x + c * y, points[..., 2]], axis=-1)


def params_from_nu(num: int, den: int, selector: float = 0.0, branch: int = 1) -> TractrixParams:
    """Parameters whose √(1 - R²) equals num/den."""
    if not 0 < num < den:
        raise ValueError("need 0 < num/den < 1")
    nu = Fraction(num, den)
    return make_params(math.sqrt(float(1 - nu * nu)), selector, branch)


def suggest_rational(R: float, max_denominator: int = 1000) -> Fraction:
    """Best rational approximation of √(1 - R²); a hint only, never proof of closedness."""
    return Fraction(math.sqrt(1.0 - R * R)).limit_denominator(max_denominator)


# -- R -> infinity ------------------------------------------------------------

def linear_tractrix_point(selector: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    c1, c2 = math.cos(selector), math.sin(selector)
    sech = 1.0 / np.cosh(t)
    return np.stack([-c1 * sech, t - np.tanh(t), c2 * sech], axis=-1)


def linear_tractrix_limit(selector: float, t: float, R_sequence: Sequence[float]):
    """Shifted circular tractrix points against the linear tractrix, for growing R.

    Returns ``[(shifted, limit, gap), ...]`` in the order of ``R_sequence``.
    """
    Rs = list(R_sequence)
    if any(R <= 1 for R in Rs):
        raise ValueError("all radii must exceed 1")
    if any(b <= a for a, b in zip(Rs, Rs[1:])):
        raise ValueError("radii must be strictly increasing")
    limit = linear_tractrix_point(selector, t)
    out = []
    for R in Rs:
        f = position(make_params(R, selector), t)
        shifted = f - np.array([R, 0.0, 0.0])
        out.append((shifted, limit, float(np.linalg.norm(shifted - limit))))
    return out
