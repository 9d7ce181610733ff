import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from circular_tractrix.frenet import (
    VanishingCurvatureError, asymptotic_curvature, frame_from_derivatives, frenet, is_planar,
    torsion_profile,
)
from circular_tractrix.tractrix import (
    SingularEvaluationError, TractrixParams, make_params,
)

SPATIAL = TractrixParams(2.0, 0.6, 0.8)


def _oracle_frame(p, t):
    d = [np.array(oracle.curve_derivative(p.R, p.c1, p.c2, t, k)) for k in (1, 2, 3)]
    c = np.cross(d[0], d[1])
    return np.linalg.norm(c) / np.linalg.norm(d[0]) ** 3, np.dot(c, d[2]) / np.dot(c, c)


@pytest.mark.parametrize("p", [SPATIAL, TractrixParams(1.0, 2.0, 2.0),
                               TractrixParams(0.6, -math.cosh(1.0), math.sinh(1.0))])
def test_curvature_and_torsion_match_oracle(p):
    for t in (-2.2, 0.7, 1.3):
        kappa, tau = _oracle_frame(p, t)
        fd = frenet(p, t)
        assert fd.kappa == pytest.approx(kappa, rel=1e-10)
        assert fd.tau == pytest.approx(tau, rel=1e-10)


def test_reference_torsion_value():
    fd = frenet(SPATIAL, 1.0)
    assert fd.tau == pytest.approx(-0.5441687748446863, rel=1e-12)
    assert fd.kappa == pytest.approx(1.7380078812734523, rel=1e-12)


def test_helix_frame():
    # circular helix (cos s, sin s, s): kappa = tau = 1/2
    s = np.linspace(0, 3, 5)
    d1 = np.stack([-np.sin(s), np.cos(s), np.ones_like(s)], -1)
    d2 = np.stack([-np.cos(s), -np.sin(s), np.zeros_like(s)], -1)
    d3 = np.stack([np.sin(s), -np.cos(s), np.zeros_like(s)], -1)
    T, N, B, kappa, tau = frame_from_derivatives(d1, d2, d3)
    np.testing.assert_allclose(kappa, 0.5)
    np.testing.assert_allclose(tau, 0.5)
    np.testing.assert_allclose(np.cross(T, N), B, atol=1e-15)


@given(t=st.floats(0.05, 8.0))
@settings(max_examples=40)
def test_torsion_is_odd_and_curvature_even(t):
    a, b = frenet(SPATIAL, t), frenet(SPATIAL, -t)
    assert b.tau == pytest.approx(-a.tau, rel=1e-10, abs=1e-14)
    assert b.kappa == pytest.approx(a.kappa, rel=1e-10)


def test_frame_is_orthonormal():
    fd = frenet(SPATIAL, np.linspace(0.1, 9, 50))
    for u, v in ((fd.T, fd.N), (fd.T, fd.B), (fd.N, fd.B)):
        assert np.max(np.abs(np.sum(u * v, axis=-1))) < 1e-12
    for u in (fd.T, fd.N, fd.B):
        np.testing.assert_allclose(np.linalg.norm(u, axis=-1), 1.0, atol=1e-13)


def test_frenet_refuses_cusp():
    with pytest.raises(SingularEvaluationError):
        frenet(SPATIAL, 0.0)


def test_vanishing_curvature_error_type():
    assert issubclass(VanishingCurvatureError, ValueError)


@pytest.mark.parametrize("p, planar", [
    (TractrixParams(2.0, 1.0, 0.0), True),
    (TractrixParams(2.0, -1.0, 0.0), True),
    (TractrixParams(1.0, 1.0, 0.0), True),
    (TractrixParams(0.6, 1.0, 0.0), True),
    (TractrixParams(0.6, -1.0, 0.0), True),
    (SPATIAL, False),
    (TractrixParams(1.0, 2.0, 2.0), False),
    (make_params(0.6, 0.5), False),
])
def test_torsion_dichotomy(p, planar):
    assert is_planar(p) is planar
    if p.regime.value == "subcritical":
        step = math.pi / p.lam
        t = np.concatenate([np.linspace(k * step + 1e-2, (k + 1) * step - 1e-2, 80) for k in (-2, -1, 0, 1)])
    else:
        t = np.concatenate([np.linspace(-10, -1e-2, 150), np.linspace(1e-2, 10, 150)])
    tau = np.abs(frenet(p, t).tau)
    if planar:
        assert tau.max() <= 1e-10
    else:
        assert tau.min() > 1e-6


def test_torsion_profile_requires_regular_window():
    prof = torsion_profile(SPATIAL, (0.5, 2.0), 4)
    assert len(prof) == 4 and prof[0][0] == 0.5
    with pytest.raises(SingularEvaluationError):
        torsion_profile(SPATIAL, (-1.0, 1.0), 4)


def test_curvature_approaches_asymptotic_circle():
    assert frenet(SPATIAL, 25.0).kappa == pytest.approx(asymptotic_curvature(SPATIAL), abs=1e-8)
    assert asymptotic_curvature(SPATIAL) == pytest.approx(1 / math.sqrt(3))
