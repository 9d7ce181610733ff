"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible even
under output capture) before asserting, so a run of this module doubles as
the acceptance report.
"""
import math
import time

import numpy as np
import pytest

from circular_tractrix.frenet import frenet, is_planar
from circular_tractrix.pseudosphere import (
    SurfacePatch, curvature_line_probe, gauss_curvature, metric_analytic, metric_numeric,
    surface_tracing_residual,
)
from circular_tractrix.quadrature import arc_length, enclosed_volume, surface_area
from circular_tractrix.rear_track import circle_directrix, compare_with_closed_form, integrate
from circular_tractrix.tractrix import (
    TractrixParams, asymptotic_circle, directrix_point, eval_curve, linear_tractrix_point,
    make_params, params_from_nu, period_data, position, tracing_residual,
)
from circular_tractrix.verify import regular_samples

FOUR_PI = 4 * math.pi
REGIMES = {
    "supercritical": TractrixParams(2.0, 0.6, 0.8),
    "critical": TractrixParams(1.0, 2.0, 2.0),
    "subcritical": TractrixParams(0.6, -math.cosh(1.0), math.sinh(1.0)),
}


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def test_01_area_is_four_pi(report):
    start = time.perf_counter()
    errs = {R: abs(surface_area(SurfacePatch(R), tol=1e-5).value - FOUR_PI) for R in (1.25, 2.0, 3.5, 1.0)}
    elapsed = time.perf_counter() - start
    worst = max(errs.values())
    report(1, worst <= 1e-4 and elapsed <= 60, f"max |area - 4pi| = {worst:.2e}, {elapsed:.2f} s")


def test_02_volume_is_two_thirds_pi(report):
    start = time.perf_counter()
    errs = {R: abs(enclosed_volume(SurfacePatch(R), tol=1e-4).value - 2 * math.pi / 3)
            for R in (1.25, 2.0, 3.5, 1.0)}
    elapsed = time.perf_counter() - start
    worst = max(errs.values())
    report(2, worst <= 1e-3 and elapsed <= 120, f"max |vol - 2pi/3| = {worst:.2e}, {elapsed:.2f} s")


def test_03_subcritical_unit_area(report):
    def closed(R):
        return 4 * (math.atan(math.sqrt((1 + R) / (1 - R))) - math.atan(math.sqrt((1 - R) / (1 + R))))
    errs = [abs(surface_area(SurfacePatch(R), tol=1e-8).value - closed(R)) for R in (0.3, 0.6, 0.9)]
    ref = abs(closed(0.6) - 2.574005)
    report(3, max(errs) <= 1e-6 and ref < 1e-6, f"max error {max(errs):.2e}, R=0.6 value {closed(0.6):.6f}")


def test_04_unit_length(report):
    rng = np.random.default_rng(4)
    errs = []
    for _ in range(10):
        R = rng.uniform(0.1, 0.95)
        c1 = rng.choice([-1, 1]) * rng.uniform(1.0, 4.0)
        p = TractrixParams(R, c1, math.sqrt(c1 * c1 - 1))
        want = math.copysign(1, c1) * math.log(abs((c1 + R) / (c1 - R)))
        errs.append(abs(arc_length(p, (0.0, math.pi / p.lam), tol=1e-11).value - want))
    p = TractrixParams(0.6, 1.0, 0.0)
    ln4 = abs(arc_length(p, (0.0, math.pi / p.lam), tol=1e-11).value - math.log(4))
    report(4, max(errs) <= 1e-8 and ln4 <= 1e-8, f"max error {max(errs):.2e}, (0.6, 1) vs ln 4: {ln4:.2e}")


def test_05_tracing_relation(report):
    worst = 0.0
    rng = np.random.default_rng(5)
    for p in REGIMES.values():
        t = regular_samples(p, 1000, rng)
        worst = max(worst, float(np.max(tracing_residual(p, t))))
        s = SurfacePatch(p.R)
        alpha = rng.uniform(0, 2 * math.pi, 1000) if p.R > 1 else rng.uniform(-3, 3, 1000)
        worst = max(worst, float(np.max(surface_tracing_residual(s, t, alpha))))
    report(5, worst <= 1e-9, f"max residual {worst:.2e}")


def test_06_speed_and_unit_segment(report):
    rng = np.random.default_rng(6)
    speed_err = seg_err = 0.0
    for p in REGIMES.values():
        t = regular_samples(p, 1000, rng, margin=0.0)
        s = eval_curve(p, t)
        speed_err = max(speed_err, float(np.max(np.abs(s.speed - np.abs(s.xi[:, 1])))))
        seg = np.linalg.norm(s.f - directrix_point(p, t), axis=-1)
        seg_err = max(seg_err, float(np.max(np.abs(seg - 1))))
    report(6, speed_err <= 1e-10 and seg_err <= 1e-10, f"speed {speed_err:.2e}, segment {seg_err:.2e}")


def test_07_asymptotic_bounds(report):
    rng = np.random.default_rng(7)
    p = REGIMES["supercritical"]
    t = rng.uniform(-25, 25, 100)
    gap_p = np.linalg.norm(position(p, t) - asymptotic_circle(p, t, +1), axis=-1)
    gap_m = np.linalg.norm(position(p, t) - asymptotic_circle(p, t, -1), axis=-1)
    lam = p.lam
    pos, neg = t > 0, t < 0
    ok_super = np.all(gap_p[pos] < 2 * np.exp(-lam * t[pos])) and np.all(gap_m[neg] < 2 * np.exp(lam * t[neg]))
    q = REGIMES["critical"]
    tc = rng.uniform(0.01, 50, 100) * rng.choice([-1, 1], 100)
    ok_crit = np.all(np.linalg.norm(position(q, tc), axis=-1) < 2 / np.abs(tc))
    report(7, bool(ok_super and ok_crit), f"supercritical strict: {ok_super}, critical strict: {ok_crit}")


def test_08_rear_track_oracle(report):
    gaps = {}
    for name, t0 in (("supercritical", 0.5), ("critical", 0.5), ("subcritical", 0.3)):
        track, gaps[name] = compare_with_closed_form(REGIMES[name], t0, t0 + 5.0, h=1e-3)
    p = REGIMES["supercritical"]
    drifts = [integrate(circle_directrix(2.0), position(p, 0.5), 0.5, 5.5, h).max_drift
              for h in (0.1, 0.05, 0.025)]
    ratios = [drifts[0] / drifts[1], drifts[1] / drifts[2]]
    worst = max(gaps.values())
    report(8, worst <= 1e-6 and min(ratios) >= 15,
           f"max gap {worst:.2e}, drift reduction per halving {ratios[0]:.1f} and {ratios[1]:.1f}")


def test_09_torsion_dichotomy(report):
    planar = [TractrixParams(2.0, 1.0, 0.0), TractrixParams(1.0, 1.0, 0.0), TractrixParams(0.6, 1.0, 0.0),
              TractrixParams(0.6, -1.0, 0.0)]
    spatial = list(REGIMES.values()) + [make_params(3.5, 2.0), make_params(0.3, 0.4)]

    def samples(p):
        if p.R < 1:
            step = math.pi / p.lam
            return np.concatenate([np.linspace(k * step + 1e-2, (k + 1) * step - 1e-2, 200) for k in (-2, -1, 0, 1)])
        return np.concatenate([np.linspace(-10, -1e-2, 400), np.linspace(1e-2, 10, 400)])

    flat = max(float(np.max(np.abs(frenet(p, samples(p)).tau))) for p in planar)
    twist = min(float(np.min(np.abs(frenet(p, samples(p)).tau))) for p in spatial)
    flags = all(is_planar(p) for p in planar) and not any(is_planar(p) for p in spatial)
    report(9, flat <= 1e-10 and twist > 1e-6 and flags, f"planar max |tau| {flat:.2e}, spatial min |tau| {twist:.2e}")


def test_10_closedness_and_petals(report):
    a = period_data(params_from_nu(3, 4), (3, 4))
    b = period_data(params_from_nu(4, 5), (4, 5))
    c = period_data(params_from_nu(3, 4))
    ok = (a.closed, a.petals, a.windings) == (True, 3, 4) and (b.closed, b.petals, b.windings) == (True, 4, 5) \
        and not c.closed
    report(10, ok, f"3/4 -> {a.petals} petals/{a.windings} windings, 4/5 -> {b.petals}/{b.windings}, "
                   f"no rational -> closed={c.closed}")


def test_11_metric_oracle(report):
    rng = np.random.default_rng(11)
    metric_err = ratio_err = 0.0
    for R in (2.0, 1.0, 0.6):
        s = SurfacePatch(R)
        t = regular_samples(make_params(R, 0.0), 500, rng)
        a1, a2 = rng.uniform(-3, 3, 500), rng.uniform(-3, 3, 500)
        metric_err = max(metric_err, float(np.max(np.abs(np.stack(metric_analytic(s, t, a1))
                                                         - np.stack(metric_numeric(s, t, a1))))))
        E1, _, G1 = metric_numeric(s, t, a1)
        E2, _, G2 = metric_numeric(s, t, a2)
        ratio_err = max(ratio_err, float(np.max(np.abs(E1 / G1 - E2 / G2) / np.maximum(1, E1 / G1))))
    report(11, metric_err <= 1e-9 and ratio_err <= 1e-10, f"metric {metric_err:.2e}, E/G spread {ratio_err:.2e}")


def test_12_remark_probes(report):
    rng = np.random.default_rng(12)
    probe = 0.0
    for R in (2.0, 1.0, 0.6):
        s = SurfacePatch(R)
        t = regular_samples(make_params(R, 0.0), 500, rng)
        F, M = curvature_line_probe(s, t, rng.uniform(-3, 3, 500))
        probe = max(probe, float(np.max(np.abs(F))), float(np.max(np.abs(M))))
    s = SurfacePatch(2.0)
    pairs = [((1.0, 0.0), (2.0, 0.0)), ((0.5, 1.0), (0.5, 2.5)), ((3.0, 0.3), (1.5, 4.0))]
    diffs = [abs(gauss_curvature(s, *p) - gauss_curvature(s, *q)) for p, q in pairs]
    K_far = gauss_curvature(SurfacePatch(1000.0), np.array([0.5, 1.0, 2.0]), np.array([0.2, 1.7, 4.0]))
    limit = float(np.max(np.abs(K_far + 1)))
    report(12, probe <= 1e-9 and min(diffs) > 1e-4 and limit <= 1e-2,
           f"curvature-line residual {probe:.2e}, min |dK| {min(diffs):.2e}, |K + 1| at R=1000 {limit:.2e}")


def test_13_linear_tractrix_limit(report):
    ok = True
    worst_last = 0.0
    for selector in (0.3, 2.0):
        for t in (0.5, 1.0, 2.0):
            limit = linear_tractrix_point(selector, t)
            gaps = [float(np.linalg.norm(position(make_params(R, selector), t) - [R, 0, 0] - limit))
                    for R in (10, 100, 1000)]
            ok &= gaps[0] > gaps[1] > gaps[2]
            worst_last = max(worst_last, gaps[2])
    report(13, ok, f"gaps strictly decreasing; largest gap at R=1000 {worst_last:.2e}")
