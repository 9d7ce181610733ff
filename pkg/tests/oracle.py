"""Independent high-precision reference implementation.

Written directly from the closed forms with mpmath at 40 digits; derivatives
come from mpmath's numerical differentiation, so nothing here shares code
with the jet arithmetic of the package.
"""
import mpmath as mp

mp.mp.dps = 40


def xi(R, c1, c2, t):
    R, c1, c2, t = (mp.mpf(v) for v in (R, c1, c2, t))
    if R > 1:
        lam = mp.sqrt(R ** 2 - 1) / R
        den = c1 / R + mp.cosh(lam * t)
        return ((R - 1 / R) * mp.cosh(lam * t) / den, lam * mp.sinh(lam * t) / den, lam * c2 / den)
    if R == 1:
        den = c1 + t ** 2
        return (2 / den, 2 * t / den, c2 / den)
    lam = mp.sqrt(1 - R ** 2) / R
    den = c1 / R + mp.cos(lam * t)
    return ((R - 1 / R) * mp.cos(lam * t) / den, -lam * mp.sin(lam * t) / den, lam * c2 / den)


def position(R, c1, c2, t):
    x1, x2, x3 = xi(R, c1, c2, t)
    t = mp.mpf(t)
    co, si = mp.cos(t / R), mp.sin(t / R)
    return [x1 * co + x2 * si, -x2 * co + x1 * si, x3]


def curve_derivative(R, c1, c2, t, k):
    return [float(mp.diff(lambda s, i=i: position(R, c1, c2, s)[i], mp.mpf(t), k)) for i in range(3)]


def _surface_constants(R, alpha, branch=1):
    a = mp.mpf(alpha)
    if R > 1:
        return mp.cos(a), mp.sin(a)
    if R == 1:
        return 1 + a ** 2, 2 * a
    return branch * mp.cosh(a), mp.sinh(a)


def surface_position(R, t, alpha, branch=1):
    c1, c2 = _surface_constants(R, alpha, branch)
    return position(R, c1, c2, t)


def _partial(R, t, alpha, nt, na, branch=1):
    return [mp.diff(lambda u, v, i=i: surface_position(R, u, v, branch)[i],
                    (mp.mpf(t), mp.mpf(alpha)), (nt, na)) for i in range(3)]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def metric(R, t, alpha, branch=1):
    ft, fa = _partial(R, t, alpha, 1, 0, branch), _partial(R, t, alpha, 0, 1, branch)
    return float(_dot(ft, ft)), float(_dot(ft, fa)), float(_dot(fa, fa))


def gauss_curvature(R, t, alpha, branch=1):
    """Extrinsic (LN - M^2) / (EG - F^2) from high-precision partials."""
    ft, fa = _partial(R, t, alpha, 1, 0, branch), _partial(R, t, alpha, 0, 1, branch)
    n = _cross(ft, fa)
    nn = mp.sqrt(_dot(n, n))
    n = [v / nn for v in n]
    L = _dot(_partial(R, t, alpha, 2, 0, branch), n)
    M = _dot(_partial(R, t, alpha, 1, 1, branch), n)
    N = _dot(_partial(R, t, alpha, 0, 2, branch), n)
    E, F, G = _dot(ft, ft), _dot(ft, fa), _dot(fa, fa)
    return float((L * N - M ** 2) / (E * G - F ** 2))


def arc_length(R, c1, c2, a, b):
    speed = lambda s: mp.norm(mp.matrix([mp.diff(lambda u, i=i: position(R, c1, c2, u)[i], s)
                                         for i in range(3)]))
    return float(mp.quad(speed, [a, b]))
