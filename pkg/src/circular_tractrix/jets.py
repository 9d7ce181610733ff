"""Truncated Taylor series ("jets") for exact forward-mode derivatives.

A :class:`Jet` of order ``n`` stores the normalized Taylor coefficients
``c[k] = f^(k)(x0) / k!`` for ``k = 0..n``.  Coefficient arrays carry a
leading axis of length ``n + 1``; any trailing shape broadcasts, so a whole
grid of parameter values is differentiated in one pass.
"""
from __future__ import annotations

from math import factorial

import numpy as np


class Jet:
    __slots__ = ("c",)
    __array_ufunc__ = None  # make numpy defer to the reflected operators

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def variable(cls, x, order: int = 3) -> "Jet":
        x = np.asarray(x, dtype=float)
        c = np.zeros((order + 1,) + x.shape)
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, x, order: int = 3) -> "Jet":
        x = np.asarray(x, dtype=float)
        c = np.zeros((order + 1,) + x.shape)
        c[0] = x
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.c[0]

    def derivative(self, k: int) -> np.ndarray:
        """k-th derivative at the expansion point."""
        return factorial(k) * self.c[k]

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __neg__(self):
        return Jet(-self.c)

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.c + other.c)
        other = np.asarray(other, dtype=float)
        shape = np.broadcast_shapes(self.c.shape[1:], other.shape)
        c = np.broadcast_to(self.c, self.c.shape[:1] + shape).copy()
        c[0] += other
        return Jet(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * np.asarray(other, dtype=float))
        a, b = self.c, other.c
        n = a.shape[0]
        out = [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n)]
        return Jet(np.stack(np.broadcast_arrays(*out)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / np.asarray(other, dtype=float))
        a, b = self.c, other.c
        q = []
        for k in range(a.shape[0]):
            acc = a[k] - sum(b[j] * q[k - j] for j in range(1, k + 1))
            q.append(acc / b[0])
        return Jet(np.stack(np.broadcast_arrays(*q)))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, p: int):
        if not isinstance(p, int) or p < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = Jet.constant(np.ones_like(self.c[0]), self.order)
        for _ in range(p):
            out = out * self
        return out


def _trig_pair(u: Jet, hyperbolic: bool):
    # s' = u' c, c' = -u' s (circular) or +u' s (hyperbolic)
    sign = 1.0 if hyperbolic else -1.0
    if hyperbolic:
        s = [np.sinh(u.c[0])]
        c = [np.cosh(u.c[0])]
    else:
        s = [np.sin(u.c[0])]
        c = [np.cos(u.c[0])]
    for k in range(1, u.c.shape[0]):
        sk = sum(j * u.c[j] * c[k - j] for j in range(1, k + 1)) / k
        ck = sign * sum(j * u.c[j] * s[k - j] for j in range(1, k + 1)) / k
        s.append(sk)
        c.append(ck)
    return (Jet(np.stack(np.broadcast_arrays(*s))),
            Jet(np.stack(np.broadcast_arrays(*c))))


def sin(u):
    return _trig_pair(u, False)[0] if isinstance(u, Jet) else np.sin(u)


def cos(u):
    return _trig_pair(u, False)[1] if isinstance(u, Jet) else np.cos(u)


def sinh(u):
    return _trig_pair(u, True)[0] if isinstance(u, Jet) else np.sinh(u)


def cosh(u):
    return _trig_pair(u, True)[1] if isinstance(u, Jet) else np.cosh(u)


def sincos(u):
    if isinstance(u, Jet):
        return _trig_pair(u, False)
    return np.sin(u), np.cos(u)


def sinhcosh(u):
    if isinstance(u, Jet):
        return _trig_pair(u, True)
    return np.sinh(u), np.cosh(u)


def derivatives(components, k: int) -> np.ndarray:
    """Stack the k-th derivatives of three jets along a trailing axis."""
    parts = np.broadcast_arrays(*(comp.derivative(k) for comp in components))
    return np.stack(parts, axis=-1)
