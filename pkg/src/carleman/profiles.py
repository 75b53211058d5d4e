"""Smoothsteps and time profiles phi(t) with explicit derivatives."""
import numpy as np
from numpy.polynomial import Polynomial

# 35 s^4 - 84 s^5 + 70 s^6 - 20 s^7: C^3 transition from 0 to 1 on [0, 1]
SMOOTHSTEP7 = Polynomial([0, 0, 0, 0, 35, -84, 70, -20])


def smoothstep(s, k=0):
    """k-th derivative of the order-7 smoothstep, constant outside [0, 1]."""
    s = np.asarray(s, dtype=float)
    p = SMOOTHSTEP7.deriv(k) if k else SMOOTHSTEP7
    inside = (s > 0) & (s < 1)
    out = np.where(inside, p(np.clip(s, 0, 1)), 0.0)
    if k == 0:
        out = np.where(s >= 1, 1.0, out)
    return out


def ramp(x, a, b, k=0):
    """k-th derivative of the smooth 0 -> 1 transition between a and b."""
    w = b - a
    return smoothstep((np.asarray(x, dtype=float) - a) / w, k) / w ** k


class TimeProfile:
    """phi(t) together with its derivatives; subclasses implement __call__."""

    def __call__(self, t, k=0):
        raise NotImplementedError

    def derivs(self, t, K):
        return [self(t, k) for k in range(K + 1)]

    def sup(self, k, n=20001):
        t = np.linspace(0.0, 1.0, n)
        return float(np.max(np.abs(self(t, k))))


class ConstantProfile(TimeProfile):
    def __init__(self, c=0.0):
        self.c = float(c)

    def __call__(self, t, k=0):
        t = np.asarray(t, dtype=float)
        return np.full(t.shape, self.c if k == 0 else 0.0)


class PolynomialProfile(TimeProfile):
    def __init__(self, coeffs):
        self.p = Polynomial(coeffs)

    def __call__(self, t, k=0):
        p = self.p.deriv(k) if k else self.p
        return p(np.asarray(t, dtype=float))


class SineProfile(TimeProfile):
    """a*sin(2*pi*m*t + shift)."""

    def __init__(self, a, m=1, shift=0.0):
        self.a, self.m, self.shift = float(a), m, float(shift)

    def __call__(self, t, k=0):
        w = 2 * np.pi * self.m
        return self.a * w ** k * np.sin(w * np.asarray(t, dtype=float) + self.shift + k * np.pi / 2)


class PlateauProfile(TimeProfile):
    """0 on [0, 1/4] and [3/4, 1], M on [3/8, 5/8], order-7 smoothsteps between."""

    def __init__(self, M, edges=(0.25, 0.375, 0.625, 0.75)):
        self.M = float(M)
        self.edges = edges

    def __call__(self, t, k=0):
        a, b, c, e = self.edges
        t = np.asarray(t, dtype=float)
        up = ramp(t, a, b, k)
        down = ramp(t, c, e, k)
        return self.M * (up - down)
