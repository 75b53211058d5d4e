"""Cutoffs eta, theta_R and the plateau profile phi used by the lower-bound demo."""
import math
from dataclasses import dataclass

import numpy as np

from ..profiles import PlateauProfile, smoothstep


def plateau_height(d):
    """Smallest M with (M - 1)^2 >= 3 + d."""
    return 1.0 + math.sqrt(3.0 + d)


def eta(s, k=0):
    """k-th derivative of eta: 0 on |s| <= 1, 1 on |s| >= 2, nondecreasing in |s|."""
    s = np.asarray(s, dtype=float)
    sign = np.where(s < 0, -1.0, 1.0)
    return sign ** k * smoothstep(np.abs(s) - 1.0, k)


def _radial_derivs(x, r, g):
    """Pure x-derivatives 1..4 of G(r(x)), given g = [G', G'', G''', G''''] at r.

    r' = x/r, r'' = c/r^3, r''' = -3cx/r^5, r'''' = -3c(r^2 - 5x^2)/r^7, c = r^2 - x^2.
    """
    safe = np.where(r > 0, r, 1.0)
    c = safe ** 2 - x ** 2
    r1 = x / safe
    r2 = c / safe ** 3
    r3 = -3 * c * x / safe ** 5
    r4 = -3 * c * (safe ** 2 - 5 * x ** 2) / safe ** 7
    g1, g2, g3, g4 = g
    d1 = g1 * r1
    d2 = g2 * r1 ** 2 + g1 * r2
    d3 = g3 * r1 ** 3 + 3 * g2 * r1 * r2 + g1 * r3
    d4 = g4 * r1 ** 4 + 6 * g3 * r1 ** 2 * r2 + g2 * (3 * r2 ** 2 + 4 * r1 * r3) + g1 * r4
    return [np.where(r > 0, v, 0.0) for v in (d1, d2, d3, d4)]


@dataclass
class Cutoffs:
    d: int
    R: float
    M: float
    phi: PlateauProfile

    @property
    def flagged(self):
        # the plateau exceeds the [0, 3] range once d >= 2
        return self.M > 3.0

    def eta(self, s, k=0):
        return eta(s, k)

    def theta(self, coords):
        """theta_R and its pure derivatives: dict 'theta' and 'theta_x{j}_{k}'."""
        r = np.sqrt(sum(np.asarray(c, dtype=float) ** 2 for c in coords))
        a = self.R - 1.0
        # G(r) = 1 - S(r - a)
        g = [-smoothstep(r - a, k) for k in range(1, 5)]
        out = {"theta": 1.0 - smoothstep(r - a)}
        for j, x in enumerate(coords, start=1):
            for k, v in enumerate(_radial_derivs(np.asarray(x, dtype=float), r, g), start=1):
                out[f"theta_x{j}_{k}"] = v
        return out

    def env(self, coords, t, alpha=None):
        """Generator values of the cutoff alphabet at points (coords broadcast with t)."""
        t = np.asarray(t, dtype=float)
        phis = [self.phi(t, k) for k in range(4)]
        psi = coords[0] / self.R + phis[0]
        env = {"rhoInv": 1.0 / self.R, "psi": psi, "phi": phis[0]}
        if alpha is not None:
            env["alpha"] = float(alpha)
        for k in range(1, 4):
            env[f"phi{k}"] = phis[k]
        env["eta"] = eta(psi)
        for k in range(1, 5):
            env[f"eta{k}"] = eta(psi, k)
        env.update(self.theta(coords))
        for j, x in enumerate(coords[1:], start=2):
            env[f"x{j}"] = x
        return env

    def sigma(self, coords, t):
        env = self.env(coords, t)
        return env["theta"] * env["eta"]


def make_cutoffs(d, R, M=None):
    """eta, theta_R and the plateau phi with M = 1 + sqrt(3 + d) unless given."""
    if R < 2:
        raise ValueError("R must be at least 2")
    M = plateau_height(d) if M is None else float(M)
    return Cutoffs(d, float(R), M, PlateauProfile(M))
