"""Matrix testbeds for the abstract second-derivative identity of H(t) = ||f(t)||^2.

For f' = S f + A f + G(t) with S(t) Hermitian and A(t) skew-Hermitian:

    H'' = 2 d/dt Re<F, f> + 2 <(S_t + [S, A]) f, f> + ||f' - A f + S f||^2 - ||f' - A f - S f||^2,

where F = f' - S f - A f is the forcing.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import NonHermitian


def _herm(n, rng):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (X + X.conj().T) / 2


def _inner(a, b):
    """<a, b> = sum a conj(b), linear in the first slot."""
    return complex(np.vdot(b, a))


@dataclass
class LogConvexInstance:
    """S(t) = S0 + t S1, A(t) = A0 + t A1, forcing G(t) = cos(w t) g0 + sin(w t) g1."""
    S0: np.ndarray
    S1: np.ndarray
    A0: np.ndarray
    A1: np.ndarray
    f0: np.ndarray
    g0: np.ndarray = None
    g1: np.ndarray = None
    w: float = 1.0

    def __post_init__(self):
        for name in ("S0", "S1"):
            M = getattr(self, name)
            if np.max(np.abs(M - M.conj().T)) > 1e-12:
                raise NonHermitian(f"{name} is not Hermitian")
        for name in ("A0", "A1"):
            M = getattr(self, name)
            if np.max(np.abs(M + M.conj().T)) > 1e-12:
                raise NonHermitian(f"{name} is not skew-Hermitian")
        self.f0 = np.asarray(self.f0, dtype=complex)

    @property
    def n(self):
        return self.f0.size

    @classmethod
    def random(cls, n=8, seed=0, forcing=True, scale=0.5):
        rng = np.random.default_rng(seed)
        S0, S1 = scale * _herm(n, rng), scale * _herm(n, rng)
        A0, A1 = 1j * scale * _herm(n, rng), 1j * scale * _herm(n, rng)
        f0 = rng.normal(size=n) + 1j * rng.normal(size=n)
        g0 = g1 = None
        if forcing:
            g0 = 0.3 * (rng.normal(size=n) + 1j * rng.normal(size=n))
            g1 = 0.3 * (rng.normal(size=n) + 1j * rng.normal(size=n))
        return cls(S0, S1, A0, A1, f0, g0, g1, w=2.0)

    def S(self, t):
        return self.S0 + t * self.S1

    def A(self, t):
        return self.A0 + t * self.A1

    def G(self, t):
        if self.g0 is None:
            return np.zeros(self.n, dtype=complex)
        return math.cos(self.w * t) * self.g0 + math.sin(self.w * t) * self.g1

    def G_t(self, t):
        if self.g0 is None:
            return np.zeros(self.n, dtype=complex)
        return self.w * (-math.sin(self.w * t) * self.g0 + math.cos(self.w * t) * self.g1)

    def rhs(self, t, f):
        return (self.S(t) + self.A(t)) @ f + self.G(t)

    def solve(self, rtol=1e-9, atol=1e-12, T=1.0, max_step=np.inf):
        sol = solve_ivp(self.rhs, (0.0, T), self.f0, method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True, max_step=max_step)
        if not sol.success:
            raise RuntimeError(sol.message)
        return sol


def _identity_terms(inst, t, f):
    S, A = inst.S(t), inst.A(t)
    fp = inst.rhs(t, f)
    F = inst.G(t)
    fpp = (inst.S1 + inst.A1) @ f + (S + A) @ fp + inst.G_t(t)
    H2_direct = 2 * (_inner(fpp, f).real + _inner(fp, fp).real)
    dReFf = _inner(inst.G_t(t), f).real + _inner(F, fp).real
    comm = S @ A - A @ S
    rhs = (2 * dReFf + 2 * _inner((inst.S1 + comm) @ f, f).real
           + np.linalg.norm(fp - A @ f + S @ f) ** 2 - np.linalg.norm(fp - A @ f - S @ f) ** 2)
    H = _inner(f, f).real
    D = _inner(S @ f, f).real
    Dp = _inner(inst.S1 @ f, f).real + 2 * _inner(S @ f, fp).real
    Hp = 2 * _inner(fp, f).real
    Ndot = (Dp * H - D * Hp) / H ** 2
    # bracketed reading: <(S_t + [S, A]) f, f>/H - ||F||^2/(2H)
    N_low = (_inner((inst.S1 + comm) @ f, f).real / H
             - np.linalg.norm(fp - A @ f - S @ f) ** 2 / (2 * H))
    scale = abs(2 * dReFf) + abs(2 * _inner((inst.S1 + comm) @ f, f).real) + \
        np.linalg.norm(fp - A @ f + S @ f) ** 2 + np.linalg.norm(fp - A @ f - S @ f) ** 2
    return {"H": H, "H2_direct": H2_direct, "rhs": rhs, "Ndot": Ndot, "N_low": N_low,
            "scale": scale}


def lemma_identity_check(inst, n_points=9, h=0.02, rtol=1e-9, N=1.0, max_step=0.05):
    """Both sides of the H'' identity at interior times plus convexity margins.

    The finite-difference oracle uses a 7-point central stencil on the ODE's
    dense output.  Residuals are relative to the sum of the identity's term
    magnitudes.
    """
    sol = inst.solve(rtol=rtol, max_step=max_step)
    ts = np.linspace(0.15, 0.85, n_points)
    fd_w = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])
    offs = np.arange(-3, 4)
    res_fd, res_direct, ndot_margin = [], [], []
    for t in ts:
        f = sol.sol(t)
        terms = _identity_terms(inst, t, f)
        Hs = np.array([np.linalg.norm(sol.sol(t + o * h)) ** 2 for o in offs])
        H2_fd = float(fd_w @ Hs) / h ** 2
        sc = max(terms["scale"], abs(terms["H2_direct"]), 1e-300)
        res_fd.append(abs(H2_fd - terms["rhs"]) / sc)
        res_direct.append(abs(terms["H2_direct"] - terms["rhs"]) / sc)
        ndot_margin.append(terms["Ndot"] - terms["N_low"])
    # convexity: log H(t) <= (1 - t) log H(0) + t log H(1) + N (M0 + M1 + M2 + M1^2 + M2^2)
    grid = np.linspace(0.0, 1.0, 41)
    logH = np.array([math.log(np.linalg.norm(sol.sol(t)) ** 2) for t in grid])
    chord = (1 - grid) * logH[0] + grid * logH[-1]
    conv_margins = chord - logH
    M0 = 0.0
    M2 = 0.0
    for t in grid:
        S, A = inst.S(t), inst.A(t)
        ev = np.linalg.eigvalsh(inst.S1 + (S @ A - A @ S))
        M0 = max(M0, -float(ev[0]))
        M2 = max(M2, float(np.linalg.norm(inst.G(t)) / np.linalg.norm(sol.sol(t))))
    M1 = 0.0
    budget = N * (M0 + M1 + M2 + M1 ** 2 + M2 ** 2)
    return {"residual_fd": float(max(res_fd)), "residual_direct": float(max(res_direct)),
            "residual": float(max(res_fd)), "ndot_margin_min": float(min(ndot_margin)),
            "convexity_margin_min": float(conv_margins.min()),
            "bound_margin_min": float((chord + budget - logH).min()),
            "M0": M0, "M1": M1, "M2": M2, "N": N, "times": ts.tolist()}
