"""Weighted norms, log-convexity margins, derivative forcings and annular energies."""
import math
from math import comb

import numpy as np
from scipy.integrate import simpson, trapezoid
from scipy.special import logsumexp

from ..errors import AnnulusOutsideBox, WeightOverflow, ZeroDenominator
from ..numgrid.grid import Field, spectral_derivative
from .evolver import edge_ratio
from .spectral import series_1d


def _radius(grid):
    return np.broadcast_to(grid.radius(), grid.shape)


def log_weighted_norm(u, lam, p=4.0 / 3.0, edge_tol=1e-12):
    """log of (int |u|^2 e^{2 lam |x|^p} dx)^(1/2), summed in log space."""
    values = u.values if isinstance(u, Field) else np.asarray(u)
    grid = u.grid
    r = _radius(grid)
    X = max(grid.half_widths)
    if 2 * lam * X ** p > 700 and edge_ratio(values) > edge_tol:
        raise WeightOverflow(f"e^(2 lam X^p) = e^{2 * lam * X ** p:.1f} with mass at the edge")
    a = np.abs(values)
    nz = a > 0
    if not np.any(nz):
        return -math.inf
    logs = 2 * np.log(a[nz]) + 2 * lam * r[nz] ** p
    return 0.5 * (float(logsumexp(logs)) + math.log(grid.cell_volume()))


def weighted_norm(u, lam, p=4.0 / 3.0, edge_tol=1e-12):
    return math.exp(log_weighted_norm(u, lam, p, edge_tol))


def _forcing_ratio(traj, forcing, lam):
    """sup_t ||w H(t)|| / ||w u(t)|| for forcing states aligned with traj.times."""
    best = 0.0
    for k in range(len(traj)):
        num = log_weighted_norm(Field(forcing[k], traj.grid), lam)
        den = log_weighted_norm(traj.field(k), lam)
        if den == -math.inf:
            raise ZeroDenominator(f"u vanishes at t = {traj.times[k]:.6g}")
        if num > -math.inf:
            best = max(best, math.exp(num - den))
    return best


def logconvexity_check(traj, lam, forcing=None, L=None, ceiling=10.0, p=4.0 / 3.0):
    """Margins of log H(t) against the interpolation bound with t(1-t)/2 (L^2 + M^2).

    H(t) = ||e^{lam |x|^p} u(t)||.  Times are rescaled to [0, 1] from the
    first and last stored times.  forcing: array of H(t) states, or None.
    """
    L = traj.L if L is None else float(L)
    M = 0.0 if forcing is None else _forcing_ratio(traj, np.asarray(forcing), lam)
    logs = np.array([log_weighted_norm(traj.field(k), lam, p) for k in range(len(traj))])
    t0, t1 = traj.times[0], traj.times[-1]
    s = (traj.times - t0) / (t1 - t0)
    margins = logs - (1 - s) * logs[0] - s * logs[-1] - s * (1 - s) / 2 * (L ** 2 + M ** 2)
    C = math.exp(float(np.max(margins)))
    return {"violated": bool(C > ceiling), "C": C, "margins": margins.tolist(),
            "times": traj.times.tolist(), "log_norms": logs.tolist(), "M": M, "L": L,
            "lambda": lam, "ceiling": ceiling}


def derivative_forcings(u, V, k, j=1, traj=None, lam=0.05):
    """H_{k,j} = sum_{m=1..k} C(k,m) (d_j^m V)(d_j^{k-m} u); with traj also M_{k,j}.

    u, V are Fields or arrays on the same periodic grid.  Returns (H, M) where
    M is None without a trajectory.
    """
    if k not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    grid = u.grid if isinstance(u, Field) else traj.grid
    Vv = np.asarray(V.values if isinstance(V, Field) else V)
    axis = j - 1
    h = grid.spacing(j)
    dV = [spectral_derivative(Vv, axis, m, h) for m in range(k + 1)]

    def forcing_of(values):
        out = np.zeros(grid.shape, dtype=complex)
        for m in range(1, k + 1):
            du = spectral_derivative(values, axis, k - m, h)
            out = out + comb(k, m) * dV[m] * du
        return out

    uv = u.values if isinstance(u, Field) else np.asarray(u)
    H = Field(forcing_of(uv), grid)
    if traj is None:
        return H, None
    M = 0.0
    for n in range(len(traj)):
        s = traj.states[n]
        num = log_weighted_norm(Field(forcing_of(s), grid), lam)
        den = log_weighted_norm(Field(spectral_derivative(s, axis, k, h), grid), lam)
        if den == -math.inf or not np.isfinite(den):
            raise ZeroDenominator(f"d^{k} u vanishes at t = {traj.times[n]:.6g}")
        if num > -math.inf:
            M = max(M, math.exp(num - den))
    return H, M


def _time_integral(values, times):
    values = np.asarray(values, dtype=float)
    if len(times) == 1:
        return float(values[0])
    if len(times) >= 3 and len(times) % 2 == 1:
        return float(simpson(values, x=times))
    return float(trapezoid(values, times))


def _energy_density_terms(values, grid):
    """|u|^2 + sum_j (|d_j u|^2 + |d_j^2 u|^2 + |d_j^3 u|^2) on the grid."""
    dens = np.abs(values) ** 2
    for j in range(1, grid.d + 1):
        for k in (1, 2, 3):
            dens = dens + np.abs(spectral_derivative(values, j - 1, k, grid.spacing(j))) ** 2
    return dens


def _annulus_weights(grid, R, sub=8):
    """Fraction of each cell inside R - 1 < |x| < R, by sub-sampling."""
    offs = (np.arange(sub) + 0.5) / sub - 0.5
    frac = np.zeros(grid.shape)
    axes = [grid.x(j) for j in range(1, grid.d + 1)]
    mesh = np.meshgrid(*axes, indexing="ij")
    idx = np.stack(np.meshgrid(*([offs] * grid.d), indexing="ij"), -1).reshape(-1, grid.d)
    for o in idx:
        r2 = sum((mesh[j] + o[j] * grid.spacing(j + 1)) ** 2 for j in range(grid.d))
        r = np.sqrt(r2)
        frac += (r > R - 1) & (r < R)
    return frac / len(idx)


def gamma_profile(traj, R, nodes=24):
    """(int_0^1 int_{R-1<|x|<R} |u|^2 + sum_j |d_j u|^2 + |d_j^2 u|^2 + |d_j^3 u|^2)^(1/2).

    d = 1 integrates the trigonometric interpolant exactly on the two
    intervals with Gauss-Legendre nodes; d >= 2 uses sub-sampled cell
    fractions of the annulus.  Time uses Simpson's rule on the stored times.
    """
    grid = traj.grid
    if R - 1 < 0:
        raise AnnulusOutsideBox("need R >= 1")
    if any(R > X for X in grid.half_widths):
        raise AnnulusOutsideBox(f"annulus radius {R} exceeds the box")
    per_t = []
    if grid.d == 1:
        g, w = np.polynomial.legendre.leggauss(nodes)
        pts, wts = [], []
        for a, b in ((R - 1, R), (-R, -(R - 1))):
            pts.append((a + b) / 2 + (b - a) / 2 * g)
            wts.append((b - a) / 2 * w)
        pts = np.concatenate(pts)
        wts = np.concatenate(wts)
        for s in traj.states:
            dens = sum(np.abs(series_1d(s, grid, pts, k)) ** 2 for k in range(4))
            per_t.append(float(np.sum(wts * dens)))
    else:
        frac = _annulus_weights(grid, R)
        vol = grid.cell_volume()
        for s in traj.states:
            per_t.append(float(np.sum(frac * _energy_density_terms(s, grid)) * vol))
    return math.sqrt(max(_time_integral(per_t, traj.times), 0.0))


def energy_profile(traj):
    """A-type total energy: int_0^1 int |u|^2 + sum_j |d_j^k u|^2 (k = 1..3), square-rooted."""
    grid = traj.grid
    vol = grid.cell_volume()
    per_t = [float(np.sum(_energy_density_terms(s, grid)) * vol) for s in traj.states]
    return math.sqrt(_time_integral(per_t, traj.times))


def plateau_ball_norm(traj, t_lo=0.375, t_hi=0.625, radius=1.0):
    """||u||_{L^2([t_lo, t_hi] x B_radius)} with trapezoid weights on stored times."""
    grid = traj.grid
    r = _radius(grid)
    inside = r <= radius
    vol = grid.cell_volume()
    sel = (traj.times >= t_lo - 1e-12) & (traj.times <= t_hi + 1e-12)
    ts = traj.times[sel]
    if ts.size < 2:
        return 0.0
    vals = [float(np.sum(np.abs(s[inside]) ** 2) * vol) for s in traj.states[sel]]
    return math.sqrt(max(float(trapezoid(vals, ts)), 0.0))
