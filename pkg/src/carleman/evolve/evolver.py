"""Split-step Fourier evolution of i u_t + sum_j d_j^4 u = V u on a periodic box."""
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import EdgeDecayViolated, StepRejected
from ..numgrid.grid import Field, GridSpec


def wavenumbers(grid):
    """Angular wavenumber arrays, one per axis, shaped for broadcasting."""
    ks = []
    for j in range(1, grid.d + 1):
        k = 2 * np.pi * np.fft.fftfreq(grid.counts[j - 1], d=grid.spacing(j))
        shape = [1] * grid.d
        shape[j - 1] = k.size
        ks.append(k.reshape(shape))
    return ks


def symbol(grid):
    """sum_j xi_j^4 on the FFT grid."""
    return sum(k ** 4 for k in wavenumbers(grid))


def edge_ratio(values, width=2):
    """max |u| over the outer `width` cells of every axis, relative to max |u|."""
    a = np.abs(values)
    top = float(a.max()) if a.size else 0.0
    if top == 0.0:
        return 0.0
    edge = 0.0
    for axis, n in enumerate(a.shape):
        lo = np.take(a, range(width), axis=axis)
        hi = np.take(a, range(n - width, n), axis=axis)
        edge = max(edge, float(lo.max()), float(hi.max()))
    return edge / top


@dataclass
class EvolutionSpec:
    """Periodic box [-X, X)^d with N modes per axis.

    V is a real grid sample (or None for V = 0).  edge_tol=None disables the
    edge-decay check, which plane-wave tests need.
    """
    d: int
    X: float
    N: int
    V: np.ndarray = None
    dt: float = 1e-3
    edge_tol: float = 1e-12
    edge_width: int = 2

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("time step must be positive")
        if self.V is not None:
            V = np.asarray(self.V)
            if np.iscomplexobj(V):
                if np.max(np.abs(V.imag)) > 0:
                    raise ValueError("potential must be real")
                V = V.real
            V = np.broadcast_to(np.asarray(V, dtype=float), self.grid.shape).copy()
            self.V = V

    @property
    def grid(self):
        return GridSpec(self.d, self.N, self.X)

    @property
    def L(self):
        return 0.0 if self.V is None else float(np.max(np.abs(self.V)))

    def potential(self):
        return np.zeros(self.grid.shape) if self.V is None else self.V

    def describe(self):
        return {"d": self.d, "X": self.X, "N": self.N, "dt": self.dt, "L": self.L,
                "edge_tol": self.edge_tol, "scheme": "strang"}


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray          # (n_times, *grid.shape)
    grid: GridSpec
    spec: EvolutionSpec = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        if self.states.shape != (self.times.size,) + self.grid.shape:
            raise ValueError("states do not match times and grid")

    def __len__(self):
        return self.times.size

    def field(self, k):
        return Field(self.states[k], self.grid)

    def norms(self):
        vol = self.grid.cell_volume()
        axes = tuple(range(1, self.states.ndim))
        return np.sqrt(np.sum(np.abs(self.states) ** 2, axis=axes) * vol)

    def scaled(self, c):
        return Trajectory(self.times, self.states * c, self.grid, self.spec, dict(self.diagnostics))

    @property
    def L(self):
        return self.spec.L if self.spec is not None else 0.0


def _check_edge(values, spec, t):
    if spec.edge_tol is None:
        return
    r = edge_ratio(values, spec.edge_width)
    if r >= spec.edge_tol:
        raise EdgeDecayViolated(f"edge/max ratio {r:.3e} at t = {t:.6g}")


def evolve(u0, spec, T=1.0, n_store=65, times=None):
    """Strang splitting: half potential phase, exact free step, half potential phase.

    `times` (or n_store equispaced times in [0, T]) are hit exactly; negative T
    runs backward.  V = 0 uses the exact propagator in one step per interval.
    """
    grid = spec.grid
    values = u0.values if isinstance(u0, Field) else np.asarray(u0, dtype=complex)
    if values.shape != grid.shape:
        raise ValueError("initial data does not match the evolution grid")
    times = np.linspace(0.0, T, n_store) if times is None else np.asarray(times, dtype=float)
    if times[0] != 0.0:
        times = np.concatenate([[0.0], times])
    _check_edge(values, spec, 0.0)
    sym = symbol(grid)
    V = spec.potential()
    free = spec.V is None or not np.any(V)
    u = np.array(values, dtype=complex)
    states = [u.copy()]
    n0 = float(np.sqrt(np.sum(np.abs(u) ** 2)))
    drift = 0.0
    steps = 0
    uh = np.fft.fftn(u)
    for t_prev, t_next in zip(times[:-1], times[1:]):
        span = t_next - t_prev
        if free:
            uh = uh * np.exp(1j * sym * span)
            u = np.fft.ifftn(uh)
            steps += 1
        else:
            n = max(1, math.ceil(abs(span) / spec.dt - 1e-12))
            tau = span / n
            half = np.exp(-0.5j * V * tau)
            prop = np.exp(1j * sym * tau)
            for _ in range(n):
                u = np.fft.ifftn(prop * np.fft.fftn(half * u)) * half
                steps += 1
            if not np.all(np.isfinite(u)):
                raise StepRejected(f"non-finite values near t = {t_next:.6g}")
        if not np.all(np.isfinite(u)):
            raise StepRejected(f"non-finite values near t = {t_next:.6g}")
        _check_edge(u, spec, t_next)
        nrm = float(np.sqrt(np.sum(np.abs(u) ** 2)))
        if n0 > 0:
            drift = max(drift, abs(nrm - n0) / n0)
        states.append(u.copy())
    diag = {"l2_drift": drift, "steps": steps, "max_edge_ratio":
            max(edge_ratio(s, spec.edge_width) for s in states)}
    return Trajectory(times, np.array(states), grid, spec, diag)


def gaussian(grid, center=None, width=1.0, k=None):
    """exp(-|x - c|^2 / (2 width^2)) * exp(i k.x) sampled on the grid."""
    center = np.zeros(grid.d) if center is None else np.asarray(center, dtype=float)
    k = np.zeros(grid.d) if k is None else np.asarray(k, dtype=float)
    r2 = 0.0
    phase = 0.0
    for j in range(1, grid.d + 1):
        x = grid.coord(j)
        r2 = r2 + (x - center[j - 1]) ** 2
        phase = phase + k[j - 1] * x
    return Field(np.broadcast_to(np.exp(-r2 / (2 * width ** 2) + 1j * phase), grid.shape), grid)


def plane_wave(grid, k, axis=1):
    """exp(i k x_axis); k must be a box mode for exactness."""
    x = grid.coord(axis)
    return Field(np.broadcast_to(np.exp(1j * k * x), grid.shape), grid)


def evolve_centered(u_mid, spec, t_mid=0.5, T=1.0, n_store=65):
    """Trajectory on [0, T] whose state at t_mid is u_mid (evolved both ways).

    Dispersion spreads data over a span of T/2 instead of T, which keeps
    moderately wide data inside a modest box.
    """
    times = np.linspace(0.0, T, n_store)
    if not 0.0 <= t_mid <= T:
        raise ValueError("t_mid must lie in [0, T]")
    lo = times[times < t_mid]
    hi = times[times >= t_mid]
    back = evolve(u_mid, spec, times=np.concatenate([[0.0], lo[::-1] - t_mid])) if lo.size else None
    fwd = evolve(u_mid, spec, times=hi - t_mid)
    # the backward run starts with the duplicate state at t_mid
    fwd_states = fwd.states if hi[0] == t_mid else fwd.states[1:]
    fwd_times = hi if hi[0] == t_mid else hi
    states = fwd_states if back is None else np.concatenate([back.states[1:][::-1], fwd_states])
    all_times = fwd_times if back is None else np.concatenate([lo, fwd_times])
    diag = dict(fwd.diagnostics)
    if back is not None:
        diag = {"l2_drift": max(fwd.diagnostics["l2_drift"], back.diagnostics["l2_drift"]),
                "steps": fwd.diagnostics["steps"] + back.diagnostics["steps"],
                "max_edge_ratio": max(fwd.diagnostics["max_edge_ratio"],
                                      back.diagnostics["max_edge_ratio"])}
    return Trajectory(all_times, states, spec.grid, spec, diag)
