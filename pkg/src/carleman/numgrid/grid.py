"""Uniform grids, sampled fields, derivatives, parameter bindings and field IO."""
import csv
import struct
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import SupportTouchesBoundary, UnsupportedOrder
from ..profiles import ConstantProfile, TimeProfile

MAX_ORDER = 6
SCHEMES = ("spectral", "fd4")


@dataclass(frozen=True)
class GridSpec:
    """Spatial box (periodic for the spectral scheme) with an optional time axis.

    Spatial nodes sit at center - X + k*h, h = 2X/N.  Time nodes are cell
    centered on [t0, t1] so the endpoints are excluded.  Axis order is
    (t, x1, ..., xd) when nt > 0, else (x1, ..., xd).
    """
    d: int
    counts: tuple
    half_widths: tuple
    nt: int = 0
    scheme: str = "spectral"
    centers: tuple = None
    t_range: tuple = (0.0, 1.0)

    def __post_init__(self):
        counts = tuple(int(n) for n in np.broadcast_to(self.counts, (self.d,)))
        widths = tuple(float(x) for x in np.broadcast_to(self.half_widths, (self.d,)))
        centers = tuple(float(c) for c in np.broadcast_to(
            0.0 if self.centers is None else self.centers, (self.d,)))
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "half_widths", widths)
        object.__setattr__(self, "centers", centers)
        if any(n < 16 for n in counts) or (self.nt and self.nt < 16):
            raise ValueError("point counts must be at least 16")
        if any(x <= 0 for x in widths):
            raise ValueError("box half-widths must be positive")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")

    @property
    def has_time(self):
        return self.nt > 0

    @property
    def shape(self):
        return ((self.nt,) if self.nt else ()) + self.counts

    @property
    def ndim(self):
        return len(self.shape)

    def spacing(self, j):
        return 2 * self.half_widths[j - 1] / self.counts[j - 1]

    @property
    def dt(self):
        t0, t1 = self.t_range
        return (t1 - t0) / self.nt

    def spacings(self):
        sp = [self.spacing(j) for j in range(1, self.d + 1)]
        return ([self.dt] if self.nt else []) + sp

    def origins(self):
        org = [self.centers[j - 1] - self.half_widths[j - 1] for j in range(1, self.d + 1)]
        return ([self.t_range[0] + self.dt / 2] if self.nt else []) + org

    def axis_of(self, var):
        """Array axis for variable index var (0 = t, j = x_j)."""
        if var == 0:
            if not self.nt:
                raise ValueError("grid has no time axis")
            return 0
        return var if self.nt else var - 1

    def x(self, j):
        n = self.counts[j - 1]
        return self.centers[j - 1] - self.half_widths[j - 1] + self.spacing(j) * np.arange(n)

    def t(self):
        return self.t_range[0] + self.dt * (np.arange(self.nt) + 0.5)

    def coord(self, var):
        """Coordinate array shaped to broadcast against the field."""
        arr = self.t() if var == 0 else self.x(var)
        shape = [1] * self.ndim
        shape[self.axis_of(var)] = arr.size
        return arr.reshape(shape)

    def cell_volume(self):
        return float(np.prod(self.spacings()))

    def radius(self):
        r2 = sum(self.coord(j) ** 2 for j in range(1, self.d + 1))
        return np.sqrt(r2)


@lru_cache(maxsize=None)
def central_weights(m, p):
    """Exact weights of the (2p+1)-point central stencil for the m-th derivative."""
    n = 2 * p + 1
    offs = list(range(-p, p + 1))
    A = [[Fraction(o) ** r for o in offs] for r in range(n)]
    rhs = [Fraction(0)] * n
    fact = 1
    for k in range(2, m + 1):
        fact *= k
    rhs[m] = Fraction(fact)
    # Gaussian elimination over the rationals
    M = [row + [rhs[i]] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                fac = M[r][c] / M[c][c]
                M[r] = [a - fac * b for a, b in zip(M[r], M[c])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def fd_halfwidth(m):
    # smallest central stencil with fourth-order accuracy
    return (m + 1) // 2 + 1


def fd_derivative(values, axis, m, h):
    if m == 0:
        return values
    p = fd_halfwidth(m)
    w = central_weights(m, p)
    pad = [(0, 0)] * values.ndim
    pad[axis] = (p, p)
    v = np.pad(values, pad)
    n = values.shape[axis]
    out = np.zeros_like(values)
    for k, wk in enumerate(w):
        if wk:
            sl = [slice(None)] * values.ndim
            sl[axis] = slice(k, k + n)
            out = out + float(wk) * v[tuple(sl)]
    return out / h ** m


def spectral_derivative(values, axis, m, h):
    if m == 0:
        return values
    n = values.shape[axis]
    k = 2 * np.pi * np.fft.fftfreq(n, d=h)
    mult = (1j * k) ** m
    if m % 2 == 1 and n % 2 == 0:
        mult[n // 2] = 0.0  # Nyquist mode has no odd derivative
    shape = [1] * values.ndim
    shape[axis] = n
    out = np.fft.ifft(np.fft.fft(values, axis=axis) * mult.reshape(shape), axis=axis)
    return out


def derivative(values, grid, index):
    """Mixed derivative D^index of sampled values; index is (a_t, a_1, ..., a_d)."""
    if any(k > MAX_ORDER for k in index):
        raise UnsupportedOrder(f"derivative order above {MAX_ORDER} in {tuple(index)}")
    out = values
    for var, k in enumerate(index):
        if not k:
            continue
        axis = grid.axis_of(var)
        if var == 0:
            out = fd_derivative(out, axis, k, grid.dt)
        elif grid.scheme == "spectral":
            out = spectral_derivative(out, axis, k, grid.spacing(var))
        else:
            out = fd_derivative(out, axis, k, grid.spacing(var))
    return out


@dataclass
class Field:
    values: np.ndarray
    grid: GridSpec
    mask: np.ndarray = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.shape:
            raise ValueError(f"values shape {self.values.shape} != grid shape {self.grid.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")

    def with_values(self, values):
        return Field(values, self.grid, self.mask)

    def check_support(self, margin=3, rel=1e-12):
        vmax = float(np.max(np.abs(self.values))) if self.values.size else 0.0
        if vmax == 0.0:
            return
        a = np.abs(self.values)
        for axis, n in enumerate(self.values.shape):
            lo = np.take(a, range(margin), axis=axis)
            hi = np.take(a, range(n - margin, n), axis=axis)
            if lo.max() > rel * vmax or hi.max() > rel * vmax:
                raise SupportTouchesBoundary(
                    f"field is non-negligible within {margin} cells of the edge on axis {axis}")

    def norm2(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume())

    def inner(self, other):
        """<self, other> = int conj(self) other."""
        return complex(np.sum(np.conj(self.values) * other.values) * self.grid.cell_volume())


class DerivativeCache:
    def __init__(self, f):
        self.f = f
        self.cache = {}

    def get(self, index):
        key = tuple(index)
        if key not in self.cache:
            self.cache[key] = derivative(self.f.values, self.f.grid, key)
        return self.cache[key]


@dataclass
class Bindings:
    """Numeric values for the symbol alphabet on a grid.

    phi is a TimeProfile (or a constant); on grids without a time axis the
    profile is evaluated at time ``t``.  ``extra`` maps further generator names
    to arrays or to callables taking the grid.
    """
    alpha: float
    R: float
    phi: object = 0.0
    t: float = 0.5
    K: int = 3
    extra: dict = dc_field(default_factory=dict)

    def profile(self):
        return self.phi if isinstance(self.phi, TimeProfile) else ConstantProfile(self.phi)

    def phi_values(self, grid):
        prof = self.profile()
        tt = grid.coord(0) if grid.has_time else np.asarray(self.t, dtype=float)
        return [prof(tt, k) for k in range(self.K + 1)]

    def env(self, grid):
        phis = self.phi_values(grid)
        env = {"alpha": float(self.alpha), "rhoInv": 1.0 / float(self.R), "phi": phis[0]}
        for k in range(1, self.K + 1):
            env[f"phi{k}"] = phis[k]
        env["psi"] = grid.coord(1) / float(self.R) + phis[0]
        for j in range(2, grid.d + 1):
            env[f"x{j}"] = grid.coord(j)
        for name, val in self.extra.items():
            env[name] = val(grid) if callable(val) else val
        return env

    def psi(self, grid):
        return np.broadcast_to(self.env(grid)["psi"], grid.shape)

    def weight_exponent(self, grid):
        """Phi^2 = psi^2 + sum_j (x_j/R)^2 on the grid."""
        env = self.env(grid)
        W = env["psi"] ** 2
        for j in range(2, grid.d + 1):
            W = W + (env[f"x{j}"] / float(self.R)) ** 2
        return np.broadcast_to(W, grid.shape)


# binary layout: int64 ndim, int64 counts[ndim], float64 spacing[ndim],
# float64 origin[ndim], then interleaved little-endian float64 re/im

def write_field(path, values, spacing, origin=None):
    values = np.asarray(values, dtype="<c16")
    nd = values.ndim
    origin = np.zeros(nd) if origin is None else np.asarray(origin, dtype=float)
    with open(path, "wb") as fh:
        fh.write(struct.pack("<q", nd))
        fh.write(np.asarray(values.shape, dtype="<i8").tobytes())
        fh.write(np.asarray(spacing, dtype="<f8").tobytes())
        fh.write(np.asarray(origin, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(values).tobytes())


def read_field(path):
    """(values, spacing, origin) from the binary layout."""
    with open(path, "rb") as fh:
        raw = fh.read()
    nd = struct.unpack_from("<q", raw, 0)[0]
    off = 8
    counts = np.frombuffer(raw, dtype="<i8", count=nd, offset=off)
    off += 8 * nd
    spacing = np.frombuffer(raw, dtype="<f8", count=nd, offset=off)
    off += 8 * nd
    origin = np.frombuffer(raw, dtype="<f8", count=nd, offset=off)
    off += 8 * nd
    n = int(np.prod(counts))
    values = np.frombuffer(raw, dtype="<c16", count=n, offset=off).reshape(tuple(counts))
    return values.copy(), spacing.copy(), origin.copy()


def save_field(path, f):
    write_field(path, f.values, f.grid.spacings(), f.grid.origins())


def export_csv(path, f, max_points=100000):
    """Coordinates followed by re, im, one row per grid point."""
    if f.values.size > max_points:
        raise ValueError(f"grid too large for CSV export ({f.values.size} points)")
    g = f.grid
    names = (["t"] if g.has_time else []) + [f"x{j}" for j in range(1, g.d + 1)]
    axes = ([g.t()] if g.has_time else []) + [g.x(j) for j in range(1, g.d + 1)]
    mesh = np.meshgrid(*axes, indexing="ij")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["re", "im"])
        flat = [m.ravel() for m in mesh]
        vals = f.values.ravel()
        for i in range(vals.size):
            w.writerow([f"{c[i]:.17g}" for c in flat] + [f"{vals[i].real:.17g}", f"{vals[i].imag:.17g}"])
