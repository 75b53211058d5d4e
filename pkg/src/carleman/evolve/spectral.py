"""Band-limited interpolation helpers for periodic grid samples."""
import numpy as np

from ..numgrid.grid import GridSpec


def _pad_axis(uh, axis, m):
    """Zero-pad a spectrum along axis by factor m, splitting the Nyquist mode."""
    n = uh.shape[axis]
    big = n * m
    shape = list(uh.shape)
    shape[axis] = big
    out = np.zeros(shape, dtype=complex)
    h = n // 2
    sl = [slice(None)] * uh.ndim

    def put(dst, src):
        d = list(sl)
        s = list(sl)
        d[axis] = dst
        s[axis] = src
        out[tuple(d)] += uh[tuple(s)]

    if n % 2:
        put(slice(0, h + 1), slice(0, h + 1))
        put(slice(big - h, big), slice(n - h, n))
    else:
        put(slice(0, h), slice(0, h))
        put(slice(big - h + 1, big), slice(h + 1, n))
        # Nyquist coefficient shared between +n/2 and -n/2
        s = list(sl)
        s[axis] = slice(h, h + 1)
        nyq = uh[tuple(s)] / 2
        for dst in (slice(h, h + 1), slice(big - h, big - h + 1)):
            d = list(sl)
            d[axis] = dst
            out[tuple(d)] += nyq
    return out * m


def refined_grid(grid, m):
    return GridSpec(grid.d, tuple(n * m for n in grid.counts), grid.half_widths,
                    centers=grid.centers)


def refine(values, grid, m, derivs=((0,),)):
    """Spectral interpolation of values (and derivatives) onto the grid refined by m.

    derivs is a list of spatial multi-indices (a_1, ..., a_d); returns a dict.
    """
    m = tuple(np.broadcast_to(m, (grid.d,)))
    uh = np.fft.fftn(values)
    for axis in range(grid.d):
        if m[axis] > 1:
            uh = _pad_axis(uh, axis, m[axis])
    fine = GridSpec(grid.d, tuple(n * k for n, k in zip(grid.counts, m)), grid.half_widths,
                    centers=grid.centers)
    ks = []
    for j in range(1, grid.d + 1):
        k = 2 * np.pi * np.fft.fftfreq(fine.counts[j - 1], d=fine.spacing(j))
        shape = [1] * grid.d
        shape[j - 1] = k.size
        ks.append(k.reshape(shape))
    # the fine grid shares the coarse origin, so no phase shift is needed
    out = {}
    for a in derivs:
        a = tuple(a) + (0,) * (grid.d - len(a))
        mult = 1.0
        for j, k in enumerate(a):
            if k:
                mult = mult * (1j * ks[j]) ** k
        out[a] = np.fft.ifftn(uh * mult)
    return out, fine


def series_1d(values, grid, points, deriv=0):
    """Evaluate the trigonometric interpolant (or a derivative) at arbitrary points (d = 1)."""
    n = grid.counts[0]
    h = grid.spacing(1)
    x0 = grid.x(1)[0]
    uh = np.fft.fft(values) / n
    k = 2 * np.pi * np.fft.fftfreq(n, d=h)
    coef = uh * (1j * k) ** deriv
    if n % 2 == 0:
        # symmetric Nyquist treatment: cos at the Nyquist frequency
        kn = np.pi / h
        c_n = uh[n // 2]
        coef = coef.copy()
        coef[n // 2] = 0.0
    pts = np.asarray(points, dtype=float)
    phase = np.exp(1j * np.outer(pts - x0, k))
    out = phase @ coef
    if n % 2 == 0:
        # d^m/dx^m of c cos(kn (x - x0))
        s = kn * (pts - x0)
        trig = [np.cos(s), -np.sin(s), -np.cos(s), np.sin(s)][deriv % 4]
        out = out + c_n * kn ** deriv * trig
    return out
