"""Carleman ratio on admissible test functions and the discrete optimal constant."""
from collections import namedtuple
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..errors import SolverDiverged, SupportViolation
from .apply import apply_op
from .grid import Field

CarlemanRatio = namedtuple("CarlemanRatio", "lhs rhs ratio log_scale")


@lru_cache(maxsize=None)
def _carleman_ops(d):
    from ..conjugate import build_carleman_operator
    return build_carleman_operator(d)


@lru_cache(maxsize=None)
def _commutator_form(d):
    from ..ibp import commutator_form
    return commutator_form(d)


def admissible_mask(grid, bindings):
    return np.abs(bindings.psi(grid)) >= 1.0


def _check_admissible(values, grid, bindings, rel):
    a = np.abs(values)
    vmax = a.max()
    if vmax == 0:
        return
    bad = ~admissible_mask(grid, bindings)
    if np.any(a[bad] > rel * vmax):
        raise SupportViolation("field does not vanish on the set |x1/R + phi(t)| < 1")


def carleman_ratio(u=None, alpha=None, R=None, phi=0.0, g=None, rel=1e-12, check_support=True):
    """lhs = ||e^{a Phi^2} (i d_t + sum d^4) u||^2, rhs = a^7/R^8 ||e^{a Phi^2} u||^2.

    Pass either u or the pre-weighted g = e^{a Phi^2} u.  With u the weight is
    shifted by its maximum on the support; the shift is returned as log_scale
    (lhs and rhs are multiplied by exp(-2*log_scale)).
    """
    from .grid import Bindings
    if (u is None) == (g is None):
        raise ValueError("pass exactly one of u, g")
    src = u if u is not None else g
    grid = src.grid
    if not grid.has_time:
        raise ValueError("carleman_ratio needs a space-time grid")
    b = Bindings(alpha=alpha, R=R, phi=phi)
    _check_admissible(src.values, grid, b, rel)
    if not np.any(src.values):
        return CarlemanRatio(0.0, 0.0, float("inf"), 0.0)
    shift = 0.0
    if u is not None:
        expo = alpha * b.weight_exponent(grid)
        support = np.abs(u.values) > 0
        shift = float(np.max(expo[support]))
        gv = u.values * np.exp(expo - shift)
        g = Field(gv, grid)
    L, _, _ = _carleman_ops(grid.d)
    Lg = apply_op(L, g, b, check_support=check_support)
    lhs = Lg.norm2()
    rhs = alpha ** 7 / R ** 8 * g.norm2()
    return CarlemanRatio(lhs, rhs, lhs / rhs, shift)


SPLINE_DEGREE = 5
_GAUSS = np.polynomial.legendre.leggauss(10)


class _SplineAxis:
    """Clamped quintic B-splines on [a, b] with knots at the grid nodes inside.

    The first and last three basis functions are dropped so every function in
    the span vanishes with its first two derivatives at both ends.  Refining
    the grid dyadically refines the knots, so the spaces are nested.
    """

    def __init__(self, a, b, nodes):
        from scipy.interpolate import BSpline
        k = SPLINE_DEGREE
        inner = nodes[(nodes > a) & (nodes < b)]
        brk = np.concatenate([[a], inner, [b]])
        # merge breakpoints closer than a tiny fraction of the spacing
        keep = np.concatenate([[True], np.diff(brk) > 1e-9 * (b - a)])
        brk = brk[keep]
        brk[-1] = b
        self.breaks = brk
        t = np.concatenate([[a] * k, brk, [b] * k])
        n = len(t) - k - 1
        self.n = n - 6
        if self.n <= 0:
            return
        gx, gw = _GAUSS
        lo, hi = brk[:-1], brk[1:]
        half = (hi - lo) / 2
        self.x = ((lo + hi) / 2)[:, None] + half[:, None] * gx[None, :]
        self.w = (half[:, None] * gw[None, :]).ravel()
        self.x = self.x.ravel()
        spl = BSpline(t, np.eye(n), k)
        self.basis = [spl.derivative(m)(self.x)[:, 3:n - 3] if m else spl(self.x)[:, 3:n - 3]
                      for m in range(4)]

    def gram(self, fvals, m1, m2):
        B1, B2 = self.basis[m1], self.basis[m2]
        return B1.T @ ((self.w * fvals)[:, None] * B2)


def _generator_axes(alphabet):
    """Which variable each generator depends on (None for constants on a slice)."""
    axes = {}
    for g in alphabet.generators:
        if g == "psi":
            axes[g] = 1
        elif g.startswith("x") and g[1:].isdigit():
            axes[g] = int(g[1:])
        else:
            axes[g] = None
    return axes


def assemble_spline_form(form, axes, env_const, coord_funcs):
    """(Q, G): form matrix and Gram matrix on a tensor-product spline space."""
    from ..ibp import IMCROSS, RECROSS, SQUARE
    al = form.alphabet
    gaxes = _generator_axes(al)
    d = len(axes)
    names = al.generators
    size = int(np.prod([ax.n for ax in axes]))
    Q = np.zeros((size, size), dtype=complex)

    def kron_all(mats):
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    for kind, a, b, w in form.items():
        if a[0] or b[0]:
            raise ValueError("spline assembly cannot handle time derivatives")
        for e, c in w.terms.items():
            const = float(c.re)
            factors = [np.ones_like(ax.x) for ax in axes]
            for i, k in enumerate(e):
                if not k:
                    continue
                var = gaxes[names[i]]
                if var is None:
                    const *= env_const[names[i]] ** k
                else:
                    factors[var - 1] = factors[var - 1] * coord_funcs[names[i]](axes[var - 1].x) ** k
            mats = [axes[v].gram(factors[v], a[v + 1], b[v + 1]) for v in range(d)]
            M = const * kron_all(mats)
            if kind == SQUARE:
                Q += M
            elif kind == RECROSS:
                Q += (M + M.T) / 2
            else:
                Q += (M - M.T) / 2j
    G = kron_all([ax.gram(np.ones_like(ax.x), 0, 0) for ax in axes])
    return Q, G


def _min_generalized(Q, G, dense_limit):
    n = Q.shape[0]
    Q = (Q + Q.conj().T) / 2
    if n <= dense_limit:
        vals = scipy.linalg.eigh(Q, G, eigvals_only=True, subset_by_index=[0, 0])
        return float(vals[0])
    Qs, Gs = sp.csc_matrix(Q), sp.csc_matrix(G)
    lower = float(np.min(np.real(np.diag(Q)) / np.real(np.diag(G))))
    sigma = min(lower, 0.0) - 1.0
    try:
        vals = spla.eigsh(Qs, k=1, M=Gs, sigma=sigma, which="LM", tol=1e-12,
                          v0=np.ones(n, dtype=complex), return_eigenvectors=False)
    except (spla.ArpackNoConvergence, spla.ArpackError) as exc:
        raise SolverDiverged(str(exc)) from exc
    return float(np.real(vals[0]))


def rayleigh_min(d, alpha, R, phi, grid, dense_limit=3000, form=None):
    """min <f, [S,A] f>/||f||^2 over discrete fields on the admissible set, times R^8/alpha^7.

    Discrete fields are clamped quintic splines with knots at the grid nodes
    (Rayleigh-Ritz).  The commutator form has no time derivatives, so each
    time slice is an independent generalized eigenproblem; the admissible set
    of a slice is the box cut to x1 >= R(1 - phi) or x1 <= -R(1 + phi).
    """
    from .grid import Bindings
    if grid.d != d:
        raise ValueError("grid dimension does not match d")
    form = form if form is not None else _commutator_form(d)
    tgrid = grid.t() if grid.has_time else np.array([0.5])
    prof = Bindings(alpha=alpha, R=R, phi=phi).profile()
    lo1 = grid.centers[0] - grid.half_widths[0]
    hi1 = grid.centers[0] + grid.half_widths[0]
    others = []
    for j in range(2, d + 1):
        c, X = grid.centers[j - 1], grid.half_widths[j - 1]
        others.append(_SplineAxis(c - X, c + X, grid.x(j)))
    best = None
    for tk in tgrid:
        ph = [float(prof(tk, k)) for k in range(4)]
        env_const = {"alpha": float(alpha), "rhoInv": 1.0 / R, "phi": ph[0]}
        env_const.update({f"phi{k}": ph[k] for k in range(1, 4)})
        coords = {"psi": lambda x, p0=ph[0]: x / R + p0}
        coords.update({f"x{j}": (lambda x: x) for j in range(2, d + 1)})
        pieces = []
        right = max(lo1, R * (1 - ph[0]))
        if right < hi1:
            pieces.append((right, hi1))
        left = min(hi1, -R * (1 + ph[0]))
        if left > lo1:
            pieces.append((lo1, left))
        for a, b in pieces:
            ax1 = _SplineAxis(a, b, grid.x(1))
            axes = [ax1] + others
            if any(ax.n <= 0 for ax in axes):
                continue
            Q, G = assemble_spline_form(form, axes, env_const, coords)
            lam = _min_generalized(Q, G, dense_limit)
            if not np.isfinite(lam):
                raise SolverDiverged("non-finite eigenvalue")
            best = lam if best is None else min(best, lam)
    if best is None:
        raise SupportViolation("admissible region contains no grid points")
    return best * R ** 8 / alpha ** 7
