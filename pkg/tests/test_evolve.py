import csv
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad, trapezoid
from scipy.special import gamma as gamma_fn

from carleman.errors import (AnnulusOutsideBox, EdgeDecayViolated, HypothesisUnmet, NonHermitian,
                             WeightOverflow)
from carleman.evolve import (EvolutionSpec, LogConvexInstance, Trajectory, derivative_forcings,
                             edge_ratio, eta, evolve, evolve_centered, gamma_profile, gaussian,
                             kernel, kernel_1d, kernel_origin_exact, lemma_identity_check,
                             load_trajectory, log_weighted_norm, logconvexity_check,
                             lower_bound_demo, make_cutoffs, plane_wave, plateau_ball_norm,
                             plateau_height, refine, save_trajectory, series_1d, weighted_norm,
                             write_curve)
from carleman.numgrid import Field, GridSpec

X = sp.Symbol("x", real=True)


def _free_gaussian_exact(x, t, w):
    """(1/2pi) int hat(u0)(xi) e^{i xi x + i xi^4 t}, hat(u0) = w sqrt(2pi) e^{-w^2 xi^2/2}."""
    amp = lambda xi: w / math.sqrt(2 * math.pi) * math.exp(-w * w * xi * xi / 2)
    top = 12.0 / w
    re = quad(lambda xi: amp(xi) * math.cos(xi * x + xi ** 4 * t), -top, top, limit=4000, epsabs=1e-14, epsrel=1e-12)[0]
    im = quad(lambda xi: amp(xi) * math.sin(xi * x + xi ** 4 * t), -top, top, limit=4000, epsabs=1e-14, epsrel=1e-12)[0]
    return complex(re, im)


def test_free_gaussian_against_quadrature():
    spec = EvolutionSpec(1, 80.0, 1024)
    w = 2.0
    tr = evolve(gaussian(spec.grid, width=w), spec, T=0.3, n_store=4)
    x = spec.grid.x(1)
    for k in (1, 3):
        for i in (400, 512, 600):
            assert abs(tr.states[k][i] - _free_gaussian_exact(x[i], tr.times[k], w)) < 1e-10


@pytest.mark.parametrize("Vc", [0.0, 0.7, -1.3])
def test_plane_wave_exact(Vc):
    N = 32
    V = None if Vc == 0 else np.full(N, Vc)
    spec = EvolutionSpec(1, math.pi, N, V=V, edge_tol=None)
    u0 = plane_wave(spec.grid, 3.0)
    tr = evolve(u0, spec, n_store=9)
    exact = np.exp(1j * 3.0 * spec.grid.x(1)[None]) * np.exp(1j * (81 - Vc) * tr.times[:, None])
    assert np.max(np.abs(tr.states - exact)) < 1e-10


def _bump_spec(dt, N=128, X=20.0):
    x = GridSpec(1, N, X).x(1)
    return EvolutionSpec(1, X, N, V=0.9 * np.exp(-x ** 2 / 8) * np.cos(x), dt=dt, edge_tol=None)


def test_strang_second_order():
    u0 = gaussian(_bump_spec(1e-3).grid, width=3.0)
    ref = evolve(u0, _bump_spec(1e-4), T=0.2, n_store=2).states[-1]
    errs = [np.max(np.abs(evolve(u0, _bump_spec(dt), T=0.2, n_store=2).states[-1] - ref))
            for dt in (0.02, 0.01)]
    assert 3.5 < errs[0] / errs[1] < 4.5


def test_unitarity_and_reversal_with_potential():
    spec = _bump_spec(1e-3)
    u0 = gaussian(spec.grid, width=3.0)
    tr = evolve(u0, spec, T=0.5, n_store=6)
    assert np.ptp(tr.norms()) / tr.norms()[0] < 1e-12
    back = evolve(tr.states[-1], spec, T=-0.5, n_store=2)
    assert np.max(np.abs(back.states[-1] - u0.values)) < 1e-10


def test_edge_decay_violation():
    spec = EvolutionSpec(1, 5.0, 64)
    with pytest.raises(EdgeDecayViolated):
        evolve(gaussian(spec.grid, width=3.0), spec)
    assert edge_ratio(np.ones(16)) == 1.0
    assert edge_ratio(np.zeros(16)) == 0.0


def test_potential_validation():
    with pytest.raises(ValueError):
        EvolutionSpec(1, 5.0, 32, V=np.full(32, 1j))
    with pytest.raises(ValueError):
        EvolutionSpec(1, 5.0, 32, dt=0.0)
    spec = EvolutionSpec(1, 5.0, 32)
    with pytest.raises(ValueError):
        evolve(np.zeros(16), spec)


def test_evolve_centered():
    spec = EvolutionSpec(1, 40.0, 256)
    u_mid = gaussian(spec.grid, width=3.5)
    tr = evolve_centered(u_mid, spec, n_store=17)
    assert np.allclose(tr.times, np.linspace(0, 1, 17))
    assert np.array_equal(tr.states[8], u_mid.values)
    fwd = evolve(tr.states[0], spec, n_store=17)
    assert np.max(np.abs(fwd.states - tr.states)) < 1e-10
    with pytest.raises(ValueError):
        evolve_centered(u_mid, spec, t_mid=2.0)


@pytest.mark.parametrize("lam", [0.0, 0.05, 0.2])
def test_weighted_norm_against_quad(lam):
    w = 1.5
    g = GridSpec(1, 1024, 20.0)
    u = Field(np.exp(-g.x(1) ** 2 / (2 * w * w)), g)
    f = lambda x: math.exp(-x * x / (w * w) + 2 * lam * abs(x) ** (4 / 3))
    exact = math.sqrt(2 * quad(f, 0, 20.0)[0])
    # the |x|^(4/3) kink at 0 limits the trapezoid sum to ~h^(7/3)
    assert weighted_norm(u, lam) == pytest.approx(exact, rel=1e-5)


def test_weight_overflow_and_zero():
    g = GridSpec(1, 64, 40.0)
    with pytest.raises(WeightOverflow):
        log_weighted_norm(Field(np.ones(64), g), lam=10.0)
    assert log_weighted_norm(Field(np.zeros(64), g), lam=10.0) == -math.inf


def test_logconvexity_pure_phase_and_convex_family():
    spec = EvolutionSpec(1, math.pi, 32, edge_tol=None)
    tr = evolve(plane_wave(spec.grid, 2.0), spec, n_store=17)
    assert logconvexity_check(tr, 0.05)["C"] == pytest.approx(1.0, abs=1e-10)
    # log H(t) = a + b t + c t^2 with c > 0 is convex, so the chord bound holds with C = 1
    g = GridSpec(1, 64, 8.0)
    base = np.exp(-g.x(1) ** 2 / 2)
    ts = np.linspace(0, 1, 11)
    states = np.array([base * math.exp(0.3 * t + 0.8 * t * t) for t in ts])
    lc = logconvexity_check(Trajectory(ts, states, g), 0.05)
    assert lc["C"] == pytest.approx(1.0, abs=1e-12)
    concave = np.array([base * math.exp(-0.8 * t * t + 0.8 * t) for t in ts])
    lc = logconvexity_check(Trajectory(ts, concave, g), 0.05, ceiling=1.1)
    assert lc["C"] == pytest.approx(math.exp(0.2), rel=1e-9) and lc["violated"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_derivative_forcings_against_sympy(k):
    g = GridSpec(1, 256, 12.0)
    uexpr = sp.exp(-X ** 2 / 2 + sp.I * X)
    x = g.x(1)
    # 24-periodic so spectral derivatives of V are exact
    Vexpr = sp.cos(sp.pi * X / 6) * sp.exp(sp.sin(sp.pi * X / 12) ** 2)
    V = sp.lambdify(X, Vexpr, "numpy")(x)
    u = sp.lambdify(X, uexpr, "numpy")(x)
    H, M = derivative_forcings(Field(u, g), V, k)
    exact = sp.lambdify(X, sp.diff(Vexpr * uexpr, X, k) - Vexpr * sp.diff(uexpr, X, k), "numpy")(x)
    assert M is None
    assert np.max(np.abs(H.values - exact)) < 1e-9 * np.max(np.abs(exact))
    with pytest.raises(ValueError):
        derivative_forcings(Field(u, g), V, 4)


def _static(u, g, n=65):
    ts = np.linspace(0, 1, n)
    return Trajectory(ts, np.broadcast_to(u, (n,) + g.shape).copy(), g)


def test_gamma_profile_against_quad():
    g = GridSpec(1, 256, 12.0)
    uexpr = sp.exp(-(X - 1) ** 2 / 4) * sp.exp(sp.I * X / 2)
    u = sp.lambdify(X, uexpr, "numpy")(g.x(1))
    dens = sum(sp.Abs(sp.diff(uexpr, X, k)) ** 2 for k in range(4))
    f = sp.lambdify(X, dens, "math")
    R = 3.0
    exact = math.sqrt(quad(f, R - 1, R)[0] + quad(f, -R, -(R - 1))[0])
    assert gamma_profile(_static(u, g), R) == pytest.approx(exact, rel=1e-9)
    with pytest.raises(AnnulusOutsideBox):
        gamma_profile(_static(u, g), 13.0)


def test_gamma_profile_2d_cells_close_to_quad():
    g = GridSpec(2, 128, 8.0)
    r2 = g.coord(1) ** 2 + g.coord(2) ** 2
    u = np.broadcast_to(np.exp(-r2 / 4), g.shape)
    # radial density |u|^2 + sum_j sum_k |d_j^k u|^2 integrated over the annulus
    x, y = sp.symbols("x y", real=True)
    U = sp.exp(-(x * x + y * y) / 4)
    dens = U ** 2 + sum(sp.diff(U, v, k) ** 2 for v in (x, y) for k in (1, 2, 3))
    fr = sp.lambdify((x, y), dens, "math")
    R = 2.0
    from scipy.integrate import dblquad
    val = dblquad(lambda r, th: r * fr(r * math.cos(th), r * math.sin(th)), 0, 2 * math.pi,
                  R - 1, R)[0]
    assert gamma_profile(_static(u, g, 5), R) == pytest.approx(math.sqrt(val), rel=2e-3)


def test_plateau_ball_norm():
    g = GridSpec(1, 4096, 8.0)
    u = np.exp(-g.x(1) ** 2)
    exact = math.sqrt(0.25 * quad(lambda x: math.exp(-2 * x * x), -1, 1)[0])
    assert plateau_ball_norm(_static(u, g, 257)) == pytest.approx(exact, rel=1e-3)


@given(st.floats(-3, 3), st.integers(1, 4))
@settings(max_examples=30)
def test_eta_derivatives_fd(s, k):
    h = 1e-5
    fd = (eta(s + h, k - 1) - eta(s - h, k - 1)) / (2 * h)
    assert float(fd) == pytest.approx(float(eta(s, k)), abs=1e-4 * 10 ** k)


def test_eta_shape():
    s = np.linspace(-3, 3, 601)
    e = eta(s)
    assert np.all(e[np.abs(s) <= 1] == 0) and np.all(e[np.abs(s) >= 2] == 1)
    half = e[s >= 0]
    assert np.all(np.diff(half) >= 0)
    assert np.allclose(e, e[::-1])


def test_theta_derivatives_fd():
    cut = make_cutoffs(2, 4.0)
    rng = np.random.default_rng(1)
    h = 1e-4
    for _ in range(20):
        p = rng.uniform(-4.5, 4.5, size=2)
        th = cut.theta([p[0], p[1]])
        for j in (1, 2):
            e = np.zeros(2)
            e[j - 1] = h
            for k in range(1, 5):
                lo = cut.theta(list(p - e))
                hi = cut.theta(list(p + e))
                key_prev = "theta" if k == 1 else f"theta_x{j}_{k - 1}"
                fd = (hi[key_prev] - lo[key_prev]) / (2 * h)
                assert float(fd) == pytest.approx(float(th[f"theta_x{j}_{k}"]), abs=1e-3 * 8 ** k)


def test_cutoff_constants():
    assert plateau_height(1) == 3.0 and plateau_height(2) == pytest.approx(1 + math.sqrt(5))
    assert not make_cutoffs(1, 4.0).flagged and make_cutoffs(2, 4.0).flagged
    with pytest.raises(ValueError):
        make_cutoffs(1, 1.5)
    cut = make_cutoffs(1, 4.0)
    assert cut.phi(0.5) == pytest.approx(3.0) and cut.phi(0.1) == 0.0


def test_refine_and_series_exact_on_trig_polynomials():
    g = GridSpec(1, 32, math.pi)
    x = g.x(1)
    u = np.exp(3j * x) + 0.5 * np.cos(5 * x) + 0.25 * np.sin(x)
    out, fine = refine(u, g, 4, derivs=[(0,), (1,)])
    xf = fine.x(1)
    assert np.allclose(out[(0,)], np.exp(3j * xf) + 0.5 * np.cos(5 * xf) + 0.25 * np.sin(xf),
                       atol=1e-12)
    assert np.allclose(out[(1,)], 3j * np.exp(3j * xf) - 2.5 * np.sin(5 * xf)
                       + 0.25 * np.cos(xf), atol=1e-11)
    pts = np.array([0.123, -2.0, 1.7])
    assert np.allclose(series_1d(u, g, pts, 2),
                       -9 * np.exp(3j * pts) - 12.5 * np.cos(5 * pts) - 0.25 * np.sin(pts),
                       atol=1e-10)
    # Nyquist mode cos(16 x) is reproduced symmetrically
    assert np.allclose(series_1d(np.cos(16 * x), g, pts), np.cos(16 * pts), atol=1e-12)


def test_heat_kernel_values():
    assert kernel_1d(1.0, 0.0) == pytest.approx(gamma_fn(1.25) / math.pi, abs=1e-12)
    assert kernel_origin_exact(2, 0.5) == pytest.approx(kernel(2, 0.5, [0, 0]), rel=1e-10)
    # independent oracle: inverse Fourier transform on a dense xi grid
    xi = np.linspace(0, 6, 200001)
    for z in (0.7, 2.5):
        ref = trapezoid(np.cos(xi * z) * np.exp(-xi ** 4), xi) / math.pi
        assert kernel_1d(1.0, z) == pytest.approx(ref, abs=1e-9)
    # K(t, z) = t^{-1/4} K(1, z t^{-1/4})
    t = 0.3
    assert kernel_1d(t, 1.1) == pytest.approx(t ** -0.25 * kernel_1d(1, 1.1 * t ** -0.25), rel=1e-9)
    with pytest.raises(ValueError):
        kernel_1d(0.0, 1.0)


def test_lemma_instances():
    with pytest.raises(NonHermitian):
        LogConvexInstance(np.array([[0, 1], [0, 0]]), np.zeros((2, 2)), np.zeros((2, 2)),
                          np.zeros((2, 2)), np.ones(2))
    res = lemma_identity_check(LogConvexInstance.random(6, seed=5))
    assert res["residual_direct"] < 1e-12
    assert res["residual_fd"] < 1e-6
    assert res["ndot_margin_min"] >= -1e-8


def test_lower_bound_demo_rejects_bad_input():
    spec = EvolutionSpec(1, 40.0, 256)
    tr = evolve_centered(gaussian(spec.grid, width=3.5), spec, n_store=33)
    with pytest.raises(HypothesisUnmet):
        lower_bound_demo(tr.scaled(0.0), 4.0)
    short = Trajectory(tr.times[:10], tr.states[:10], tr.grid, tr.spec)
    with pytest.raises(HypothesisUnmet):
        lower_bound_demo(short, 4.0)
    with pytest.raises(HypothesisUnmet):
        lower_bound_demo(tr, 39.5)


def test_trajectory_io_round_trip(tmp_path):
    spec = _bump_spec(1e-2, N=64)
    tr = evolve(gaussian(spec.grid, width=3.0), spec, T=0.1, n_store=3)
    save_trajectory(tr, tmp_path / "run")
    back = load_trajectory(tmp_path / "run")
    assert np.array_equal(back.times, tr.times) and np.array_equal(back.states, tr.states)
    assert np.array_equal(back.spec.V, spec.V) and back.spec.dt == spec.dt
    p = write_curve(tmp_path / "c.csv", ["t", "v"], [(0.0, 1.5), (0.5, 2.0)])
    rows = list(csv.reader(open(p)))
    assert rows == [["t", "v"], ["0", "1.5"], ["0.5", "2"]]
