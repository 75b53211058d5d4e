import csv
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from carleman.errors import SupportTouchesBoundary, SupportViolation, UnsupportedOrder
from carleman.numgrid import (Bindings, Field, GridSpec, apply_op, carleman_ratio, derivative,
                              export_csv, rayleigh_min, read_field, save_field, write_field)
from carleman.numgrid.grid import central_weights
from carleman.profiles import SineProfile
from carleman.symcore import get_alphabet, parse_op

X = sp.Symbol("x", real=True)
GAUSS = sp.exp(-X ** 2 / 2) * sp.exp(sp.I * X / 2)


def _gauss_on(g, axis_var=1):
    x = g.x(axis_var)
    return np.exp(-x ** 2 / 2 + 0.5j * x)


@pytest.mark.parametrize("kw", [dict(counts=8, half_widths=1.0), dict(counts=32, half_widths=0.0),
                                dict(counts=32, half_widths=1.0, scheme="cheb"),
                                dict(counts=32, half_widths=1.0, nt=4)])
def test_grid_validation(kw):
    with pytest.raises(ValueError):
        GridSpec(1, **kw)


def test_grid_axes():
    g = GridSpec(2, (32, 16), (2.0, 1.0), nt=16, centers=(5.0, 0.0))
    assert g.shape == (16, 32, 16)
    assert g.x(1)[0] == pytest.approx(3.0) and g.spacing(1) == pytest.approx(0.125)
    # time nodes are cell centered
    assert g.t()[0] == pytest.approx(1 / 32) and g.t()[-1] == pytest.approx(1 - 1 / 32)
    assert g.coord(2).shape == (1, 1, 16)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("scheme", ["spectral", "fd4"])
def test_derivative_against_sympy(m, scheme):
    g = GridSpec(1, 256, 12.0, scheme=scheme)
    h = g.spacing(1)
    # spectral: roundoff amplified by (pi/h)^m; fd4: h^4 truncation
    tol = 1e-15 * (np.pi / h) ** m if scheme == "spectral" else 10.0 * h ** 4
    got = derivative(_gauss_on(g), g, (0, m))
    exact = sp.lambdify(X, sp.diff(GAUSS, X, m), "numpy")(g.x(1))
    assert np.max(np.abs(got - exact)) <= tol * np.max(np.abs(exact))


def test_fd4_convergence_order():
    errs = []
    for n in (128, 256):
        g = GridSpec(1, n, 12.0, scheme="fd4")
        got = derivative(_gauss_on(g), g, (0, 4))
        exact = sp.lambdify(X, sp.diff(GAUSS, X, 4), "numpy")(g.x(1))
        errs.append(np.max(np.abs(got - exact)))
    assert math.log2(errs[0] / errs[1]) > 3.7


@given(st.integers(1, 6), st.integers(0, 9))
def test_central_weights_exact_on_polynomials(m, deg):
    p = (m + 1) // 2 + 1
    w = central_weights(m, p)
    # sum w_k k^deg = m! if deg == m, 0 for other deg < 2p+1
    if deg <= 2 * p:
        got = sum(wk * Fraction(k - p) ** deg for k, wk in enumerate(w))
        assert got == (math.factorial(m) if deg == m else 0)


def test_unsupported_order():
    g = GridSpec(1, 32, 1.0)
    with pytest.raises(UnsupportedOrder):
        derivative(np.zeros(32), g, (0, 7))


def test_time_derivative_fd():
    g = GridSpec(1, 32, 5.0, nt=64)
    T = g.coord(0)
    vals = np.broadcast_to(np.sin(3 * T) * np.exp(-g.coord(1) ** 2), g.shape)
    got = derivative(vals, g, (1, 0))
    exact = np.broadcast_to(3 * np.cos(3 * T) * np.exp(-g.coord(1) ** 2), g.shape)
    inner = slice(4, -4)
    assert np.max(np.abs(got[inner] - exact[inner])) < 1e-5


def test_field_validation_and_support():
    g = GridSpec(1, 64, 10.0)
    with pytest.raises(ValueError):
        Field(np.zeros(32), g)
    with pytest.raises(ValueError):
        Field(np.full(64, np.nan), g)
    Field(_gauss_on(g), g).check_support()
    with pytest.raises(SupportTouchesBoundary):
        Field(np.ones(64), g).check_support()


def test_field_io_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    vals = rng.normal(size=(16, 24)) + 1j * rng.normal(size=(16, 24))
    p = tmp_path / "f.bin"
    write_field(p, vals, (0.1, 0.2), (1.0, -2.0))
    got, h, o = read_field(p)
    assert np.array_equal(got, vals)
    assert list(h) == [0.1, 0.2] and list(o) == [1.0, -2.0]
    assert p.stat().st_size == 8 + 3 * 8 * 2 + 16 * vals.size

    g = GridSpec(1, 32, 2.0, nt=16, centers=6.0)
    f = Field(rng.normal(size=g.shape), g)
    save_field(tmp_path / "g.bin", f)
    got, h, o = read_field(tmp_path / "g.bin")
    assert np.array_equal(got, f.values)
    assert np.allclose(h, g.spacings()) and np.allclose(o, [1 / 32, 4.0])


def test_export_csv(tmp_path):
    g = GridSpec(2, 16, 1.0)
    vals = np.arange(256).reshape(16, 16) * (1 + 1j)
    p = tmp_path / "f.csv"
    export_csv(p, Field(vals, g))
    rows = list(csv.reader(open(p)))
    assert rows[0] == ["x1", "x2", "re", "im"]
    assert len(rows) == 257
    assert float(rows[2][1]) == pytest.approx(g.x(2)[1]) and float(rows[2][2]) == 1.0
    with pytest.raises(ValueError):
        export_csv(p, Field(vals, g), max_points=10)


def test_bindings_weight():
    g = GridSpec(2, 16, 3.0, nt=16)
    b = Bindings(alpha=2.0, R=4.0, phi=SineProfile(0.5))
    W = b.weight_exponent(g)
    T, x1, x2 = g.coord(0), g.coord(1), g.coord(2)
    exact = (x1 / 4 + 0.5 * np.sin(2 * np.pi * T)) ** 2 + (x2 / 4) ** 2
    assert np.allclose(W, np.broadcast_to(exact, g.shape))
    env = b.env(g)
    assert np.allclose(env["phi1"], np.pi * np.cos(2 * np.pi * T))


def test_apply_op_against_sympy():
    al = get_alphabet(1)
    op = parse_op("psi^2*D[x1]^4 + alpha*rhoInv*D[x1] + 3*psi", al)
    g = GridSpec(1, 256, 12.0)
    R, ph, a = 5.0, 0.3, 1.7
    f = Field(_gauss_on(g), g)
    got = apply_op(op, f, Bindings(alpha=a, R=R, phi=ph))
    psi = X / R + ph
    expr = psi ** 2 * sp.diff(GAUSS, X, 4) + a / R * sp.diff(GAUSS, X) + 3 * psi * GAUSS
    exact = sp.lambdify(X, expr, "numpy")(g.x(1))
    assert np.max(np.abs(got.values - exact)) < 1e-9 * np.max(np.abs(exact))


def _bump(g, lo, hi):
    x = g.coord(1)
    s = (2 * x - lo - hi) / (hi - lo)
    T = g.coord(0)
    st_ = (T - 0.5) / 0.4
    v = np.where(s ** 2 < 1, np.exp(-1 / np.clip(1 - s ** 2, 1e-300, None)), 0.0)
    w = np.where(st_ ** 2 < 1, np.exp(-1 / np.clip(1 - st_ ** 2, 1e-300, None)), 0.0)
    return np.broadcast_to(v * w, g.shape)


def test_carleman_ratio_support_violation():
    g = GridSpec(1, 64, 1.5, nt=32, centers=4.0)
    f = Field(_bump(g, 2.8, 5.2), g)  # reaches x1 < R = 4
    with pytest.raises(SupportViolation):
        carleman_ratio(f, alpha=10.0, R=4.0)


def test_carleman_ratio_needs_time():
    g = GridSpec(1, 64, 1.0, centers=6.0)
    with pytest.raises(ValueError):
        carleman_ratio(Field(np.zeros(64), g), alpha=1.0, R=4.0)


def test_carleman_ratio_u_and_g_agree():
    R, a = 4.0, 2.0
    g = GridSpec(1, 64, 1.0, nt=32, centers=5.2)
    u = Field(_bump(g, 4.3, 6.1), g)
    r1 = carleman_ratio(u, alpha=a, R=R)
    w = np.exp(a * Bindings(alpha=a, R=R).weight_exponent(g))
    r2 = carleman_ratio(g=Field(u.values * w, g), alpha=a, R=R)
    assert r1.ratio == pytest.approx(r2.ratio, rel=1e-10)
    assert r1.ratio > 0


def test_rayleigh_refinement_is_monotone():
    R, a = 4.0, 40.0
    vals = []
    for n in (32, 64):
        g = GridSpec(1, n, 0.75, nt=16, centers=R + 0.75)
        vals.append(rayleigh_min(1, a, R, 0.0, g))
    assert vals[1] <= vals[0] * (1 + 1e-9)
    assert vals[1] > 0
    with pytest.raises(ValueError):
        rayleigh_min(2, a, R, 0.0, g)


def test_rayleigh_no_admissible_points():
    g = GridSpec(1, 32, 1.0, nt=16, centers=0.0)
    with pytest.raises(SupportViolation):
        rayleigh_min(1, 10.0, 4.0, 0.0, g)


def test_zero_field_ratio_sentinel():
    g = GridSpec(1, 32, 1.0, nt=16, centers=6.0)
    r = carleman_ratio(Field(np.zeros(g.shape), g), alpha=5.0, R=4.0)
    assert r.lhs == 0 and r.rhs == 0 and r.ratio == math.inf


def test_ratio_scaling_between_radii():
    from carleman.certify import default_certificate
    cert = default_certificate(1)
    ratios = []
    for R in (4.0, 8.0):
        # same bump shape placed at psi = 2
        g = GridSpec(1, 64, 1.0, nt=32, centers=2 * R)
        u = Field(_bump(g, 2 * R - 0.9, 2 * R + 0.9), g)
        ratios.append(carleman_ratio(u, cert.alpha_threshold(R), R).ratio)
    assert min(ratios) >= cert.c
    assert 0.25 <= ratios[1] / ratios[0] <= 4


def test_apply_op_discrete_adjoint():
    from carleman.symcore import op_adjoint
    al = get_alphabet(1)
    op = parse_op("i*D[t] + psi^2*D[x1]^4 + alpha*psi*D[x1]^3 + phi1*D[x1] + i*psi", al)
    # well-resolved fields so the discrete product rule holds to roundoff
    g = GridSpec(1, 256, 4.0, nt=64, centers=6.0)
    b = Bindings(alpha=1.3, R=4.0, phi=SineProfile(0.4))
    env_t = np.exp(-((g.coord(0) - 0.5) / 0.08) ** 2)
    x = g.coord(1)
    f = Field(np.broadcast_to(env_t * np.exp(-(x - 5.8) ** 2 / 0.3), g.shape), g)
    h = Field(np.broadcast_to(env_t * np.exp(-(x - 6.2) ** 2 / 0.35 + 0.7j * x), g.shape), g)
    lhs = apply_op(op, f, b).inner(h)
    rhs = f.inner(apply_op(op_adjoint(op), h, b))
    assert abs(lhs - rhs) <= 1e-8 * abs(lhs)
