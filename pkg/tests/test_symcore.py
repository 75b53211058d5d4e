import numpy as np
import sympy as sp
import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from carleman.errors import AlphabetMismatch, ClosureExceeded, ParseError
from carleman.symcore import (DerivIndex, DiffOp, DiffPoly, GaussianRational, format_op,
                              format_poly, get_alphabet, op_adjoint, op_commutator, op_compose,
                              op_split, parse_op, parse_poly, swap_axes)

from oracles import SympyFrame, is_zero

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussianRational, fracs, fracs)


def to_sympy(g):
    return sp.Rational(g.re.numerator, g.re.denominator) + sp.I * sp.Rational(g.im.numerator, g.im.denominator)


@given(gauss, gauss)
def test_gaussian_field_ops_match_sympy(a, b):
    A, B = to_sympy(a), to_sympy(b)
    assert to_sympy(a + b) == sp.expand(A + B)
    assert to_sympy(a * b) == sp.expand(A * B)
    assert to_sympy(a - b) == sp.expand(A - B)
    if b:
        assert sp.simplify(to_sympy(a / b) - A / B) == 0


@given(gauss)
def test_gaussian_conjugate_and_coerce(a):
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).is_real()
    assert GaussianRational.coerce(a) is a


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


AL1 = get_alphabet(1)
NAMES = ["alpha", "rhoInv", "psi", "phi", "phi1"]
monos = st.lists(st.tuples(st.integers(-5, 5), st.tuples(*[st.integers(0, 2)] * len(NAMES))),
                 min_size=0, max_size=4)


def build(items):
    p = DiffPoly.zero(AL1)
    for c, powers in items:
        p = p + DiffPoly.monomial(AL1, {n: k for n, k in zip(NAMES, powers) if k}, c)
    return p


FR = SympyFrame(1)


@given(monos, monos)
def test_poly_ring_against_sympy(a, b):
    p, q = build(a), build(b)
    assert is_zero(FR.poly(p * q) - FR.poly(p) * FR.poly(q))
    assert is_zero(FR.poly(p + q) - FR.poly(p) - FR.poly(q))
    assert (p * q) == (q * p)


@given(monos)
def test_total_derivative_is_chain_rule(a):
    p = build(a)
    for var, sym in (("x1", FR.x[0]), ("t", FR.t)):
        lhs = FR.poly(p.diff(var))
        assert is_zero(lhs - sp.diff(FR.poly(p), sym))


def test_closure_order_is_enforced():
    p = DiffPoly.gen(AL1, "phi3")
    with pytest.raises(ClosureExceeded):
        p.diff("t")


def test_unknown_generator_rejected():
    with pytest.raises(ValueError):
        DiffPoly.gen(AL1, "nope")


@pytest.mark.parametrize("text", [
    "2*alpha*psi^2 - 3/4*rhoInv",
    "(psi - phi)*phi1 + i*alpha",
    "alpha^7*rhoInv^8*psi^6",
])
def test_poly_parse_format_round_trip(text):
    p = parse_poly(text, AL1)
    assert parse_poly(format_poly(p), AL1) == p


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("D[x1]*psi", AL1)
    with pytest.raises(ParseError):
        parse_op("psi +* 2", AL1)


def test_composition_rule_in_text():
    # D[x1]*psi is psi*D[x1] + rhoInv
    op = parse_op("D[x1]*psi", AL1)
    assert op == parse_op("psi*D[x1] + rhoInv", AL1)
    assert parse_op(format_op(op), AL1) == op


ops_text = st.sampled_from([
    "psi*D[x1]^2", "alpha*D[x1] + phi1", "i*D[t] + D[x1]^4", "phi*psi^2*D[x1]^3 - i*alpha",
    "rhoInv*D[t]*D[x1]", "psi^3",
])


@given(ops_text, ops_text)
def test_composition_matches_sympy(a, b):
    A, B = parse_op(a, AL1), parse_op(b, AL1)
    lhs = FR.apply(op_compose(A, B))
    rhs = FR.apply(A, FR.apply(B))
    assert is_zero(lhs - rhs)


@given(ops_text, ops_text, ops_text)
def test_jacobi_identity(a, b, c):
    A, B, C = (parse_op(s, AL1) for s in (a, b, c))
    j = op_commutator(A, op_commutator(B, C)) + op_commutator(B, op_commutator(C, A)) + \
        op_commutator(C, op_commutator(A, B))
    assert j.is_zero()


@given(ops_text)
def test_adjoint_involution_and_split(a):
    A = parse_op(a, AL1)
    assert op_adjoint(op_adjoint(A)) == A
    S, K = op_split(A)
    assert S + K == A
    assert op_adjoint(S) == S and op_adjoint(K) == -K


def test_adjoint_against_quadrature():
    # <A f, g> = <f, A* g> for rapidly decaying f, g; sympy builds both integrands
    A = parse_op("psi^2*D[x1]^3 + i*phi1*D[t] + alpha*D[x1]", AL1)
    fr = FR
    x, t = fr.x[0], fr.t
    bump = sp.exp(-x ** 2 - t ** 2)
    fdat = (1 + x + sp.I * t) * bump
    gdat = (x - 2 * t + sp.I) * bump
    env = {fr.phi: sp.sin(t), fr.R: 2, fr.alpha: sp.Rational(3, 2)}

    def concrete(op, g):
        return fr.apply(op, g).subs(env).doit()

    lhs = sp.lambdify((t, x), concrete(A, fdat) * sp.conjugate(gdat))
    rhs = sp.lambdify((t, x), fdat * sp.conjugate(concrete(op_adjoint(A), gdat)))
    grid = np.linspace(-9, 9, 361)
    T, X = np.meshgrid(grid, grid, indexing="ij")
    h = grid[1] - grid[0]
    a = np.sum(lhs(T, X)) * h * h
    b = np.sum(rhs(T, X)) * h * h
    assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_alphabet_mismatch():
    a = DiffOp.deriv(get_alphabet(1), "x1")
    b = DiffOp.deriv(get_alphabet(2), "x1")
    with pytest.raises(AlphabetMismatch):
        op_compose(a, b)


def test_swap_axes_exchanges_directions():
    al = get_alphabet(3)
    op = parse_op("x2^2*D[x2]^4 + x3*D[x3]", al)
    sw = swap_axes(op, 2, 3)
    assert sw == parse_op("x3^2*D[x3]^4 + x2*D[x2]", al)
    with pytest.raises(ValueError):
        swap_axes(op, 1, 2)


def test_deriv_index():
    a = DerivIndex((0, 2, 1))
    assert a.order == 3
    subs = dict(a.sub_indices())
    assert subs[DerivIndex((0, 1, 1))] == 2
    with pytest.raises(ValueError):
        DerivIndex((0, -1))
    assert DerivIndex.unit(2, 1, 3) == DerivIndex((0, 3, 0))


def test_evaluate_requires_bindings():
    p = parse_poly("alpha*psi + 1/2", AL1)
    assert p.evaluate({"alpha": 2.0, "psi": 3.0}) == pytest.approx(6.5)
    with pytest.raises(KeyError):
        p.evaluate({"alpha": 1.0})
