"""sympy translations of engine objects, used as independent oracles in tests."""
import sympy as sp

from carleman.symcore import DiffPoly


class SympyFrame:
    """Concrete meaning of every generator as a sympy expression."""

    def __init__(self, d):
        self.d = d
        self.t = sp.Symbol("t", real=True)
        self.x = [sp.Symbol(f"x{j}", real=True) for j in range(1, d + 1)]
        self.alpha = sp.Symbol("alpha", positive=True)
        self.R = sp.Symbol("R", positive=True)
        self.phi = sp.Function("phi")(self.t)
        self.psi = self.x[0] / self.R + self.phi
        self.eta = sp.Function("eta")
        self.theta = sp.Function("theta")(*self.x)
        self.f = sp.Function("f")(self.t, *self.x)
        self.vars = [self.t] + self.x

    def generator(self, name):
        if name == "alpha":
            return self.alpha
        if name == "rhoInv":
            return 1 / self.R
        if name == "psi":
            return self.psi
        if name == "phi":
            return self.phi
        if name.startswith("phi"):
            return sp.diff(self.phi, self.t, int(name[3:]))
        if name == "eta":
            return self.eta(self.psi)
        if name.startswith("eta"):
            s = sp.Symbol("s")
            return sp.diff(self.eta(s), s, int(name[3:])).subs(s, self.psi)
        if name == "theta":
            return self.theta
        if name.startswith("theta_x"):
            j, k = name[len("theta_x"):].split("_")
            return sp.diff(self.theta, self.x[int(j) - 1], int(k))
        if name.startswith("x"):
            return self.x[int(name[1:]) - 1]
        raise KeyError(name)

    def poly(self, p):
        gens = p.alphabet.generators
        out = 0
        for e, c in p.terms.items():
            term = sp.Rational(c.re.numerator, c.re.denominator) + \
                sp.I * sp.Rational(c.im.numerator, c.im.denominator)
            for i, k in enumerate(e):
                if k:
                    term = term * self.generator(gens[i]) ** k
            out += term
        return out

    def apply(self, op, g=None):
        """Engine operator applied to g (default: the generic f)."""
        g = self.f if g is None else g
        out = 0
        for idx, p in op.terms.items():
            dg = g
            for v, k in enumerate(idx):
                if k:
                    dg = sp.diff(dg, self.vars[v], k)
            out += self.poly(p) * dg
        return out

    def weight(self):
        W = self.psi ** 2
        for xj in self.x[1:]:
            W += (xj / self.R) ** 2
        return W


def is_zero(expr):
    return sp.simplify(sp.expand(expr)) == 0


def random_poly(al, draw_coeffs, names, max_deg=2):
    """DiffPoly from a list of (coeff, exponents-by-name) pairs."""
    out = DiffPoly.zero(al)
    for c, powers in draw_coeffs:
        out = out + DiffPoly.monomial(al, {n: k for n, k in zip(names, powers) if k}, c)
    return out
