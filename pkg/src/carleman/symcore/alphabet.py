"""Generator alphabet and total differentiation table.

Generators are ordered: alpha, rhoInv, psi, x2..xd, phi, phi1..phiK, then the
optional cutoff symbols and the optional certification symbols.  Variables are
t, x1, ..., xd.  x1 itself is not a generator; x1*rhoInv is written psi - phi.
"""
from functools import lru_cache

from ..errors import ClosureExceeded

CUTOFF_ORDER = 4

# sentinel for "differentiating this generator exceeds its closure order"
_CLOSURE = "closure"


class SymbolAlphabet:
    def __init__(self, d, K=3, cutoffs=False, certify=False):
        if d < 1:
            raise ValueError("dimension must be positive")
        if K < 1:
            raise ValueError("closure order must be at least 1")
        self.d = d
        self.K = K
        self.cutoffs = bool(cutoffs)
        self.certify = bool(certify)
        self.variables = ("t",) + tuple(f"x{j}" for j in range(1, d + 1))
        gens = ["alpha", "rhoInv", "psi"] + [f"x{j}" for j in range(2, d + 1)]
        gens += ["phi"] + [f"phi{k}" for k in range(1, K + 1)]
        if self.cutoffs:
            gens += ["eta"] + [f"eta{k}" for k in range(1, CUTOFF_ORDER + 1)]
            gens += ["theta"]
            gens += [f"theta_x{j}_{k}" for j in range(1, d + 1)
                     for k in range(1, CUTOFF_ORDER + 1)]
        if self.certify:
            gens += ["omega", "omegaInv", "varrho", "varrhoInv"]
            gens += [f"B{k}" for k in range(0, K + 1)]
        self.generators = tuple(gens)
        self.index = {g: i for i, g in enumerate(gens)}
        self.var_index = {v: i for i, v in enumerate(self.variables)}
        self.n = len(gens)
        self._rules = self._build_rules()

    def key(self):
        return (self.d, self.K, self.cutoffs, self.certify)

    def __eq__(self, other):
        return isinstance(other, SymbolAlphabet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"SymbolAlphabet(d={self.d}, K={self.K}, cutoffs={self.cutoffs}, "
                f"certify={self.certify})")

    def _build_rules(self):
        # rules[g][v] is None (derivative 0), _CLOSURE, or a tuple of generator
        # indices whose product is the derivative
        ix = self.index
        nv = len(self.variables)
        rules = [[None] * nv for _ in range(self.n)]
        rules[ix["psi"]][1] = (ix["rhoInv"],)
        rules[ix["psi"]][0] = (ix["phi1"],)
        for j in range(2, self.d + 1):
            rules[ix[f"x{j}"]][j] = ()
        rules[ix["phi"]][0] = (ix["phi1"],)
        for k in range(1, self.K + 1):
            rules[ix[f"phi{k}"]][0] = (ix[f"phi{k + 1}"],) if k < self.K else _CLOSURE
        if self.cutoffs:
            names = ["eta"] + [f"eta{k}" for k in range(1, CUTOFF_ORDER + 1)]
            for k, name in enumerate(names):
                if k < CUTOFF_ORDER:
                    nxt = ix[names[k + 1]]
                    rules[ix[name]][1] = (nxt, ix["rhoInv"])
                    rules[ix[name]][0] = (nxt, ix["phi1"])
                else:
                    rules[ix[name]][1] = _CLOSURE
                    rules[ix[name]][0] = _CLOSURE
            for j in range(1, self.d + 1):
                rules[ix["theta"]][j] = (ix[f"theta_x{j}_1"],)
                for k in range(1, CUTOFF_ORDER + 1):
                    g = ix[f"theta_x{j}_{k}"]
                    for i in range(1, self.d + 1):
                        if i == j and k < CUTOFF_ORDER:
                            rules[g][i] = (ix[f"theta_x{j}_{k + 1}"],)
                        else:
                            # mixed or too-high partials of theta are not tracked
                            rules[g][i] = _CLOSURE
        return rules

    def rule(self, gen, var):
        r = self._rules[gen][var]
        if r is _CLOSURE:
            raise ClosureExceeded(
                f"d/d{self.variables[var]} of {self.generators[gen]} exceeds closure order")
        return r

    def var(self, v):
        """Variable index from name ('t', 'x1', ...) or integer."""
        if isinstance(v, int):
            if not 0 <= v < len(self.variables):
                raise ValueError(f"variable index {v} out of range")
            return v
        try:
            return self.var_index[v]
        except KeyError:
            raise ValueError(f"unknown variable {v!r} for d={self.d}") from None


@lru_cache(maxsize=None)
def get_alphabet(d, K=3, cutoffs=False, certify=False):
    return SymbolAlphabet(d, K=K, cutoffs=cutoffs, certify=certify)
