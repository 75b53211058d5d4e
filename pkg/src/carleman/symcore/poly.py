"""Exact multivariate polynomials over the symbol alphabet."""
from fractions import Fraction

from ..errors import AlphabetMismatch
from .gaussian import GaussianRational, ZERO


def _grlex_key(e):
    return (sum(e), e)


class DiffPoly:
    """Polynomial with Gaussian-rational coefficients.

    ``terms`` maps exponent tuples (one entry per generator) to nonzero
    coefficients.  Values are treated as immutable.
    """

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet, terms=None, _trusted=False):
        self.alphabet = alphabet
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            n = alphabet.n
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent vector length does not match alphabet")
                c = GaussianRational.coerce(c)
                if c:
                    clean[e] = clean.get(e, ZERO) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet, {}, _trusted=True)

    @classmethod
    def const(cls, alphabet, c):
        c = GaussianRational.coerce(c)
        if not c:
            return cls.zero(alphabet)
        return cls(alphabet, {(0,) * alphabet.n: c}, _trusted=True)

    @classmethod
    def gen(cls, alphabet, name, power=1):
        try:
            i = alphabet.index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None
        e = [0] * alphabet.n
        e[i] = power
        return cls(alphabet, {tuple(e): GaussianRational(1)}, _trusted=True)

    @classmethod
    def monomial(cls, alphabet, powers, coeff=1):
        e = [0] * alphabet.n
        for name, p in powers.items():
            e[alphabet.index[name]] += p
        return cls(alphabet, {tuple(e): coeff})

    # queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.alphabet.n, ZERO)

    def is_real(self):
        return all(c.is_real() for c in self.terms.values())

    def sorted_terms(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def degree(self, name=None):
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.alphabet.index[name]
        return max(e[i] for e in self.terms)

    def generators_used(self):
        used = set()
        for e in self.terms:
            used.update(self.alphabet.generators[i] for i, k in enumerate(e) if k)
        return used

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational, complex)):
            return self.terms == DiffPoly.const(self.alphabet, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other):
        if not isinstance(other, DiffPoly):
            return DiffPoly.const(self.alphabet, other)
        if other.alphabet is not self.alphabet and other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")
        return other

    # arithmetic
    def __add__(self, other):
        other = self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return DiffPoly(self.alphabet, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly(self.alphabet, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return DiffPoly(self.alphabet, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c):
        c = GaussianRational.coerce(c)
        if not c:
            return DiffPoly.zero(self.alphabet)
        return DiffPoly(self.alphabet, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = DiffPoly.const(self.alphabet, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return DiffPoly(self.alphabet, {e: c.conjugate() for e, c in self.terms.items()},
                        _trusted=True)

    def real_part(self):
        return DiffPoly(self.alphabet, {e: GaussianRational(c.re) for e, c in self.terms.items()
                                        if c.re}, _trusted=True)

    def imag_part(self):
        return DiffPoly(self.alphabet, {e: GaussianRational(c.im) for e, c in self.terms.items()
                                        if c.im}, _trusted=True)

    def diff(self, var):
        """Total derivative in a variable (name or index)."""
        al = self.alphabet
        v = al.var(var)
        out = {}
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if not k:
                    continue
                r = al.rule(i, v)
                if r is None:
                    continue
                ne = list(e)
                ne[i] -= 1
                for g in r:
                    ne[g] += 1
                ne = tuple(ne)
                add = c * k
                prev = out.get(ne)
                out[ne] = add if prev is None else prev + add
        return DiffPoly(al, {e: c for e, c in out.items() if c}, _trusted=True)

    def diff_multi(self, index):
        p = self
        for v, k in enumerate(index):
            for _ in range(k):
                if not p.terms:
                    return p
                p = p.diff(v)
        return p

    def subs(self, mapping):
        """Substitute generators by DiffPolys (same or other alphabet)."""
        target = None
        for q in mapping.values():
            if isinstance(q, DiffPoly):
                target = q.alphabet
                break
        target = target or self.alphabet
        cache = {}
        out = DiffPoly.zero(target)
        for e, c in self.terms.items():
            term = DiffPoly.const(target, c)
            for i, k in enumerate(e):
                if not k:
                    continue
                name = self.alphabet.generators[i]
                if name in mapping:
                    key = (name, k)
                    if key not in cache:
                        q = mapping[name]
                        if not isinstance(q, DiffPoly):
                            q = DiffPoly.const(target, q)
                        cache[key] = q ** k
                    term = term * cache[key]
                else:
                    term = term * DiffPoly.gen(target, name, k)
            out = out + term
        return out

    def to_alphabet(self, alphabet):
        """Re-embed into another alphabet containing every generator used."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * alphabet.n
            for i, k in enumerate(e):
                if k:
                    name = self.alphabet.generators[i]
                    if name not in alphabet.index:
                        raise AlphabetMismatch(f"generator {name} missing from target alphabet")
                    ne[alphabet.index[name]] = k
            out[tuple(ne)] = c
        return DiffPoly(alphabet, out, _trusted=True)

    def rename(self, perm):
        """Rename generators by a name->name mapping (must be injective)."""
        al = self.alphabet
        idx = [al.index[perm.get(g, g)] for g in al.generators]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * al.n
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] += k
            out[tuple(ne)] = c
        return DiffPoly(al, out, _trusted=True)

    def evaluate(self, env):
        """Numeric value; env maps generator names to scalars or numpy arrays."""
        gens = self.alphabet.generators
        total = 0
        powcache = {}
        for e, c in self.terms.items():
            val = complex(c) if c.im else float(c.re)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powcache:
                        try:
                            powcache[key] = env[gens[i]] ** k
                        except KeyError:
                            raise KeyError(f"no binding for generator {gens[i]!r}") from None
                    val = val * powcache[key]
            total = total + val
        return total

    def __repr__(self):
        from .grammar import format_poly
        return f"DiffPoly({format_poly(self)!r})"

    def __str__(self):
        from .grammar import format_poly
        return format_poly(self)


def poly_arith(lhs, rhs, kind):
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"unknown kind {kind!r}")


def poly_diff(p, var):
    return p.diff(var)


def poly_conj(p):
    return p.conj()
