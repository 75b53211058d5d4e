"""Linear differential operators with polynomial coefficients."""
from itertools import product
from math import comb

from ..errors import AlphabetMismatch
from .gaussian import GaussianRational
from .poly import DiffPoly


class DerivIndex(tuple):
    """Multi-index (a_t, a_1, ..., a_d)."""

    def __new__(cls, values):
        values = tuple(int(v) for v in values)
        if any(v < 0 for v in values):
            raise ValueError("derivative orders must be nonnegative")
        return super().__new__(cls, values)

    @classmethod
    def zero(cls, d):
        return cls((0,) * (d + 1))

    @classmethod
    def unit(cls, d, var, k=1):
        v = [0] * (d + 1)
        v[var] = k
        return cls(v)

    @property
    def order(self):
        return sum(self)

    def __add__(self, other):
        return DerivIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return DerivIndex(a - b for a, b in zip(self, other))

    def le(self, other):
        return all(a <= b for a, b in zip(self, other))

    def sort_key(self):
        return (sum(self), tuple(self))

    def sub_indices(self):
        """All c <= self with the multinomial weight prod C(a_i, c_i)."""
        for c in product(*(range(k + 1) for k in self)):
            w = 1
            for a, ci in zip(self, c):
                w *= comb(a, ci)
            yield DerivIndex(c), w


class DiffOp:
    """Finite sum of coefficient * derivative terms, coefficient on the left."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None):
        self.alphabet = alphabet
        clean = {}
        for idx, p in (terms or {}).items():
            idx = idx if isinstance(idx, DerivIndex) else DerivIndex(idx)
            if len(idx) != alphabet.d + 1:
                raise ValueError("derivative index length does not match dimension")
            if not isinstance(p, DiffPoly):
                p = DiffPoly.const(alphabet, p)
            elif p.alphabet != alphabet:
                raise AlphabetMismatch("coefficient alphabet differs from operator alphabet")
            if idx in clean:
                p = clean[idx] + p
            if p:
                clean[idx] = p
            else:
                clean.pop(idx, None)
        self.terms = clean

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def identity(cls, alphabet):
        return cls.mult(DiffPoly.const(alphabet, 1))

    @classmethod
    def mult(cls, p):
        return cls(p.alphabet, {DerivIndex.zero(p.alphabet.d): p})

    @classmethod
    def deriv(cls, alphabet, var, k=1, coeff=None):
        v = alphabet.var(var)
        p = coeff if coeff is not None else DiffPoly.const(alphabet, 1)
        if not isinstance(p, DiffPoly):
            p = DiffPoly.const(alphabet, p)
        return cls(alphabet, {DerivIndex.unit(alphabet.d, v, k): p})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def order(self):
        return max((i.order for i in self.terms), default=-1)

    def coeff(self, index):
        index = index if isinstance(index, DerivIndex) else DerivIndex(index)
        return self.terms.get(index, DiffPoly.zero(self.alphabet))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def _check(self, other):
        if isinstance(other, DiffPoly):
            other = DiffOp.mult(other)
        elif not isinstance(other, DiffOp):
            other = DiffOp.mult(DiffPoly.const(self.alphabet, other))
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for idx, p in other.terms.items():
            out[idx] = out[idx] + p if idx in out else p
        return DiffOp(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.alphabet, {i: -p for i, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        if isinstance(c, DiffPoly):
            return DiffOp(self.alphabet, {i: c * p for i, p in self.terms.items()})
        return DiffOp(self.alphabet, {i: p.scale(c) for i, p in self.terms.items()})

    def __mul__(self, other):
        """Composition (self after other)."""
        return op_compose(self, self._check(other))

    def __rmul__(self, other):
        return op_compose(self._check(other), self)

    def __pow__(self, k):
        out = DiffOp.identity(self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def map_coeffs(self, fn):
        return DiffOp(self.alphabet, {i: fn(p) for i, p in self.terms.items()})

    def adjoint(self):
        return op_adjoint(self)

    def conj(self):
        return self.map_coeffs(DiffPoly.conj)

    def __repr__(self):
        from .grammar import format_op
        return f"DiffOp({format_op(self)!r})"

    def __str__(self):
        from .grammar import format_op
        return format_op(self)


class _DerivCache:
    """Memoized partial derivatives of a single coefficient."""

    def __init__(self, p):
        self.p = p
        self.cache = {DerivIndex.zero(p.alphabet.d): p}

    def get(self, c):
        got = self.cache.get(c)
        if got is not None:
            return got
        # peel off one derivative from the last nonzero slot
        for v in range(len(c) - 1, -1, -1):
            if c[v]:
                prev = list(c)
                prev[v] -= 1
                base = self.get(DerivIndex(prev))
                got = base.diff(v) if base else base
                break
        self.cache[c] = got
        return got


def op_compose(first, second):
    """(first o second) f = first(second(f))."""
    if first.alphabet != second.alphabet:
        raise AlphabetMismatch(f"{first.alphabet} vs {second.alphabet}")
    al = first.alphabet
    caches = {b: _DerivCache(q) for b, q in second.terms.items()}
    acc = {}
    for a, p in first.terms.items():
        subs = list(a.sub_indices())
        for b, q in second.terms.items():
            cache = caches[b]
            for c, w in subs:
                dq = cache.get(c)
                if not dq:
                    continue
                idx = (a - c) + b
                term = p * dq
                if w != 1:
                    term = term.scale(w)
                acc[idx] = acc[idx] + term if idx in acc else term
    return DiffOp(al, acc)


def op_adjoint(op):
    """Formal L2 adjoint: (p D^a)* = (-1)^|a| D^a o conj(p)."""
    al = op.alphabet
    acc = {}
    for a, p in op.terms.items():
        pc = _DerivCache(p.conj())
        sign = -1 if a.order % 2 else 1
        for c, w in a.sub_indices():
            dp = pc.get(c)
            if not dp:
                continue
            idx = a - c
            term = dp.scale(sign * w)
            acc[idx] = acc[idx] + term if idx in acc else term
    return DiffOp(al, acc)


def op_commutator(a, b):
    return op_compose(a, b) - op_compose(b, a)


def op_split(op):
    star = op_adjoint(op)
    half = GaussianRational(1, 0) / 2
    sym = (op + star).scale(half)
    anti = (op - star).scale(half)
    return sym, anti


def swap_axes(op, j, k):
    """Exchange the spatial directions j, k >= 2 (coordinates and derivatives)."""
    al = op.alphabet
    if j == k:
        return op
    if min(j, k) < 2:
        raise ValueError("only the x_j directions with j >= 2 are interchangeable")
    perm = {f"x{j}": f"x{k}", f"x{k}": f"x{j}"}
    if al.cutoffs:
        for m in range(1, 5):
            perm[f"theta_x{j}_{m}"] = f"theta_x{k}_{m}"
            perm[f"theta_x{k}_{m}"] = f"theta_x{j}_{m}"
    out = {}
    for idx, p in op.terms.items():
        ni = list(idx)
        ni[j], ni[k] = ni[k], ni[j]
        out[DerivIndex(ni)] = p.rename(perm)
    return DiffOp(al, out)
