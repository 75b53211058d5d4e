"""Integration-by-parts normal forms of <f, Op f> for compactly supported f."""
from .errors import NotSymmetric
from .symcore import DerivIndex, DiffPoly, GaussianRational, op_adjoint
from .symcore.grammar import format_form_terms, parse_form_terms

SQUARE = "Square"
RECROSS = "ReCross"
IMCROSS = "ImCross"
_KINDS = (SQUARE, RECROSS, IMCROSS)


class QuadForm:
    """Sum of weight * |D^a f|^2, weight * Re(conj(D^a f) D^b f), weight * Im(...)."""

    def __init__(self, alphabet, terms=()):
        self.alphabet = alphabet
        acc = {}
        for kind, a, b, w in terms:
            if kind not in _KINDS:
                raise ValueError(f"unknown term kind {kind!r}")
            a = a if isinstance(a, DerivIndex) else DerivIndex(a)
            b = b if isinstance(b, DerivIndex) else DerivIndex(b)
            if not w.is_real():
                raise ValueError("form weights must be real")
            if kind == SQUARE and a != b:
                raise ValueError("square terms need a == b")
            if kind != SQUARE and a == b:
                if kind == IMCROSS:
                    continue
                kind = SQUARE
            if kind != SQUARE and a.sort_key() > b.sort_key():
                a, b = b, a
                if kind == IMCROSS:
                    w = -w
            key = (kind, a, b)
            acc[key] = acc[key] + w if key in acc else w
        self.terms = {k: w for k, w in acc.items() if w}

    @classmethod
    def parse(cls, text, alphabet):
        return cls(alphabet, parse_form_terms(text, alphabet))

    def items(self):
        """Terms in a fixed order: by kind, then by indices."""
        order = {SQUARE: 0, IMCROSS: 1, RECROSS: 2}
        return sorted(((k, a, b, w) for (k, a, b), w in self.terms.items()),
                      key=lambda t: (order[t[0]], t[1].sort_key(), t[2].sort_key()))

    def weight(self, kind, a, b=None):
        a = DerivIndex(a)
        b = a if b is None else DerivIndex(b)
        return self.terms.get((kind, a, b), DiffPoly.zero(self.alphabet))

    def is_balanced(self):
        return all(b.order - a.order in (0, 1) for (_, a, b) in self.terms)

    def has_cross_terms(self):
        return any(k != SQUARE for (k, _, _) in self.terms)

    def __add__(self, other):
        return QuadForm(self.alphabet, list(self.items()) + list(other.items()))

    def __neg__(self):
        return QuadForm(self.alphabet, [(k, a, b, -w) for k, a, b, w in self.items()])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_form_terms(self.items(), self.alphabet)

    def __repr__(self):
        return f"QuadForm({str(self)!r})"


# bilinear layer: T(a, b, w) = int w conj(D^a f) D^b f, only its real part matters

def _add(bil, a, b, w):
    if not w:
        return
    if a.sort_key() > b.sort_key():
        # Re int w conj(D^a f) D^b f = Re int conj(w) conj(D^b f) D^a f
        a, b, w = b, a, w.conj()
    key = (a, b)
    if key in bil:
        w = bil[key] + w
        if w:
            bil[key] = w
        else:
            del bil[key]
    else:
        bil[key] = w


def _reduce(bil, alphabet):
    half = GaussianRational(1) / 2
    while True:
        wide = [k for k in bil if k[1].order - k[0].order >= 2]
        if not wide:
            break
        a, b = max(wide, key=lambda k: (k[1].sort_key(), k[0].sort_key()))
        w = bil.pop((a, b))
        e = next(v for v in range(len(a)) if b[v] > a[v])
        unit = DerivIndex.unit(len(a) - 1, e)
        # int w conj(D^a f) D^b f = -int w conj(D^{a+e} f) D^{b-e} f - int (d_e w) conj(D^a f) D^{b-e} f
        _add(bil, a + unit, b - unit, -w)
        _add(bil, a, b - unit, -w.diff(e))
    out = []
    for (a, b), w in bil.items():
        re, im = w.real_part(), w.imag_part()
        if a == b:
            out.append((SQUARE, a, a, re))
            continue
        gap = b - a if a.le(b) else None
        if gap is not None and gap.order == 1:
            e = next(v for v in range(len(gap)) if gap[v])
            # Re(conj(g) d_e g) = d_e |g|^2 / 2
            out.append((SQUARE, a, a, -re.diff(e).scale(half)))
            out.append((IMCROSS, a, b, -im))
        else:
            out.append((RECROSS, a, b, re))
            out.append((IMCROSS, a, b, -im))
    return QuadForm(alphabet, out)


def form_from_operator(op):
    """Normal form of <f, op f>; op must be formally self-adjoint."""
    if op_adjoint(op) != op:
        raise NotSymmetric("operator is not formally self-adjoint; its form is not real")
    bil = {}
    zero = DerivIndex.zero(op.alphabet.d)
    for idx, p in op.terms.items():
        _add(bil, zero, idx, p)
    return _reduce(bil, op.alphabet)


def form_normalize(form):
    """Balanced normal form; preserves the value for compactly supported f."""
    al = form.alphabet
    half = GaussianRational(1) / 2
    ihalf = GaussianRational(0, 1) / 2
    bil = {}
    for kind, a, b, w in form.items():
        if kind == SQUARE:
            _add(bil, a, a, w)
        elif kind == RECROSS:
            _add(bil, a, b, w.scale(half))
            _add(bil, b, a, w.scale(half))
        else:
            _add(bil, a, b, w.scale(-ihalf))
            _add(bil, b, a, w.scale(ihalf))
    return _reduce(bil, al)


def reference_commutator_form(d, refs_dir=None):
    from .conjugate import load_reference
    from .symcore import get_alphabet
    ref = load_reference("form_commutator_summary", refs_dir)
    return QuadForm(get_alphabet(d), ref.parse(d))


def commutator_form(d):
    """form_normalize(form_from_operator([S, A])) computed by the engine."""
    from .conjugate import build_carleman_operator
    from .symcore import op_commutator
    _, S, A = build_carleman_operator(d)
    return form_normalize(form_from_operator(op_commutator(S, A)))


def form_eval_numeric(form, f, bindings, check_support=True):
    """Quadrature of the form on a grid Field."""
    import numpy as np
    from .numgrid.grid import DerivativeCache
    if check_support:
        f.check_support()
    env = bindings.env(f.grid)
    cache = DerivativeCache(f)
    total = 0.0
    for kind, a, b, w in form.items():
        wv = np.real(w.evaluate(env))
        fa = cache.get(a)
        if kind == SQUARE:
            integrand = wv * (fa.real ** 2 + fa.imag ** 2)
        else:
            prod = np.conj(fa) * cache.get(b)
            integrand = wv * (prod.real if kind == RECROSS else prod.imag)
        total += float(np.sum(np.broadcast_to(integrand, f.values.shape)))
    return total * f.grid.cell_volume()
