"""Text form of polynomials, operators and quadratic forms.

Grammar (whitespace insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*' factor) | ('/' INT))*
    factor := atom ['^' INT]
    atom   := INT | 'i' | NAME | 'D[' VAR ']' | '(' expr ')'
            | 'Sq[' IDX ']' | 'Re[' IDX ',' IDX ']' | 'Im[' IDX ',' IDX ']'

A product is operator composition, so ``D[x1]*psi`` is ``psi*D[x1] + rhoInv``.
IDX is ``1`` or a product of variable powers such as ``x1^2`` or ``t*x2``.
"""
import re
from fractions import Fraction

from ..errors import ParseError
from .gaussian import GaussianRational
from .ops import DerivIndex, DiffOp
from .poly import DiffPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _FormVal:
    """Linear combination of form atoms, keyed by (kind, a, b)."""

    def __init__(self, terms):
        self.terms = terms

    def add(self, other):
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return _FormVal({k: p for k, p in out.items() if p})

    def scale(self, poly):
        return _FormVal({k: poly * p for k, p in self.terms.items() if poly * p})


class _Parser:
    def __init__(self, text, alphabet, allow_forms=False):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.al = alphabet
        self.allow_forms = allow_forms

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg} at position {tok[2]} in {self.text!r}")

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            self.fail(f"expected {value!r}", t)
        return t

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return v

    # values are DiffOp or _FormVal
    def _add(self, a, b):
        if isinstance(a, DiffOp) and isinstance(b, DiffOp):
            return a + b
        a, b = self._as_form(a), self._as_form(b)
        return a.add(b)

    def _as_form(self, v):
        if isinstance(v, _FormVal):
            return v
        if v.is_zero():
            return _FormVal({})
        self.fail("cannot add an operator to a quadratic form")

    def _neg(self, v):
        if isinstance(v, DiffOp):
            return -v
        return v.scale(DiffPoly.const(self.al, -1))

    def _mul(self, a, b):
        if isinstance(a, DiffOp) and isinstance(b, DiffOp):
            return a * b
        if isinstance(a, DiffOp) and isinstance(b, _FormVal):
            return b.scale(self._as_poly(a))
        if isinstance(a, _FormVal) and isinstance(b, DiffOp):
            return a.scale(self._as_poly(b))
        self.fail("product of two quadratic-form atoms")

    def _as_poly(self, op):
        if op.is_zero():
            return DiffPoly.zero(self.al)
        if op.order() != 0:
            self.fail("form weights must not contain derivatives")
        return op.coeff(DerivIndex.zero(self.al.d))

    def expr(self):
        sign = 1
        t = self.peek()
        if t[1] in ("+", "-") and t[0] == "op":
            self.take()
            sign = -1 if t[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = self._neg(v)
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ("+", "-"):
                self.take()
                w = self.term()
                v = self._add(v, w if t[1] == "+" else self._neg(w))
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                v = self._mul(v, self.factor())
            elif t[0] == "op" and t[1] == "/":
                self.take()
                n = self.take()
                if n[0] != "int" or n[1] == 0:
                    self.fail("division only by a nonzero integer literal", n)
                v = self._mul(v, DiffOp.mult(DiffPoly.const(self.al, Fraction(1, n[1]))))
            else:
                return v

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            n = self.take()
            if n[0] != "int":
                self.fail("exponent must be a nonnegative integer", n)
            if isinstance(base, _FormVal):
                self.fail("cannot raise a form atom to a power", n)
            base = base ** n[1]
        return base

    def atom(self):
        t = self.take()
        kind, val, _ = t
        if kind == "int":
            return DiffOp.mult(DiffPoly.const(self.al, val))
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "name":
            if val == "i":
                return DiffOp.mult(DiffPoly.const(self.al, GaussianRational(0, 1)))
            if val == "D" and self.peek()[1] == "[":
                self.take()
                var = self.take()
                if var[0] != "name" or var[1] not in self.al.var_index:
                    self.fail("unknown variable in D[...]", var)
                self.expect("]")
                return DiffOp.deriv(self.al, var[1])
            if val in ("Sq", "Re", "Im") and self.peek()[1] == "[":
                if not self.allow_forms:
                    self.fail("form atoms are not allowed here", t)
                self.take()
                a = self.index()
                if val == "Sq":
                    b = a
                else:
                    self.expect(",")
                    b = self.index()
                self.expect("]")
                key = {"Sq": "Square", "Re": "ReCross", "Im": "ImCross"}[val]
                return _FormVal({(key, a, b): DiffPoly.const(self.al, 1)})
            if val in self.al.index:
                return DiffOp.mult(DiffPoly.gen(self.al, val))
            self.fail(f"unknown generator {val!r}", t)
        self.fail("unexpected token", t)

    def index(self):
        v = [0] * (self.al.d + 1)
        t = self.peek()
        if t[0] == "int" and t[1] == 1:
            self.take()
            return DerivIndex(v)
        while True:
            name = self.take()
            if name[0] != "name" or name[1] not in self.al.var_index:
                self.fail("expected a variable in derivative index", name)
            k = 1
            if self.peek()[1] == "^":
                self.take()
                n = self.take()
                if n[0] != "int":
                    self.fail("exponent must be an integer", n)
                k = n[1]
            v[self.al.var_index[name[1]]] += k
            if self.peek()[1] == "*":
                self.take()
                continue
            return DerivIndex(v)


def parse_op(text, alphabet):
    v = _Parser(text, alphabet).parse()
    return v


def parse_poly(text, alphabet):
    op = parse_op(text, alphabet)
    if op.is_zero():
        return DiffPoly.zero(alphabet)
    if op.order() != 0:
        raise ParseError(f"expression {text!r} contains derivatives")
    return op.coeff(DerivIndex.zero(alphabet.d))


def parse_form_terms(text, alphabet):
    """List of (kind, a, b, weight) from form text."""
    v = _Parser(text, alphabet, allow_forms=True).parse()
    if isinstance(v, DiffOp):
        if v.is_zero():
            return []
        raise ParseError("expression is not a quadratic form")
    return [(k[0], k[1], k[2], p) for k, p in v.terms.items()]


# printing

def _frac(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coef_parts(c):
    """(negative, magnitude text or None for unit)."""
    if not c.im:
        mag = abs(c.re)
        return c.re < 0, (None if mag == 1 else _frac(mag))
    if not c.re:
        mag = abs(c.im)
        return c.im < 0, ("i" if mag == 1 else f"{_frac(mag)}*i")
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    im = "i" if mag == 1 else f"{_frac(mag)}*i"
    return False, f"({_frac(c.re)} {sign} {im})"


def _mono(e, names):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(names[i])
        elif k:
            parts.append(f"{names[i]}^{k}")
    return "*".join(parts)


def _join(pieces):
    """pieces: list of (negative, text)."""
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, txt in pieces[1:]:
        out += (" - " if neg else " + ") + txt
    return out


def _poly_pieces(p):
    names = p.alphabet.generators
    pieces = []
    for e, c in p.sorted_terms():
        neg, mag = _coef_parts(c)
        m = _mono(e, names)
        if m and mag:
            txt = f"{mag}*{m}"
        else:
            txt = m or mag or "1"
        pieces.append((neg, txt))
    return pieces


def format_poly(p):
    return _join(_poly_pieces(p))


def _weighted(p, atom):
    """Print weight*atom; atom may be empty for zeroth order."""
    pieces = _poly_pieces(p)
    if len(pieces) == 1:
        neg, txt = pieces[0]
        if not atom:
            return neg, txt
        if txt == "1":
            return neg, atom
        return neg, f"{txt}*{atom}"
    inner = _join(pieces)
    return False, f"({inner})*{atom}" if atom else f"({inner})"


def format_index_deriv(idx, variables):
    parts = []
    for v, k in enumerate(idx):
        if k == 1:
            parts.append(f"D[{variables[v]}]")
        elif k:
            parts.append(f"D[{variables[v]}]^{k}")
    return "*".join(parts)


def format_op(op):
    variables = op.alphabet.variables
    items = sorted(op.terms.items(), key=lambda kv: kv[0].sort_key(), reverse=True)
    return _join([_weighted(p, format_index_deriv(idx, variables)) for idx, p in items])


def format_index(idx, variables):
    parts = []
    for v, k in enumerate(idx):
        if k == 1:
            parts.append(variables[v])
        elif k:
            parts.append(f"{variables[v]}^{k}")
    return "*".join(parts) or "1"


def format_form_terms(terms, alphabet):
    variables = alphabet.variables
    pieces = []
    for kind, a, b, w in terms:
        if kind == "Square":
            atom = f"Sq[{format_index(a, variables)}]"
        else:
            tag = "Re" if kind == "ReCross" else "Im"
            atom = f"{tag}[{format_index(a, variables)},{format_index(b, variables)}]"
        pieces.append(_weighted(w, atom))
    return _join(pieces)


def expand_templates(text, d):
    """Expand SUM_J[...] over j = 2..d and replace DIM by d."""
    out = text
    while True:
        k = out.find("SUM_J[")
        if k < 0:
            break
        depth = 0
        end = None
        for pos in range(k + 5, len(out)):
            ch = out[pos]
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
                if depth == 0:
                    end = pos
                    break
        if end is None:
            raise ParseError("unbalanced SUM_J[...]")
        body = out[k + 6:end]
        parts = [re.sub(r"\bxj\b", f"x{j}", body).replace("_xj_", f"_x{j}_")
                 for j in range(2, d + 1)]
        rep = "(" + " + ".join(f"({p})" for p in parts) + ")" if parts else "0"
        out = out[:k] + rep + out[end + 1:]
    return re.sub(r"\bDIM\b", str(d), out)
