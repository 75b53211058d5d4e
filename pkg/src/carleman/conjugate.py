"""Weight conjugation of i d_t + sum_j d_{x_j}^4 and its commutator algebra."""
import re
from dataclasses import dataclass, field
from pathlib import Path

from .symcore import (DerivIndex, DiffOp, DiffPoly, get_alphabet, op_commutator, op_compose,
                      op_split, swap_axes)
from .symcore.grammar import expand_templates, parse_form_terms, parse_op

REFS_DIR = Path(__file__).with_name("refs")

EXPECTED_MATCH = "expected-match"
EXPECTED_MISMATCH = "expected-mismatch"


@dataclass
class WeightSpec:
    """Quadratic weight W with Carleman parameter alpha (both DiffPolys)."""
    d: int
    W: DiffPoly
    alpha: DiffPoly

    @classmethod
    def standard(cls, d, alphabet=None):
        al = alphabet or get_alphabet(d)
        W = DiffPoly.gen(al, "psi", 2)
        rho = DiffPoly.gen(al, "rhoInv")
        for j in range(2, d + 1):
            W = W + (DiffPoly.gen(al, f"x{j}") * rho) ** 2
        return cls(d, W, DiffPoly.gen(al, "alpha"))

    @property
    def alphabet(self):
        return self.W.alphabet


def weight_conjugate(op, weight):
    """e^{alpha W} o op o e^{-alpha W} via d_v -> d_v - alpha d_v W."""
    al = op.alphabet
    shifted = {}
    powers = {}

    def power(v, k):
        key = (v, k)
        if key not in powers:
            if k == 0:
                powers[key] = DiffOp.identity(al)
            else:
                if v not in shifted:
                    shifted[v] = DiffOp.deriv(al, v) - DiffOp.mult(weight.alpha * weight.W.diff(v))
                powers[key] = op_compose(power(v, k - 1), shifted[v])
        return powers[key]

    out = DiffOp.zero(al)
    for idx, p in op.terms.items():
        piece = DiffOp.mult(p)
        for v, k in enumerate(idx):
            if k:
                piece = op_compose(piece, power(v, k))
        out = out + piece
    return out


def schrodinger_pieces(d, alphabet=None):
    """Unconjugated directional pieces: i d_t and d_{x_j}^4."""
    al = alphabet or get_alphabet(d)
    i = DiffPoly.const(al, 1j)
    pieces = {"t": DiffOp.deriv(al, "t", coeff=i)}
    for j in range(1, d + 1):
        pieces[f"x{j}"] = DiffOp.deriv(al, f"x{j}", 4)
    return pieces


def schrodinger_operator(d, alphabet=None):
    out = None
    for piece in schrodinger_pieces(d, alphabet).values():
        out = piece if out is None else out + piece
    return out


def build_carleman_operator(d):
    """(L, S, A): the conjugated operator and its symmetric/antisymmetric parts."""
    weight = WeightSpec.standard(d)
    L = weight_conjugate(schrodinger_operator(d, weight.alphabet), weight)
    S, A = op_split(L)
    return L, S, A


def decomposed_parts(d):
    """Directional pieces {'t': (S_t, A_t), 'x1': (S_x1, A_x1), ...}."""
    weight = WeightSpec.standard(d)
    out = {}
    for key, piece in schrodinger_pieces(d, weight.alphabet).items():
        out[key] = op_split(weight_conjugate(piece, weight))
    return out


class CrossTermError(AssertionError):
    pass


def commutator_cases(d, check_cross=True):
    """The five commutator cases; case 5 is the generic transverse direction x2."""
    parts = decomposed_parts(d)
    St, At = parts["t"]
    S1, A1 = parts["x1"]
    cases = {
        1: op_commutator(St, At),
        2: op_commutator(St, A1),
        3: op_commutator(S1, At),
        4: op_commutator(S1, A1),
    }
    if d >= 2:
        S2, A2 = parts["x2"]
        cases[5] = op_commutator(S2, A2)
    if check_cross:
        for key, (Sk, Ak) in parts.items():
            for other, (So, Ao) in parts.items():
                if key == other:
                    continue
                nonzero_ok = {("t", "x1"), ("x1", "t")}
                if (key, other) in nonzero_ok:
                    continue
                c = op_commutator(Sk, Ao)
                if not c.is_zero():
                    raise CrossTermError(f"[S_{key}, A_{other}] does not vanish: {c}")
    return cases


def transverse_copies(op_j2, d):
    """Copies of a direction-2 operator for every j = 2..d."""
    return [op_j2 if j == 2 else swap_axes(op_j2, 2, j) for j in range(2, d + 1)]


def sum_of_cases(cases, d):
    total = cases[1] + cases[2] + cases[3] + cases[4]
    if d >= 2:
        for c in transverse_copies(cases[5], d):
            total = total + c
    return total


def cutoff_alphabet(d):
    return get_alphabet(d, cutoffs=True)


def cutoff_remainder(d):
    """(i d_t + sum d_j^4) o sigma - sigma o (i d_t + sum d_j^4), sigma = theta*eta."""
    al = cutoff_alphabet(d)
    P = schrodinger_operator(d, al)
    sigma = DiffOp.mult(DiffPoly.gen(al, "theta") * DiffPoly.gen(al, "eta"))
    return op_compose(P, sigma) - op_compose(sigma, P)


_ETA_DERIVS = tuple(f"eta{k}" for k in range(1, 5))


def classify_remainder(rem):
    """Split a remainder into support types.

    'eta_dtheta': eta times derivatives of theta (annulus R-1 < |x| < R);
    'deta_theta': derivatives of eta times theta (region 1 <= |psi| <= 2);
    'deta_dtheta': derivatives of both.  Raises if a term has no cutoff derivative.
    """
    al = rem.alphabet
    eta_ix = [al.index[g] for g in _ETA_DERIVS]
    th_ix = [i for i, g in enumerate(al.generators) if g.startswith("theta_x")]
    out = {k: {} for k in ("eta_dtheta", "deta_theta", "deta_dtheta")}
    for idx, p in rem.terms.items():
        for e, c in p.terms.items():
            de = any(e[i] for i in eta_ix)
            dth = any(e[i] for i in th_ix)
            if not de and not dth:
                raise ValueError(f"remainder term without cutoff derivative at {idx}")
            kind = "deta_dtheta" if de and dth else ("deta_theta" if de else "eta_dtheta")
            out[kind].setdefault(idx, {})[e] = c
    return {k: DiffOp(al, {i: DiffPoly(al, t) for i, t in v.items()})
            for k, v in out.items()}


def remainder_display_diff(d):
    """Compare the derived remainder with its compressed printed form.

    The printed form lists cutoff-derivative products times spatial derivatives
    of u and a final term i phi' eta theta d_{x1}.  The derivation gives a
    multiplication term i phi' eta' theta instead, plus the fourth-order
    cutoff derivatives times u.  Returns a dict of findings.
    """
    al = cutoff_alphabet(d)
    rem = cutoff_remainder(d)
    zero = DerivIndex.zero(d)
    c0 = rem.coeff(zero)
    i = DiffPoly.const(al, 1j)
    time_term = i * DiffPoly.gen(al, "phi1") * DiffPoly.gen(al, "eta1") * DiffPoly.gen(al, "theta")
    displayed = i * DiffPoly.gen(al, "phi1") * DiffPoly.gen(al, "eta") * DiffPoly.gen(al, "theta")
    has_time_mult = all(c0.terms.get(e) == c for e, c in time_term.terms.items())
    dx1 = rem.coeff(DerivIndex.unit(d, 1))
    displayed_dx1_present = all(dx1.terms.get(e) == c for e, c in displayed.terms.items())
    fourth = DiffPoly.gen(al, "theta_x1_4") * DiffPoly.gen(al, "eta")
    has_fourth = all(c0.terms.get(e) == c for e, c in fourth.terms.items())
    return {
        "time_term_is_multiplication": has_time_mult,
        "displayed_derivative_term_present": displayed_dx1_present,
        "fourth_order_cutoff_terms_present": has_fourth,
        "max_derivative_order_on_u": max(idx.order for idx in rem.terms),
    }


# reference set

@dataclass
class Reference:
    name: str
    display: str
    kind: str
    min_d: int
    status: str
    note: str
    transcribed: str
    corrected: str = None
    meta: dict = field(default_factory=dict)

    def text(self, which="expected"):
        if which == "transcribed" or (which == "expected" and self.corrected is None):
            return self.transcribed
        if self.corrected is None:
            raise KeyError(f"{self.name} has no corrected section")
        return self.corrected

    def _expand(self, text, d, j):
        if self.kind == "op-direction":
            text = re.sub(r"\bxj\b", f"x{j}", text)
        return expand_templates(text, d)

    def parse(self, d, which="expected", j=2):
        if d < self.min_d:
            raise ValueError(f"{self.name} needs d >= {self.min_d}")
        al = get_alphabet(d)
        text = self._expand(self.text(which), d, j)
        if self.kind == "form":
            return parse_form_terms(text, al)
        return parse_op(text, al)


def read_reference(path):
    meta = {}
    sections = {}
    current = None
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") and current is None:
            key, _, val = line[1:].partition(":")
            meta[key.strip()] = val.strip()
        elif line.startswith("== ") and line.endswith(" =="):
            current = line[3:-3].strip()
            sections[current] = []
        elif current is not None:
            sections[current].append(line)
    text = {k: "\n".join(v).strip() for k, v in sections.items()}
    return Reference(
        name=meta.get("name", Path(path).stem),
        display=meta.get("display", ""),
        kind=meta.get("kind", "op"),
        min_d=int(meta.get("min_d", 1)),
        status=meta.get("status", EXPECTED_MATCH),
        note=meta.get("note", ""),
        transcribed=text["transcribed"],
        corrected=text.get("corrected"),
        meta=meta,
    )


def load_reference(name, refs_dir=None):
    base = Path(refs_dir) if refs_dir else REFS_DIR
    return read_reference(base / f"{name}.txt")


def list_references(refs_dir=None):
    base = Path(refs_dir) if refs_dir else REFS_DIR
    return sorted(p.stem for p in base.glob("*.txt"))
