"""Certified lower bounds for the commutator form by term domination.

Pipeline: Cauchy-Schwarz on the Im terms (cs_split), worst-case bounds for the
phi derivatives, then every negative monomial of every square coefficient is
matched to a positive monomial that dominates it on the region.  Variables are
graded by r = R^(1/3):

    alpha = c_alpha r^4,  rhoInv = r^-3,  x_j = y_j r^3,
    omega = c_omega r,    varrho = c_rho r,

so a monomial becomes coef * r^K * psi^P * prod y_j^Q_j with |psi| >= 1 and
r >= R_min^(1/3) >= 1.
"""
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NoDominationFound, NonPositiveSplitter
from .ibp import IMCROSS, RECROSS, SQUARE, QuadForm
from .symcore import DerivIndex, DiffPoly, get_alphabet
from .symcore.grammar import format_index, format_poly

SPLITTER_GRID = tuple(2.0 ** k for k in range(-4, 5))
ALPHA_GRID = tuple(2.0 ** k for k in range(0, 17))
_INVERSES = {"omega": "omegaInv", "omegaInv": "omega", "varrho": "varrhoInv",
             "varrhoInv": "varrho"}


@dataclass
class RegionSpec:
    """|psi| >= psi_min, x_j real, R >= R_min, alpha >= c_alpha R^(4/3), |phi^(k)| <= B_k.

    c_alpha, c_omega, c_rho left as None are searched.  psi_min = 1 is the
    support condition; smaller values describe a relaxed region.
    """
    d: int
    R_min: float = 1.0
    c_alpha: float = None
    B1: float = 3.0
    B2: float = 3.0
    B3: float = 0.0
    psi_min: float = 1.0
    c_omega: float = None
    c_rho: float = None
    share: float = 0.5

    def __post_init__(self):
        if self.R_min < 1:
            raise ValueError("R_min must be at least 1")
        if min(self.B1, self.B2, self.B3) < 0:
            raise ValueError("phi bounds must be nonnegative")
        if not 0 <= self.psi_min:
            raise ValueError("psi_min must be nonnegative")
        if not 0 < self.share < 1:
            raise ValueError("share must lie in (0, 1)")
        for name in ("c_alpha", "c_omega", "c_rho"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")

    def bound(self, k):
        return {1: self.B1, 2: self.B2, 3: self.B3}.get(k, 0.0)

    @property
    def r_min(self):
        return self.R_min ** (1.0 / 3.0)


@dataclass
class DominationStep:
    square: str
    negative: str
    positive: str
    share: float
    factor: float
    lhs: float
    rhs: float
    inequality: str

    @property
    def holds(self):
        return self.lhs >= self.rhs


@dataclass
class Violation:
    point: dict
    reason: str
    value: float


@dataclass
class Certificate:
    c: float
    c_alpha: float
    c_omega: float
    c_rho: float
    steps: list = field(default_factory=list)
    floor_terms: list = field(default_factory=list)
    uniform: bool = True
    floor_expression: str = ""
    region: RegionSpec = None
    violation: Violation = None
    attempts: int = 0

    @property
    def ok(self):
        return self.violation is None and self.c > 0

    def alpha_threshold(self, R):
        return self.c_alpha * R ** (4.0 / 3.0)

    def to_dict(self):
        out = asdict(self)
        out["ok"] = self.ok
        out["threshold"] = f"alpha >= {self.c_alpha:g} * R^(4/3)"
        return out

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


# ---------------------------------------------------------------------------
# Cauchy-Schwarz split

def _certify_alphabet(al):
    if al.certify:
        return al
    return get_alphabet(al.d, K=al.K, cutoffs=al.cutoffs, certify=True)


def _splitter(s, al):
    """(s, 1/s) as DiffPolys; s must be a positive number or monomial in omega/varrho."""
    if isinstance(s, (int, float, Fraction)):
        if s <= 0:
            raise NonPositiveSplitter(f"splitter {s} is not positive")
        c = Fraction(s).limit_denominator(10 ** 12) if isinstance(s, float) else Fraction(s)
        return DiffPoly.const(al, c), DiffPoly.const(al, 1 / c)
    s = s.to_alphabet(al)
    if len(s.terms) != 1:
        raise NonPositiveSplitter("splitter must be a single monomial")
    (e, c), = s.terms.items()
    if c.im or c.re <= 0:
        raise NonPositiveSplitter(f"splitter coefficient {c} is not positive")
    inv = {}
    for i, k in enumerate(e):
        if k:
            name = al.generators[i]
            if name not in _INVERSES:
                raise NonPositiveSplitter(f"splitter uses {name}, which has no known sign")
            inv[_INVERSES[name]] = inv.get(_INVERSES[name], 0) + k
    return s, DiffPoly.monomial(al, inv, 1 / c.re)


def _indefinite(name):
    return name == "psi" or name == "phi" or name.startswith("phi") or (
        name.startswith("x") and name[1:].isdigit())


def _phi_order(name):
    if name == "phi":
        return 0
    if name.startswith("phi") and name[3:].isdigit():
        return int(name[3:])
    return None


def _abs_majorant(coef, powers, bounds, psi_ge_one):
    """Monomials (coef >= 0) whose sum bounds |coef * prod g^k| on the region.

    phi^(k) -> B_k; odd powers of psi use |psi|^k <= psi^(k+1) when |psi| >= 1,
    other odd powers use |g|^k <= (g^(k-1) + g^(k+1))/2.
    """
    out = [(abs(Fraction(coef)), {})]
    for name, k in powers.items():
        nxt = []
        order = _phi_order(name)
        for c, pw in out:
            if order is not None:
                pw = dict(pw)
                b = f"B{order}"
                if bounds is None:
                    pw[b] = pw.get(b, 0) + k
                    nxt.append((c, pw))
                else:
                    if order == 0:
                        raise NoDominationFound("phi itself has no bound", orphan="phi")
                    nxt.append((c * Fraction(bounds(order)).limit_denominator(10 ** 9) ** k, pw))
            elif _indefinite(name) and k % 2:
                if name == "psi" and psi_ge_one:
                    nxt.append((c, {**pw, name: k + 1}))
                else:
                    if k > 1:
                        nxt.append((c / 2, {**pw, name: k - 1}))
                    else:
                        nxt.append((c / 2, dict(pw)))
                    nxt.append((c / 2, {**pw, name: k + 1}))
            else:
                nxt.append((c, {**pw, name: k}))
        out = nxt
    return out


def _powers(al, e):
    return {al.generators[i]: k for i, k in enumerate(e) if k}


def _majorant_poly(w, al):
    out = DiffPoly.zero(al)
    for e, c in w.terms.items():
        for cc, pw in _abs_majorant(c.re, _powers(w.alphabet, e), None, False):
            out = out + DiffPoly.monomial(al, pw, cc)
    return out


def cs_split(form, omega, rho):
    """Replace each cross term by two squares via |Im(conj(a) b)| <= s|a|^2 + |b|^2/s.

    rho is used when the lower index is f itself, omega otherwise.  phi
    derivatives in the cross weights become their bounds B_k.  The result is
    pointwise below the input as a quadratic form in the derivative jet.
    """
    al = _certify_alphabet(form.alphabet)
    om, om_inv = _splitter(omega, al)
    rh, rh_inv = _splitter(rho, al)
    terms = []
    for kind, a, b, w in form.items():
        w = w.to_alphabet(al)
        if kind == SQUARE:
            terms.append((SQUARE, a, a, w))
            continue
        s, s_inv = (rh, rh_inv) if a.order == 0 else (om, om_inv)
        m = _majorant_poly(w, al)
        terms.append((SQUARE, a, a, -(m * s)))
        terms.append((SQUARE, b, b, -(m * s_inv)))
    return QuadForm(al, terms)


# ---------------------------------------------------------------------------
# graded atoms and domination

@dataclass
class _Atom:
    coef: float          # signed, numeric after grading
    r: int
    e: int               # power of alpha (threshold monotonicity)
    psi: int
    y: tuple
    power_sum: bool = False
    label: str = ""

    def graded(self):
        parts = [f"{abs(self.coef):.6g}"]
        if self.r:
            parts.append(f"r^{self.r}")
        if self.power_sum:
            parts.append(f"P{self.psi}")
        else:
            if self.psi:
                parts.append(f"psi^{self.psi}")
            parts += [f"y{j + 2}^{q}" for j, q in enumerate(self.y) if q]
        return "*".join(parts)


def _square_atoms(w, region):
    """Exact lower-bound monomials of a square weight: [(coef, powers)], coef signed."""
    out = []
    psi_ge_one = region.psi_min >= 1
    for e, c in w.terms.items():
        coef = Fraction(c.re)
        pw = {}
        for g, k in _powers(w.alphabet, e).items():
            if g.startswith("B") and g[1:].isdigit():
                coef *= Fraction(region.bound(int(g[1:]))).limit_denominator(10 ** 9) ** k
            else:
                pw[g] = k
        if not coef:
            continue
        nonneg = coef > 0 and all(k % 2 == 0 for g, k in pw.items() if _indefinite(g))
        if nonneg:
            if any(_phi_order(g) is not None for g in pw):
                continue        # >= 0 but no positive lower bound
            out.append((coef, pw))
        else:
            for cc, npw in _abs_majorant(coef, pw, region.bound, psi_ge_one):
                out.append((-cc, npw))
    return out


def _grade(coef, pw, d, c_alpha, c_omega, c_rho):
    num = float(coef)
    r = 0
    e = 0
    psi = 0
    y = [0] * (d - 1)
    for g, k in pw.items():
        if g == "alpha":
            num *= c_alpha ** k
            r += 4 * k
            e = k
        elif g == "rhoInv":
            r -= 3 * k
        elif g == "psi":
            psi = k
        elif g.startswith("x") and g[1:].isdigit():
            y[int(g[1:]) - 2] = k
            r += 3 * k
        elif g in ("omega", "omegaInv"):
            s = 1 if g == "omega" else -1
            num *= c_omega ** (s * k)
            r += s * k
        elif g in ("varrho", "varrhoInv"):
            s = 1 if g == "varrho" else -1
            num *= c_rho ** (s * k)
            r += s * k
        elif g.startswith("B") and g[1:].isdigit():
            raise ValueError("bounds should be numeric by now")
        else:
            raise NoDominationFound(f"cannot grade generator {g}", orphan=g)
    return num, r, e, psi, tuple(y)


def _group_power_sums(atoms, d):
    """Merge psi^k + sum_j y_j^k with equal coefficients into one power-sum atom."""
    if d < 2:
        return atoms
    used = set()
    out = []
    for i, a in enumerate(atoms):
        if i in used or a.psi == 0 or any(a.y):
            continue
        members = [i]
        for j in range(d - 1):
            want = tuple(a.psi if m == j else 0 for m in range(d - 1))
            hit = next((n for n, b in enumerate(atoms)
                        if n not in used and n not in members and b.psi == 0 and b.y == want
                        and b.r == a.r and b.e == a.e
                        and math.isclose(b.coef, a.coef, rel_tol=1e-12)), None)
            if hit is None:
                break
            members.append(hit)
        if len(members) == d:
            used.update(members)
            out.append(_Atom(a.coef, a.r, a.e, a.psi, (0,) * (d - 1), True,
                             " + ".join(atoms[m].label for m in members).replace(" + -", " - ")))
    out += [a for i, a in enumerate(atoms) if i not in used]
    return out


def _dominance_factor(neg, pos, d, psi_ge_one):
    """f such that pos_variable_part >= f * neg_variable_part on the region, or None."""
    if pos.e < neg.e or pos.r < neg.r:
        return None
    if not pos.power_sum:
        if neg.power_sum or neg.y != pos.y:
            return None
        if neg.psi == pos.psi or (psi_ge_one and neg.psi < pos.psi):
            return 1.0
        return None
    n = pos.psi
    if neg.power_sum:
        if neg.psi == n:
            return 1.0
        if psi_ge_one and neg.psi < n:
            return float(d) ** (1.0 - n / neg.psi)
        return None
    if not any(neg.y):
        if neg.psi == n or (psi_ge_one and neg.psi < n):
            return 1.0
        return None
    if neg.psi == 0 and sorted(neg.y)[-1] == n and sum(1 for q in neg.y if q) == 1:
        return 1.0
    return None


def _dominate(square, atoms, region, d):
    """Assign negatives to positives.  Returns (steps, remaining fractions, failure)."""
    psi_ge_one = region.psi_min >= 1
    rmin = region.r_min
    pos = [a for a in atoms if a.coef > 0]
    neg = sorted((a for a in atoms if a.coef < 0), key=lambda a: a.coef)
    assign = {i: [] for i in range(len(pos))}
    choice = []
    for a in neg:
        best, best_val = None, 0.0
        for i, p in enumerate(pos):
            f = _dominance_factor(a, p, d, psi_ge_one)
            if f is None:
                continue
            val = p.coef * f * rmin ** (p.r - a.r) / (len(assign[i]) + 1)
            if val > best_val:
                best, best_val = i, val
        if best is None:
            return None, None, a
        assign[best].append(a)
        choice.append((a, best))
    steps = []
    failure = None
    for a, i in choice:
        p = pos[i]
        share = region.share / len(assign[i])
        f = _dominance_factor(a, p, d, psi_ge_one)
        lhs = share * p.coef * f * rmin ** (p.r - a.r)
        rhs = -a.coef
        ineq = (f"{share:.6g} * {p.coef:.6g} * {f:.6g} * {rmin:.6g}^{p.r - a.r} >= {rhs:.6g}")
        step = DominationStep(square, a.label, p.label, share, f, lhs, rhs, ineq)
        steps.append(step)
        if not step.holds and failure is None:
            failure = a
    remaining = [(p, 1.0 - region.share if assign[i] else 1.0) for i, p in enumerate(pos)]
    return steps, remaining, failure


def _attempt(atoms_by_square, region, al, c_alpha, c_omega, c_rho):
    d = al.d
    steps = []
    floor_atoms = []
    for idx, raw in atoms_by_square:
        graded = []
        for coef, pw in raw:
            num, r, e, psi, y = _grade(coef, pw, d, c_alpha, c_omega, c_rho)
            label = format_poly(DiffPoly.monomial(al, pw, coef))
            graded.append(_Atom(num, r, e, psi, y, False, label))
        graded = _group_power_sums(graded, d)
        s, remaining, failure = _dominate(format_index(idx, al.variables), graded, region, d)
        if s is None:
            return None, None, failure, True
        steps += s
        if failure is not None:
            return steps, None, failure, False
        if idx.order == 0:
            floor_atoms = remaining
    return steps, floor_atoms, None, False


def _floor(floor_atoms, region, c_alpha):
    """Constant c with the remaining |f|^2 coefficient >= c alpha^7 rhoInv^8 = c c_alpha^7 r^4."""
    rmin = region.r_min
    c_uniform = 0.0
    terms = []
    expr = []
    for a, frac in floor_atoms:
        if any(a.y) and not a.power_sum:
            continue
        low = frac * a.coef * (region.psi_min ** a.psi if a.psi else 1.0)
        if a.power_sum:
            low = frac * a.coef * max(region.psi_min, 1.0) ** a.psi
        if low <= 0:
            continue
        terms.append(f"{frac:g} * {a.graded()}")
        if a.e >= 7 and a.r >= 4:
            c_uniform += low * rmin ** (a.r - 4) / c_alpha ** 7
        else:
            expr.append((low, a))
    if c_uniform > 0:
        return c_uniform, True, "", terms
    if expr:
        # no alpha^7 r^4 shaped term: report the floor at the threshold point
        val = sum(low * rmin ** (a.r - 4) / c_alpha ** 7 for low, a in expr)
        sym = " + ".join(a.label for _, a in expr)
        return val, False, f"({sym}) * R^8/alpha^7, evaluated at R = R_min", terms
    return 0.0, True, "", terms


def _search_grid(region, fixed, grid):
    v = getattr(region, fixed)
    if v is not None:
        return (v,)
    return grid


def certify_lower_bound(form, region, n_samples=400, seed=0):
    """Certificate that <f,[S,A]f> >= c alpha^7/R^8 ||f||^2 on the region, or a Violation.

    Cross terms are split here (searching the splitter constants) when the
    input still has them.  Raises NoDominationFound when neither a
    certificate nor a violating sample is found.
    """
    d = form.alphabet.d
    al = _certify_alphabet(form.alphabet)
    original = form
    split = cs_split(form, DiffPoly.gen(al, "omega"), DiffPoly.gen(al, "varrho")) \
        if form.has_cross_terms() else QuadForm(al, [(k, a, b, w.to_alphabet(al))
                                                    for k, a, b, w in form.items()])
    atoms_by_square = [(a, _square_atoms(w, region)) for kind, a, b, w in split.items()]
    if not any(a.order == 0 for a, _ in atoms_by_square):
        atoms_by_square.append((DerivIndex.zero(d), []))
    alphas = _search_grid(region, "c_alpha", ALPHA_GRID)
    omegas = _search_grid(region, "c_omega", SPLITTER_GRID)
    rhos = _search_grid(region, "c_rho", SPLITTER_GRID)
    pairs = sorted(((o, r) for o in omegas for r in rhos),
                   key=lambda p: (abs(math.log2(p[0])) + abs(math.log2(p[1])), p))
    attempts = 0
    last_failure = None
    structural = False
    for ca in alphas:
        for co, cr in pairs:
            attempts += 1
            steps, floor_atoms, failure, orphan = _attempt(atoms_by_square, region, al, ca, co, cr)
            if failure is not None:
                last_failure = failure
                structural = orphan
                if orphan:
                    break
                continue
            c, uniform, expr, terms = _floor(floor_atoms, region, ca)
            if c <= 0:
                last_failure = None
                continue
            return Certificate(c, ca, co, cr, steps, terms, uniform, expr, region, None, attempts)
        if structural:
            break
    ca = alphas[-1] if not structural else alphas[0]
    v = find_violation(original, region, ca, n_samples=n_samples, seed=seed)
    if v is not None:
        return Certificate(0.0, ca, 1.0, 1.0, [], [], True, "", region, v, attempts)
    name = last_failure.label if last_failure is not None else "|f|^2 floor"
    raise NoDominationFound(f"no dominating term for {name}", orphan=name)


# ---------------------------------------------------------------------------
# pointwise jet matrices: spot checks and violation search

def jet_matrix(form, env):
    """Hermitian matrix H with form density = z^H H z for the jet z = (D^a f)_a."""
    idx = sorted({a for _, a, _, _ in form.items()} | {b for _, _, b, _ in form.items()},
                 key=lambda i: i.sort_key())
    pos = {a: n for n, a in enumerate(idx)}
    H = np.zeros((len(idx), len(idx)), dtype=complex)
    for kind, a, b, w in form.items():
        v = float(np.real(w.evaluate(env)))
        i, j = pos[a], pos[b]
        if kind == SQUARE:
            H[i, i] += v
        elif kind == RECROSS:
            H[i, j] += v / 2
            H[j, i] += v / 2
        else:
            H[i, j] += v / 2j
            H[j, i] -= v / 2j
    return H, idx


def _env(al, alpha, R, psi, xs, phis):
    env = {"alpha": alpha, "rhoInv": 1.0 / R, "psi": psi, "phi": 0.0}
    for j, x in enumerate(xs, start=2):
        env[f"x{j}"] = x
    for k in range(1, al.K + 1):
        env[f"phi{k}"] = phis[k - 1] if k - 1 < len(phis) else 0.0
    return env


def _floor_margin(H, idx, floor):
    """Largest f-entry reduction keeping H PSD, minus floor; -inf if the derivative block fails."""
    f0 = next(n for n, a in enumerate(idx) if a.order == 0) if any(a.order == 0 for a in idx) else None
    diag = np.abs(np.real(np.diag(H)))
    scale = np.where(diag > 0, 1.0 / np.sqrt(np.where(diag > 0, diag, 1.0)), 1.0)
    He = H * scale[:, None] * scale[None, :]
    rest = [n for n in range(len(idx)) if n != f0]
    if rest:
        ev = np.linalg.eigvalsh(He[np.ix_(rest, rest)])
        if ev[0] < -1e-9:
            return -math.inf, float(ev[0])
    if f0 is None:
        return (math.inf if floor <= 0 else -math.inf), 0.0
    h = He[rest, f0] if rest else np.zeros(0)
    Hdd = He[np.ix_(rest, rest)] if rest else np.zeros((0, 0))
    schur = float(np.real(He[f0, f0] - (h.conj() @ np.linalg.pinv(Hdd, hermitian=True) @ h
                                         if rest else 0.0)))
    return schur / scale[f0] ** 2 - floor, schur


def spot_check(cert, form, n=50, seed=0, alpha_spread=4.0):
    """Substitute random region points into the pre-split form minus c alpha^7/R^8 |f|^2.

    Returns the smallest equilibrated eigenvalue seen (>= -1e-9 means pass).
    """
    rng = np.random.default_rng(seed)
    reg = cert.region
    d = form.alphabet.d
    form = QuadForm(form.alphabet, form.items())
    worst = math.inf
    for _ in range(n):
        R = reg.R_min * math.exp(rng.uniform(0, math.log(1e3 / reg.R_min + 1)))
        alpha = cert.c_alpha * rng.uniform(1.0, alpha_spread) * R ** (4.0 / 3.0)
        psi = rng.choice([-1, 1]) * max(reg.psi_min, 1e-300) * math.exp(rng.uniform(0, math.log(1e3)))
        xs = [rng.choice([-1, 1]) * R * math.exp(rng.uniform(math.log(1e-2), math.log(1e2)))
              for _ in range(d - 1)]
        phis = [rng.uniform(-reg.bound(k), reg.bound(k)) for k in range(1, 4)]
        env = _env(form.alphabet, alpha, R, psi, xs, phis)
        H, idx = jet_matrix(form, env)
        f0 = next(n for n, a in enumerate(idx) if a.order == 0)
        H[f0, f0] -= cert.c * alpha ** 7 / R ** 8
        diag = np.abs(np.real(np.diag(H)))
        diag = np.where(diag > 0, diag, 1.0)
        s = 1.0 / np.sqrt(diag)
        ev = np.linalg.eigvalsh(H * s[:, None] * s[None, :])
        worst = min(worst, float(ev[0]))
    return worst


def find_violation(form, region, c_alpha, n_samples=400, seed=0):
    """Search region points where no positive |f|^2 floor survives."""
    d = form.alphabet.d
    rng = np.random.default_rng(seed)
    pm = region.psi_min
    psis = sorted(set([pm, pm * 1.01 + 1e-3, pm + 0.1, pm + 0.5, 2 * pm + 1, 10 * pm + 10]
                      + ([float(v) for v in np.linspace(pm, 1.0, 11)] if pm < 1 else [])))
    Rs = [region.R_min, 2 * region.R_min, 10 * region.R_min, 1e3 * region.R_min]
    phis_1 = [0.0, -region.B1, region.B1]
    phis_2 = [0.0, -region.B2, region.B2]
    pts = [(R, psi, [0.0] * (d - 1), (p1, p2, 0.0))
           for R in Rs for psi in psis for p1 in phis_1 for p2 in phis_2]
    for _ in range(n_samples):
        R = region.R_min * math.exp(rng.uniform(0, math.log(1e3)))
        psi = rng.choice([-1, 1]) * (pm + math.exp(rng.uniform(math.log(1e-3), math.log(1e3))))
        xs = [R * rng.normal() for _ in range(d - 1)]
        pts.append((R, psi, xs, tuple(rng.uniform(-region.bound(k), region.bound(k))
                                      for k in (1, 2, 3))))
    for R, psi, xs, phis in pts:
        alpha = c_alpha * R ** (4.0 / 3.0)
        env = _env(form.alphabet, alpha, R, psi, xs, phis)
        H, idx = jet_matrix(form, env)
        margin, raw = _floor_margin(H, idx, 0.0)
        if math.isfinite(margin):
            value, reason = margin / (alpha ** 7 / R ** 8), "no positive |f|^2 floor"
        else:
            value, reason = raw, "derivative block indefinite"
        if value <= 1e-12:
            point = {"psi": float(psi), "R": float(R), "alpha": float(alpha),
                     "phi1": float(phis[0]), "phi2": float(phis[1])}
            point.update({f"x{j}": float(x) for j, x in enumerate(xs, start=2)})
            return Violation(point, reason, float(value))
    return None


def power_mean_gap(psi, ys, d):
    """psi^6 + sum (y_j)^6 - Phi^6/d^2, nonnegative by the power-mean inequality."""
    ys = np.asarray(ys, dtype=float)
    phi2 = psi ** 2 + float(np.sum(ys ** 2))
    return psi ** 6 + float(np.sum(ys ** 6)) - phi2 ** 3 / d ** 2


def default_certificate(d, B1=3.0, B2=3.0, **kw):
    from .ibp import commutator_form
    return certify_lower_bound(commutator_form(d), RegionSpec(d, B1=B1, B2=B2, **kw))
