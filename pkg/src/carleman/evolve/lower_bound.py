"""End-to-end lower-bound chain for f = sigma u along a trajectory (a demo, not a proof).

All weighted norms are accumulated in log space: log ||e^{alpha Phi^2} X|| for
X in {f, P f, remainder pieces}, with P f = [P, sigma] u + sigma V u evaluated
from the symbolic cutoff remainder, analytic cutoff derivatives and spectral
derivatives of u on a refined grid.
"""
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from ..certify import RegionSpec, certify_lower_bound
from ..conjugate import classify_remainder, cutoff_remainder
from ..errors import HypothesisUnmet
from ..ibp import commutator_form
from .cutoffs import make_cutoffs
from .diagnostics import energy_profile, gamma_profile, plateau_ball_norm
from .spectral import refine

PARTS = ("eta_dtheta", "deta_theta", "deta_dtheta")


@dataclass
class DemoRecord:
    name: str
    anchor: str
    status: str
    values: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status in ("pass", "flagged")


@dataclass
class DemoReport:
    R: float
    alpha: float
    c: float
    c_alpha: float
    M: float
    records: list

    @property
    def ok(self):
        return all(r.passed for r in self.records)

    def to_dict(self):
        out = asdict(self)
        out["ok"] = self.ok
        return out


@lru_cache(maxsize=None)
def _remainder_parts(d):
    return classify_remainder(cutoff_remainder(d))


@lru_cache(maxsize=None)
def _certificate(d, B1, B2, B3):
    return certify_lower_bound(commutator_form(d), RegionSpec(d, B1=B1, B2=B2, B3=B3))


def _trap_weights(t):
    w = np.zeros_like(t)
    dt = np.diff(t)
    w[:-1] += dt / 2
    w[1:] += dt / 2
    return w


def _rec(name, anchor, ok, **values):
    clean = {k: (float(v) if isinstance(v, (np.floating, float, int)) and not isinstance(v, bool)
                 else v) for k, v in values.items()}
    return DemoRecord(name, anchor, "pass" if ok else "fail", clean)


def _log_norm(acc):
    return 0.5 * float(logsumexp(acc)) if acc else -math.inf


def lower_bound_demo(traj, R, alpha_coeff=None, refine_factor=None, max_fine_points=2 ** 21,
                     normalize=True):
    """Evaluate each inequality of the lower-bound chain at radius R and report it.

    The Carleman constant and alpha threshold come from certify_lower_bound with
    the actual sup bounds of the plateau profile's derivatives.
    """
    grid = traj.grid
    d = grid.d
    if min(grid.half_widths) < R + 1:
        raise HypothesisUnmet(f"the ball of radius {R} needs a margin inside the box")
    if traj.times[0] > 1e-12 or traj.times[-1] < 1 - 1e-12:
        raise HypothesisUnmet("trajectory must cover [0, 1]")
    cut = make_cutoffs(d, R)
    M = cut.M
    B = tuple(round(cut.phi.sup(k), 6) + 1e-6 for k in (1, 2, 3))
    cert = _certificate(d, *B)
    if not cert.ok:
        raise HypothesisUnmet("no Carleman certificate for this profile")
    c = cert.c
    ca = max(cert.c_alpha, alpha_coeff or 0.0)
    alpha = ca * R ** (4.0 / 3.0)

    nb = plateau_ball_norm(traj)
    if not nb > 1e-150:
        raise HypothesisUnmet("u has no mass on the plateau times over the unit ball")
    tr = traj.scaled(1.0 / nb) if normalize else traj
    nb1 = plateau_ball_norm(tr)
    records = [_rec("normalization", "plateau-ball mass hypothesis", nb1 >= 1 - 1e-9,
                    raw=nb, normalized=nb1, scale=1.0 / nb)]
    if nb1 < 1 - 1e-9:
        raise HypothesisUnmet("plateau-ball mass below 1")
    gamma = gamma_profile(tr, R)
    A = energy_profile(tr)
    L = traj.L

    parts = _remainder_parts(d)
    derivs = sorted({tuple(i[1:]) for p in parts.values() for i in p.terms} | {(0,) * d})
    if refine_factor is None:
        h = max(grid.spacing(j) for j in range(1, d + 1))
        target = R / (alpha * (M + 1)) / 4
        m = 2 ** max(0, math.ceil(math.log2(h / target)))
        while m > 1 and np.prod(grid.counts) * m ** d > max_fine_points:
            m //= 2
    else:
        m = int(refine_factor)

    V = traj.spec.potential() if traj.spec is not None and traj.spec.V is not None else None
    Vfine = None
    if V is not None:
        Vfine = np.real(refine(V.astype(complex), grid, m)[0][(0,) * d])

    E1 = (M + 1) ** 2 + d - 1
    E2 = 3.0 + d
    wts = _trap_weights(traj.times)
    acc = {k: [] for k in ("f", "Pf") + PARTS}
    plain = {k: 0.0 for k in PARTS}
    K = {k: 0.0 for k in PARTS}
    support_ok = {k: True for k in PARTS}
    worst_support = {k: 0.0 for k in PARTS}
    tol = 1e-9
    for n, t in enumerate(traj.times):
        if wts[n] == 0:
            continue
        dv, fine = refine(tr.states[n], grid, m, derivs)
        coords = [np.broadcast_to(fine.coord(j), fine.shape) for j in range(1, d + 1)]
        env = cut.env(coords, t, alpha)
        logw = math.log(wts[n] * fine.cell_volume())
        psi = env["psi"]
        Phi2 = psi ** 2 + sum((coords[j - 1] / R) ** 2 for j in range(2, d + 1))
        r = np.sqrt(sum(x ** 2 for x in coords))
        u = dv[(0,) * d]
        total = np.zeros(fine.shape, dtype=complex)
        for name in PARTS:
            piece = np.zeros(fine.shape, dtype=complex)
            live = np.zeros(fine.shape, dtype=bool)
            ksum = 0.0
            for idx, coef in parts[name].terms.items():
                cv = np.broadcast_to(coef.evaluate(env), fine.shape)
                a = np.abs(cv)
                ksum += float(a.max())
                live |= a > 0
                piece = piece + cv * dv[tuple(idx[1:])]
            K[name] = max(K[name], ksum)
            total = total + piece
            plain[name] += wts[n] * fine.cell_volume() * float(np.sum(np.abs(piece) ** 2))
            if np.any(live):
                ap = np.abs(psi[live])
                if name == "eta_dtheta":
                    bad = ((r[live] < R - 1 - tol) | (r[live] > R + tol) | (ap < 1 - tol)
                           | (ap > M + 1 + tol) | (Phi2[live] > E1 + tol))
                    excess = float(np.max(Phi2[live])) - E1
                else:
                    bad = (ap < 1 - tol) | (ap > 2 + tol) | (r[live] > R + tol) | \
                        (Phi2[live] > E2 + tol)
                    excess = float(np.max(Phi2[live])) - E2
                    if name == "deta_dtheta":
                        bad |= r[live] < R - 1 - tol
                if np.any(bad):
                    support_ok[name] = False
                worst_support[name] = max(worst_support[name], excess)
            nz = np.abs(piece) > 0
            if np.any(nz):
                acc[name].append(logsumexp(2 * np.log(np.abs(piece[nz])) + 2 * alpha * Phi2[nz])
                                 + logw)
        sigma = env["theta"] * env["eta"]
        f = sigma * u
        Pf = total + (sigma * Vfine * u if Vfine is not None else 0.0)
        for key, X in (("f", f), ("Pf", Pf)):
            nz = np.abs(X) > 0
            if np.any(nz):
                acc[key].append(logsumexp(2 * np.log(np.abs(X[nz])) + 2 * alpha * Phi2[nz]) + logw)

    lf = _log_norm(acc["f"])
    lPf = _log_norm(acc["Pf"])
    lparts = {k: _log_norm(acc[k]) for k in PARTS}
    lg = math.log(gamma) if gamma > 0 else -math.inf
    lA = math.log(A)
    lnb = math.log(nb1)
    carl = 0.5 * math.log(c) + 3.5 * math.log(alpha) - 4 * math.log(R)

    def _log(x):
        return math.log(x) if x > 0 else -math.inf

    records.append(_rec("weighted lower bound", "plateau lower bound e^{(M-1)^2 alpha}",
                        lf >= (M - 1) ** 2 * alpha + lnb,
                        log_weighted_f=lf, log_bound=(M - 1) ** 2 * alpha + lnb))
    records.append(_rec("Carleman inequality", "Carleman estimate applied to f = sigma u",
                        lPf >= carl + lf, log_lhs=lPf, log_rhs=carl + lf, c=c, alpha=alpha,
                        c_alpha=ca))
    records.append(_rec("support of eta x d(theta) terms", "remainder support classification",
                        support_ok["eta_dtheta"], Phi2_excess=worst_support["eta_dtheta"],
                        Phi2_cap=E1))
    records.append(_rec("support of d(eta) terms", "remainder support classification",
                        support_ok["deta_theta"] and support_ok["deta_dtheta"],
                        Phi2_excess=max(worst_support["deta_theta"], worst_support["deta_dtheta"]),
                        Phi2_cap=E2))
    b1 = E1 * alpha + _log(K["eta_dtheta"]) + lg
    b2 = E2 * alpha + _log(K["deta_theta"]) + lA
    b3 = E2 * alpha + _log(K["deta_dtheta"]) + lg
    records.append(_rec("annulus remainder bound", "eta x d(theta) terms against gamma(R)",
                        lparts["eta_dtheta"] <= b1, log_norm=lparts["eta_dtheta"], log_bound=b1,
                        K=K["eta_dtheta"]))
    records.append(_rec("cutoff-in-psi remainder bound", "d(eta) x theta terms against A",
                        lparts["deta_theta"] <= b2, log_norm=lparts["deta_theta"], log_bound=b2,
                        K=K["deta_theta"]))
    records.append(_rec("mixed remainder bound", "d(eta) x d(theta) terms against gamma(R)",
                        lparts["deta_dtheta"] <= b3, log_norm=lparts["deta_dtheta"], log_bound=b3,
                        K=K["deta_dtheta"]))
    rhs_chain = float(logsumexp([b1, b2, b3] + ([math.log(L) + lf] if L > 0 else [])))
    records.append(_rec("inequality chain", "Carleman bound against the sum of remainder bounds",
                        carl + lf <= rhs_chain, log_lhs=carl + lf, log_rhs=rhs_chain))
    half = math.log(0.5) + carl
    records.append(_rec("potential absorbed", "hiding the L term for large R",
                        L == 0 or math.log(L) <= half, L=L, log_half_carleman=half))
    la = math.log(0.5) + half + (M - 1) ** 2 * alpha + lnb
    records.append(_rec("energy term absorbed", "hiding A with (M-1)^2 >= 3 + d",
                        b2 <= la, log_A_term=b2, log_budget=la, A=A))
    num_main = half + (M - 1) ** 2 * alpha + lnb
    if b2 < num_main:
        lnum = num_main + math.log1p(-math.exp(b2 - num_main))
        lden = float(np.logaddexp(E1 * alpha + _log(K["eta_dtheta"]),
                                  E2 * alpha + _log(K["deta_dtheta"])))
        lgam_low = lnum - lden
    else:
        lgam_low = math.inf
    records.append(_rec("gamma lower bound", "final gamma(R) bound from the chain",
                        lg >= lgam_low, log_gamma=lg, log_bound=lgam_low, gamma=gamma))
    expo = 4 * M + d - 1
    shape = (math.log(0.25) + carl + lnb - _log(K["eta_dtheta"] + K["deta_dtheta"])
             - expo * alpha)
    records.append(_rec("gamma decay shape", "cR^{2/3} e^{-cR^{4/3}} form, exponent (4M+d-1) alpha",
                        lg >= shape and shape <= lgam_low, log_gamma=lg, log_shape=shape,
                        exponent=expo * alpha))
    rng = DemoRecord("plateau height range", "phi in [0, 3] versus M = 1 + sqrt(3 + d)",
                     "flagged" if cut.flagged else "pass", {"M": M, "max_phi": max(3.0, M)})
    records.append(rng)
    return DemoReport(float(R), float(alpha), float(c), float(ca), float(M), records)
