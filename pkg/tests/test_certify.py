import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from carleman.certify import (Certificate, RegionSpec, certify_lower_bound, cs_split,
                              default_certificate, find_violation, jet_matrix, power_mean_gap,
                              spot_check)
from carleman.errors import NonPositiveSplitter
from carleman.ibp import RECROSS, IMCROSS, commutator_form
from carleman.symcore import parse_poly


@pytest.mark.parametrize("kw", [
    dict(R_min=0.5), dict(B1=-1.0), dict(B3=-0.1), dict(psi_min=-1.0),
    dict(share=0.0), dict(share=1.0), dict(c_alpha=0.0), dict(c_omega=-2.0),
])
def test_region_validation(kw):
    with pytest.raises(ValueError):
        RegionSpec(1, **kw)


@pytest.mark.parametrize("d, c, c_alpha", [(1, 1024.0, 4.0), (2, 1024.0, 8.0)])
def test_default_certificate(d, c, c_alpha):
    cert = default_certificate(d)
    assert cert.ok
    assert cert.c == c and cert.c_alpha == c_alpha
    assert all(s.holds for s in cert.steps)
    # threshold has the c_alpha R^(4/3) shape
    for R in (1.0, 4.0, 27.0):
        assert cert.alpha_threshold(R) == pytest.approx(c_alpha * R ** (4 / 3))
    assert "R^(4/3)" in cert.to_dict()["threshold"]


def test_certificate_json_round_trip():
    cert = default_certificate(1)
    data = json.loads(cert.to_json())
    assert data["ok"] is True
    assert data["c"] == cert.c and data["c_alpha"] == cert.c_alpha
    assert len(data["steps"]) == len(cert.steps)
    assert data["region"]["B1"] == 3.0


@pytest.mark.parametrize("d", [1, 2])
def test_spot_check_sound(d):
    cert = default_certificate(d)
    assert spot_check(cert, commutator_form(d), n=50, seed=7) >= -1e-9


def test_spot_check_detects_inflated_constant():
    cert = default_certificate(1)
    bad = Certificate(c=cert.c * 1e6, c_alpha=cert.c_alpha, c_omega=cert.c_omega,
                      c_rho=cert.c_rho, region=cert.region)
    assert spot_check(bad, commutator_form(1), n=50, seed=7) < -1e-9


def test_larger_phi_bounds_still_certified():
    cert = certify_lower_bound(commutator_form(1), RegionSpec(1, B1=60, B2=1500))
    assert cert.ok and cert.c > 0


@pytest.mark.parametrize("kw", [dict(psi_min=0.0), dict(psi_min=0.5), dict(c_alpha=0.01)])
def test_relaxed_region_reports_violation(kw):
    cert = certify_lower_bound(commutator_form(1), RegionSpec(1, **kw))
    assert not cert.ok and cert.c == 0
    assert cert.violation is not None and cert.violation.value <= 1e-12
    # the reported point really has no positive floor
    assert find_violation(commutator_form(1), RegionSpec(1, **kw), cert.c_alpha) is not None


def test_no_violation_on_certified_region():
    cert = default_certificate(1)
    assert find_violation(commutator_form(1), cert.region, cert.c_alpha, n_samples=200) is None


@pytest.mark.parametrize("s", [0, -1.5, "-omega", "omega + varrho", "psi"])
def test_nonpositive_splitter(s):
    form = commutator_form(1)
    if isinstance(s, str):
        from carleman.certify import _certify_alphabet
        s = parse_poly(s, _certify_alphabet(form.alphabet))
    with pytest.raises(NonPositiveSplitter):
        cs_split(form, s, 1.0)


@pytest.mark.parametrize("d", [1, 2])
def test_cs_split_is_pointwise_lower(d):
    form = commutator_form(d)
    split = cs_split(form, 2.0, 3.0)
    assert not any(k in (RECROSS, IMCROSS) for k, *_ in split.items())
    rng = np.random.default_rng(d)
    for _ in range(25):
        R = math.exp(rng.uniform(0, 4))
        env = {"alpha": 4 * R ** (4 / 3) * rng.uniform(1, 3), "rhoInv": 1 / R,
               "psi": rng.choice([-1, 1]) * rng.uniform(1, 5), "phi": 0.0,
               "B0": 0.0, "B1": 3.0, "B2": 3.0, "B3": 0.0,
               "phi1": rng.uniform(-3, 3), "phi2": rng.uniform(-3, 3), "phi3": 0.0}
        for j in range(2, d + 1):
            env[f"x{j}"] = R * rng.normal()
        H0, idx0 = jet_matrix(form, env)
        H1, idx1 = jet_matrix(split, env)
        assert idx0 == idx1
        gap = H0 - H1
        scale = np.sqrt(np.outer(np.abs(np.diag(H0)), np.abs(np.diag(H0)))).max()
        assert np.linalg.eigvalsh(gap)[0] >= -1e-9 * scale


@given(st.floats(-10, 10), st.lists(st.floats(-10, 10), min_size=0, max_size=2))
def test_power_mean_gap_nonnegative(psi, ys):
    d = len(ys) + 1
    gap = power_mean_gap(psi, ys, d)
    size = (psi ** 2 + sum(y * y for y in ys)) ** 3
    assert gap >= -1e-12 * max(size, 1.0)


def test_cs_split_underestimates_on_fields():
    from carleman.ibp import form_eval_numeric
    from carleman.suites import random_fields
    form = commutator_form(1)
    split = cs_split(form, 2.0, 3.0)
    for f, b in random_fields(1, 6, 128, seed=11):
        prof = b.profile()
        bounds = {f"B{k}": prof.sup(k) for k in range(4)}
        b.extra.update(bounds)
        q0 = form_eval_numeric(form, f, b).real
        q1 = form_eval_numeric(split, f, b).real
        assert q1 <= q0 + 1e-9 * abs(q0)


def test_pure_square_form_reported_directly():
    from carleman.ibp import QuadForm, SQUARE
    from carleman.symcore import DerivIndex, get_alphabet
    al = get_alphabet(1)
    zero = DerivIndex.zero(1)
    cert = certify_lower_bound(QuadForm(al, [(SQUARE, zero, zero, parse_poly("5", al))]),
                               RegionSpec(1))
    # a constant floor does not scale like alpha^7/R^8, so it is not uniform
    assert cert.ok and cert.c == 5 and not cert.uniform


@pytest.mark.parametrize("kw", [dict(R_min=4.0), dict(c_alpha=8.0), dict(R_min=10.0, c_alpha=16.0)])
def test_monotone_in_region(kw):
    cert = certify_lower_bound(commutator_form(1), RegionSpec(1, **kw))
    assert cert.ok and cert.c > 0
    if "c_alpha" in kw:
        assert cert.c_alpha == kw["c_alpha"]


def test_zero_psi_violation_point():
    cert = certify_lower_bound(commutator_form(1), RegionSpec(1, psi_min=0.0))
    assert cert.violation.point["psi"] == 0.0
