"""Certify c alpha^7/R^8 as a pointwise floor of the commutator form, then
look at the same constant numerically: ratios on bump functions and
discrete Rayleigh minima.
"""
import numpy as np

from carleman.certify import RegionSpec, certify_lower_bound, default_certificate, spot_check
from carleman.ibp import commutator_form
from carleman.numgrid import carleman_ratio
from carleman.suites import admissible_bumps, rayleigh_scaling

for d in (1, 2):
    cert = default_certificate(d, B1=3.0, B2=3.0)
    print(f"d = {d}: c = {cert.c:g}, alpha >= {cert.c_alpha:g} R^(4/3)")
    for step in cert.steps:
        print(f"   {step.inequality}   [{'ok' if step.holds else 'FAILS'}]")
    print("   floor terms:", "; ".join(cert.floor_terms))
    print("   spot check min eigenvalue:", spot_check(cert, commutator_form(d), n=50, seed=1))

# relaxing |psi| >= 1 breaks the floor; the certifier reports where
bad = certify_lower_bound(commutator_form(1), RegionSpec(1, psi_min=0.5))
print("\npsi_min = 1/2:", bad.violation)

cert = default_certificate(1)
for R in (4.0, 8.0):
    alpha = cert.alpha_threshold(R)
    ratios = [carleman_ratio(u, alpha, R).ratio for u in admissible_bumps(1, R, 10, seed=3)]
    print(f"R = {R:g}, alpha = {alpha:.2f}: bump ratios min {min(ratios):.3g}, "
          f"median {np.median(ratios):.3g} (certified c = {cert.c:g})")

# alpha^7 dominance: the normalized discrete minimum settles as alpha grows
alphas = (40.0, 80.0, 160.0, 320.0)
vals, _ = rayleigh_scaling(4.0, alphas, N=64)
print("\nRayleigh minima times R^8/alpha^7 at R = 4:")
for a, v in zip(alphas, vals):
    print(f"   alpha = {a:6.1f}: {v:10.2f}")
