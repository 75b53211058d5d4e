from .cutoffs import Cutoffs, eta, make_cutoffs, plateau_height
from .diagnostics import (derivative_forcings, energy_profile, gamma_profile, log_weighted_norm,
                          logconvexity_check, plateau_ball_norm, weighted_norm)
from .evolver import (EvolutionSpec, Trajectory, edge_ratio, evolve, evolve_centered, gaussian, plane_wave,
                      symbol, wavenumbers)
from .heat_kernel import heat_kernel_check, kernel, kernel_1d, kernel_origin_exact
from .io import load_trajectory, save_trajectory, write_curve
from .lemma import LogConvexInstance, lemma_identity_check
from .lower_bound import DemoRecord, DemoReport, lower_bound_demo
from .spectral import refine, series_1d

__all__ = ["Cutoffs", "eta", "make_cutoffs", "plateau_height", "derivative_forcings",
           "energy_profile", "gamma_profile", "log_weighted_norm", "logconvexity_check",
           "plateau_ball_norm", "weighted_norm", "EvolutionSpec", "Trajectory", "edge_ratio",
           "evolve", "evolve_centered", "gaussian", "plane_wave", "symbol", "wavenumbers", "heat_kernel_check",
           "kernel", "kernel_1d", "kernel_origin_exact", "load_trajectory", "save_trajectory",
           "write_curve", "LogConvexInstance", "lemma_identity_check", "DemoRecord",
           "DemoReport", "lower_bound_demo", "refine", "series_1d"]
