"""Trajectory checkpoints (Field binary layout + JSON manifest) and CSV curves."""
import csv
import json
import os

import numpy as np

from ..numgrid.grid import GridSpec, read_field, write_field
from .evolver import EvolutionSpec, Trajectory


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def save_trajectory(traj, directory):
    """One state_NNNN.bin per stored time, V.bin for a potential, manifest.json."""
    os.makedirs(directory, exist_ok=True)
    g = traj.grid
    files = []
    for k in range(len(traj)):
        name = f"state_{k:04d}.bin"
        write_field(os.path.join(directory, name), traj.states[k], g.spacings(), g.origins())
        files.append(name)
    spec = traj.spec
    manifest = {"times": traj.times.tolist(), "files": files, "diagnostics": traj.diagnostics,
                "grid": {"d": g.d, "counts": list(g.counts), "half_widths": list(g.half_widths)}}
    if spec is not None:
        manifest["spec"] = spec.describe()
        if spec.V is not None:
            write_field(os.path.join(directory, "V.bin"), spec.V.astype(complex), g.spacings(),
                        g.origins())
            manifest["potential"] = "V.bin"
    path = os.path.join(directory, "manifest.json")
    with open(path, "w") as fh:
        json.dump(_jsonable(manifest), fh, indent=2)
    return path


def load_trajectory(directory):
    with open(os.path.join(directory, "manifest.json")) as fh:
        man = json.load(fh)
    g = man["grid"]
    grid = GridSpec(g["d"], tuple(g["counts"]), tuple(g["half_widths"]))
    states = [read_field(os.path.join(directory, f))[0] for f in man["files"]]
    spec = None
    if "spec" in man:
        s = man["spec"]
        V = None
        if "potential" in man:
            V = read_field(os.path.join(directory, man["potential"]))[0].real
        spec = EvolutionSpec(s["d"], s["X"], s["N"], V=V, dt=s["dt"], edge_tol=s["edge_tol"])
    return Trajectory(np.array(man["times"]), np.array(states), grid, spec, man.get("diagnostics", {}))


def write_curve(path, columns, rows):
    """CSV with a header row; rows are sequences matching columns."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return path
