"""Batch front end: run a verification suite, write a JSON report and CSV sidecars.

Exit status: 0 when no record failed, 1 on failed checks, 2 on configuration
errors (unknown command, bad flags).
"""
import argparse
import csv
import json
import math
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CarlemanError
from .suites import DEFAULT_SEED, FAIL, POTENTIALS, SUITES, Record, RunConfig

OUT_ENV = "CARLEMAN_OUT"
DEFAULT_OUT = "carleman-reports"
SCHEMA_PATH = Path(__file__).with_name("report.schema.json")
COMMANDS = tuple(SUITES) + ("all",)

# CSV sidecar columns, per command
CSV_COLUMNS = {
    "evolve": {"H_lambda": ["t", "log_H"]},
    "logconvexity": {"H_lambda_zero": ["t", "log_H"], "H_lambda_bump": ["t", "log_H"]},
    "heat-kernel": {"kernel_profile": ["t", "r", "K"]},
    "lower-bound-demo": {"gamma": ["R", "alpha", "gamma", "log_gamma_bound", "seconds"]},
}


def _clean(obj):
    """JSON-safe copy: numpy scalars unwrapped, non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def build_parser():
    p = argparse.ArgumentParser(prog="carleman", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--d", type=int, default=1, choices=(1, 2, 3), help="space dimension")
    p.add_argument("--R", type=float, nargs="+", help="radii (lower-bound demo, bump ratios)")
    p.add_argument("--alpha-coeff", type=float, help="alpha = coeff * R^(4/3) override")
    p.add_argument("--lambda", dest="lam", type=float, default=0.05, help="weight exponent scale")
    p.add_argument("--grid", type=int, help="points per spatial axis")
    p.add_argument("--tol", type=float, help="override the primary tolerance of a suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    p.add_argument("--refs", help="reference-set directory")
    p.add_argument("--V", default="zero", choices=sorted(POTENTIALS), help="potential for evolve")
    return p


def config_from_args(args):
    return RunConfig(command=args.command, d=args.d, R=args.R, alpha_coeff=args.alpha_coeff,
                     lam=args.lam, grid=args.grid, tol=args.tol, seed=args.seed,
                     out=args.out or os.environ.get(OUT_ENV) or DEFAULT_OUT, refs=args.refs,
                     V=args.V)


def run_suite(cfg, name):
    """Records and sidecars of one suite; module errors become failed records."""
    try:
        return SUITES[name](cfg)
    except CarlemanError as exc:
        return [Record(name, "suite execution", FAIL,
                       {"error": f"{type(exc).__name__}: {exc}"})], {}


def run(cfg):
    """Execute cfg.command and return the report dict."""
    t0 = time.perf_counter()
    names = list(SUITES) if cfg.command == "all" else [cfg.command]
    records, sidecars = [], {}
    for name in names:
        recs, side = run_suite(cfg, name)
        if cfg.command == "all":
            recs = [Record(f"{name}: {r.name}", r.anchor, r.status, r.values) for r in recs]
            side = {f"{name}_{k}": v for k, v in side.items()}
        records += recs
        sidecars.update(side)
    cfg_echo = asdict(cfg)
    report = {
        "command": cfg.command,
        "version": __version__,
        "seed": cfg.seed,
        "config": cfg_echo,
        "records": [asdict(r) for r in records],
        "wall_time": time.perf_counter() - t0,
        "ok": all(r.status != FAIL for r in records),
    }
    return _clean(report), sidecars


def write_outputs(report, sidecars, out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{report['command']}.json"
    path.write_text(json.dumps(report, indent=2))
    written = [str(path)]
    for name, (cols, rows) in sidecars.items():
        p = out / f"{report['command']}_{name}.csv"
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(cols)
            for row in rows:
                w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                            for v in row])
        written.append(str(p))
    return written


def load_schema():
    return json.loads(SCHEMA_PATH.read_text())


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        print(f"carleman: configuration error: {exc}", file=sys.stderr)
        return 2
    report, sidecars = run(cfg)
    paths = write_outputs(report, sidecars, cfg.out)
    for r in report["records"]:
        print(f"[{r['status']:>12}] {r['name']}")
    print(f"report: {paths[0]}")
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
