"""Walk one free Gaussian trajectory through the lower-bound chain at a few
radii and print every intermediate inequality.
"""
import sys

from carleman.evolve import lower_bound_demo
from carleman.suites import gaussian_run

d = int(sys.argv[1]) if len(sys.argv) > 1 else 1
tr = gaussian_run(d, "zero", n_store=257 if d == 1 else 65)
for R in (4.0, 8.0):
    rep = lower_bound_demo(tr, R)
    print(f"R = {R:g}: alpha = {rep.alpha:.2f}, c = {rep.c:g}, M = {rep.M:.4f}")
    for r in rep.records:
        # comparisons are kept in log space; the weights reach e^400 at R = 4
        shown = ", ".join(f"{k} = {v:.4g}" for k, v in r.values.items()
                          if isinstance(v, (int, float)))
        print(f"   [{r.status:>7}] {r.name}  {shown}")
    print()
