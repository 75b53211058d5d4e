"""Conjugate the fourth-order Schrodinger operator by the Gaussian weight,
split it, and check every reference display against the engine.

Run: python demos/01_symbolic_regression.py [d]
"""
import sys
import time

from carleman.conjugate import (build_carleman_operator, commutator_cases, list_references,
                                load_reference, sum_of_cases)
from carleman.ibp import commutator_form
from carleman.suites import RunConfig, suite_symbolic
from carleman.symcore import format_op, op_adjoint, op_commutator

d = int(sys.argv[1]) if len(sys.argv) > 1 else 2

t0 = time.perf_counter()
L, S, A = build_carleman_operator(d)
print(f"d = {d}: conjugated operator has {len(L.terms)} derivative terms "
      f"({time.perf_counter() - t0:.3f} s)")
print("S self-adjoint:", op_adjoint(S) == S, "  A skew:", op_adjoint(A) == -A)

# the zeroth-order part of [S, A] carries the alpha^7 floor
C = op_commutator(S, A)
print("\n[S, A] =")
print(format_op(C))

cases = commutator_cases(d)
print("\nsum of the five cases equals [S, A]:", sum_of_cases(cases, d) == C)

form = commutator_form(d)
print(f"\n<f, [S, A] f> after integration by parts: {len(form)} terms, "
      f"balanced = {form.is_balanced()}")
for kind, a, b, w in form.items():
    print(f"  {kind:7s} {a} {b}: {w}")

# reference comparison, including the flagged third-derivative coefficient
print()
records, _ = suite_symbolic(RunConfig("verify-symbolic", d=d))
for r in records:
    extra = r.values.get("typo_terms") or r.values.get("differing_terms") or ""
    print(f"[{r.status:>12}] {r.name} {extra}")
print(f"\n{len(list_references())} reference files; note on conj_quartic_x1:")
print("  ", load_reference("conj_quartic_x1").note)
