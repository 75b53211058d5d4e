"""Numeric application of symbolic operators to grid fields."""
import numpy as np

from .grid import DerivativeCache, Field


def apply_op(op, f, bindings, check_support=True):
    """Sum over terms of coeff(t, x) * D^a f."""
    if check_support:
        f.check_support()
    env = bindings.env(f.grid)
    cache = DerivativeCache(f)
    out = np.zeros(f.values.shape, dtype=complex)
    for idx, p in op.sorted_terms():
        out += p.evaluate(env) * cache.get(idx)
    return f.with_values(out)
