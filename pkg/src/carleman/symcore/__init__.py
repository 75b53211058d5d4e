from .alphabet import SymbolAlphabet, get_alphabet
from .gaussian import GaussianRational
from .grammar import (expand_templates, format_op, format_poly, parse_form_terms,
                      parse_op, parse_poly)
from .ops import (DerivIndex, DiffOp, op_adjoint, op_commutator, op_compose, op_split,
                  swap_axes)
from .poly import DiffPoly, poly_arith, poly_conj, poly_diff

__all__ = [
    "SymbolAlphabet", "get_alphabet", "GaussianRational", "DiffPoly", "DerivIndex",
    "DiffOp", "poly_arith", "poly_diff", "poly_conj", "op_compose", "op_adjoint",
    "op_commutator", "op_split", "swap_axes", "parse_op", "parse_poly",
    "parse_form_terms", "format_op", "format_poly", "expand_templates",
]
