"""Symbolic-numeric checks for Carleman estimates of the separable fourth-order
Schrodinger operator i d_t + sum_j d_{x_j}^4."""

__version__ = "0.1.0"
