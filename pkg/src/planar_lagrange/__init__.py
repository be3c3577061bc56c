"""Planar rooted trees, Łukasiewicz words, flags and Lagrange inversion for tree series."""

from .errors import DomainError, ParseError, PlanarLagrangeError
from .series import TreeSeries, solve_inversion_gamma, solve_inversion_iterate, solve_inversion_recurrence
from .trees import EMPTY, X, PlanarTree, parse_tree, render_tree

__all__ = [
    "EMPTY",
    "X",
    "DomainError",
    "ParseError",
    "PlanarLagrangeError",
    "PlanarTree",
    "TreeSeries",
    "parse_tree",
    "render_tree",
    "solve_inversion_gamma",
    "solve_inversion_iterate",
    "solve_inversion_recurrence",
]

__version__ = "0.1.0"
