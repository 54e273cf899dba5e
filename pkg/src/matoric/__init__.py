"""Combinatorics of toric ideals of matroids.

The package computes basis-pair invariants (Delta classes), degree-truncated
minimal binomial generating sets, decision procedures built on them (binary,
U(3,6)-minor, complete intersection, unique generation), and exhaustive
isomorph-free atlases of small matroids used to validate those procedures.
"""

from . import atlas, cli, core, errors, fibers, formats, minors, toric
from .core import (
    Matroid,
    bases_cobases,
    basis_graph,
    basis_graph_diameter,
    connected_components,
    direct_sum,
    from_bases,
    simplify_loops_coloops,
    strongly_base_orderable,
    transversal,
    uniform,
    verify_multiple_symmetric_exchange,
    verify_symmetric_exchange,
)

__all__ = [
    "Matroid",
    "atlas",
    "bases_cobases",
    "basis_graph",
    "basis_graph_diameter",
    "cli",
    "connected_components",
    "core",
    "direct_sum",
    "errors",
    "fibers",
    "formats",
    "from_bases",
    "minors",
    "simplify_loops_coloops",
    "strongly_base_orderable",
    "toric",
    "transversal",
    "uniform",
    "verify_multiple_symmetric_exchange",
    "verify_symmetric_exchange",
]

__version__ = "0.1.0"
