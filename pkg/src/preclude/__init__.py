"""Exact matching preclusion numbers, integer and fractional, for small graphs."""

from .errors import PrecludeError
from .generators import FamilySpec, gen_family, gen_gk
from .graphcore import Graph, bipartition, build_graph, cartesian_product, read_graph
from .preclusion import (
    PreclusionReport,
    check_product_bound,
    fractional_preclusion,
    l_of_g,
    mp,
    mpf_bipartite_formula,
    mpf_product_regular,
)

__all__ = [
    "FamilySpec",
    "Graph",
    "PrecludeError",
    "PreclusionReport",
    "bipartition",
    "build_graph",
    "cartesian_product",
    "check_product_bound",
    "fractional_preclusion",
    "gen_family",
    "gen_gk",
    "l_of_g",
    "mp",
    "mpf_bipartite_formula",
    "mpf_product_regular",
    "read_graph",
]
