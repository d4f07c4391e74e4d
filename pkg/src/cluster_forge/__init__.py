"""Exact Mayer cluster weights of the one-dimensional hard-core gas, and
checks of the graph-sum identities they satisfy."""

from .activity import build_gh, centroid_less, is_active, lex_edge_less, lex_edge_less_h, psi, psi_h
from .graph import (CapacityError, LabeledGraph, count_components, edge_index, enumerate_graphs,
                    is_connected, relabel, toggle_edge)
from .identities import (IdentityReport, continuum_identity, discrete_identity, discrete_weight,
                         lambert_coefficient, potts_both_sides, pressure_series_check)
from .polytope import MayerWeight, enumerate_subpolytopes, exact_volume, mayer_weight, mc_volume, subpolytope_in
from .trees import (RootedTree, enumerate_h_increasing_trees, enumerate_increasing_trees,
                    enumerate_rooted_cayley_trees, is_h_increasing_tree, is_increasing_tree, tree_to_height)

__version__ = "0.1.0"
