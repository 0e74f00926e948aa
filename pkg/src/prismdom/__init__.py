"""Exact partial domination in prisms of graphs."""
from ._jit import NUMBA_OK
from .graph import (Graph, GraphError, closed_neighborhood, complete, coverage, cycle,
                    banner_graph, gadget_graph, generate_family, is_independent, max_degree,
                    path, random_graph, star)
from .prism import Permutation, PrismGraph, build_prism, compute_i, mirror_set, parse_permutation
from .solver import (CoverageProfile, Proportion, coverage_profile, gamma, gamma_p,
                     gamma_p_from_profile, gamma_p_oracle, is_p_dominating)
from .sweep import Classification, Mode, SweepResult, classify, enumerate_permutations, sample_permutations, sweep

__version__ = "0.1.0"
