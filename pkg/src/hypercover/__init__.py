"""Hyperplane and polynomial covers of the Boolean cube with multiplicities."""

from .complexity import (
    AlgWitness,
    IndexWitness,
    algebraic_complexity,
    index_complexity_exact,
    index_complexity_greedy,
)
from .constructions import (
    halfcube_example_cover,
    halfcube_set,
    layer_complement_cover,
    layer_minus_point_cover,
    level_plane,
    tail_cover,
    venkitesh_counterexample,
)
from .cover import CoverFamily, CoverReport, Hyperplane, MultiplicityProfile, profile, verify_cover
from .fieldkit import (
    GridSpec,
    HypothesisError,
    SumsetInstance,
    check_res_sum_theorem,
    claim_coeff,
    cn_witness,
    cw_generalized_search,
    erdos_heilbronn_check,
    restricted_sumset,
)
from .hypercube import CubePoint, PointSet, layer, tail_set, weight, weight_count, weight_set
from .polycheck import (
    MultiplicityCert,
    check_degree_certificates,
    check_grid_theorem,
    from_family,
    verify_poly_cover,
    zero_multiplicity,
)
from .polynomial import SparsePoly, parse_poly
from .search import SearchResult, TraceCatalog, enumerate_traces, min_cover_search

__version__ = "0.1.0"

__all__ = [
    "AlgWitness", "CoverFamily", "CoverReport", "CubePoint", "GridSpec", "Hyperplane",
    "HypothesisError", "IndexWitness", "MultiplicityCert", "MultiplicityProfile", "PointSet",
    "SearchResult", "SparsePoly", "SumsetInstance", "TraceCatalog",
    "algebraic_complexity", "check_degree_certificates", "check_grid_theorem",
    "check_res_sum_theorem", "claim_coeff", "cn_witness", "cw_generalized_search",
    "enumerate_traces", "erdos_heilbronn_check", "from_family", "halfcube_example_cover",
    "halfcube_set", "index_complexity_exact", "index_complexity_greedy", "layer",
    "layer_complement_cover", "layer_minus_point_cover", "level_plane", "min_cover_search",
    "parse_poly", "profile", "restricted_sumset", "tail_cover", "tail_set",
    "venkitesh_counterexample", "verify_cover", "verify_poly_cover", "weight", "weight_count",
    "weight_set", "zero_multiplicity",
]
