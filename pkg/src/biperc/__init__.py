"""Infection resilience of bipartite networks.

Evaluate, simulate, and optimize the expected infection level of
(balanced) bipartite graphs under the independent-cascade model with
nature infection probability mu and per-edge transmission probability p,
via its exact correspondence with independent edge percolation.  Includes
exhaustive extremal search over half-regular isomorphism classes, phase
diagrams, the NP-hard optimal-subnetwork problem with reduction-based
instance generators, and the general threshold variant.
"""

from .backend import backend_name
from .errors import CapacityError, InfeasibleError
from .extremal import (
    ConjectureReport,
    PhaseDiagram,
    SearchResult,
    SubnetworkInstance,
    best_half_regular,
    best_subnetwork_exact,
    best_subnetwork_local,
    conjecture_check,
    kdd_decomposition_exists,
    phase_boundary_mu,
    phase_region,
    phase_to_csv,
    reduce_clique_decomposition,
    reduce_exact_cover,
)
from .graphs import (
    BipartiteGraph,
    ComponentStats,
    canonical_form,
    components,
    enumerate_half_regular,
    format_graph,
    gen_kdd,
    gen_kdn,
    gen_matching,
    gen_star,
    make_graph,
    parse_graph,
    permuted,
    read_graph,
    validate,
    write_graph,
)
from .infection import (
    ThresholdDistribution,
    cascade_as_threshold,
    cascade_sample,
    delta_diagnostics,
    infected_fraction_exact,
    infected_fraction_mc,
    kdd_exact,
    kdn_limit,
    l_prob,
    r_prob,
    star_expected_fraction,
    star_limit,
    star_threshold_exact,
    threshold_cascade_sample,
    threshold_fraction_mc,
)
from .percolation import (
    EXACT_EDGE_LIMIT,
    ISOLATED_COUNT,
    SUM_SQ_EDGES,
    SUM_SQ_SIZES,
    SUSCEPTIBILITY,
    Estimate,
    Functional,
    escape_weight,
    eval_functional,
    exact_expectation,
    mc_expectation,
    percolate_sample,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CapacityError",
    "ComponentStats",
    "ConjectureReport",
    "Estimate",
    "EXACT_EDGE_LIMIT",
    "Functional",
    "InfeasibleError",
    "ISOLATED_COUNT",
    "PhaseDiagram",
    "SearchResult",
    "SubnetworkInstance",
    "SUM_SQ_EDGES",
    "SUM_SQ_SIZES",
    "SUSCEPTIBILITY",
    "ThresholdDistribution",
    "backend_name",
    "best_half_regular",
    "best_subnetwork_exact",
    "best_subnetwork_local",
    "canonical_form",
    "cascade_as_threshold",
    "cascade_sample",
    "components",
    "conjecture_check",
    "delta_diagnostics",
    "enumerate_half_regular",
    "escape_weight",
    "eval_functional",
    "exact_expectation",
    "format_graph",
    "gen_kdd",
    "gen_kdn",
    "gen_matching",
    "gen_star",
    "infected_fraction_exact",
    "infected_fraction_mc",
    "kdd_decomposition_exists",
    "kdd_exact",
    "kdn_limit",
    "l_prob",
    "make_graph",
    "mc_expectation",
    "parse_graph",
    "percolate_sample",
    "permuted",
    "phase_boundary_mu",
    "phase_region",
    "phase_to_csv",
    "r_prob",
    "read_graph",
    "reduce_clique_decomposition",
    "reduce_exact_cover",
    "star_expected_fraction",
    "star_limit",
    "star_threshold_exact",
    "threshold_cascade_sample",
    "threshold_fraction_mc",
    "validate",
    "write_graph",
]
