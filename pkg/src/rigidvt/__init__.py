"""Generic rigidity, global rigidity and vertex-transitive graphs."""

__version__ = "0.1.0"

from .errors import (
    InputError,
    PropertyViolation,
    ProvenanceError,
    ResourceError,
    RigidityError,
    ValidationError,
)
from .graph import (
    Graph,
    clique_intersection_condition,
    is_clique,
    lexicographic_product,
    maximal_neighborhood_cliques,
    neighbors,
    vertex_connectivity,
)
from .automorphisms import automorphism_generators, is_vertex_transitive, pair_orbit
from .rank import (
    CliquePartition,
    Realization,
    generic_rank,
    is_independent,
    is_redundantly_rigid,
    is_rigid,
    partition_rank_bound,
    random_realization,
    rigidity_matrix,
    verify_bound_dominates_rank,
)
from .global_rigidity import (
    GlobalRigidityVerdict,
    Status,
    global_rigidity_verdict,
    hendrickson_check,
    main_theorem_probe,
    stress_certificate,
)
from .pi_subgraphs import (
    PiSubgraph,
    build_pi_subgraph,
    edge_count_profile,
    find_dependent_pi_subgraph,
    ordered_parents,
    sample_pi_subgraphs,
)
from .constructions import (
    FamilySpec,
    circulant_graph,
    complete_bipartite_graph,
    complete_graph,
    construct,
    cycle_graph,
    parse_family_spec,
    tight_counterexample,
    verify_counterexample_structure,
    verify_tightness,
)
