"""Exact cycle-cover toolkit for cubic bridgeless graphs."""

from .graphs import (
    CubicGraph,
    Multigraph,
    ReductionMap,
    build_graph,
    contract_two_factor,
    cyclic_connectivity_at_least,
    girth,
    is_bridgeless,
    suppress_degree_two,
    two_cut_join,
)
from .covers import (
    Circuit,
    CycleCover,
    KCdc,
    decompose_even_subgraph,
    lift_cover,
    trace_circuit,
    validate,
)
from .families import (
    FamilySpec,
    flower,
    generate,
    goldberg,
    parse_adjacency,
    parse_graph6,
    permutation_snark,
    petersen,
    write_adjacency,
    write_graph6,
)
from .solvers import (
    SccResult,
    TauResult,
    WeightSpectrum,
    circumference,
    edge_colouring_3,
    edge_weight_spectrum,
    enumerate_circuits,
    enumerate_perfect_matchings,
    find_cdc,
    oddness,
    perfect_matching_index,
    shortest_cycle_cover,
    three_disjoint_paths,
)
from .constructions import (
    ConstructionResult,
    cover_from_cdc,
    cover_via_circumference,
    cover_via_oddness2,
    extract_cdc_from_cover,
    five_cdc_from_pm_cover,
    hamiltonian_3ec,
    merge_cdcs,
    pm_cover_from_five_cdc,
    scc_cover_from_tau4,
)
from .pcolour import (
    PetersenColouring,
    best_pullback_cover,
    find_petersen_colouring,
    is_balanced,
    pullback_cover,
    verify_petersen_colouring,
)

__all__ = [
    "SccResult",
    "TauResult",
    "WeightSpectrum",
    "circumference",
    "edge_colouring_3",
    "edge_weight_spectrum",
    "enumerate_circuits",
    "enumerate_perfect_matchings",
    "find_cdc",
    "oddness",
    "perfect_matching_index",
    "shortest_cycle_cover",
    "three_disjoint_paths",
    "ConstructionResult",
    "cover_from_cdc",
    "cover_via_circumference",
    "cover_via_oddness2",
    "extract_cdc_from_cover",
    "five_cdc_from_pm_cover",
    "hamiltonian_3ec",
    "merge_cdcs",
    "pm_cover_from_five_cdc",
    "scc_cover_from_tau4",
    "PetersenColouring",
    "best_pullback_cover",
    "find_petersen_colouring",
    "is_balanced",
    "pullback_cover",
    "verify_petersen_colouring",
    "CubicGraph",
    "Multigraph",
    "ReductionMap",
    "build_graph",
    "contract_two_factor",
    "cyclic_connectivity_at_least",
    "girth",
    "is_bridgeless",
    "suppress_degree_two",
    "two_cut_join",
    "Circuit",
    "CycleCover",
    "KCdc",
    "decompose_even_subgraph",
    "lift_cover",
    "trace_circuit",
    "validate",
    "FamilySpec",
    "flower",
    "generate",
    "goldberg",
    "parse_adjacency",
    "parse_graph6",
    "permutation_snark",
    "petersen",
    "write_adjacency",
    "write_graph6",
]
