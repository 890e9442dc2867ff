"""Exact vertex partitions into hereditary graph properties.

Finitely presented induced-hereditary properties (given by their minimal
forbidden induced subgraphs), an exact ordered-partition solver, searches
for strongly uniquely partitionable graphs, forcing/replicator/pin-cushion
gadget constructions with brute-force verifiers, and the reduction from
exact hypergraph colouring to two-property vertex partitioning.
"""

from .errors import (
    CertificateError,
    EnumerationBoundError,
    GadgetError,
    GadgetVerificationError,
    GraphFormatError,
    PropertyError,
    ReductionError,
)
from .graphs import (
    BlockDecomposition,
    Graph,
    VertexSet,
    are_isomorphic,
    block_decomposition,
    canonical_form,
    canonical_key,
    complement,
    complete_graph,
    contains_induced,
    cycle_graph,
    disjoint_union,
    empty_graph,
    enumerate_graphs,
    from_graph6,
    induced_subgraph,
    is_connected,
    named_graph,
    parse_edge_list,
    path_graph,
    to_edge_list_text,
    to_graph6,
)
from .properties import (
    BUILTINS,
    O,
    Property,
    PropertyPairParams,
    T,
    complement_property,
    intersect,
    is_additive,
    minimal_end_block,
    minimalize,
    parse_property,
    property_pair_params,
    property_to_text,
    satisfies,
    smallest_forbidden,
    violation_witness,
)
from .partition import (
    OrderedPartition,
    UniquenessReport,
    check_strongly_unique,
    enumerate_partitions,
    find_partition,
    iter_partitions,
    partition_is_valid,
    search_unique,
)
from .gadgets import (
    ForcingAnchors,
    PincushionReport,
    PortedGadget,
    ReplicatorReport,
    build_anchors,
    build_pincushion,
    build_replicator,
    build_verified_pincushion,
    build_verified_replicator,
    force_vertices,
    identify_ports,
    product_extension_transform,
    verify_pincushion,
    verify_replicator,
)
from .reduction import (
    EquivalenceReport,
    Hypergraph,
    RegimeWarning,
    brute_pinr,
    encode_certificate,
    enumerate_hypergraphs,
    equivalence_check,
    hypergraph_to_text,
    is_pinr_certificate,
    lift_certificate,
    parse_hypergraph,
    predicted_reduction_size,
    reduce_hypergraph,
)

__version__ = "0.1.0"
