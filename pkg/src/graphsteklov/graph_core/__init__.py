from graphsteklov.graph_core.connectivity import (
    edge_connectivity,
    local_vertex_connectivity,
    vertex_connectivity,
)
from graphsteklov.graph_core.generators import (
    AllRhoZero,
    InvalidBoundaryMode,
    gen_comb,
    gen_complete,
    gen_cycle,
    gen_factorized,
    gen_path,
    gen_star,
    random_boundary,
    random_boundary_graph,
    random_graph,
)
from graphsteklov.graph_core.graph import (
    AdjacentBoundaryPair,
    BoundaryError,
    BoundaryGraph,
    BoundaryWithoutInteriorNeighbor,
    Disconnected,
    DuplicateEdge,
    EmptyBoundary,
    EmptyInterior,
    GraphError,
    NonpositiveValue,
    SelfLoop,
    UnknownVertex,
    Volumes,
    WeightedGraph,
    graph_distance,
    induced_interior,
    new_graph,
    unit_graph,
    volumes,
    weighted_degree,
    with_boundary,
)
from graphsteklov.graph_core.textio import (
    ParseError,
    format_graph,
    parse_graph,
    read_graph,
    write_graph,
)
