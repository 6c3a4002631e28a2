"""Mutually orthogonal colorings of graphs: bounds, exact search and constructions."""

from .bounds import (
    UNBOUNDED,
    BoundReport,
    SearchBudget,
    average_degree_bound,
    best_upper_bound,
    clique_bound,
    clique_bound_search,
    cy_implied_lower,
    cy_lower_bound,
    cy_upper_ochi,
    degree_bound,
    edge_bound,
    mnp_bound,
    ochi_lower_avg,
    ochi_lower_clique,
    supergraph_remark_bound,
    upper_bound_reports,
)
from .colorings import (
    Coloring,
    ColoringFamily,
    VerificationReport,
    are_orthogonal,
    family_from_json,
    family_to_json,
    is_proper,
    verify_family,
)
from .constructions import (
    LatinSquare,
    MolsExtraction,
    Square,
    compose_colorings,
    compose_families,
    finite_field_mols,
    kronecker_mols,
    mols_from_colorings,
)
from .errors import OrthocolorError
from .families import FamilySpec, generate_family
from .graph import (
    DegreeStats,
    Graph,
    coloring_extended_supergraph,
    complete_graph,
    degree_stats,
    empty_graph,
    graph_from_edges,
    induced_subgraph,
    or_product,
    read_graph,
    verify_clique,
    write_graph,
)
from .search import (
    ExactResult,
    SearchOptions,
    SearchOutcome,
    exact_N,
    extend_family,
    find_family,
    is_n_colorable,
)

__version__ = "0.1.0"
