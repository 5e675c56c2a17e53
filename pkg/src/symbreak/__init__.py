"""Graph symmetry-breaking lab: distinguishing colourings, automorphism
machinery, and constructive colouring procedures on boundary-rooted
truncations."""

from .automorphisms import (
    AutomorphismSet,
    enumerate_automorphisms,
    min_motion,
    motion,
    orbits,
    stabiliser,
)
from .colouring import (
    DistinguishingResult,
    PartialColouring,
    compatible,
    distinguishing_number,
    is_distinguishing,
    is_set_distinguishing,
    is_set_preserving,
    union_colouring,
    verify_chain,
)
from .degree_bound import (
    degree_minus_one_colouring,
    neighbourhood_classes,
    select_root_structure,
    zero_ray_is_unique,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    GraphFormatError,
    HypothesisViolationError,
    InvalidGraphError,
    PreconditionError,
    StructuralViolationError,
    SymbreakError,
    TruncationUnsuitableError,
)
from .families import FAMILIES, generate
from .formats import (
    emit_graph6,
    graph_from_json,
    graph_to_json,
    parse_graph6,
    to_dot,
)
from .graphs import (
    BoundaryRootedGraph,
    Graph,
    bfs_distances,
    geodesic_to_boundary,
    shortest_cycle,
)
from .two_colouring import (
    apply_case_table,
    charted_vertices,
    check_conditions,
    classify_health,
    monochromatic_component,
    moving_tuples,
    symptoms,
    sync_bijection,
    sync_classes,
    two_colouring,
    uncommon_neighbours,
)

__version__ = "0.1.0"
