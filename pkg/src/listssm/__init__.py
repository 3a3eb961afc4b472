"""List-coloring marginals, exact counting, and spatial-mixing experiments
on finite triangle-free graphs."""
from .assumption import BETA_MIN, AssumptionReport, alpha_star, check_assumption, epsilon_of, product_term
from .errors import (
    ConfigurationError,
    DegenerateInstance,
    DomainError,
    FitError,
    GraphFormatError,
    ListColoringError,
    UncolorableRegion,
)
from .generators import GeneratorSpec, ListPolicy, generate
from .graph import INF, GraphListPair, Region, boundary, diameter, distance, is_triangle_free
from .oracle import (
    BoundaryCondition,
    MarginalVector,
    count_colorings,
    marginal,
    marginal_vector,
    tv_distance_restricted,
)
from .recursion import (
    ApproxCount,
    ErrorValue,
    ReducedInstance,
    approx_count,
    error_functional,
    marginal_recursive,
    ratio_exact,
    recursive_vector,
    reduce_pairwise,
    reduce_single,
)
from .textio import format_graph, parse_graph, read_graph, write_graph

__version__ = "0.1.0"
