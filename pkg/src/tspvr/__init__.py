"""Exact and heuristic solvers for the travelling salesman problem with
vertex requisitions, where every tour position carries a set of one or two
admissible vertices.

The feasible tours of such an instance factor through a reduced bipartite
structure: forced (special) edges pin some positions, and the rest fall
into q disjoint even cycles with two matchings each, so the solution set
has exactly 2^q elements.  The solvers enumerate it through a Gray-code
walk with constant-size incremental cost updates; companion modules offer
local search over the same encoding, a 0-1 linear model export, seeded
instance generation, and statistics on the cycle count of random draws.
"""

from .instance import (
    MAX_TOTAL_COST,
    Instance,
    InstanceError,
    Tour,
    TspvrError,
    make_instance,
    parse_instance,
    serialize_instance,
    tour_cost,
    validate_tour,
)
from .structure import (
    Cycle,
    Infeasible,
    MatchingStructure,
    build_structure,
    count_solutions,
    decompose_cycles,
    find_special_edges,
    solution_from_delta,
    structure_from_requisitions,
)
from .contacts import (
    ContactTables,
    WorkTally,
    compute_contact_tables,
    delta_step_cost,
    objective_from_delta,
)
from .exact import (
    MAX_N_ORACLE,
    MAX_Q_EXACT,
    MAX_Q_NAIVE,
    GuardError,
    Solution,
    brute_force_oracle,
    enumerate_feasible,
    gray_flip_sequence,
    mask_to_delta,
    solve_exact,
    solve_naive,
)
from .kernels import available_backends, default_backend
from .localsearch import (
    SearchConfig,
    exchange_neighbors,
    is_local_optimum,
    local_search,
    start_delta,
)
from .mip import (
    LinearConstraint,
    MIPModel,
    build_mip,
    lp_text,
    read_lp,
    verify_linearization,
    write_lp,
)
from .generator import (
    GenConfig,
    StatsReport,
    format_stats,
    generate,
    good_graph_stats,
    goodness_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_N_ORACLE",
    "MAX_Q_EXACT",
    "MAX_Q_NAIVE",
    "MAX_TOTAL_COST",
    "ContactTables",
    "Cycle",
    "GenConfig",
    "GuardError",
    "Infeasible",
    "Instance",
    "InstanceError",
    "LinearConstraint",
    "MIPModel",
    "MatchingStructure",
    "SearchConfig",
    "Solution",
    "StatsReport",
    "Tour",
    "TspvrError",
    "WorkTally",
    "available_backends",
    "brute_force_oracle",
    "build_mip",
    "build_structure",
    "compute_contact_tables",
    "count_solutions",
    "decompose_cycles",
    "default_backend",
    "delta_step_cost",
    "enumerate_feasible",
    "exchange_neighbors",
    "find_special_edges",
    "format_stats",
    "generate",
    "good_graph_stats",
    "goodness_threshold",
    "gray_flip_sequence",
    "is_local_optimum",
    "local_search",
    "lp_text",
    "make_instance",
    "mask_to_delta",
    "objective_from_delta",
    "parse_instance",
    "read_lp",
    "serialize_instance",
    "solution_from_delta",
    "solve_exact",
    "solve_naive",
    "start_delta",
    "structure_from_requisitions",
    "tour_cost",
    "validate_tour",
    "verify_linearization",
    "write_lp",
    "__version__",
]
