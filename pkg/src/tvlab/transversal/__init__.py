from tvlab.transversal.conclusion import ConclusionReport, verify_theorem_conclusion
from tvlab.transversal.finders import (
    Budget,
    Status,
    TransversalResult,
    best_finder,
    critical_directions,
    find_k_flat_heuristic,
    find_line_transversal_2d,
    find_point_transversal,
    flat_through_all,
    line_directions_grid,
)

__all__ = [
    "Budget",
    "ConclusionReport",
    "Status",
    "TransversalResult",
    "best_finder",
    "critical_directions",
    "find_k_flat_heuristic",
    "find_line_transversal_2d",
    "find_point_transversal",
    "flat_through_all",
    "line_directions_grid",
    "verify_theorem_conclusion",
]
