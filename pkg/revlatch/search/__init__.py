from revlatch.search.enumeration import (
    MAX_LINES_ENV,
    SearchBounds,
    Wiring,
    build_candidate,
    check_bounds,
    count_single_gate_wirings,
    default_capacity,
    enumerate_candidates,
    enumerate_wirings,
)
from revlatch.search.synthesizer import ClaimStatus, Realization, SearchResult, Verdict, min_gates, realizes, run_target
from revlatch.search.targets import TARGETS, TargetSpec, get_target

__all__ = [
    "MAX_LINES_ENV",
    "SearchBounds",
    "Wiring",
    "build_candidate",
    "check_bounds",
    "count_single_gate_wirings",
    "default_capacity",
    "enumerate_candidates",
    "enumerate_wirings",
    "ClaimStatus",
    "Realization",
    "SearchResult",
    "Verdict",
    "min_gates",
    "realizes",
    "run_target",
    "TARGETS",
    "TargetSpec",
    "get_target",
]
