"""Joint controller/hypervisor placement and reverse path-flow analysis.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public names unchanged.
"""

from ._core import (  # noqa: F401
    Assignment,
    ConvergenceTable,
    CostTensor,
    LoadReport,
    MetricSet,
    ParseOptions,
    PhysicalLink,
    PhysicalNode,
    PhysicalTopology,
    Placement,
    PlacementResult,
    PlacementWins,
    ScanRow,
    ScenarioConfig,
    ShortestPathTable,
    VsdnInstance,
    VsdnLoad,
    __version__,
    all_pairs_shortest,
    classify_request,
    compute_cost_tensor,
    converge_candidates,
    count_placements,
    generate_vsdns,
    haversine_km,
    load_scenario,
    parse_graphml,
    rpf_simulate,
    run_cli,
    solve,
    solve_scenario,
    tradeoff_observed,
    tradeoff_scan,
    validate_scenario,
)

__all__ = [
    "Assignment",
    "ConvergenceTable",
    "CostTensor",
    "LoadReport",
    "MetricSet",
    "ParseOptions",
    "PhysicalLink",
    "PhysicalNode",
    "PhysicalTopology",
    "Placement",
    "PlacementResult",
    "PlacementWins",
    "ScanRow",
    "ScenarioConfig",
    "ShortestPathTable",
    "VsdnInstance",
    "VsdnLoad",
    "all_pairs_shortest",
    "classify_request",
    "compute_cost_tensor",
    "converge_candidates",
    "count_placements",
    "generate_vsdns",
    "haversine_km",
    "load_scenario",
    "parse_graphml",
    "rpf_simulate",
    "run_cli",
    "solve",
    "solve_scenario",
    "tradeoff_observed",
    "tradeoff_scan",
    "validate_scenario",
]
