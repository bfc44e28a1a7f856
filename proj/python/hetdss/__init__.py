"""Heterogeneous distributed storage: costs, min-cut bound and storage/repair tradeoff.

Exact quantities come back as fractions.Fraction.
"""

from ._hetdss import (
    Assignment,
    DssSpec,
    EnumerationLimitExceeded,
    InvalidSpec,
    ParetoPoint,
    SpecError,
    beta_slots,
    flow_graph_dot,
    homogeneous_term,
    load_spec,
    log_grid,
    max_flow,
    node_repair_cost,
    paper_fixture,
    pareto_filter,
    parse_spec,
    q_bound,
    q_bound_exchanged,
    repair_cost,
    scenario_term,
    serialize_spec,
    storage_cost,
    sweep,
    validate,
)

__all__ = [
    "Assignment",
    "DssSpec",
    "EnumerationLimitExceeded",
    "InvalidSpec",
    "ParetoPoint",
    "SpecError",
    "beta_slots",
    "flow_graph_dot",
    "homogeneous_term",
    "load_spec",
    "log_grid",
    "max_flow",
    "node_repair_cost",
    "paper_fixture",
    "pareto_filter",
    "parse_spec",
    "q_bound",
    "q_bound_exchanged",
    "repair_cost",
    "scenario_term",
    "serialize_spec",
    "storage_cost",
    "sweep",
    "validate",
]
