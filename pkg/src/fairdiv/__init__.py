"""Exact-arithmetic fair division of indivisible goods with position-envy auditing."""

from .audit import (
    AuditReport,
    Check,
    PefWitness,
    audit,
    check_ef1,
    check_envy_free,
    check_po_bruteforce,
    check_scale_invariance,
    min_removal_k,
    nash_welfare,
    pef_degree,
)
from .core import (
    AgentOrdering,
    Allocation,
    FairDivError,
    InputError,
    Instance,
    ResourceError,
    bundle_utility,
    scale_profile,
    validate_allocation,
)
from .matching import AssignmentProblem, Matching, brute_force_assignment, max_weight_assignment
from .mechanisms import (
    MECHANISMS,
    adjusted_winner_discrete,
    adjusted_winner_modified,
    envy_cycle,
    equitable_split,
    matching_pef1,
    mnw_bruteforce,
    partition_goods,
    round_robin,
    run_mechanism,
)

__version__ = "0.1.0"

__all__ = [
    "adjusted_winner_discrete",
    "adjusted_winner_modified",
    "AgentOrdering",
    "Allocation",
    "AssignmentProblem",
    "audit",
    "AuditReport",
    "brute_force_assignment",
    "bundle_utility",
    "Check",
    "check_envy_free",
    "check_po_bruteforce",
    "check_scale_invariance",
    "envy_cycle",
    "equitable_split",
    "FairDivError",
    "InputError",
    "Instance",
    "Matching",
    "max_weight_assignment",
    "MECHANISMS",
    "min_removal_k",
    "mnw_bruteforce",
    "nash_welfare",
    "partition_goods",
    "pef_degree",
    "PefWitness",
    "ResourceError",
    "round_robin",
    "run_mechanism",
    "scale_profile",
    "validate_allocation",
]
