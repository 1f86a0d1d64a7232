"""Allocation mechanisms, each a deterministic map ``(Instance, AgentOrdering) -> Allocation``."""

from __future__ import annotations

from typing import Callable

from ..core import AgentOrdering, Allocation, Instance, InputError
from .adjusted_winner import (
    FractionalSplit,
    GoodPartition,
    adjusted_winner_discrete,
    adjusted_winner_modified,
    equitability_ratios,
    equitable_split,
    partition_goods,
    ratio_order,
    split_values,
)
from .envy_cycle import EnvyGraph, envy_cycle
from .matching_pef1 import matching_pef1, matching_pef1_rounds, mech1_weights, pad_instance
from .mnw import mnw_bruteforce, welfare_key
from .round_robin import round_robin

Mechanism = Callable[[Instance, AgentOrdering], Allocation]

MECHANISMS: dict[str, Mechanism] = {
    "round_robin": round_robin,
    "envy_cycle": envy_cycle,
    "matching_pef1": matching_pef1,
    "adjusted_winner_discrete": adjusted_winner_discrete,
    "adjusted_winner_modified": adjusted_winner_modified,
    "mnw_bruteforce": mnw_bruteforce,
}

TWO_AGENT_ONLY = frozenset({"adjusted_winner_discrete", "adjusted_winner_modified"})


def get_mechanism(name: str) -> Mechanism:
    try:
        return MECHANISMS[name]
    except KeyError:
        raise InputError(f"unknown mechanism {name!r}; choose from {', '.join(MECHANISMS)}") from None


def run_mechanism(name: str, inst: Instance, ordering: AgentOrdering) -> Allocation:
    if ordering.n != inst.n:
        raise InputError(f"ordering has {ordering.n} agents, instance has {inst.n}")
    return get_mechanism(name)(inst, ordering)


__all__ = [
    "MECHANISMS",
    "TWO_AGENT_ONLY",
    "EnvyGraph",
    "FractionalSplit",
    "GoodPartition",
    "Mechanism",
    "adjusted_winner_discrete",
    "adjusted_winner_modified",
    "envy_cycle",
    "equitability_ratios",
    "equitable_split",
    "get_mechanism",
    "matching_pef1",
    "matching_pef1_rounds",
    "mech1_weights",
    "mnw_bruteforce",
    "pad_instance",
    "partition_goods",
    "ratio_order",
    "round_robin",
    "run_mechanism",
    "split_values",
    "welfare_key",
]
