from __future__ import annotations

from typing import Iterable

from ..core import AgentOrdering, Allocation, Instance, InputError
from ..matching import AssignmentProblem, max_weight_assignment


def pad_instance(inst: Instance) -> Instance:
    """Append zero-valued dummy goods after the real ones until ``n`` divides ``m``."""
    extra = -inst.m % inst.n
    if not extra:
        return inst
    rows = tuple(row + (0,) * extra for row in inst.utilities)
    return Instance(rows, inst.agent_labels)


def mech1_weights(inst_padded: Instance, remaining: Iterable[int]) -> AssignmentProblem:
    """Round weights ``n*m*2**m * w1 + w2`` over the remaining goods.

    ``w1(a, g) = 2**(k_a - i)`` where ``k_a`` counts the distinct values agent
    ``a`` has over the remaining goods and ``u_a(g)`` is the ``i``-th highest of
    them; ``w2(a, g_j) = 2**(m - j)`` with ``j`` the 1-based global index.
    """
    goods = sorted(remaining)
    if not goods:
        raise InputError("no remaining goods to weight")
    n, m = inst_padded.n, inst_padded.m
    if m % n:
        raise InputError(f"instance must be padded: m={m} is not divisible by n={n}")
    big = n * m * 2**m
    weights = []
    for row in inst_padded.utilities:
        distinct = sorted({row[g] for g in goods}, reverse=True)
        k = len(distinct)
        rank = {value: i for i, value in enumerate(distinct, start=1)}
        weights.append(tuple(big * 2 ** (k - rank[row[g]]) + 2 ** (m - (g + 1)) for g in goods))
    return AssignmentProblem(tuple(weights), len(goods), tuple(goods))


def matching_pef1_rounds(inst: Instance, ordering: AgentOrdering) -> list[dict[int, int]]:
    """Per-round ``{agent: good}`` maps, dummy goods included (indices ``>= inst.m``)."""
    padded = pad_instance(inst)
    remaining = set(padded.goods)
    rounds = []
    while remaining:
        prob = mech1_weights(padded, remaining)
        match = max_weight_assignment(prob, ordering.positions)
        picks = dict(enumerate(match.right_ids(prob)))
        remaining.difference_update(picks.values())
        rounds.append(picks)
    return rounds


def matching_pef1(inst: Instance, ordering: AgentOrdering) -> Allocation:
    """Round-by-round maximum-weight matching mechanism; PEF1, EF1 and scale invariant."""
    bundles: list[set[int]] = [set() for _ in inst.agents]
    for picks in matching_pef1_rounds(inst, ordering):
        for agent, g in picks.items():
            if g < inst.m:
                bundles[agent].add(g)
    return Allocation(tuple(frozenset(b) for b in bundles))
