from __future__ import annotations

from ..core import AgentOrdering, Allocation, Instance


def round_robin(inst: Instance, ordering: AgentOrdering) -> Allocation:
    """Agents pick in position order, each taking the smallest-index good of maximum
    utility among those left, until no goods remain."""
    prefs = inst.preferences
    cursor = [0] * inst.n
    taken = [False] * inst.m
    owners = [0] * inst.m
    remaining = inst.m
    while remaining:
        for agent in ordering.positions:
            if not remaining:
                break
            pref = prefs[agent]
            k = cursor[agent]
            while taken[pref[k]]:
                k += 1
            g = pref[k]
            cursor[agent] = k + 1
            taken[g] = True
            owners[g] = agent
            remaining -= 1
    return Allocation.from_owners(owners, inst.n)
