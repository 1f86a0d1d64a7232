from __future__ import annotations

import itertools
from fractions import Fraction

from ..core import AgentOrdering, Allocation, Instance, check_cap


def welfare_key(values) -> tuple[int, Fraction]:
    """Ranking key for Nash welfare that stays meaningful when some agent must get zero:
    first the number of agents with positive utility, then their product."""
    positive = [v for v in values if v > 0]
    product = Fraction(1)
    for v in positive:
        product *= v
    return len(positive), product


def mnw_bruteforce(inst: Instance, ordering: AgentOrdering, cap: int | None = None) -> Allocation:
    """Exhaustive maximum Nash welfare allocation.

    Allocations are enumerated good by good in index order, each good trying the
    agents in position order; the first maximiser in that order is returned.
    """
    n, m = inst.n, inst.m
    check_cap(n**m, cap, "MNW enumeration")
    rows = inst.utilities
    best_key = None
    best: tuple[int, ...] = ()
    for owners in itertools.product(ordering.positions, repeat=m):
        values = [Fraction(0)] * n
        for g, a in enumerate(owners):
            values[a] += rows[a][g]
        key = welfare_key(values)
        if best_key is None or key > best_key:
            best_key, best = key, owners
    return Allocation.from_owners(best, n)
