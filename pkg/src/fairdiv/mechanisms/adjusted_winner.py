"""Two-agent adjusted winner mechanisms: the discrete version and the
equitable-split rounding that makes it PEF1."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ..core import AgentOrdering, Allocation, Instance, InputError


class GoodPartition(NamedTuple):
    only_first: frozenset[int]   # valued by agent 0 only
    only_second: frozenset[int]  # valued by agent 1 only
    shared: frozenset[int]       # valued by both
    worthless: frozenset[int]    # valued by neither


@dataclass(frozen=True)
class FractionalSplit:
    """Minimally fractional allocation of the shared goods between agents 0 and 1.

    ``p1`` and ``p2`` are listed in ratio order; ``split_good`` is divided as
    ``lambda1 : lambda2``.
    """

    p1: tuple[int, ...]
    p2: tuple[int, ...]
    split_good: int
    lambda1: Fraction
    lambda2: Fraction

    @property
    def lambdas(self) -> tuple[Fraction, Fraction]:
        return (self.lambda1, self.lambda2)

    @property
    def parts(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.p1, self.p2)


def _require_two(inst: Instance) -> None:
    if inst.n != 2:
        raise InputError(f"two-agent mechanism called with n={inst.n}")


def partition_goods(inst: Instance) -> GoodPartition:
    _require_two(inst)
    u1, u2 = inst.utilities
    sets: tuple[set[int], ...] = (set(), set(), set(), set())
    for g in inst.goods:
        if u1[g] > 0 and u2[g] > 0:
            sets[2].add(g)
        elif u1[g] > 0:
            sets[0].add(g)
        elif u2[g] > 0:
            sets[1].add(g)
        else:
            sets[3].add(g)
    return GoodPartition(*(frozenset(s) for s in sets))


def ratio_order(goods, num: tuple[Fraction, ...], den: tuple[Fraction, ...]) -> list[int]:
    """Goods by ``num[g] / den[g]`` non-increasing, ties by increasing index.

    Compared by cross-multiplication; ``den`` must be positive on ``goods``.
    """

    def cmp(g: int, h: int) -> int:
        lhs, rhs = num[g] * den[h], num[h] * den[g]
        if lhs != rhs:
            return -1 if lhs > rhs else 1
        return (g > h) - (g < h)

    return sorted(goods, key=functools.cmp_to_key(cmp))


def _with_worthless(bundles: list[set[int]], parts: GoodPartition) -> Allocation:
    # zero-valued leftovers go to agent 0 so the output is a full partition of M
    bundles[0] |= parts.worthless
    return Allocation(tuple(frozenset(b) for b in bundles))


def adjusted_winner_discrete(inst: Instance, ordering: AgentOrdering) -> Allocation:
    """Give the shared goods to the first-positioned agent, then hand them over in
    ratio order until the second agent is envy-free up to one good."""
    parts = partition_goods(inst)
    exclusive = (parts.only_first, parts.only_second)
    if not parts.shared:
        return _with_worthless([set(exclusive[0]), set(exclusive[1])], parts)
    first, second = ordering.positions
    u_first, u_second = inst.utilities[first], inst.utilities[second]
    held = {first: set(exclusive[first]) | parts.shared, second: set(exclusive[second])}
    queue = ratio_order(parts.shared, u_second, u_first)
    own = sum((u_second[g] for g in held[second]), Fraction(0))
    for g in queue:
        other = sum((u_second[h] for h in held[first]), Fraction(0))
        top = max((u_second[h] for h in held[first]), default=Fraction(0))
        if own >= other - top:
            break
        held[first].remove(g)
        held[second].add(g)
        own += u_second[g]
    return _with_worthless([held[0], held[1]], parts)


def equitable_split(inst: Instance) -> FractionalSplit:
    """The equitable minimally fractional allocation of the shared goods.

    Goods are sorted by ``u_0(g) / u_1(g)`` regardless of any agent ordering, and
    the smallest boundary ``k`` whose equitability equation has a solution
    ``lambda1`` in ``[0, 1]`` is returned. Realised values are measured as a
    fraction of each agent's value for the shared goods.

    >>> s = equitable_split(Instance(((3, 1), (1, 1))))
    >>> s.split_good, s.lambda1, s.lambda2
    (0, Fraction(4, 5), Fraction(1, 5))
    """
    parts = partition_goods(inst)
    if not parts.shared:
        raise InputError("no good is valued by both agents; nothing to split")
    u1, u2 = inst.utilities
    order = ratio_order(parts.shared, u1, u2)
    total1 = sum((u1[g] for g in order), Fraction(0))
    total2 = sum((u2[g] for g in order), Fraction(0))
    head = Fraction(0)  # u1 of goods before position k
    tail = total2       # u2 of goods from position k on
    for k, g in enumerate(order):
        tail -= u2[g]
        # (head + lam*u1[g]) / total1 == (tail + (1-lam)*u2[g]) / total2
        lam = ((tail + u2[g]) / total2 - head / total1) / (u1[g] / total1 + u2[g] / total2)
        if 0 <= lam <= 1:
            split = FractionalSplit(tuple(order[:k]), tuple(order[k + 1:]), g, lam, 1 - lam)
            assert _is_envy_free(inst, parts, split), "equitable split must be envy-free"
            return split
        head += u1[g]
    raise AssertionError("no equitable boundary found")


def split_values(inst: Instance, split: FractionalSplit) -> list[list[Fraction]]:
    """``values[a][b]``: agent ``a``'s value for what the split gives ``b`` plus
    ``b``'s exclusive goods (``M_b`` united with ``P_b``, and ``lambda_b`` of the split good)."""
    parts = partition_goods(inst)
    exclusive = (parts.only_first, parts.only_second)
    values = []
    for row in inst.utilities:
        values.append([
            sum((row[g] for g in exclusive[b]), Fraction(0))
            + sum((row[g] for g in split.parts[b]), Fraction(0))
            + split.lambdas[b] * row[split.split_good]
            for b in (0, 1)
        ])
    return values


def equitability_ratios(inst: Instance, split: FractionalSplit) -> tuple[Fraction, Fraction]:
    """Each agent's realised share of its value for the shared goods."""
    shared = partition_goods(inst).shared
    out = []
    for a in (0, 1):
        row = inst.utilities[a]
        got = sum((row[g] for g in split.parts[a]), Fraction(0)) + split.lambdas[a] * row[split.split_good]
        out.append(got / sum((row[g] for g in shared), Fraction(0)))
    return out[0], out[1]


def _is_envy_free(inst: Instance, parts: GoodPartition, split: FractionalSplit) -> bool:
    values = split_values(inst, split)
    return values[0][0] >= values[0][1] and values[1][1] >= values[1][0]


def adjusted_winner_modified(inst: Instance, ordering: AgentOrdering) -> Allocation:
    """Round the equitable split: the split good goes to the agent with the larger
    fraction, the first-positioned agent on a tie."""
    parts = partition_goods(inst)
    bundles = [set(parts.only_first), set(parts.only_second)]
    if not parts.shared:
        return _with_worthless(bundles, parts)
    split = equitable_split(inst)
    for a in (0, 1):
        bundles[a] |= set(split.parts[a])
    first, second = ordering.positions
    winner = first if split.lambdas[first] >= split.lambdas[second] else second
    bundles[winner].add(split.split_good)
    return _with_worthless(bundles, parts)
