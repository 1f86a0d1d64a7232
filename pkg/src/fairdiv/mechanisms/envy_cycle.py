from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..core import AgentOrdering, Allocation, Instance


@dataclass(frozen=True)
class EnvyGraph:
    """Edge ``(a, b)`` present iff agent ``a`` values ``b``'s bundle above its own."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def build(cls, inst: Instance, bundles: Sequence[set[int] | frozenset[int]]) -> EnvyGraph:
        edges = set()
        for a, row in enumerate(inst.integer_rows):
            own = sum(row[g] for g in bundles[a])
            for b in range(inst.n):
                if b != a and own < sum(row[g] for g in bundles[b]):
                    edges.add((a, b))
        return cls(inst.n, frozenset(edges))

    def envied(self) -> set[int]:
        return {b for _, b in self.edges}

    def unenvied(self) -> list[int]:
        envied = self.envied()
        return [a for a in range(self.n) if a not in envied]

    def find_cycle(self, rank: Sequence[int]) -> list[int]:
        """A directed cycle ``[c0, c1, ...]`` with ``c0 -> c1 -> ... -> c0``.

        Requires every agent to be envied. Walks edges backwards from the envied
        agent of smallest position, each step moving to the smallest-position
        agent that envies the current one; in-degrees are all positive, so the
        walk can only end by revisiting a vertex.
        """
        envious_of: dict[int, list[int]] = {b: [] for b in range(self.n)}
        for a, b in self.edges:
            envious_of[b].append(a)
        by_rank = sorted(range(self.n), key=lambda a: rank[a])
        start = next(a for a in by_rank if envious_of[a])
        walk = [start]
        seen = {start: 0}
        while True:
            prev = min(envious_of[walk[-1]], key=lambda a: rank[a])
            if prev in seen:
                back = walk[seen[prev]:]
                # back[i+1] envies back[i]; reverse to get forward edges
                return back[::-1]
            seen[prev] = len(walk)
            walk.append(prev)


def envy_cycle(inst: Instance, ordering: AgentOrdering, trace: list | None = None) -> Allocation:
    """Envy-cycle elimination with goods taken in index order.

    Each good goes to the unenvied agent of smallest position. Whenever every
    agent is envied, a cycle is resolved by passing bundles backwards along it.
    If ``trace`` is a list, one ``(cycle, edges_before, edges_after)`` entry is
    appended per resolution.
    """
    rank = ordering.rank()
    bundles: list[set[int]] = [set() for _ in inst.agents]
    graph = EnvyGraph.build(inst, bundles)
    for g in inst.goods:
        free = graph.unenvied()
        receiver = min(free, key=lambda a: rank[a])
        bundles[receiver].add(g)
        graph = EnvyGraph.build(inst, bundles)
        while not graph.unenvied():
            cycle = graph.find_cycle(rank)
            before = len(graph.edges)
            taken = [bundles[cycle[(i + 1) % len(cycle)]] for i in range(len(cycle))]
            for agent, bundle in zip(cycle, taken):
                bundles[agent] = bundle
            graph = EnvyGraph.build(inst, bundles)
            assert len(graph.edges) < before, "cycle resolution must remove envy edges"
            if trace is not None:
                trace.append((tuple(cycle), before, len(graph.edges)))
    return Allocation(tuple(frozenset(b) for b in bundles))
