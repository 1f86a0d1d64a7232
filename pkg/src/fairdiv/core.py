"""Data model for fair division of indivisible goods with additive utilities.

Agents and goods are 0-based indices internally. Utilities are
:class:`fractions.Fraction` so every comparison in the mechanisms is exact.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

DEFAULT_ENUM_CAP = 10**7
DEFAULT_ORDERING_CAP = math.factorial(8)
ENUM_CAP_ENV = "FAIRDIV_ENUM_CAP"


class FairDivError(Exception):
    """Base class for library errors."""


class InputError(FairDivError, ValueError):
    """Malformed or out-of-contract input."""


class ResourceError(FairDivError):
    """An exhaustive enumeration would exceed its configured cap."""


def enum_cap(default: int = DEFAULT_ENUM_CAP) -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from None


def check_cap(count: int, cap: int | None, what: str) -> None:
    if cap is None:
        cap = enum_cap()
    if count > cap:
        raise ResourceError(f"resource: {what} requires {count} enumerations, cap is {cap}")


def to_rational(value) -> Fraction:
    """Convert ints, Fractions and decimal strings exactly; floats are rejected."""
    if isinstance(value, float):
        raise InputError("floats are not accepted as utilities; pass a string or Fraction")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse {value!r} as a rational") from exc


@dataclass(frozen=True)
class Instance:
    """An ``n x m`` matrix of non-negative utilities, ``utilities[a][g] = u_a(g)``."""

    utilities: tuple[tuple[Fraction, ...], ...]
    agent_labels: tuple[str, ...] | None = None
    good_labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.utilities)
        if not rows:
            raise InputError("an instance needs at least one agent")
        m = len(rows[0])
        for a, row in enumerate(rows):
            if len(row) != m:
                raise InputError(f"utility row {a} has {len(row)} entries, expected {m}")
            for g, x in enumerate(row):
                if x < 0:
                    raise InputError(f"negative utility {x} for agent {a}, good {g}")
        object.__setattr__(self, "utilities", rows)
        if self.agent_labels is not None:
            labels = tuple(self.agent_labels)
            if len(labels) != len(rows):
                raise InputError("agent_labels length does not match the agent count")
            object.__setattr__(self, "agent_labels", labels)
        if self.good_labels is not None:
            labels = tuple(self.good_labels)
            if len(labels) != m:
                raise InputError("good_labels length does not match the good count")
            object.__setattr__(self, "good_labels", labels)

    @property
    def n(self) -> int:
        return len(self.utilities)

    @property
    def m(self) -> int:
        return len(self.utilities[0])

    @property
    def agents(self) -> range:
        return range(self.n)

    @property
    def goods(self) -> range:
        return range(self.m)

    def u(self, agent: int, good: int) -> Fraction:
        return self.utilities[agent][good]

    @functools.cached_property
    def integer_rows(self) -> tuple[tuple[int, ...], ...]:
        """Each row times the lcm of its denominators.

        Only valid for comparisons made within one agent's utilities.
        """
        rows = []
        for row in self.utilities:
            lcm = math.lcm(*(x.denominator for x in row)) if row else 1
            rows.append(tuple(x.numerator * (lcm // x.denominator) for x in row))
        return tuple(rows)

    @functools.cached_property
    def preferences(self) -> tuple[tuple[int, ...], ...]:
        """Each agent's goods from most to least preferred, ties by smallest index."""
        return tuple(
            tuple(sorted(self.goods, key=lambda g, row=row: (-row[g], g))) for row in self.integer_rows
        )


@dataclass(frozen=True)
class AgentOrdering:
    """``positions[p]`` is the agent standing at 1-based position ``p + 1``."""

    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        positions = tuple(int(a) for a in self.positions)
        if sorted(positions) != list(range(len(positions))):
            raise InputError(f"{positions} is not a permutation of 0..{len(positions) - 1}")
        object.__setattr__(self, "positions", positions)

    @property
    def n(self) -> int:
        return len(self.positions)

    def position(self, agent: int) -> int:
        """1-based position of ``agent``."""
        return self.positions.index(agent) + 1

    def rank(self) -> list[int]:
        """0-based position of every agent, indexed by agent."""
        rank = [0] * self.n
        for p, a in enumerate(self.positions):
            rank[a] = p
        return rank

    @classmethod
    def identity(cls, n: int) -> AgentOrdering:
        return cls(tuple(range(n)))

    @classmethod
    def reverse(cls, n: int) -> AgentOrdering:
        return cls(tuple(range(n - 1, -1, -1)))

    @classmethod
    def all(cls, n: int) -> Iterator[AgentOrdering]:
        """Every ordering of ``n`` agents, lexicographic in the position list."""
        for perm in itertools.permutations(range(n)):
            yield cls(perm)


@dataclass(frozen=True)
class Allocation:
    """Agent-indexed bundles: ``bundles[a]`` is the set of goods agent ``a`` holds."""

    bundles: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bundles", tuple(frozenset(b) for b in self.bundles))

    @property
    def n(self) -> int:
        return len(self.bundles)

    def __getitem__(self, agent: int) -> frozenset[int]:
        return self.bundles[agent]

    @classmethod
    def from_owners(cls, owners: Sequence[int], n: int) -> Allocation:
        """Build from ``owners[g]``, the agent receiving good ``g``."""
        bundles: list[set[int]] = [set() for _ in range(n)]
        for g, a in enumerate(owners):
            bundles[a].add(g)
        return cls(tuple(frozenset(b) for b in bundles))

    def sorted_bundles(self) -> list[list[int]]:
        return [sorted(b) for b in self.bundles]


def _check_agent(inst: Instance, agent: int) -> None:
    if not 0 <= agent < inst.n:
        raise InputError(f"agent index {agent} out of range for n={inst.n}")


def bundle_utility(inst: Instance, agent: int, bundle: Iterable[int]) -> Fraction:
    _check_agent(inst, agent)
    row = inst.utilities[agent]
    total = Fraction(0)
    for g in bundle:
        if not 0 <= g < inst.m:
            raise InputError(f"good index {g} out of range for m={inst.m}")
        total += row[g]
    return total


def agent_utilities(inst: Instance, alloc: Allocation) -> list[Fraction]:
    return [bundle_utility(inst, a, alloc[a]) for a in inst.agents]


def validate_allocation(inst: Instance, alloc: Allocation) -> str | None:
    """Return ``None`` for a valid partition of the goods, else a description of the defect.

    Goods are named 1-based (``g1``) in the message.
    """
    if alloc.n != inst.n:
        return f"allocation has {alloc.n} bundles for {inst.n} agents"
    seen: dict[int, int] = {}
    for a, bundle in enumerate(alloc.bundles):
        for g in sorted(bundle):
            if not 0 <= g < inst.m:
                return f"g{g + 1} is not a good of this instance"
            if g in seen:
                return f"g{g + 1} duplicated (agents a{seen[g] + 1} and a{a + 1})"
            seen[g] = a
    missing = [g for g in inst.goods if g not in seen]
    if missing:
        return f"g{missing[0] + 1} unassigned"
    return None


def scale_profile(inst: Instance, scalars: Sequence) -> Instance:
    if len(scalars) != inst.n:
        raise InputError(f"expected {inst.n} scalars, got {len(scalars)}")
    factors = [to_rational(s) for s in scalars]
    for a, s in enumerate(factors):
        if s <= 0:
            raise InputError(f"scalar for agent {a} must be positive, got {s}")
    rows = tuple(tuple(s * x for x in row) for s, row in zip(factors, inst.utilities))
    return Instance(rows, inst.agent_labels, inst.good_labels)
