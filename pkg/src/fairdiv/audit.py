"""Fairness checks on allocations and the per-instance degree of position envy.

Witnesses use 0-based indices; :meth:`AuditReport.to_json` renders them 1-based.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .core import (
    DEFAULT_ORDERING_CAP,
    AgentOrdering,
    Allocation,
    Instance,
    InputError,
    agent_utilities,
    check_cap,
    enum_cap,
    scale_profile,
    validate_allocation,
)
from .mechanisms import Mechanism, get_mechanism

MechanismLike = Union[str, Mechanism]

DEGREE_LABEL = "instance degree (lower-bounds mechanism degree)"
ALL_CHECKS = ("ef", "ef1", "po", "pef_degree", "scale")


@dataclass(frozen=True)
class Check:
    passed: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.passed


PASS = Check(True)


@dataclass(frozen=True)
class PefWitness:
    agent: int
    ordering_current: AgentOrdering
    ordering_other: AgentOrdering
    removal_count: int
    removed_goods: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "agent": self.agent + 1,
            "ordering_current": [a + 1 for a in self.ordering_current.positions],
            "ordering_other": [a + 1 for a in self.ordering_other.positions],
            "removal_count": self.removal_count,
            "removed_goods": [g + 1 for g in self.removed_goods],
        }


def _resolve(mechanism: MechanismLike) -> Mechanism:
    return get_mechanism(mechanism) if isinstance(mechanism, str) else mechanism


def _require_valid(inst: Instance, alloc: Allocation) -> None:
    problem = validate_allocation(inst, alloc)
    if problem:
        raise InputError(f"invalid allocation: {problem}")


def check_envy_free(inst: Instance, alloc: Allocation) -> Check:
    _require_valid(inst, alloc)
    for a, row in enumerate(inst.integer_rows):
        own = sum(row[g] for g in alloc[a])
        for b in inst.agents:
            if b != a and own < sum(row[g] for g in alloc[b]):
                return Check(False, {"agent": a, "envied": b})
    return PASS


def check_ef1(inst: Instance, alloc: Allocation) -> Check:
    """Envy-freeness up to one good; removing the envied bundle's most valuable good
    (in the envious agent's eyes) is the strongest single removal."""
    _require_valid(inst, alloc)
    for a, row in enumerate(inst.integer_rows):
        own = sum(row[g] for g in alloc[a])
        for b in inst.agents:
            if b == a or not alloc[b]:
                continue
            other = sum(row[g] for g in alloc[b])
            if own < other - max(row[g] for g in alloc[b]):
                return Check(False, {"agent": a, "envied": b})
    return PASS


def check_po_bruteforce(inst: Instance, alloc: Allocation, cap: int | None = None) -> Check:
    """Pareto optimality by enumerating every allocation; the witness is the first
    dominating allocation in owner-tuple lexicographic order."""
    _require_valid(inst, alloc)
    n, m = inst.n, inst.m
    check_cap(n**m, cap, "Pareto-optimality enumeration")
    rows = inst.integer_rows  # per-agent scaling leaves Pareto comparisons intact
    current = [sum(rows[a][g] for g in alloc[a]) for a in range(n)]
    for owners in itertools.product(range(n), repeat=m):
        values = [0] * n
        for g, a in enumerate(owners):
            values[a] += rows[a][g]
        if all(v >= c for v, c in zip(values, current)) and values != current:
            return Check(False, {"allocation": Allocation.from_owners(owners, n).sorted_bundles()})
    return PASS


def nash_welfare(inst: Instance, alloc: Allocation) -> Fraction:
    product = Fraction(1)
    for value in agent_utilities(inst, alloc):
        product *= value
    return product


def max_nash_welfare(inst: Instance, cap: int | None = None) -> Fraction:
    """Largest Nash welfare over all allocations, by enumeration."""
    check_cap(inst.n**inst.m, cap, "Nash welfare enumeration")
    best = Fraction(0)
    for owners in itertools.product(range(inst.n), repeat=inst.m):
        best = max(best, nash_welfare(inst, Allocation.from_owners(owners, inst.n)))
    return best


def min_removal_k(
    evaluator: int, inst: Instance, own_value: Fraction, other: Iterable[int]
) -> tuple[int, tuple[int, ...]]:
    """Fewest goods to drop from ``other`` so ``evaluator`` values it at most ``own_value``.

    Dropping goods greedily from most to least valuable (ties by index) is optimal
    for additive utilities. Returns ``(k, removed goods)``.
    """
    return _greedy_removal(inst.utilities[evaluator], own_value, other)


def _greedy_removal(row, own_value, other) -> tuple[int, tuple[int, ...]]:
    goods = sorted(other, key=lambda g: (-row[g], g))
    value = sum(row[g] for g in goods)
    removed = []
    for g in goods:
        if value <= own_value:
            break
        value -= row[g]
        removed.append(g)
    return len(removed), tuple(removed)


def outputs_by_ordering(
    mechanism: MechanismLike, inst: Instance, cap: int | None = None
) -> list[tuple[AgentOrdering, Allocation]]:
    check_cap(math.factorial(inst.n), cap if cap is not None else enum_cap(DEFAULT_ORDERING_CAP), "ordering enumeration")
    mech = _resolve(mechanism)
    return [(pi, mech(inst, pi)) for pi in AgentOrdering.all(inst.n)]


def pef_degree_from_outputs(
    inst: Instance, outputs: Sequence[tuple[AgentOrdering, Allocation]]
) -> tuple[int, PefWitness]:
    """Instance degree of position envy from one mechanism output per ordering.

    For agent ``a`` the worst pair always uses, as the current ordering, the one
    giving ``a`` its least utility (first such in enumeration order). The witness is
    the first agent/other-ordering pair, in enumeration order, reaching the maximum.
    """
    best: PefWitness | None = None
    for a in inst.agents:
        row = inst.integer_rows[a]
        values = [sum(row[g] for g in alloc[a]) for _, alloc in outputs]
        low = min(range(len(outputs)), key=lambda i: values[i])
        seen: dict[frozenset[int], int] = {}
        for pi_other, alloc in outputs:
            bundle = alloc[a]
            if bundle in seen:
                continue
            k, removed = _greedy_removal(row, values[low], bundle)
            seen[bundle] = k
            if best is None or k > best.removal_count:
                best = PefWitness(a, outputs[low][0], pi_other, k, removed)
    assert best is not None
    return best.removal_count, best


def pef_degree(mechanism: MechanismLike, inst: Instance, cap: int | None = None) -> tuple[int, PefWitness]:
    """Runs the mechanism under all ``n!`` orderings; exact for this instance and a
    lower bound on the mechanism's degree over all profiles."""
    return pef_degree_from_outputs(inst, outputs_by_ordering(mechanism, inst, cap))


def check_scale_invariance(
    mechanism: MechanismLike, inst: Instance, scalars: Sequence, ordering: AgentOrdering
) -> Check:
    mech = _resolve(mechanism)
    plain = mech(inst, ordering)
    scaled = mech(scale_profile(inst, scalars), ordering)
    if plain == scaled:
        return PASS
    return Check(False, {
        "ordering": ordering.positions,
        "scalars": [str(Fraction(s)) for s in scalars],
        "allocation": plain.sorted_bundles(),
        "scaled_allocation": scaled.sorted_bundles(),
    })


@dataclass
class AuditReport:
    mechanism: str
    n: int
    m: int
    checks: dict[str, Check] = field(default_factory=dict)
    degree: int | None = None
    degree_witness: PefWitness | None = None
    timing: dict[str, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_json(self, include_timing: bool = False) -> dict:
        doc: dict = {"mechanism": self.mechanism, "n": self.n, "m": self.m, "checks": {}}
        for name, check in self.checks.items():
            entry: dict = {"passed": check.passed}
            if check.witness is not None:
                entry["witness"] = _public_witness(check.witness)
            doc["checks"][name] = entry
        if self.degree is not None:
            doc["degree"] = {
                "value": self.degree,
                "label": DEGREE_LABEL,
                "witness": self.degree_witness.to_json() if self.degree_witness else None,
            }
        doc["flags"] = list(self.flags)
        if include_timing:
            doc["timing_ms"] = {k: round(v * 1000, 3) for k, v in self.timing.items()}
        return doc


def _public_witness(witness: dict) -> dict:
    out = {}
    for key, value in witness.items():
        if key in ("agent", "envied"):
            out[key] = value + 1
        elif key == "ordering":
            out[key] = [a + 1 for a in value]
        elif key in ("allocation", "scaled_allocation"):
            out[key] = [[g + 1 for g in bundle] for bundle in value]
        else:
            out[key] = value
    return out


def _per_ordering(check: Callable[[Instance, Allocation], Check], inst, outputs) -> Check:
    for pi, alloc in outputs:
        result = check(inst, alloc)
        if not result.passed:
            return Check(False, {"ordering": pi.positions, **(result.witness or {})})
    return PASS


def audit(
    mechanism: str,
    inst: Instance,
    checks: Sequence[str] = ("ef1", "po", "pef_degree", "scale"),
    scalars: Sequence | None = None,
    orderings: Sequence[AgentOrdering] | None = None,
) -> AuditReport:
    """Run the requested checks on ``mechanism``'s outputs.

    ``ef``, ``ef1``, ``po`` and ``scale`` apply to the given orderings, or to all of
    them when ``orderings`` is None. ``scalars`` defaults to ``(1, 2, ..., n)``.
    """
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {', '.join(ALL_CHECKS)}")
    mech = get_mechanism(mechanism)
    report = AuditReport(mechanism, inst.n, inst.m)

    start = time.perf_counter()
    if orderings is None or "pef_degree" in checks:
        all_outputs = outputs_by_ordering(mech, inst)
    else:
        all_outputs = []
    if orderings is None:
        outputs = all_outputs
    else:
        outputs = [(pi, mech(inst, pi)) for pi in orderings]
    report.timing["run"] = time.perf_counter() - start

    for name in checks:
        start = time.perf_counter()
        if name == "ef":
            report.checks[name] = _per_ordering(check_envy_free, inst, outputs)
        elif name == "ef1":
            report.checks[name] = _per_ordering(check_ef1, inst, outputs)
        elif name == "po":
            check_cap(inst.n**inst.m, None, "Pareto-optimality enumeration")
            report.checks[name] = _per_ordering(check_po_bruteforce, inst, outputs)
        elif name == "pef_degree":
            report.degree, report.degree_witness = pef_degree_from_outputs(inst, all_outputs)
        elif name == "scale":
            factors = list(scalars) if scalars is not None else list(range(1, inst.n + 1))
            result = PASS
            for pi, _ in outputs:
                result = check_scale_invariance(mech, inst, factors, pi)
                if not result.passed:
                    break
            report.checks[name] = result
        report.timing[name] = time.perf_counter() - start

    if mechanism == "mnw_bruteforce" and inst.n**inst.m <= enum_cap():
        if max_nash_welfare(inst) == 0:
            report.flags.append("mnw_zero_welfare")
    return report


__all__ = [
    "ALL_CHECKS",
    "AuditReport",
    "Check",
    "DEGREE_LABEL",
    "PefWitness",
    "audit",
    "check_ef1",
    "check_envy_free",
    "check_po_bruteforce",
    "check_scale_invariance",
    "max_nash_welfare",
    "min_removal_k",
    "nash_welfare",
    "outputs_by_ordering",
    "pef_degree",
    "pef_degree_from_outputs",
]
