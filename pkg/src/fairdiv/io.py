"""JSON formats for instances and mechanism runs.

Rationals are always strings (``"3"``, ``"1/6"``; decimal input such as
``"0.25"`` converts exactly). Agents and goods are numbered from 1 in every
document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import AgentOrdering, Allocation, Instance, InputError, agent_utilities


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError(f"rational must be a string or integer, got {text!r}")
    try:
        value = Fraction(text.strip() if isinstance(text, str) else text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"cannot parse {text!r} as a rational") from None
    return value


def instance_to_dict(inst: Instance) -> dict:
    doc: dict = {}
    if inst.agent_labels is not None:
        doc["agents"] = list(inst.agent_labels)
    doc["m"] = inst.m
    doc["utilities"] = [[format_rational(x) for x in row] for row in inst.utilities]
    return doc


def serialize_instance(inst: Instance) -> str:
    """Stable text form: one utility row per line, trailing newline."""
    doc = instance_to_dict(inst)
    lines = ["{"]
    if "agents" in doc:
        lines.append(f'  "agents": {json.dumps(doc["agents"])},')
    lines.append(f'  "m": {doc["m"]},')
    rows = [f"    {json.dumps(row)}" for row in doc["utilities"]]
    lines.append('  "utilities": [')
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict) or "utilities" not in doc:
        raise InputError('instance document needs a "utilities" matrix')
    rows = doc["utilities"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError('"utilities" must be a list of rows')
    m = doc.get("m")
    if m is None:
        m = len(rows[0]) if rows else 0
    if not isinstance(m, int) or isinstance(m, bool):
        raise InputError('"m" must be an integer')
    for i, row in enumerate(rows):
        if len(row) != m:
            raise InputError(f"utility row {i + 1} has {len(row)} entries, expected m={m}")
    labels = doc.get("agents")
    return Instance(
        tuple(tuple(parse_rational(x) for x in row) for row in rows),
        tuple(str(a) for a in labels) if labels is not None else None,
    )


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"instance is not valid JSON: {exc}") from None
    return instance_from_dict(doc)


def load_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read instance {path}: {exc}") from None
    return parse_instance(text)


def parse_ordering(text: str, n: int) -> AgentOrdering:
    """Parse ``"2,1,3"``: agent numbers in pick order."""
    try:
        agents = [int(tok) - 1 for tok in text.split(",")]
    except ValueError:
        raise InputError(f"ordering {text!r} must be comma-separated agent numbers") from None
    if sorted(agents) != list(range(n)):
        raise InputError(f"ordering {text!r} is not a permutation of 1..{n}")
    return AgentOrdering(tuple(agents))


@dataclass(frozen=True)
class RunResult:
    mechanism: str
    ordering: AgentOrdering
    allocation: Allocation
    utilities: tuple[Fraction, ...]

    @classmethod
    def build(cls, mechanism: str, inst: Instance, ordering: AgentOrdering, alloc: Allocation) -> RunResult:
        return cls(mechanism, ordering, alloc, tuple(agent_utilities(inst, alloc)))

    def to_dict(self) -> dict:
        return {
            "mechanism": self.mechanism,
            "ordering": [a + 1 for a in self.ordering.positions],
            "bundles": [[g + 1 for g in b] for b in self.allocation.sorted_bundles()],
            "utilities": [format_rational(x) for x in self.utilities],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> RunResult:
        try:
            return cls(
                doc["mechanism"],
                AgentOrdering(tuple(a - 1 for a in doc["ordering"])),
                Allocation(tuple(frozenset(g - 1 for g in b) for b in doc["bundles"])),
                tuple(parse_rational(x) for x in doc["utilities"]),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed run result: {exc}") from None

    @classmethod
    def loads(cls, text: str) -> RunResult:
        return cls.from_dict(json.loads(text))
