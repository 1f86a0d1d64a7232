"""Exact maximum-weight left-perfect bipartite assignment.

Weights are Python ints, so nothing overflows no matter how large they get.
Ties between optimal matchings are broken canonically: scanning left vertices
in priority order, each takes the smallest right index that still extends to
an optimal matching. :func:`max_weight_assignment` reaches that matching with a
single Hungarian solve by appending a base-``right_count`` tie-break digit to
every weight; :func:`brute_force_assignment` enumerates injections directly and
serves as its oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .core import InputError, check_cap

_INF = float("inf")


@dataclass(frozen=True)
class AssignmentProblem:
    weights: tuple[tuple[int, ...], ...]
    right_count: int
    # right vertex j stands for good right_ids[j]; defaults to j itself
    right_ids: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        weights = tuple(tuple(int(w) for w in row) for row in self.weights)
        for i, row in enumerate(weights):
            if len(row) != self.right_count:
                raise InputError(f"weight row {i} has {len(row)} entries, expected {self.right_count}")
            if any(w < 0 for w in row):
                raise InputError(f"negative weight in row {i}")
        object.__setattr__(self, "weights", weights)
        if self.right_ids is not None:
            ids = tuple(self.right_ids)
            if len(ids) != self.right_count:
                raise InputError("right_ids length does not match right_count")
            object.__setattr__(self, "right_ids", ids)

    @property
    def left_count(self) -> int:
        return len(self.weights)

    @classmethod
    def from_matrix(cls, weights: Sequence[Sequence[int]]) -> AssignmentProblem:
        right = len(weights[0]) if weights else 0
        return cls(tuple(tuple(r) for r in weights), right)


@dataclass(frozen=True)
class Matching:
    """``assignment[i]`` is the right vertex matched to left vertex ``i``."""

    assignment: tuple[int, ...]

    def weight(self, prob: AssignmentProblem) -> int:
        return sum(prob.weights[i][j] for i, j in enumerate(self.assignment))

    def right_ids(self, prob: AssignmentProblem) -> tuple[int, ...]:
        if prob.right_ids is None:
            return self.assignment
        return tuple(prob.right_ids[j] for j in self.assignment)


def _check(prob: AssignmentProblem, priority: Sequence[int] | None) -> list[int]:
    if prob.right_count < prob.left_count:
        raise InputError(
            f"right_count {prob.right_count} < left_count {prob.left_count}: no left-perfect matching"
        )
    if priority is None:
        return list(range(prob.left_count))
    priority = list(priority)
    if sorted(priority) != list(range(prob.left_count)):
        raise InputError(f"priority {priority} is not a permutation of the left vertices")
    return priority


def hungarian_min_cost(cost: Sequence[Sequence[int]], cols: int) -> list[int]:
    """Minimum-cost assignment of every row to a distinct column (rows <= cols).

    Shortest augmenting path with potentials, O(rows^2 * cols); exact on ints.
    """
    rows = len(cost)
    u = [0] * (rows + 1)
    v = [0] * (cols + 1)
    owner = [0] * (cols + 1)  # owner[j]: 1-based row matched to column j, 0 if free
    way = [0] * (cols + 1)
    for i in range(1, rows + 1):
        owner[0] = i
        j0 = 0
        minv = [_INF] * (cols + 1)
        used = [False] * (cols + 1)
        while True:
            used[j0] = True
            i0 = owner[j0]
            row = cost[i0 - 1]
            ui0 = u[i0]
            delta = _INF
            j1 = -1
            for j in range(1, cols + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(cols + 1):
                if used[j]:
                    u[owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    result = [-1] * rows
    for j in range(1, cols + 1):
        if owner[j]:
            result[owner[j] - 1] = j - 1
    return result


def max_weight_assignment(prob: AssignmentProblem, priority: Sequence[int] | None = None) -> Matching:
    """Canonical maximum-weight left-perfect matching.

    >>> max_weight_assignment(AssignmentProblem.from_matrix([[4, 2, 1], [4, 2, 1]]), (1, 0)).assignment
    (1, 0)
    """
    priority = _check(prob, priority)
    left, right = prob.left_count, prob.right_count
    if left == 0:
        return Matching(())
    # Digit for the left vertex at priority rank t sits at place right**(left-1-t);
    # digits lie in [0, right-1], so the bonus total stays below `scale` and never
    # carries: primary weight dominates, then lexicographically smallest indices.
    scale = right**left
    place = {i: right ** (left - 1 - t) for t, i in enumerate(priority)}
    top = max(max(row) for row in prob.weights)
    cost = [
        [(top - w) * scale + j * place[i] for j, w in enumerate(row)]
        for i, row in enumerate(prob.weights)
    ]
    return Matching(tuple(hungarian_min_cost(cost, right)))


def brute_force_assignment(
    prob: AssignmentProblem, priority: Sequence[int] | None = None, cap: int | None = None
) -> Matching:
    """Same contract as :func:`max_weight_assignment`, by enumerating every injection."""
    priority = _check(prob, priority)
    left, right = prob.left_count, prob.right_count
    check_cap(math.perm(right, left), cap, "brute-force assignment")
    best_key = None
    best: tuple[int, ...] = ()
    for perm in itertools.permutations(range(right), left):
        total = sum(prob.weights[i][j] for i, j in enumerate(perm))
        key = (-total, tuple(perm[i] for i in priority))
        if best_key is None or key < best_key:
            best_key, best = key, perm
    return Matching(tuple(best))
