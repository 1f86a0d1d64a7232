"""Adversarial profiles from the position-envy lower bounds, plus seeded random instances.

Symbolic constants use the smallest convenient values that satisfy their strict
inequalities: ``c = (3, 2, 1)``, ``eps = 1/(m+1)``, ``C = rounds - floor(log2 n) + 2``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Instance, InputError

FAMILIES = ("example4", "rr_log_lower_bound", "aw_counterexample", "ec_worst", "table1_n5", "random")


def gen_example4(c: tuple[int, int, int] = (3, 2, 1)) -> Instance:
    """Four agents, five goods; round-robin leaves agent 0 two goods short between
    the identity and the reversed ordering."""
    c1, c2, c3 = c
    if not c1 > c2 > c3 > 0:
        raise InputError("need c1 > c2 > c3 > 0")
    return Instance((
        (c1, 0, 0, c3, c2),
        (0, c1, 0, 0, c2),
        (c1, 0, c2, 0, 0),
        (0, c1, c3, c2, 0),
    ))


def rr_good_index(n: int, agent: int, rnd: int) -> int:
    """Index of the good ``agent`` (0-based) picks in round ``rnd`` (1-based) of the
    identity-ordering round-robin on :func:`gen_rr_log_lower_bound` output."""
    return (rnd - 1) * n + agent


def gen_rr_log_lower_bound(n: int, rounds: int) -> Instance:
    """Round-robin profile whose instance degree is at least ``floor(log2 n)``.

    Rounds are laid out contiguously, so the identity-ordering trace picks good
    ``(r-1)*n + i`` for agent ``i`` in round ``r``. Every agent other than the
    first values each of its own trace goods at 1 (round 1 included); the first
    agent values its first ``L = floor(log2 n)`` trace goods at ``C`` and the rest
    at 1; and in each round ``r <= L`` the agents ``i`` in the upper half of the
    first ``floor(n / 2**(r-1))`` value the good picked by their mirror image.
    """
    if n < 1 or rounds < 1:
        raise InputError("need n >= 1 and rounds >= 1")
    log_n = n.bit_length() - 1
    if rounds < log_n:
        raise InputError(f"need rounds >= floor(log2 n) = {log_n}")
    big_c = rounds - log_n + 2
    u = [[0] * (n * rounds) for _ in range(n)]
    for r in range(1, rounds + 1):
        u[0][rr_good_index(n, 0, r)] = big_c if r <= log_n else 1
        for i in range(1, n):
            u[i][rr_good_index(n, i, r)] = 1
    for r in range(1, log_n + 1):
        top = n >> (r - 1)
        for i in range(top, (n >> r), -1):  # 1-based agent numbers
            j = top - i + 1
            u[i - 1][rr_good_index(n, j - 1, r)] = 1
    return Instance(tuple(tuple(row) for row in u))


def gen_table1_n5() -> Instance:
    return gen_rr_log_lower_bound(5, 3)


def gen_aw_counterexample(m: int) -> Instance:
    """Two agents: the first values every good 1, the second values the last good 1
    and the others ``1/(m+1)``."""
    if m < 3:
        raise InputError("need m >= 3")
    eps = Fraction(1, m + 1)
    return Instance(((1,) * m, (eps,) * (m - 1) + (1,)))


def gen_ec_worst(n: int, m: int) -> Instance:
    """Only the first agent values anything (every good at 1)."""
    if n < 1 or m < n:
        raise InputError("need 1 <= n <= m")
    return Instance(((1,) * m,) + ((0,) * m,) * (n - 1))


def gen_random(n: int, m: int, seed: int, max_value: int = 10) -> Instance:
    """Uniform integer utilities in ``[0, max_value]``.

    Drawn row-major with ``random.Random(seed).randint`` (MT19937), which is
    reproducible across platforms.
    """
    if max_value < 1:
        raise InputError("need max_value >= 1")
    if n < 1 or m < 0:
        raise InputError("need n >= 1 and m >= 0")
    rng = random.Random(seed)
    return Instance(tuple(tuple(rng.randint(0, max_value) for _ in range(m)) for _ in range(n)))


def generate(family: str, n: int | None = None, m: int | None = None, rounds: int | None = None,
             seed: int = 0, max_value: int = 10) -> Instance:
    """Dispatch by family name; raises :class:`InputError` on missing parameters."""

    def need(name, value):
        if value is None:
            raise InputError(f"family {family!r} needs --{name}")
        return value

    if family == "example4":
        return gen_example4()
    if family == "table1_n5":
        return gen_table1_n5()
    if family == "rr_log_lower_bound":
        return gen_rr_log_lower_bound(need("n", n), need("rounds", rounds))
    if family == "aw_counterexample":
        return gen_aw_counterexample(need("m", m))
    if family == "ec_worst":
        return gen_ec_worst(need("n", n), need("m", m))
    if family == "random":
        return gen_random(need("n", n), need("m", m), seed, max_value)
    raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
