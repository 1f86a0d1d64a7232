"""The matching mechanism hands out goods one matching per round.

Round weights combine each agent's rank of a good (not its value) with a fixed
index bonus, so the set of goods handed out in each round does not depend on the
ordering, and rescaling an agent's utilities changes nothing.
"""

import random
from fractions import Fraction

from fairdiv import AgentOrdering, audit, matching_pef1, scale_profile
from fairdiv.generators import gen_example4, gen_random
from fairdiv.mechanisms import matching_pef1_rounds

inst = gen_example4()
for pi in (AgentOrdering.identity(4), AgentOrdering.reverse(4)):
    rounds = matching_pef1_rounds(inst, pi)
    print("order", [a + 1 for a in pi.positions])
    for r, match in enumerate(rounds, 1):
        pairs = ", ".join(f"a{a + 1}<-g{g + 1}" for a, g in sorted(match.items()) if g < inst.m)
        print(f"  round {r}: {pairs}")

report = audit("matching_pef1", inst, ["ef1", "pef_degree"])
print(f"\nround robin reaches degree 2 here; the matching mechanism: {report.degree}")

scaled = scale_profile(inst, [Fraction(1, 3), 7, 2, Fraction(5, 2)])
pi = AgentOrdering.identity(4)
print("same allocation after rescaling:", matching_pef1(scaled, pi) == matching_pef1(inst, pi))

rng = random.Random(0)
worst = 0
for _ in range(100):
    sample = gen_random(rng.randint(2, 4), rng.randint(1, 8), rng.randrange(10**6))
    worst = max(worst, audit("matching_pef1", sample, ["pef_degree"]).degree)
print(f"largest degree over 100 random instances: {worst}")
