"""Two agents: adjusted winner, its modification, and maximum Nash welfare.

The discrete adjusted winner hands everything to whoever stands first and then
transfers goods back, so standing first can be worth about half the goods. The
modified version computes one equitable fractional split that ignores the
ordering and only rounds the split good, which caps position envy at one good.
"""

from fairdiv import AgentOrdering, audit, equitable_split, mnw_bruteforce, nash_welfare
from fairdiv.generators import gen_aw_counterexample, gen_random
from fairdiv.mechanisms import adjusted_winner_discrete, equitability_ratios

ORDERS = (AgentOrdering((0, 1)), AgentOrdering((1, 0)))

for m in (5, 7, 9):
    inst = gen_aw_counterexample(m)
    bundles = [sorted(g + 1 for g in adjusted_winner_discrete(inst, pi)[0]) for pi in ORDERS]
    degree = audit("adjusted_winner_discrete", inst, ["pef_degree"]).degree
    print(f"m={m}: a1 first gets {bundles[0]}, a1 second gets {bundles[1]}, degree {degree}")

inst = gen_random(2, 6, seed=3)
split = equitable_split(inst)
print("\nutilities:", [[str(x) for x in row] for row in inst.utilities])
print(f"split good g{split.split_good + 1}, lambda = {split.lambda1} / {split.lambda2}")
print("equitability ratios:", *equitability_ratios(inst, split))
report = audit("adjusted_winner_modified", inst, ["ef1", "po", "pef_degree"])
print("modified AW:", {k: c.passed for k, c in report.checks.items()}, "degree", report.degree)

alloc = mnw_bruteforce(inst, ORDERS[0])
print(f"\nmax Nash welfare allocation {alloc.sorted_bundles()} with NW {nash_welfare(inst, alloc)}")
report = audit("mnw_bruteforce", inst, ["ef1", "po", "pef_degree"])
print("MNW:", {k: c.passed for k, c in report.checks.items()}, "degree", report.degree)
