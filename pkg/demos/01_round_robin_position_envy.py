"""Round robin looks fair until you compare orderings.

Under any single ordering the round-robin output is EF1. But an agent can do
far worse at one position than at another: this script shows agent 1 losing two
goods' worth just by moving from first to last in line, and then measures the
same effect on the logarithmic lower-bound family.
"""

from fairdiv import AgentOrdering, audit, bundle_utility, round_robin
from fairdiv.generators import gen_example4, gen_rr_log_lower_bound


def show(inst, pi):
    alloc = round_robin(inst, pi)
    order = " ".join(f"a{a + 1}" for a in pi.positions)
    print(f"  order {order}:")
    for a in inst.agents:
        goods = ", ".join(f"g{g + 1}" for g in sorted(alloc[a])) or "-"
        print(f"    a{a + 1} gets {{{goods}}}  utility {bundle_utility(inst, a, alloc[a])}")


inst = gen_example4()
print("4 agents, 5 goods")
show(inst, AgentOrdering.identity(4))
show(inst, AgentOrdering.reverse(4))

report = audit("round_robin", inst, ["ef1", "pef_degree"])
w = report.degree_witness
print(f"\nEF1 under every ordering: {report.checks['ef1'].passed}")
print(f"instance degree of position envy: {report.degree}")
print(f"  a{w.agent + 1} must drop goods {[g + 1 for g in w.removed_goods]} from its identity-order bundle")

print("\nlower-bound family (degree grows like log2 n):")
for n, rounds in ((2, 1), (4, 2), (5, 3), (8, 3)):
    report = audit("round_robin", gen_rr_log_lower_bound(n, rounds), ["pef_degree"])
    print(f"  n={n} rounds={rounds}: degree {report.degree}")
