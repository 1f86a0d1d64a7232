"""Envy-cycle elimination can leave the last agent in line almost empty-handed.

When only one agent values anything, nobody ever envies anyone else, so goods go
to whoever stands first among the unenvied agents. Put the valuing agent first
and it gets everything; put it last and it gets one good in every n.
"""

from fairdiv import AgentOrdering, Instance, audit, envy_cycle
from fairdiv.generators import gen_ec_worst

for n, m in ((2, 4), (3, 6), (4, 5)):
    inst = gen_ec_worst(n, m)
    first = len(envy_cycle(inst, AgentOrdering.identity(n))[0])
    last = len(envy_cycle(inst, AgentOrdering.reverse(n))[0])
    degree = audit("envy_cycle", inst, ["pef_degree"]).degree
    print(f"n={n} m={m}: a1 first holds {first} goods, last holds {last}; degree {degree} = m - m//n = {m - m // n}")

# a trace shows each cycle being resolved
# a1 takes g1, which a2 prizes; after g2 both envy each other and swap
inst = Instance(((1, 1, 1), (3, 1, 1)))
trace = []
alloc = envy_cycle(inst, AgentOrdering.identity(2), trace)
for cycle, before, after in trace:
    print(f"\nswap along cycle {[a + 1 for a in cycle]}: envy edges {before} -> {after}")
print("allocation:", [[g + 1 for g in b] for b in alloc.sorted_bundles()])
