"""Compile the 5-node reference fork-join network and run it.

The network: a source (node 1) feeds node 2, node 2 forks to 3 and 4,
node 3 feeds node 5 and also loops back to node 2, node 4 feeds node 5.
Nodes 3 and 5 start with one buffered customer each.

Compilation turns this description into a single state-transition
matrix T(k) such that d(k) = T(k) (x) d(k-1), where d(k) collects the
k-th departure epochs of all five nodes.
"""

from maxplusnet import (build_reference_fork_join, compile_network,
                        realize_service, render_symbolic, run,
                        symbolic_transition)
from maxplusnet.network import ExplicitSequence

spec = build_reference_fork_join()
print("network:", spec.name)
for i in range(1, 6):
    print(f"  node {i}: preds={spec.preds(i)} succs={spec.succs(i)} "
          f"r={spec.r(i)}")

print("\nsymbolic transition matrix (entries are service-time products):")
print(render_symbolic(symbolic_transition(spec)))

# Now a concrete run with varying integer service times.
taus = [ExplicitSequence((2, 1, 3, 1, 2, 4, 1, 2, 3, 1), "wrap")
        for _ in range(5)]
spec = build_reference_fork_join(taus)
ct = compile_network(spec)
table = realize_service(spec, 8)

print("\nnumeric T(k) for k = 1:")
print(ct.transition_at(1, table)[0].pretty())

trace = run(spec, 8, table=table)
print("\ndeparture epochs:")
for k in range(9):
    print(f"  d({k}) = {trace.d(k)}")
