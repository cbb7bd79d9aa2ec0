"""Round routing modelled as a fork-join ring.

A dispatcher queue hands successive customers to branches 1..l in
cyclic order.  That system is not fork-join as stated, but becomes one
after replacing the dispatcher with a ring of l nodes, each feeding one
branch and the next ring node; the service stream of the dispatcher is
dealt out to the ring nodes in stride-l order.

This script compiles the ring form for l = 3 and then checks a run
against a direct simulation of the original dispatcher system.
"""

from maxplusnet import (build_round_robin, render_symbolic, run,
                        simulate_round_routing, symbolic_transition)
from maxplusnet.network import ExplicitSequence

l = 3
spec = build_round_robin(l)
print(f"ring form of {l}-branch round routing "
      f"(nodes {l + 1}..{2 * l} are the ring):")
print(render_symbolic(symbolic_transition(spec)))

K = 6
source = ExplicitSequence(tuple([1, 2, 1, 3, 2, 1] * l), "wrap")
branches = [ExplicitSequence((4, 2, 3, 5, 2, 4), "wrap")
            for _ in range(l)]

ring = build_round_robin(l, source, branches)
trace = run(ring, K)
direct = simulate_round_routing(l, source, branches, K)

print("branch departures, ring network vs direct simulation:")
for j in range(1, l + 1):
    ring_series = trace.node_series(j)
    direct_series = direct.node_series(j)
    tag = "ok" if ring_series == direct_series else "MISMATCH"
    print(f"  branch {j}: {ring_series}  [{tag}]")
