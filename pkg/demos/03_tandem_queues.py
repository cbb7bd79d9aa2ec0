"""Tandem queues as degenerate fork-join networks.

Open tandem: a saturated source feeding a chain of single servers.  The
transition matrix is lower triangular, entry (i, j) being the service
of the whole stretch j..i; a departure from node j ripples through all
the empty buffers downstream within the same customer index.

Closed tandem: the same chain bent into a ring with a fixed customer
population.  With one customer per node the matrix only couples each
node to its predecessor on the ring, one step back in k.
"""

from maxplusnet import (build_closed_tandem, build_open_tandem,
                        render_symbolic, run, symbolic_transition)
from maxplusnet.network import Constant

open_spec = build_open_tandem(4)
print("open tandem, n = 4:")
print(render_symbolic(symbolic_transition(open_spec)))

closed_spec = build_closed_tandem(4, [1, 1, 1, 1])
print("\nclosed tandem, n = 4, one customer per node:")
print(render_symbolic(symbolic_transition(closed_spec)))

# Throughput check: a ring of unit servers with a single circulating
# customer departs each node once per full cycle.
ring = build_closed_tandem(3, [1, 0, 0], Constant(1))
trace = run(ring, 4)
print("\nsingle customer on a 3-ring of unit servers:")
for i in range(1, 4):
    print(f"  node {i} departures: {trace.node_series(i)}")

# The bottleneck server sets the pace of an open tandem.
slowmid = build_open_tandem(3, [Constant(1), Constant(4), Constant(2)])
trace = run(slowmid, 5)
print("\nopen tandem with a slow middle server:")
for i in range(1, 4):
    print(f"  node {i} departures: {trace.node_series(i)}")
