"""A quick tour of the max-plus scalar and matrix operations.

Max-plus arithmetic replaces (+, *) by (max, +).  The null element eps
plays the role of minus infinity: it is neutral for max and absorbing
for +.  Matrices over this algebra double as weighted graphs, which is
what the rest of the package builds on.
"""

from maxplusnet import EPS, MaxPlusMatrix, graph_view, oplus, otimes

print("scalars")
print("  3 (+) 5 =", oplus(3, 5))
print("  3 (x) 5 =", otimes(3, 5))
print("  eps (+) 7 =", oplus(EPS, 7))
print("  eps (x) 7 =", otimes(EPS, 7))
print()

# A three-node chain 1 -> 2 -> 3 as an adjacency matrix.  Powers of the
# matrix enumerate paths: X^2 has a single finite entry, the two-arc
# path from node 1 to node 3, and X^3 is null because no longer path
# exists.
x = MaxPlusMatrix.from_rows([
    [EPS, 2, EPS],
    [EPS, EPS, 3],
    [EPS, EPS, EPS],
])

print("chain adjacency matrix X:")
print(x.pretty())
for q in (2, 3):
    print(f"\nX^{q}:")
    print(x.power(q).pretty())

view = graph_view(x)
print("\nacyclic:", view.acyclic, " longest path:",
      view.longest_path_length)

# (E (+) X)^p accumulates all paths up to length p; in queueing terms
# this closure is what propagates a departure through a stretch of
# empty buffers within a single customer index.
closure = MaxPlusMatrix.eye(3).oplus(x).power(view.longest_path_length)
print("\n(E (+) X)^p:")
print(closure.pretty())
