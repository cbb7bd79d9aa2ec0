"""Compilation of networks into routing and state-transition matrices.

The routing matrices G_0 .. G_M sort the arcs by the initial buffer
content of the target node: G_m holds a zero at (i, j) exactly when
i -> j is an arc and node j starts with m buffered customers.  The
memory depth M is the largest finite buffer; a network whose non-source
buffers are all empty is promoted to M = 1 with G_1 null so that the
departure recursion always reaches back at least one step.

Given the k-th service times as the diagonal matrix D, the explicit
state-transition matrices are

    T_1 = (E (+) D G_0^T)^p (x) D (x) (E (+) G_1^T)
    T_m = (E (+) D G_0^T)^p (x) D (x) G_m^T        for m >= 2,

where p is the longest path length of the zero-buffer graph; the graph
must be acyclic for the explicit form to exist.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CompilationError
from .network import INF, NetworkSpec, validate
from .semiring import EPS, MaxPlusMatrix, graph_view
from .symbolic import Poly, poly_dominates


@dataclass(frozen=True)
class RoutingMatrices:
    """G_0 .. G_M plus the path data of the zero-buffer graph."""

    memory_depth: int          # M, always >= 1 after promotion
    matrices: tuple            # (G_0, ..., G_M)
    longest_path: int          # p of the zero-buffer graph
    topo_order: tuple          # topological order of that graph, 0-based

    @property
    def g0(self) -> MaxPlusMatrix:
        return self.matrices[0]


def build_routing(spec: NetworkSpec) -> RoutingMatrices:
    """Sort arcs into G_0..G_M and verify the zero-buffer graph."""
    validate(spec)
    n = spec.n
    finite_r = [spec.r(i) for i in range(1, n + 1) if spec.r(i) != INF]
    depth = max(finite_r, default=0)
    depth = max(depth, 1)  # promotion: recursion needs at least one term
    rows = [[[EPS] * n for _ in range(n)] for _ in range(depth + 1)]
    for i, j in spec.arcs:
        m = spec.r(j)
        if m == INF:
            continue  # unreachable: validation bans arcs into sources
        rows[m][i - 1][j - 1] = 0
    mats = tuple(MaxPlusMatrix.from_rows(g) for g in rows)
    view = graph_view(mats[0])
    if not view.acyclic:
        witness = [c + 1 for c in view.cycle_witness]
        raise CompilationError(
            "G0 cycle: " + "->".join(str(c) for c in witness), witness)
    return RoutingMatrices(memory_depth=depth, matrices=mats,
                           longest_path=view.longest_path_length,
                           topo_order=view.topo_order)


def _transition_from_diag(routing: RoutingMatrices, tau_entries, one):
    """Shared numeric/symbolic evaluation of the T_m formulas.

    ``tau_entries`` are the diagonal service entries (numbers or Poly);
    ``one`` is the multiplicative identity of the entry domain.
    """
    n = routing.g0.order
    diag = MaxPlusMatrix.from_rows(
        [[tau_entries[i] if i == j else EPS for j in range(n)]
         for i in range(n)])
    eye = MaxPlusMatrix.eye(n, one=one)
    g0t = _lift(routing.matrices[0].transpose(), one)
    closure = eye.oplus(diag.otimes(g0t)).power(routing.longest_path,
                                                one=one)
    base = closure.otimes(diag)
    g1t = _lift(routing.matrices[1].transpose(), one)
    out = [base.otimes(eye.oplus(g1t))]
    for m in range(2, routing.memory_depth + 1):
        out.append(base.otimes(_lift(routing.matrices[m].transpose(), one)))
    return out


def _lift(g: MaxPlusMatrix, one) -> MaxPlusMatrix:
    """Replace the numeric 0 entries of a routing matrix by ``one``."""
    if one == 0:
        return g
    return MaxPlusMatrix.from_rows(
        [[one if x is not EPS else EPS for x in row] for row in g.rows])


class CompiledTransition:
    """Per-step factory for the state-transition matrices of a network."""

    def __init__(self, spec: NetworkSpec, routing: RoutingMatrices):
        self.spec = spec
        self.routing = routing

    @property
    def memory_depth(self) -> int:
        return self.routing.memory_depth

    @property
    def longest_path(self) -> int:
        return self.routing.longest_path

    def transition_from_row(self, tau_row) -> list:
        """[T_1(k), ..., T_M(k)] for one row of service times."""
        return _transition_from_diag(self.routing, tuple(tau_row), 0)

    def transition_at(self, k: int, table) -> list:
        return self.transition_from_row(table.row(k))

    def extended_from_row(self, tau_row) -> MaxPlusMatrix:
        """Block companion matrix over the extended state vector.

        Top block row is T_1 .. T_M; identity blocks sit on the
        sub-diagonal; everything else is null.  For M = 1 this is just
        T_1.
        """
        mats = self.transition_from_row(tau_row)
        depth = self.memory_depth
        if depth == 1:
            return mats[0]
        n = self.spec.n
        size = n * depth
        rows = [[EPS] * size for _ in range(size)]
        for m, t in enumerate(mats):
            for i in range(n):
                for j in range(n):
                    rows[i][m * n + j] = t.rows[i][j]
        for b in range(1, depth):
            for i in range(n):
                rows[b * n + i][(b - 1) * n + i] = 0
        return MaxPlusMatrix.from_rows(rows)

    def extended_at(self, k: int, table) -> MaxPlusMatrix:
        return self.extended_from_row(table.row(k))


def compile_network(spec: NetworkSpec) -> CompiledTransition:
    return CompiledTransition(spec, build_routing(spec))


# ---------------------------------------------------------------------------
# symbolic form


def symbolic_transition(spec: NetworkSpec, *,
                        prune_dominated_columns: bool = True) -> list:
    """[T_1, ..., T_M] with entries as service-time polynomials.

    With ``prune_dominated_columns`` (the default for display), a column
    u of T_m is blanked when each of its entries is bounded by an entry
    in a column v whose state component is provably no earlier, i.e.
    node v is reachable from node u through zero-buffer arcs; along any
    trajectory this leaves the matrix-vector products unchanged.  Set it
    to False to get the literal formula value, which evaluates entrywise
    to the numeric matrices for every service-time assignment.
    """
    routing = build_routing(spec)
    tau = tuple(Poly.var(i) for i in range(1, spec.n + 1))
    mats = _transition_from_diag(routing, tau, Poly.one())
    if prune_dominated_columns:
        mats = [_prune(t, routing) for t in mats]
    return mats


def _zero_reach(routing: RoutingMatrices) -> list:
    """reach[u][v]: v is reachable from u via zero-buffer arcs (0-based)."""
    n = routing.g0.order
    succs = [[] for _ in range(n)]
    for i, j in routing.g0.support():
        succs[i].append(j)
    reach = [set() for _ in range(n)]
    for u in reversed(routing.topo_order):
        for w in succs[u]:
            reach[u].add(w)
            reach[u] |= reach[w]
    return reach


def _prune(t: MaxPlusMatrix, routing: RoutingMatrices) -> MaxPlusMatrix:
    """Blank columns dominated along every trajectory (see above).

    A column u is dropped only when one single column v supersedes all
    of it: v reachable from u through zero-buffer arcs (so the state
    component of v is never earlier than u's) and every entry of column
    u entrywise bounded by the matching entry of column v.
    """
    n = t.order
    reach = _zero_reach(routing)
    removable = []
    for u in range(n):
        entries = [(i, t.rows[i][u]) for i in range(n)
                   if t.rows[i][u] is not EPS]
        if not entries:
            continue
        if any(all(t.rows[i][v] is not EPS and
                   poly_dominates(x, t.rows[i][v])
                   for i, x in entries)
               for v in reach[u]):
            removable.append(u)
    if not removable:
        return t
    dropped = set(removable)
    return MaxPlusMatrix.from_rows(
        [[EPS if j in dropped else x for j, x in enumerate(row)]
         for row in t.rows])


def render_symbolic(mats) -> str:
    """Human-readable grid for one or more symbolic matrices."""
    blocks = []
    for m, t in enumerate(mats, start=1):
        header = f"T_{m}:" if len(mats) > 1 else ""
        body = t.pretty()
        blocks.append(header + "\n" + body if header else body)
    return "\n\n".join(blocks)
