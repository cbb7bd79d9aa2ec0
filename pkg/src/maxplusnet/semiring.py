"""Max-plus (tropical) arithmetic on scalars and square matrices.

Scalars are plain Python numbers (exact ints by default, floats when
service times are stochastic) together with the distinguished null
element ``EPS``.  ``EPS`` is a tagged singleton rather than ``-inf`` so
that absorption (eps (x) x = eps) is exact under every backend and never
degenerates into a NaN.

A matrix doubles as the weighted adjacency matrix of an oriented graph:
entry (i, j) != EPS means the arc i -> j exists with that weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CycleError, DimensionError, SpecValidationError


class _Epsilon:
    """The max-plus null element (conceptually -infinity)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "eps"

    def __reduce__(self):
        # keep the singleton property through pickling
        return (_Epsilon, ())


EPS = _Epsilon()


def is_finite(x) -> bool:
    return x is not EPS


def oplus(a, b):
    """Max-plus addition: max(a, b) with EPS neutral.

    Symbolic entries (anything exposing ``join``/``times``) flow through
    the same entry points so matrix code is shared between numeric and
    symbolic pipelines.
    """
    if a is EPS:
        return b
    if b is EPS:
        return a
    if isinstance(a, (int, float)):
        return a if a >= b else b
    return a.join(b)


def otimes(a, b):
    """Max-plus multiplication: a + b, with EPS absorbing."""
    if a is EPS or b is EPS:
        return EPS
    if isinstance(a, (int, float)):
        return a + b
    return a.times(b)


def format_scalar(x) -> str:
    """Render a scalar for display/serialization; floats round-trip."""
    if x is EPS:
        return "eps"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, int):
        return str(x)
    return x.render()


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar` for numeric scalars."""
    if text == "eps":
        return EPS
    try:
        return int(text)
    except ValueError:
        return float(text)


@dataclass(frozen=True)
class MaxPlusMatrix:
    """Dense square matrix over max-plus scalars (immutable)."""

    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise DimensionError("matrix order must be >= 1")
        for row in self.rows:
            if len(row) != n:
                raise DimensionError("matrix must be square")

    @classmethod
    def from_rows(cls, rows) -> "MaxPlusMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def nulls(cls, n: int) -> "MaxPlusMatrix":
        """The all-EPS null matrix of order n."""
        return cls(tuple((EPS,) * n for _ in range(n)))

    @classmethod
    def eye(cls, n: int, one=0) -> "MaxPlusMatrix":
        """Identity: ``one`` on the diagonal, EPS elsewhere."""
        return cls(tuple(tuple(one if i == j else EPS for j in range(n))
                         for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def oplus(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        """Entrywise max-plus addition."""
        if self.order != other.order:
            raise DimensionError(
                f"order mismatch: {self.order} vs {other.order}")
        return MaxPlusMatrix(tuple(
            tuple(oplus(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def otimes(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        """Tropical matrix product: entry (i,j) = max_k x_ik + y_kj."""
        if self.order != other.order:
            raise DimensionError(
                f"order mismatch: {self.order} vs {other.order}")
        n = self.order
        cols = tuple(tuple(other.rows[k][j] for k in range(n))
                     for j in range(n))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                # inlined oplus/otimes: this loop dominates compile cost
                acc = EPS
                for a, b in zip(row, col):
                    if a is EPS or b is EPS:
                        continue
                    if isinstance(a, (int, float)):
                        term = a + b
                        if acc is EPS or term > acc:
                            acc = term
                    else:
                        term = a.times(b)
                        acc = term if acc is EPS else acc.join(term)
                out_row.append(acc)
            out.append(tuple(out_row))
        return MaxPlusMatrix(tuple(out))

    def power(self, q: int, one=0) -> "MaxPlusMatrix":
        """Iterated tropical product; X^0 is the identity.

        Iterated multiplication (not binary powering): exponents stay
        small (at most the matrix order) in every use here.
        """
        if q < 0:
            raise ValueError("exponent must be nonnegative")
        acc = MaxPlusMatrix.eye(self.order, one=one)
        for _ in range(q):
            acc = acc.otimes(self)
        return acc

    def transpose(self) -> "MaxPlusMatrix":
        return MaxPlusMatrix(tuple(zip(*self.rows)))

    def support(self) -> frozenset:
        """Arc set of the adjacency reading: {(i, j) | entry != EPS}."""
        return frozenset((i, j)
                         for i, row in enumerate(self.rows)
                         for j, x in enumerate(row) if x is not EPS)

    def pretty(self) -> str:
        """Column-aligned rendering with EPS shown as 'eps'."""
        cells = [[format_scalar(x) for x in row] for row in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.order))
                  for j in range(self.order)]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths))
            for row in cells)


def mat_oplus(x: MaxPlusMatrix, y: MaxPlusMatrix) -> MaxPlusMatrix:
    return x.oplus(y)


def mat_otimes(x: MaxPlusMatrix, y: MaxPlusMatrix) -> MaxPlusMatrix:
    return x.otimes(y)


def mat_power(x: MaxPlusMatrix, q: int, one=0) -> MaxPlusMatrix:
    return x.power(q, one=one)


def mat_vec(x: MaxPlusMatrix, v) -> tuple:
    """Matrix-vector product in max-plus."""
    if len(v) != x.order:
        raise DimensionError(f"vector length {len(v)} vs order {x.order}")
    return tuple(
        _row_dot(row, v) for row in x.rows)


def _row_dot(row, v):
    acc = EPS
    for a, b in zip(row, v):
        if a is EPS or b is EPS:
            continue
        if isinstance(a, (int, float)):
            term = a + b
            if acc is EPS or term > acc:
                acc = term
        else:
            term = a.times(b)
            acc = term if acc is EPS else acc.join(term)
    return acc


def vec_oplus(u, v) -> tuple:
    if len(u) != len(v):
        raise DimensionError("vector length mismatch")
    return tuple(oplus(a, b) for a, b in zip(u, v))


@dataclass(frozen=True)
class PathGraphView:
    """Graph reading of a matrix: acyclicity, longest path, witnesses.

    Exactly one of ``longest_path_length`` (acyclic) and
    ``cycle_witness`` (cyclic) is set.  ``topo_order`` is a topological
    node order, present only in the acyclic case.
    """

    order: int
    arcs: frozenset
    acyclic: bool
    longest_path_length: Optional[int]
    cycle_witness: Optional[tuple]
    topo_order: Optional[tuple]


def graph_view(x: MaxPlusMatrix) -> PathGraphView:
    """Interpret a matrix as a graph and analyze its path structure.

    The longest path length is computed by DP over a topological order,
    O(n + arcs); the order is reported for reuse by downstream code.
    """
    n = x.order
    arcs = x.support()
    succs = [[] for _ in range(n)]
    preds = [[] for _ in range(n)]
    indeg = [0] * n
    for i, j in arcs:
        succs[i].append(j)
        preds[j].append(i)
        indeg[j] += 1

    # Kahn's algorithm
    order = []
    ready = [i for i in range(n) if indeg[i] == 0]
    remaining = list(indeg)
    while ready:
        u = ready.pop()
        order.append(u)
        for w in succs[u]:
            remaining[w] -= 1
            if remaining[w] == 0:
                ready.append(w)

    if len(order) < n:
        leftover = {i for i in range(n) if remaining[i] > 0}
        witness = _find_cycle(preds, leftover)
        return PathGraphView(order=n, arcs=arcs, acyclic=False,
                             longest_path_length=None,
                             cycle_witness=tuple(witness), topo_order=None)

    dist = [0] * n
    for u in order:
        for w in succs[u]:
            if dist[u] + 1 > dist[w]:
                dist[w] = dist[u] + 1
    p = max(dist, default=0)
    return PathGraphView(order=n, arcs=arcs, acyclic=True,
                         longest_path_length=p, cycle_witness=None,
                         topo_order=tuple(order))


def _find_cycle(preds, leftover):
    """Walk predecessor links inside the cyclic core until a repeat.

    Every leftover node has a leftover predecessor, so the walk cannot
    stall.  Returns [c0, ..., c0] oriented along actual arcs.
    """
    start = min(leftover)
    path = []
    seen = {}
    cur = start
    while cur not in seen:
        seen[cur] = len(path)
        path.append(cur)
        cur = next(p for p in preds[cur] if p in leftover)
    pos = seen[cur]
    # path[t+1] -> path[t] are arcs, and cur(=path[pos]) -> path[-1]
    return [path[pos]] + list(reversed(path[pos:]))


def solve_implicit(u: MaxPlusMatrix, v) -> tuple:
    """Solve x = U (x) x (+) v for the unique bounded solution.

    Requires every finite entry of U to be positive and the graph of U
    to be acyclic; finite entries of v must be nonnegative (zeros are
    admitted because departure recursions seed v with the all-zero
    initial state).  The solution is (E (+) U)^p (x) v with p the
    longest path length, evaluated here as p rounds of the fixed-point
    map x <- U (x) x (+) v started from v.
    """
    n = u.order
    if len(v) != n:
        raise DimensionError(f"vector length {len(v)} vs order {n}")
    bad = [f"U[{i},{j}] = {u.rows[i][j]!r} is not positive"
           for i in range(n) for j in range(n)
           if u.rows[i][j] is not EPS and not u.rows[i][j] > 0]
    bad += [f"v[{i}] = {x!r} is negative"
            for i, x in enumerate(v) if x is not EPS and x < 0]
    if bad:
        raise SpecValidationError(bad)
    view = graph_view(u)
    if not view.acyclic:
        raise CycleError(
            "no unique bounded solution: graph of U is cyclic",
            view.cycle_witness)
    x = tuple(v)
    for _ in range(view.longest_path_length):
        x = vec_oplus(mat_vec(u, x), v)
    return x
