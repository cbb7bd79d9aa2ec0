"""Iteration of the departure-epoch state equation.

Conventions: d(0) is the all-zero vector, d(k) = EPS-vector for k < 0.
Three equivalent evaluation paths are provided and cross-checked by the
test suite:

* ``implicit`` (default): solves the per-step implicit equation by
  substitution along a topological order of the zero-buffer graph,
  touching only actual arcs.  O(n + arcs) per step.
* ``explicit``: builds the state-transition matrices T_m(k) each step
  and takes d(k) = (+)_m T_m(k) (x) d(k-m).
* ``extended``: iterates the block companion matrix over the extended
  state vector and reads the top block.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import NamedTuple

from .compiler import CompiledTransition, RoutingMatrices, compile_network
from .network import (INF, NetworkSpec, ServiceTimeTable, realize_service,
                      validate)
from .semiring import (EPS, MaxPlusMatrix, format_scalar, mat_vec,
                       solve_implicit, vec_oplus)

_METHODS = ("implicit", "explicit", "extended")


class StateVector(NamedTuple):
    k: int
    d: tuple


@dataclass
class DepartureTrace:
    """Departure epochs d(0)..d(K) for every node, plus run metadata."""

    spec_name: str
    n: int
    horizon: int
    vectors: list  # vectors[k] = d(k) as a tuple (entries number or EPS)
    metadata: dict = field(default_factory=dict)

    def d(self, k: int) -> tuple:
        return self.vectors[k]

    def node_series(self, i: int) -> tuple:
        """Departure epochs of node i (1-based) for k = 1..K."""
        return tuple(v[i - 1] for v in self.vectors[1:])

    def to_csv_text(self) -> str:
        lines = ["k,node,departure_epoch"]
        for k, vec in enumerate(self.vectors):
            for i, x in enumerate(vec, start=1):
                lines.append(f"{k},{i},{format_scalar(x)}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv_text())

    def write_metadata(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.metadata, fh, indent=2, sort_keys=True)
            fh.write("\n")


def history_vector(vectors, k: int, n: int) -> tuple:
    """d(k) honoring the k <= 0 conventions."""
    if k < 0:
        return (EPS,) * n
    return vectors[k]


def step(ct: CompiledTransition, history, tau_row) -> tuple:
    """One explicit step: d(k) = (+)_m T_m(k) (x) d(k-m).

    ``history[m-1]`` must be d(k-m).
    """
    mats = ct.transition_from_row(tau_row)
    acc = (EPS,) * ct.spec.n
    for t, past in zip(mats, history):
        acc = vec_oplus(acc, mat_vec(t, past))
    return acc


def step_implicit(routing: RoutingMatrices, history, tau_row) -> tuple:
    """One step through the implicit equation and its direct solver.

    Forms U = D G_0^T and v = D (x) (d(k-1) (+) (+)_m G_m^T d(k-m)),
    then solves x = U x (+) v.  Must agree with :func:`step` exactly.
    """
    n = routing.g0.order
    diag = MaxPlusMatrix.from_rows(
        [[tau_row[i] if i == j else EPS for j in range(n)]
         for i in range(n)])
    w = tuple(history[0])
    for m in range(1, routing.memory_depth + 1):
        w = vec_oplus(w, mat_vec(routing.matrices[m].transpose(),
                                 history[m - 1]))
    v = mat_vec(diag, w)
    u = diag.otimes(routing.g0.transpose())
    return solve_implicit(u, v)


def _run_implicit(spec: NetworkSpec, routing: RoutingMatrices,
                  table: ServiceTimeTable, K: int) -> list:
    """Sparse substitution along the zero-buffer topological order."""
    n = spec.n
    preds = [tuple(j - 1 for j in spec.preds(i))
             for i in range(1, n + 1)]
    r = list(spec.initial_buffer)
    order = [i for i in routing.topo_order]
    eps_vec = [EPS] * n
    vectors = [(0,) * n]
    for k in range(1, K + 1):
        tau = table.row(k)
        prev = vectors[k - 1]
        d = [EPS] * n
        for i in order:
            ri = r[i]
            if ri == INF:
                a = EPS
            else:
                if ri == 0:
                    src = d
                else:
                    kk = k - ri
                    src = vectors[kk] if kk >= 0 else eps_vec
                a = EPS
                for j in preds[i]:
                    x = src[j]
                    if x is not EPS and (a is EPS or x > a):
                        a = x
            best = prev[i]
            if a is not EPS and (best is EPS or a > best):
                best = a
            d[i] = EPS if best is EPS else tau[i] + best
        vectors.append(tuple(d))
    return vectors


def _run_explicit(spec, ct, table, K) -> list:
    n = spec.n
    depth = ct.memory_depth
    vectors = [(0,) * n]
    for k in range(1, K + 1):
        history = [history_vector(vectors, k - m, n)
                   for m in range(1, depth + 1)]
        vectors.append(step(ct, history, table.row(k)))
    return vectors


def _run_extended(spec, ct, table, K) -> list:
    n = spec.n
    depth = ct.memory_depth
    state = tuple([0] * n + [EPS] * (n * (depth - 1)))
    vectors = [(0,) * n]
    for k in range(1, K + 1):
        state = mat_vec(ct.extended_from_row(table.row(k)), state)
        vectors.append(state[:n])
    return vectors


def run(spec: NetworkSpec, K: int, *, table: ServiceTimeTable = None,
        method: str = "implicit") -> DepartureTrace:
    """Produce the departure trace d(0)..d(K)."""
    if K < 0:
        raise ValueError("horizon must be >= 0")
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}; pick from {_METHODS}")
    validate(spec)
    ct = compile_network(spec)
    started = time.perf_counter()
    if K == 0:
        vectors = [(0,) * spec.n]
        backend = "int"
    else:
        if table is None:
            table = realize_service(spec, K)
        backend = "int" if table.is_integral() else "float"
        if method == "implicit":
            vectors = _run_implicit(spec, ct.routing, table, K)
        elif method == "explicit":
            vectors = _run_explicit(spec, ct, table, K)
        else:
            vectors = _run_extended(spec, ct, table, K)
    elapsed = time.perf_counter() - started
    meta = {
        "spec": spec.name,
        "K": K,
        "backend": backend,
        "method": method,
        "engine": "recursion",
        "seeds": _collect_seeds(spec),
        "wall_time_s": elapsed,
    }
    return DepartureTrace(spec_name=spec.name, n=spec.n, horizon=K,
                          vectors=vectors, metadata=meta)


def _collect_seeds(spec: NetworkSpec) -> dict:
    seeds = {}
    for i in range(1, spec.n + 1):
        src = spec.service[i - 1]
        while hasattr(src, "base"):
            src = src.base
        if hasattr(src, "seed"):
            seeds[str(i)] = src.seed
    return seeds


@dataclass(frozen=True)
class TraceComparison:
    equal: bool
    max_abs_diff: float
    first_mismatch: tuple  # (k, node) or None


def compare_traces(a: DepartureTrace, b: DepartureTrace,
                   tol: float = 0.0) -> TraceComparison:
    """Diff two traces cell by cell; EPS only matches EPS."""
    if a.n != b.n or a.horizon != b.horizon:
        return TraceComparison(False, float("inf"), (0, 0))
    worst = 0.0
    first = None
    for k in range(a.horizon + 1):
        for i in range(1, a.n + 1):
            x, y = a.vectors[k][i - 1], b.vectors[k][i - 1]
            if (x is EPS) != (y is EPS):
                return TraceComparison(False, float("inf"), (k, i))
            if x is EPS:
                continue
            diff = abs(x - y)
            if diff > worst:
                worst = diff
            if diff > tol and first is None:
                first = (k, i)
    return TraceComparison(first is None, worst, first)
