"""Independent discrete-event simulation of the same networks.

This module is the ground truth the algebraic recursion is checked
against, so it deliberately shares no max-plus machinery: it is a plain
priority-queue event loop over counters.  Joins and forks are
instantaneous; service times are strictly positive, so no completion can
trigger another completion at the same epoch and simultaneous events
commute.  Ties are still broken deterministically (time, zero-buffer
topological rank, insertion order).
"""

from __future__ import annotations

import heapq
import itertools

from .engine import DepartureTrace
from .network import (INF, NetworkSpec, ServiceTimeSource, ServiceTimeTable,
                      validate)
from .semiring import EPS


def _zero_buffer_topo_rank(spec: NetworkSpec) -> dict:
    """Topological rank over arcs whose target has an empty buffer.

    Plain Kahn over adjacency lists; nodes inside a zero-buffer cycle
    (which the compiler would reject) get ranked after the rest, which
    keeps the tie-break total either way.
    """
    n = spec.n
    indeg = {i: 0 for i in range(1, n + 1)}
    succs = {i: [] for i in range(1, n + 1)}
    for i, j in spec.arcs:
        if spec.r(j) == 0:
            succs[i].append(j)
            indeg[j] += 1
    ready = sorted(i for i in indeg if indeg[i] == 0)
    rank = {}
    while ready:
        u = ready.pop(0)
        rank[u] = len(rank)
        for w in sorted(succs[u]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    for i in range(1, n + 1):
        rank.setdefault(i, len(rank))
    return rank


def simulate(spec: NetworkSpec, table: ServiceTimeTable,
             K: int) -> DepartureTrace:
    """Epochs of the first K service completions at every node.

    Initial buffers hold already-joined customers; a source node (no
    predecessors) serves an inexhaustible backlog.  Each node stops
    after its K-th completion.
    """
    validate(spec)
    n = spec.n
    if table.n != n or table.horizon < K:
        raise ValueError("service table does not cover the horizon")
    rank = _zero_buffer_topo_rank(spec)
    seq = itertools.count()

    staging = {i: {j: 0 for j in spec.preds(i)} for i in range(1, n + 1)}
    buffered = {i: (INF if spec.r(i) == INF else spec.r(i))
                for i in range(1, n + 1)}
    started = {i: 0 for i in range(1, n + 1)}
    busy = {i: False for i in range(1, n + 1)}
    departures = {i: [] for i in range(1, n + 1)}

    events = []  # (time, rank, seq, node)

    def try_start(i, now):
        if busy[i] or started[i] >= K or buffered[i] < 1:
            return
        buffered[i] -= 1
        started[i] += 1
        busy[i] = True
        heapq.heappush(events,
                       (now + table.tau(i, started[i]), rank[i],
                        next(seq), i))

    for i in range(1, n + 1):
        try_start(i, 0)

    while events:
        now, _, _, i = heapq.heappop(events)
        departures[i].append(now)
        busy[i] = False
        # fork: one copy per successor, delivered instantly
        for j in spec.succs(i):
            staging[j][i] += 1
            # join: fires while every predecessor stage is nonempty
            while all(c > 0 for c in staging[j].values()):
                for p in staging[j]:
                    staging[j][p] -= 1
                buffered[j] += 1
            try_start(j, now)
        try_start(i, now)

    vectors = [(0,) * n]
    for k in range(1, K + 1):
        vectors.append(tuple(
            departures[i][k - 1] if len(departures[i]) >= k else EPS
            for i in range(1, n + 1)))
    meta = {"spec": spec.name, "K": K, "engine": "des-oracle"}
    return DepartureTrace(spec_name=spec.name, n=n, horizon=K,
                          vectors=vectors, metadata=meta)


def simulate_round_routing(l: int, source: ServiceTimeSource,
                           branch_service, K: int) -> DepartureTrace:
    """Simulate the original round-routing system directly.

    A single dispatcher queue with an infinite backlog serves customers
    back to back and hands the m-th departure to branch ((m-1) mod l)+1;
    each branch is a plain FCFS single server.  Returns the branch
    departure epochs only (nodes 1..l).
    """
    if l < 2:
        raise ValueError("round routing needs at least 2 branches")
    if isinstance(branch_service, ServiceTimeSource):
        branch_service = [branch_service] * l
    branch_service = list(branch_service)
    if len(branch_service) != l:
        raise ValueError(f"expected {l} branch services")

    # dispatcher departures, serial service of the backlog
    total = l * K
    clock = 0
    dispatched = []
    for m in range(1, total + 1):
        clock = clock + source.sample(m)
        dispatched.append(clock)

    vectors = [(0,) * l]
    series = []
    for j in range(1, l + 1):
        arrivals = dispatched[j - 1::l][:K]
        dep = []
        last = 0
        for k, arr in enumerate(arrivals, start=1):
            last = max(arr, last) + branch_service[j - 1].sample(k)
            dep.append(last)
        series.append(dep)
    for k in range(1, K + 1):
        vectors.append(tuple(series[j - 1][k - 1] for j in range(1, l + 1)))
    meta = {"spec": f"round-routing:{l}", "K": K,
            "engine": "round-routing-des"}
    return DepartureTrace(spec_name=f"round-routing:{l}", n=l, horizon=K,
                          vectors=vectors, metadata=meta)
