"""Shared generators and independent oracles for the test suite."""

import itertools

from maxplusnet import (EPS, INF, ExplicitSequence, MaxPlusMatrix,
                        NetworkSpec, Poly, build_fork_join, validate)


# ---------------------------------------------------------------------------
# random max-plus matrices


def random_scalar(rng, eps_p=0.4, lo=-9, hi=9):
    return EPS if rng.random() < eps_p else rng.randint(lo, hi)


def random_matrix(rng, n, eps_p=0.5, lo=-9, hi=9):
    return MaxPlusMatrix.from_rows(
        [[random_scalar(rng, eps_p, lo, hi) for _ in range(n)]
         for _ in range(n)])


def random_acyclic_matrix(rng, n, eps_p=0.5, lo=1, hi=9):
    """Acyclic support: DAG on a random node order, positive weights."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[EPS] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() >= eps_p:
                rows[perm[a]][perm[b]] = rng.randint(lo, hi)
    return MaxPlusMatrix.from_rows(rows)


def random_cyclic_matrix(rng, n, eps_p=0.6, lo=1, hi=9):
    """Random matrix forced to contain at least one directed cycle."""
    m = random_matrix(rng, n, eps_p, lo, hi)
    rows = [list(r) for r in m.rows]
    # plant a cycle through a random subset
    size = rng.randint(1, n)
    cyc = rng.sample(range(n), size)
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        rows[a][b] = rng.randint(lo, hi)
    return MaxPlusMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# brute-force graph oracles


def brute_force_path_exists(mat, i, j, q):
    """Enumerate all node sequences of length q from i to j."""
    n = mat.order
    arcs = {(a, b) for a in range(n) for b in range(n)
            if mat.rows[a][b] is not EPS}
    if q == 0:
        return i == j
    for mid in itertools.product(range(n), repeat=q - 1):
        seq = (i,) + mid + (j,)
        if all((a, b) in arcs for a, b in zip(seq, seq[1:])):
            return True
    return False


def brute_force_longest_path(mat):
    """Longest arc count over all simple paths; None when cyclic."""
    n = mat.order
    arcs = {(a, b) for a in range(n) for b in range(n)
            if mat.rows[a][b] is not EPS}
    best = 0
    for length in range(1, n):
        found = False
        for seq in itertools.permutations(range(n), length + 1):
            if all((a, b) in arcs for a, b in zip(seq, seq[1:])):
                best = length
                found = True
                break
        if not found:
            break
    # cyclic iff some node reaches itself
    for start in range(n):
        frontier = {b for a, b in arcs if a == start}
        seen = set()
        while frontier:
            node = frontier.pop()
            if node == start:
                return None
            if node in seen:
                continue
            seen.add(node)
            frontier |= {b for a, b in arcs if a == node}
    return best


def assert_valid_cycle_witness(mat, witness):
    assert len(witness) >= 2
    assert witness[0] == witness[-1]
    for a, b in zip(witness, witness[1:]):
        assert mat.rows[a][b] is not EPS


# ---------------------------------------------------------------------------
# random fork-join networks


def random_network(rng, n=None, max_n=8, max_r=3, K=60, name=None):
    """Random valid fork-join network with an acyclic zero-buffer graph.

    Node 1 is the single external source.  Zero-buffer arcs only point
    forward in node order, which keeps the zero-buffer graph acyclic by
    construction; delayed arcs may point anywhere (including backward).
    Service times are frozen integer sequences in 1..10.
    """
    if n is None:
        n = rng.randint(3, max_n)
    buffers = [INF]
    for _ in range(n - 1):
        buffers.append(rng.choice([0, 0, 0] + list(range(1, max_r + 1))))
    arcs = set()
    for i in range(2, n + 1):
        if buffers[i - 1] == 0:
            cands = list(range(1, i))
        else:
            cands = [j for j in range(1, n + 1) if j != i]
        want = rng.randint(1, min(2, len(cands)))
        for j in rng.sample(cands, want):
            arcs.add((j, i))
    service = [ExplicitSequence(tuple(rng.randint(1, 10) for _ in range(K)),
                                "wrap")
               for _ in range(n)]
    return build_fork_join(name or f"random-{rng.random():.6f}", n, arcs,
                           buffers, service)


# ---------------------------------------------------------------------------
# departure-epoch reference for chains (independent of the DES code path)


def lindley_open_tandem(table, K):
    """Waiting-time recursion for a chain fed by a saturated source."""
    n = table.n
    prev = [0] * (n + 1)
    out = [tuple([0] * n)]
    for k in range(1, K + 1):
        cur = [0] * (n + 1)
        cur[1] = prev[1] + table.tau(1, k)
        for i in range(2, n + 1):
            cur[i] = max(cur[i - 1], prev[i]) + table.tau(i, k)
        out.append(tuple(cur[1:]))
        prev = cur
    return out


# ---------------------------------------------------------------------------
# symbolic expectations


def mono(*nodes):
    """Single-monomial polynomial t_a*t_b*..."""
    return Poly(frozenset({tuple(sorted(nodes))}))


def expected_open_tandem_symbolic(n):
    rows = [[EPS] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            rows[i - 1][j - 1] = mono(*range(j, i + 1))
    return MaxPlusMatrix.from_rows(rows)


def expected_reference_symbolic():
    """Hand-computed transition matrix of the 5-node reference network."""
    e = EPS
    return MaxPlusMatrix.from_rows([
        [mono(1), e, e, e, e],
        [mono(1, 2), mono(2, 3), mono(2, 3), e, e],
        [e, mono(3), mono(3), e, e],
        [mono(1, 2, 4), mono(2, 3, 4), mono(2, 3, 4), mono(4), e],
        [e, e, mono(5), mono(5), mono(5)],
    ])


def expected_round_robin3_symbolic():
    """Hand-computed transition matrix for the 3-branch round robin."""
    e = EPS
    return MaxPlusMatrix.from_rows([
        [mono(1), e, e, e, e, mono(1, 4)],
        [e, mono(2), e, e, e, mono(2, 4, 5)],
        [e, e, mono(3), e, e, mono(3, 4, 5, 6)],
        [e, e, e, e, e, mono(4)],
        [e, e, e, e, e, mono(4, 5)],
        [e, e, e, e, e, mono(4, 5, 6)],
    ])


def expected_closed_unit_symbolic(n):
    rows = [[EPS] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][i - 1] = mono(i)
        if i == 1:
            rows[0][n - 1] = mono(1)
        else:
            rows[i - 1][i - 2] = mono(i)
    return MaxPlusMatrix.from_rows(rows)
