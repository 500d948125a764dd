"""Deterministic graph builders for fixtures and benchmarks."""

import numpy as np

from .graph import preprocess


def complete_graph(k):
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    return preprocess(edges, name=f"K{k}")


def path_graph(n):
    edges = [(i, i + 1) for i in range(n - 1)]
    return preprocess(edges, name=f"path-{n}")


def grid_graph(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return preprocess(edges, name=f"grid-{rows}x{cols}")


def barabasi_albert(n, m0, seed):
    """Preferential-attachment graph: a clique on m0+1 seed nodes, then each
    new node attaches to m0 distinct existing nodes sampled proportionally
    to degree (sampling from the repeated-endpoints list with rejection)."""
    if n <= m0 + 1:
        raise ValueError(f"need n > m0+1, got n={n}, m0={m0}")
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(m0 + 1) for j in range(i + 1, m0 + 1)]
    repeated = [v for e in edges for v in e]
    for v in range(m0 + 1, n):
        targets = set()
        while len(targets) < m0:
            targets.add(repeated[rng.integers(len(repeated))])
        for u in sorted(targets):
            edges.append((u, v))
            repeated.append(u)
            repeated.append(v)
    return preprocess(edges, name=f"ba-{n}-{m0}-{seed}")


def random_connected_graph(n, p, seed):
    """Erdos-Renyi G(n, p) edges plus a random spanning tree so the result
    is connected without preprocessing dropping nodes."""
    rng = np.random.default_rng(seed)
    edges = []
    perm = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(i))
        edges.append((int(perm[j]), int(perm[i])))
    mask = rng.random((n, n)) < p
    for i in range(n):
        for j in range(i + 1, n):
            if mask[i, j]:
                edges.append((i, j))
    return preprocess(edges, name=f"rand-{n}-{seed}")
