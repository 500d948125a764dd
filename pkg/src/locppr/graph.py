"""Immutable undirected simple graphs in compressed sparse row form.

Loading keeps the raw edge multiset as read; preprocessing drops self-loops,
symmetrizes, deduplicates, keeps the largest connected component, and relabels
the survivors to a dense 0..n-1 range by ascending original id.
"""

import io
import struct
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import DegenerateGraphError, EmptyInputError, InputError, ParseError

CACHE_MAGIC = b"LPPR1"


@dataclass
class RawEdges:
    """Edge pairs exactly as read: may hold duplicates, self-loops, both orientations."""

    edges: list
    weights_discarded: int = 0

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class Graph:
    """CSR adjacency of an undirected, connected, simple graph.

    offsets has length n+1; neighbors has length 2m with each row sorted
    ascending; degrees[v] = offsets[v+1] - offsets[v]. orig_ids maps the
    dense node id back to the id it carried in the input edge list.
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    degrees: np.ndarray
    orig_ids: np.ndarray
    name: str = "graph"
    sqrt_deg: np.ndarray = field(init=False, repr=False, compare=False)
    inv_sqrt_deg: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sq = np.sqrt(self.degrees.astype(np.float64))
        object.__setattr__(self, "sqrt_deg", sq)
        object.__setattr__(self, "inv_sqrt_deg", 1.0 / sq)

    def neighbors_of(self, v):
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def adjacency(self):
        """Adjacency as a scipy CSR matrix of unit weights."""
        data = np.ones(2 * self.m, dtype=np.float64)
        return sp.csr_matrix((data, self.neighbors, self.offsets), shape=(self.n, self.n))

    def edges(self):
        """Iterate each undirected edge once as (u, v) with u < v, in CSR order."""
        for u in range(self.n):
            for v in self.neighbors_of(u):
                if u < v:
                    yield int(u), int(v)


def load_edge_list(source):
    """Parse a SNAP-style edge list into RawEdges.

    source is a path, a file object, or a string of lines. Lines starting
    with '#' or '%' are comments; the first two whitespace-separated tokens
    of each remaining line are the endpoints and any extra tokens (weights)
    are discarded and counted.
    """
    if isinstance(source, str) and "\n" in source:
        lines = io.StringIO(source)
        close = False
    elif hasattr(source, "read"):
        lines = source
        close = False
    else:
        try:
            lines = open(source, "r")
        except OSError as e:
            raise InputError(f"cannot read edge list {source}: {e}") from e
        close = True
    edges = []
    weights_discarded = 0
    try:
        for lineno, line in enumerate(lines, start=1):
            stripped = line.strip()
            if not stripped or stripped[0] in "#%":
                continue
            tokens = stripped.split()
            if len(tokens) < 2:
                raise ParseError(f"line {lineno}: expected two integer tokens, got {stripped!r}")
            try:
                u = int(tokens[0])
                v = int(tokens[1])
            except ValueError as e:
                raise ParseError(f"line {lineno}: malformed integer token in {stripped!r}") from e
            if u < 0 or v < 0:
                raise ParseError(f"line {lineno}: negative node id in {stripped!r}")
            if len(tokens) > 2:
                weights_discarded += 1
            edges.append((u, v))
    finally:
        if close:
            lines.close()
    if not edges:
        raise EmptyInputError("edge list contains no edges")
    return RawEdges(edges=edges, weights_discarded=weights_discarded)


def preprocess(raw, name="graph"):
    """Build a Graph from RawEdges.

    Drops self-loops, symmetrizes, deduplicates, keeps the largest connected
    component (ties broken by the component holding the smallest original id),
    and relabels kept nodes to 0..n-1 by ascending original id.
    """
    if isinstance(raw, RawEdges):
        pairs = raw.edges
    else:
        pairs = list(raw)
    if not pairs:
        raise EmptyInputError("no edges to preprocess")
    e = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    e = e[e[:, 0] != e[:, 1]]
    if e.shape[0] == 0:
        raise DegenerateGraphError("no edges survive preprocessing")
    uids, compact = np.unique(e, return_inverse=True)
    compact = compact.reshape(-1, 2)
    k = uids.shape[0]
    both = np.concatenate([compact, compact[:, ::-1]])
    adj = sp.coo_matrix(
        (np.ones(both.shape[0], dtype=np.int8), (both[:, 0], both[:, 1])), shape=(k, k)
    ).tocsr()
    adj.sum_duplicates()
    n_comp, labels = connected_components(adj, directed=False)
    if n_comp == 1:
        keep_label = 0
    else:
        sizes = np.bincount(labels, minlength=n_comp)
        best = sizes.max()
        # among the largest components, take the one whose smallest original
        # id is smallest (uids is sorted, so the first node with a tied label wins)
        keep_label = -1
        for cid in labels:
            if sizes[cid] == best:
                keep_label = int(cid)
                break
    keep = np.flatnonzero(labels == keep_label)
    n = keep.shape[0]
    if n < 2:
        raise DegenerateGraphError("largest component has fewer than two nodes")
    sub = adj[keep][:, keep].tocsr()
    sub.sort_indices()
    sub.data[:] = 1
    offsets = sub.indptr.astype(np.int64)
    neighbors = sub.indices.astype(np.int64)
    degrees = np.diff(offsets)
    return Graph(
        n=n,
        m=int(neighbors.shape[0]) // 2,
        offsets=offsets,
        neighbors=neighbors,
        degrees=degrees,
        orig_ids=uids[keep],
        name=name,
    )


def volume(g, nodes):
    """Sum of degrees over a node set."""
    ids = np.asarray(list(nodes), dtype=np.int64)
    if ids.size == 0:
        return 0
    if ids.min() < 0 or ids.max() >= g.n:
        raise IndexError(f"node id out of range 0..{g.n - 1}")
    return int(g.degrees[ids].sum())


def validate(g):
    """Full invariant scan; raises AssertionError on any violation."""
    assert g.offsets[0] == 0 and g.offsets[-1] == 2 * g.m
    assert np.all(np.diff(g.offsets) >= 1), "isolated node"
    assert np.all(g.degrees == np.diff(g.offsets))
    assert int(g.degrees.sum()) == 2 * g.m
    for u in range(g.n):
        row = g.neighbors_of(u)
        assert np.all(np.diff(row) > 0), f"row {u} unsorted or duplicated"
        assert u not in row, f"self-loop at {u}"
        for v in row:
            back = g.neighbors_of(v)
            j = np.searchsorted(back, u)
            assert j < back.shape[0] and back[j] == u, f"asymmetry {u}-{v}"
    seen = np.zeros(g.n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in g.neighbors_of(u):
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    assert seen.all(), "graph not connected"
    return True


def write_cache(g, path):
    """Write the binary cache: magic LPPR1, u64 n, u64 m, offsets, neighbors (all little-endian)."""
    with open(path, "wb") as f:
        f.write(CACHE_MAGIC)
        f.write(struct.pack("<QQ", g.n, g.m))
        f.write(g.offsets.astype("<u8").tobytes())
        f.write(g.neighbors.astype("<u8").tobytes())


def read_cache(path, name="graph"):
    """Read a graph written by write_cache. orig_ids becomes the identity map."""
    with open(path, "rb") as f:
        magic = f.read(5)
        if magic != CACHE_MAGIC:
            raise InputError(f"{path}: bad magic {magic!r}, expected {CACHE_MAGIC!r}")
        head = f.read(16)
        if len(head) != 16:
            raise InputError(f"{path}: truncated cache file")
        n, m = struct.unpack("<QQ", head)
        off_bytes = f.read(8 * (n + 1))
        nbr_bytes = f.read(8 * 2 * m)
    if len(off_bytes) != 8 * (n + 1) or len(nbr_bytes) != 8 * 2 * m:
        raise InputError(f"{path}: truncated cache file")
    offsets = np.frombuffer(off_bytes, dtype="<u8").astype(np.int64)
    neighbors = np.frombuffer(nbr_bytes, dtype="<u8").astype(np.int64)
    return Graph(
        n=int(n),
        m=int(m),
        offsets=offsets,
        neighbors=neighbors,
        degrees=np.diff(offsets),
        orig_ids=np.arange(n, dtype=np.int64),
        name=name,
    )


def write_edge_list(g, path):
    """Write one 'u v' line per undirected edge, smaller endpoint first."""
    with open(path, "w") as f:
        for u, v in g.edges():
            f.write(f"{u} {v}\n")


def load_graph(path, name=None):
    """Load a binary cache or an edge-list file, preprocessing the latter."""
    import os.path
    if name is None:
        name = os.path.splitext(os.path.basename(str(path)))[0]
    with open(path, "rb") as f:
        magic = f.read(len(CACHE_MAGIC))
    if magic == CACHE_MAGIC:
        return read_cache(path, name=name)
    return preprocess(load_edge_list(path), name=name)
