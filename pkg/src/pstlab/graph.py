"""Graphs underlying spin networks.

Weighted undirected simple graphs, the families used throughout the package
(paths, Cartesian products, one- and two-link hypercubes, scrambled
hypercubes), and the column decomposition that collapses a column-regular
graph onto a modulated chain.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .exceptions import (
    DomainError,
    InvalidSizeError,
    NotColumnRegularError,
    UnsupportedBaseError,
    UnsupportedWeightsError,
)

__all__ = [
    "Graph",
    "ColumnDecomposition",
    "path",
    "cartesian_product",
    "hypercube",
    "column_decompose",
    "scrambled_hypercube",
    "collapse_to_chain",
    "graph_to_json",
    "graph_from_json",
]


@dataclass(frozen=True)
class Graph:
    """Weighted undirected simple graph on vertices ``0..n-1``.

    Edges are stored canonically as lexicographically sorted ``(i, j, w)``
    triples with ``i < j``; instances are immutable and safe to share.

    Parameters
    ----------
    n : int
        Number of vertices (must be positive).
    edges : iterable
        Edges as ``(i, j)`` pairs (weight 1) or ``(i, j, w)`` triples.
    """

    n: int
    edges: tuple = ()
    connected: bool = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSizeError(f"graph needs at least one vertex, got n={self.n}")
        canonical = []
        seen = set()
        for e in self.edges:
            if len(e) == 2:
                i, j, w = int(e[0]), int(e[1]), 1.0
            else:
                i, j, w = int(e[0]), int(e[1]), float(e[2])
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise DomainError(f"edge ({i},{j}) out of range for n={self.n}")
            if i == j:
                raise DomainError(f"self-loop at vertex {i}")
            if not math.isfinite(w) or w == 0.0:
                raise DomainError(f"edge ({i},{j}) has invalid weight {w}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise DomainError(f"duplicate edge {key}")
            seen.add(key)
            canonical.append((key[0], key[1], w))
        canonical.sort()
        object.__setattr__(self, "edges", tuple(canonical))
        object.__setattr__(self, "connected", self._bfs_connected())

    def _bfs_connected(self) -> bool:
        if self.n == 1:
            return True
        adj = self.neighbors()
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.n

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[int]]:
        """Adjacency lists, freshly built."""
        adj = [[] for _ in range(self.n)]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for i, j, _ in self.edges if v in (i, j))

    def weight(self, i: int, j: int) -> float:
        """Weight of edge (i, j), or 0.0 if absent."""
        key = (min(i, j), max(i, j))
        for a, b, w in self.edges:
            if (a, b) == key:
                return w
        return 0.0

    def adjacency(self) -> np.ndarray:
        """Dense weighted adjacency matrix (real symmetric)."""
        a = np.zeros((self.n, self.n))
        for i, j, w in self.edges:
            a[i, j] = w
            a[j, i] = w
        return a


@dataclass(frozen=True)
class ColumnDecomposition:
    """Partition of a graph's vertices into columns with uniform degrees.

    Columns are breadth-first distance classes from a root vertex.  Edges run
    only between adjacent columns; every vertex in column ``i`` has exactly
    ``r[i]`` forward and ``s[i]`` backward edges.  ``b[i]`` is the column
    occupation.  Indices here are 0-based (column 0 holds the root).
    """

    columns: tuple
    b: tuple
    r: tuple
    s: tuple

    def __post_init__(self):
        for i in range(len(self.b) - 1):
            if self.b[i] * self.r[i] != self.b[i + 1] * self.s[i + 1]:
                raise NotColumnRegularError(
                    f"edge-count mismatch between columns {i} and {i + 1}: "
                    f"{self.b[i]}*{self.r[i]} != {self.b[i + 1]}*{self.s[i + 1]}"
                )

    @property
    def num_columns(self) -> int:
        return len(self.columns)

    def column_state(self, i: int, n: int) -> np.ndarray:
        """Normalized uniform superposition over column ``i`` as a length-n vector."""
        v = np.zeros(n)
        members = self.columns[i]
        v[list(members)] = 1.0 / math.sqrt(len(members))
        return v


def path(n: int) -> Graph:
    """Unweighted path on ``n`` vertices: edges (i, i+1) with weight 1."""
    if n < 1:
        raise InvalidSizeError(f"path needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product of two graphs.

    Vertex ``(a, b)`` maps to index ``a * h.n + b`` (row-major over factor
    indices), so the corners ``(0, 0)`` and ``(g.n-1, h.n-1)`` are the first
    and last vertex.  ``(a, b) ~ (a', b')`` iff one coordinate matches and the
    other pair is an edge of its factor; the edge inherits the factor weight.
    The adjacency matrix satisfies ``A(GxH) = A(G) (x) I + I (x) A(H)``.
    """
    edges = []
    for i, j, w in g.edges:
        for b in range(h.n):
            edges.append((i * h.n + b, j * h.n + b, w))
    for i, j, w in h.edges:
        for a in range(g.n):
            edges.append((a * h.n + i, a * h.n + j, w))
    return Graph(g.n * h.n, tuple(edges))


def hypercube(links: int, d: int) -> Graph:
    """d-fold Cartesian product of the (links+1)-vertex path.

    ``links=1`` gives the ordinary binary hypercube, ``links=2`` the
    three-vertex-chain hypercube.  Antipodal corners are vertex 0 and vertex
    ``(links+1)**d - 1``.
    """
    if links not in (1, 2):
        raise UnsupportedBaseError(f"hypercube base must have 1 or 2 links, got {links}")
    if d < 1:
        raise InvalidSizeError(f"hypercube needs d >= 1, got {d}")
    base = path(links + 1)
    g = base
    for _ in range(d - 1):
        g = cartesian_product(g, base)
    return g


def column_decompose(g: Graph, a: int) -> ColumnDecomposition:
    """Decompose ``g`` into BFS distance classes from ``a``.

    Succeeds iff the column-regularity conditions hold: no intra-column
    edges and uniform forward/backward edge counts within each column.
    Counts are exact integers; there is no tolerance.
    """
    if not (0 <= a < g.n):
        raise DomainError(f"vertex {a} out of range")
    if not g.connected:
        raise DomainError("column decomposition requires a connected graph")

    adj = g.neighbors()
    dist = [-1] * g.n
    dist[a] = 0
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    n_cols = max(dist) + 1
    columns = [tuple(sorted(v for v in range(g.n) if dist[v] == i)) for i in range(n_cols)]

    forward = [0] * g.n
    backward = [0] * g.n
    for i, j, _ in g.edges:
        if dist[i] == dist[j]:
            raise NotColumnRegularError(
                f"intra-column edge ({i},{j}) in column {dist[i]}"
            )
        lo, hi = (i, j) if dist[i] < dist[j] else (j, i)
        forward[lo] += 1
        backward[hi] += 1

    r, s = [], []
    for ci, members in enumerate(columns):
        fw = {forward[v] for v in members}
        bw = {backward[v] for v in members}
        if len(fw) != 1:
            bad = max(members, key=lambda v: forward[v])
            raise NotColumnRegularError(
                f"nonuniform forward degree in column {ci} (vertex {bad})"
            )
        if len(bw) != 1:
            bad = max(members, key=lambda v: backward[v])
            raise NotColumnRegularError(
                f"nonuniform backward degree in column {ci} (vertex {bad})"
            )
        r.append(fw.pop())
        s.append(bw.pop())

    return ColumnDecomposition(
        columns=tuple(columns),
        b=tuple(len(c) for c in columns),
        r=tuple(r),
        s=tuple(s),
    )


def scrambled_hypercube(n_c: int, seed) -> Graph:
    """Random column-regular graph with hypercube column occupations.

    Columns ``i = 1..n_c`` (1-based) have ``b_i = C(n_c-1, i-1)`` vertices;
    each vertex in column ``i`` has ``n_c - i`` forward and ``i - 1`` backward
    edges.  Between consecutive columns a uniformly random biregular pairing
    is drawn by the configuration model and redrawn until simple.
    Deterministic under a fixed seed.
    """
    if n_c < 2:
        raise InvalidSizeError(f"scrambled hypercube needs n_c >= 2, got {n_c}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    b = [comb(n_c - 1, i) for i in range(n_c)]
    offsets = np.concatenate(([0], np.cumsum(b)))
    edges = []
    for col in range(n_c - 1):
        r_i = n_c - 1 - col          # forward degree of column col (0-based)
        s_next = col + 1             # backward degree of column col+1
        left = np.repeat(np.arange(b[col]), r_i)
        right = np.repeat(np.arange(b[col + 1]), s_next)
        for attempt in range(10000):
            perm = rng.permutation(right)
            pairs = set(zip(left.tolist(), perm.tolist()))
            if len(pairs) == left.size:
                break
        else:  # pragma: no cover - feasible degrees, rejection succeeds quickly
            raise RuntimeError("biregular pairing rejection sampling did not converge")
        for u, v in zip(left.tolist(), perm.tolist()):
            edges.append((int(offsets[col] + u), int(offsets[col + 1] + v)))
    return Graph(int(offsets[-1]), tuple(edges))


def collapse_to_chain(dec: ColumnDecomposition, g: Graph) -> tuple:
    """Couplings of the chain obtained by restricting ``g`` to its column space.

    For unit weights the coupling between columns i and i+1 is
    ``b_i*r_i / sqrt(b_i*b_{i+1}) = sqrt(r_i * s_{i+1})``, evaluated with
    integer arithmetic under the square root.  A uniform non-unit weight per
    column pair scales the coupling linearly; mixed weights inside one column
    pair are not supported.
    """
    col_of = {}
    for ci, members in enumerate(dec.columns):
        for v in members:
            col_of[v] = ci

    n_cols = dec.num_columns
    pair_weights = [set() for _ in range(n_cols - 1)]
    pair_counts = [0] * (n_cols - 1)
    for i, j, w in g.edges:
        lo = min(col_of[i], col_of[j])
        pair_weights[lo].add(w)
        pair_counts[lo] += 1

    couplings = []
    for i in range(n_cols - 1):
        if len(pair_weights[i]) > 1:
            raise UnsupportedWeightsError(
                f"mixed edge weights between columns {i} and {i + 1}: "
                f"{sorted(pair_weights[i])}"
            )
        if pair_counts[i] != dec.b[i] * dec.r[i]:
            raise NotColumnRegularError(
                f"decomposition does not match graph between columns {i} and {i + 1}"
            )
        w = pair_weights[i].pop() if pair_weights[i] else 1.0
        couplings.append(w * math.sqrt(dec.r[i] * dec.s[i + 1]))
    return tuple(couplings)


def graph_to_json(g: Graph) -> str:
    """Serialize to ``{"n": int, "edges": [[i, j, w], ...]}`` (edges lex-sorted)."""
    return json.dumps(
        {"n": g.n, "edges": [[i, j, w] for i, j, w in g.edges]},
        sort_keys=True,
    )


def graph_from_json(text: str) -> Graph:
    doc = json.loads(text)
    return Graph(int(doc["n"]), tuple(tuple(e) for e in doc["edges"]))
