"""Undirected simple graphs with stable edge indices.

Vertices are the integers ``0..n-1``; edge ``i`` is the ``i``-th pair of
``Graph.edges`` and stays that way for the life of the value, so an edge
vector (a list indexed by edge) is always meaningful.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateEdge,
    EndpointOutOfRange,
    GraphError,
    OddOrder,
    SelfLoop,
    SizeCapExceeded,
)

ODD_CUT_CAP = 20


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbor, edge index)`` pairs sorted by neighbor."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def incident_edges(self, v: int) -> list[int]:
        return [i for _, i in self.adjacency[v]]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def subgraph_without(self, removed: Iterable[int]) -> "Graph":
        """Spanning subgraph with the given edge indices deleted (indices renumbered)."""
        gone = set(removed)
        kept = [e for i, e in enumerate(self.edges) if i not in gone]
        return Graph(self.n, tuple(kept), self.labels)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w, _ in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def build_graph(
    n: int,
    edge_pairs: Iterable[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for pair in edge_pairs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")
    return Graph(n, tuple(edges), labels)


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]
    side_b: frozenset[int]

    def sorted_a(self) -> list[int]:
        return sorted(self.side_a)

    def sorted_b(self) -> list[int]:
        return sorted(self.side_b)

    def swapped(self) -> "Bipartition":
        return Bipartition(self.side_b, self.side_a)

    def is_valid_for(self, g: Graph) -> bool:
        if self.side_a & self.side_b or (self.side_a | self.side_b) != set(range(g.n)):
            return False
        return all((u in self.side_a) != (v in self.side_a) for u, v in g.edges)


def bipartition(g: Graph) -> Optional[Bipartition]:
    """Breadth-first 2-colouring; ``None`` if the graph has an odd cycle.

    Each component's lowest-index vertex goes to ``side_a``.
    """
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w, _ in g.adjacency[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    b = frozenset(v for v in range(g.n) if color[v] == 1)
    return Bipartition(a, b)


@dataclass(frozen=True)
class EdgeCut:
    x_side: frozenset[int]
    edge_indices: tuple[int, ...]


def cut_edges(g: Graph, x_side: Iterable[int]) -> tuple[int, ...]:
    xs = set(x_side)
    return tuple(i for i, (u, v) in enumerate(g.edges) if (u in xs) != (v in xs))


def enumerate_nontrivial_odd_cuts(g: Graph, cap: int = ODD_CUT_CAP) -> list[EdgeCut]:
    """All cuts with both shores odd and of size at least 3.

    Each unordered pair ``{X, V-X}`` is listed once, represented by the shore
    containing vertex 0.  Order: by shore size, then lexicographically.
    """
    n = g.n
    if n % 2:
        raise OddOrder(f"odd cuts need an even vertex count, got {n}")
    if n > cap:
        raise SizeCapExceeded(f"odd-cut enumeration capped at n <= {cap}, got {n}")
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    cuts = []
    for size in range(3, n - 2, 2):
        for rest in itertools.combinations(range(1, n), size - 1):
            xmask = 1
            for v in rest:
                xmask |= 1 << v
            idx = tuple(i for i, em in enumerate(masks) if bin(em & xmask).count("1") == 1)
            cuts.append(EdgeCut(frozenset((0,) + rest), idx))
    return cuts


def incidence_matrix(g: Graph) -> list[list[int]]:
    """Vertex-by-edge 0/1 incidence matrix."""
    rows = [[0] * g.m for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        rows[u][i] = 1
        rows[v][i] = 1
    return rows


def cartesian_product(g: Graph, h: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Cartesian product ``g □ h`` and the map from vertex index to ``(u, v)``.

    Vertex ``(u, v)`` gets index ``v * g.n + u``.  Edges: first the copies of
    ``g`` (one block per vertex of ``h``), then the copies of each edge of
    ``h`` (one block per edge, inner loop over vertices of ``g``), so the
    incidence matrix is ``[I_p ⊗ M_g | M_h ⊗ I_n]``.
    """
    n = g.n
    edges = []
    for v in range(h.n):
        for a, b in g.edges:
            edges.append((v * n + a, v * n + b))
    for x, y in h.edges:
        for u in range(n):
            edges.append((x * n + u, y * n + u))
    pairs = [(idx % n, idx // n) if n else (0, 0) for idx in range(n * h.n)]
    return build_graph(n * h.n, edges), pairs


def format_edgelist(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    n = m = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p" and len(parts) == 3 and n is None:
            n, m = int(parts[1]), int(parts[2])
        elif parts[0] == "e" and len(parts) == 3 and n is not None:
            pairs.append((int(parts[1]), int(parts[2])))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    if n is None:
        raise GraphError("missing 'p <n> <m>' header")
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def read_graph(path: str | Path) -> Graph:
    return parse_edgelist(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edgelist(g))
