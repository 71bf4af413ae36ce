"""Exact maximum flow, circulations with lower bounds, bipartite factors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MissingTerminals, NotBipartite
from .graphcore import Bipartition, Graph


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: Fraction
    capacity: Fraction


@dataclass
class FlowNetwork:
    node_count: int
    arcs: list[Arc] = field(default_factory=list)
    source: Optional[int] = None
    sink: Optional[int] = None

    def add_arc(self, tail: int, head: int, capacity, lower=0) -> int:
        lower, capacity = Fraction(lower), Fraction(capacity)
        if tail == head:
            raise ValueError(f"arc ({tail}, {head}) is a loop")
        if not (0 <= tail < self.node_count and 0 <= head < self.node_count):
            raise ValueError(f"arc ({tail}, {head}) has an endpoint out of range")
        if lower < 0 or lower > capacity:
            raise ValueError(f"arc ({tail}, {head}): need 0 <= lower <= capacity")
        self.arcs.append(Arc(tail, head, lower, capacity))
        return len(self.arcs) - 1

    def excess(self, flow: Sequence[Fraction], v: int) -> Fraction:
        """Outflow minus inflow at ``v``."""
        x = Fraction(0)
        for a, f in zip(self.arcs, flow):
            if a.tail == v:
                x += f
            if a.head == v:
                x -= f
        return x

    def cut_capacity(self, side) -> Fraction:
        """Capacity of the out-cut of ``side``."""
        side = set(side)
        return sum(
            (a.capacity for a in self.arcs if a.tail in side and a.head not in side),
            Fraction(0),
        )

    def capacity_between(self, src, dst) -> Fraction:
        src, dst = set(src), set(dst)
        return sum((a.capacity for a in self.arcs if a.tail in src and a.head in dst), Fraction(0))

    def lower_between(self, src, dst) -> Fraction:
        src, dst = set(src), set(dst)
        return sum((a.lower for a in self.arcs if a.tail in src and a.head in dst), Fraction(0))


@dataclass
class MaxFlowResult:
    value: Fraction
    flow: list[Fraction]
    cut_side: frozenset[int]


def max_flow(net: FlowNetwork) -> MaxFlowResult:
    """Shortest augmenting paths (Edmonds-Karp) over exact rationals.

    ``cut_side`` is the set of nodes reachable from the source in the final
    residual network; its out-cut capacity equals the flow value.
    """
    if net.source is None or net.sink is None:
        raise MissingTerminals("max_flow needs both a source and a sink")
    if any(a.lower for a in net.arcs):
        raise ValueError("max_flow expects zero lower bounds; use feasible_circulation")
    s, t = net.source, net.sink
    out: list[list[int]] = [[] for _ in range(net.node_count)]
    inc: list[list[int]] = [[] for _ in range(net.node_count)]
    for k, a in enumerate(net.arcs):
        out[a.tail].append(k)
        inc[a.head].append(k)
    flow = [Fraction(0)] * len(net.arcs)
    value = Fraction(0)

    def bfs():
        # parent[v] = (arc index, +1 forward / -1 backward)
        parent: dict[int, tuple[int, int]] = {s: (-1, 0)}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for k in out[u]:
                a = net.arcs[k]
                if a.head not in parent and flow[k] < a.capacity:
                    parent[a.head] = (k, 1)
                    queue.append(a.head)
            for k in inc[u]:
                a = net.arcs[k]
                if a.tail not in parent and flow[k] > 0:
                    parent[a.tail] = (k, -1)
                    queue.append(a.tail)
        return parent

    while True:
        parent = bfs()
        if t not in parent or s == t:
            break
        path = []
        v = t
        delta = None
        while v != s:
            k, d = parent[v]
            a = net.arcs[k]
            room = a.capacity - flow[k] if d > 0 else flow[k]
            delta = room if delta is None else min(delta, room)
            path.append((k, d))
            v = a.tail if d > 0 else a.head
        for k, d in path:
            flow[k] += delta * d
        value += delta
    return MaxFlowResult(value, flow, frozenset(parent))


@dataclass
class CirculationResult:
    feasible: bool
    flow: Optional[list[Fraction]] = None
    violating_set: Optional[frozenset[int]] = None


def feasible_circulation(net: FlowNetwork) -> CirculationResult:
    """Feasible circulation, or a set ``R`` with ``c(V-R, R) < l(R, V-R)``.

    Lower bounds are moved into node supplies and absorbed by a super source
    and super sink; the circulation exists iff the auxiliary max flow
    saturates every supply arc.
    """
    n = net.node_count
    S, T = n, n + 1
    aux = FlowNetwork(n + 2, source=S, sink=T)
    supply = [Fraction(0)] * n
    for a in net.arcs:
        aux.add_arc(a.tail, a.head, a.capacity - a.lower)
        supply[a.head] += a.lower
        supply[a.tail] -= a.lower
    need = Fraction(0)
    for v in range(n):
        if supply[v] > 0:
            aux.add_arc(S, v, supply[v])
            need += supply[v]
        elif supply[v] < 0:
            aux.add_arc(v, T, -supply[v])
    res = max_flow(aux)
    if res.value == need:
        flow = [res.flow[k] + a.lower for k, a in enumerate(net.arcs)]
        return CirculationResult(True, flow=flow)
    reach = {v for v in res.cut_side if v < n}
    r_set = frozenset(v for v in range(n) if v not in reach)
    assert net.capacity_between(reach, r_set) < net.lower_between(r_set, reach)
    return CirculationResult(False, violating_set=r_set)


# -- bipartite factors -------------------------------------------------------


def bipartite_network(
    g: Graph,
    bip: Bipartition,
    source_caps: Sequence,
    middle_cap,
    sink_caps: Sequence,
    lower_ends=0,
) -> tuple[FlowNetwork, list[int]]:
    """Source -> side A -> side B -> sink network over ``g``'s edges.

    Vertex ``v`` keeps index ``v``; the source is ``n`` and the sink
    ``n + 1``.  ``source_caps``/``sink_caps`` are indexed by vertex.
    Returns the network and, per edge of ``g``, the index of its arc.
    """
    n = g.n
    net = FlowNetwork(n + 2, source=n, sink=n + 1)
    for a in bip.sorted_a():
        net.add_arc(n, a, source_caps[a], lower_ends)
    edge_arc = []
    for u, v in g.edges:
        a, b = (u, v) if u in bip.side_a else (v, u)
        edge_arc.append(net.add_arc(a, b, middle_cap))
    for b in bip.sorted_b():
        net.add_arc(b, n + 1, sink_caps[b], lower_ends)
    return net, edge_arc


def _check_bipartition(g: Graph, bip: Bipartition) -> None:
    if bip is None or not bip.is_valid_for(g):
        raise NotBipartite("the given bipartition is not valid for this graph")


@dataclass
class FactorResult:
    exists: bool
    edges: Optional[list[int]] = None
    violation: Optional[tuple[frozenset[int], frozenset[int]]] = None

    def __bool__(self):
        return self.exists


def f_factor_exists(g: Graph, bip: Bipartition, f: Sequence[int]) -> FactorResult:
    """Decide whether the bipartite graph has a spanning subgraph with degrees ``f``.

    On failure, ``violation`` is ``(X, Y)`` with ``X`` in side A and ``Y`` in
    side B such that ``sum f(X) > e(X, Y) + sum f(B - Y)``; it is ``None``
    when the two sides have different ``f`` totals.
    """
    _check_bipartition(g, bip)
    if len(f) != g.n or any(int(x) != x or x < 0 for x in f):
        raise ValueError("f must give a non-negative integer per vertex")
    total_a = sum(f[a] for a in bip.side_a)
    if total_a != sum(f[b] for b in bip.side_b):
        return FactorResult(False)
    net, edge_arc = bipartite_network(g, bip, f, 1, f)
    res = max_flow(net)
    if res.value == total_a:
        return FactorResult(True, edges=[i for i, k in enumerate(edge_arc) if res.flow[k] == 1])
    x = frozenset(a for a in bip.side_a if a in res.cut_side)
    y = frozenset(b for b in bip.side_b if b not in res.cut_side)
    return FactorResult(False, violation=(x, y))


def max_k_factor(g: Graph, bip: Bipartition) -> int:
    """Largest ``k`` such that ``g`` has a ``k``-regular spanning subgraph."""
    _check_bipartition(g, bip)
    k = 0
    while k < g.min_degree() and f_factor_exists(g, bip, [k + 1] * g.n):
        k += 1
    return k


def bipartite_matching(g: Graph, bip: Bipartition) -> list[int]:
    """Edge indices of a maximum matching."""
    _check_bipartition(g, bip)
    ones = [1] * g.n
    net, edge_arc = bipartite_network(g, bip, ones, 1, ones)
    res = max_flow(net)
    return [i for i, k in enumerate(edge_arc) if res.flow[k] == 1]


def has_perfect_matching_bipartite(g: Graph, bip: Bipartition) -> bool:
    return 2 * len(bipartite_matching(g, bip)) == g.n


def hall_violator(g: Graph, bip: Bipartition) -> Optional[frozenset[int]]:
    """A set ``Y`` in side B with ``|N(Y)| < |Y|``, or ``None`` if Hall holds for B."""
    _check_bipartition(g, bip)
    flipped = bip.swapped()
    ones = [1] * g.n
    net, _ = bipartite_network(g, flipped, ones, g.n + 1, ones)
    res = max_flow(net)
    if res.value == len(bip.side_b):
        return None
    return frozenset(b for b in bip.side_b if b in res.cut_side)
