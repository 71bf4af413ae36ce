"""Perfect matchings: enumeration, min-weight oracle, separation for the covering LP."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .errors import CapExceeded, NoPerfectMatching, NotRegularBipartite, OddOrder
from .flows import bipartite_matching
from .graphcore import Bipartition, Graph

MATCHING_CAP = 100_000


def iter_perfect_matchings(g: Graph) -> Iterator[tuple[int, ...]]:
    """Yield perfect matchings as tuples of edge indices (in choice order).

    The lowest-index unmatched vertex is matched to each free neighbour in
    index order.
    """
    if g.n % 2:
        raise OddOrder(f"perfect matchings need an even vertex count, got {g.n}")
    matched = [False] * g.n
    chosen: list[int] = []

    def rec(start):
        u = start
        while u < g.n and matched[u]:
            u += 1
        if u == g.n:
            yield tuple(chosen)
            return
        matched[u] = True
        for w, e in g.adjacency[u]:
            if not matched[w]:
                matched[w] = True
                chosen.append(e)
                yield from rec(u + 1)
                chosen.pop()
                matched[w] = False
        matched[u] = False

    yield from rec(0)


@dataclass(frozen=True)
class MatchingSet:
    graph: Graph
    matchings: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.matchings)

    def __iter__(self):
        return iter(self.matchings)

    def incidence_vectors(self) -> list[list[int]]:
        vecs = []
        for mt in self.matchings:
            q = [0] * self.graph.m
            for e in mt:
                q[e] = 1
            vecs.append(q)
        return vecs


def enumerate_perfect_matchings(g: Graph, cap: int = MATCHING_CAP) -> MatchingSet:
    """All perfect matchings, each as sorted edge indices, in lexicographic order."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    found = []
    for mt in iter_perfect_matchings(g):
        if len(found) >= cap:
            raise CapExceeded(f"more than {cap} perfect matchings", count=len(found))
        found.append(tuple(sorted(mt)))
    found.sort()
    return MatchingSet(g, tuple(found))


def has_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    return next(iter_perfect_matchings(g), None) is not None


def min_weight_perfect_matching(
    g: Graph, w: Sequence[Fraction], cap: int = MATCHING_CAP
) -> Optional[tuple[tuple[int, ...], Fraction]]:
    """Cheapest perfect matching under edge weights ``w``; ``None`` if there is none.

    Backed by enumeration.  Ties go to the lexicographically smallest sorted
    edge-index tuple.
    """
    if len(w) != g.m:
        raise ValueError(f"need one weight per edge ({g.m}), got {len(w)}")
    best = None
    count = 0
    for mt in iter_perfect_matchings(g):
        count += 1
        if count > cap:
            raise CapExceeded(f"more than {cap} perfect matchings", count=cap)
        key = (sum((w[e] for e in mt), Fraction(0)), tuple(sorted(mt)))
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[1], best[0]


MinWeightOracle = Callable[[Graph, Sequence[Fraction]], Optional[tuple[tuple[int, ...], Fraction]]]


@dataclass(frozen=True)
class Separation:
    """Outcome of the separation routine.

    ``inside`` is true when ``y`` satisfies every covering row.  Otherwise
    ``w`` is the normal of a violated valid inequality (``w·x >= 1`` for
    matching rows, ``w·x >= 0`` for a negative coordinate) and ``matching``
    the offending perfect matching, if any.
    """

    inside: bool
    w: Optional[tuple[Fraction, ...]] = None
    matching: Optional[tuple[int, ...]] = None


def separate_fmp(
    g: Graph, y: Sequence[Fraction], oracle: MinWeightOracle = min_weight_perfect_matching
) -> Separation:
    if len(y) != g.m:
        raise ValueError(f"need one value per edge ({g.m}), got {len(y)}")
    for f, val in enumerate(y):
        if val < 0:
            return Separation(False, tuple(Fraction(int(e == f)) for e in range(g.m)))
    found = oracle(g, y)
    if found is None:
        raise NoPerfectMatching("graph has no perfect matching")
    mt, weight = found
    if weight >= 1:
        return Separation(True)
    members = set(mt)
    return Separation(False, tuple(Fraction(int(e in members)) for e in range(g.m)), mt)


def pm_partition_regular_bipartite(g: Graph, bip: Bipartition) -> list[tuple[int, ...]]:
    """Split an ``r``-regular bipartite graph into ``r`` disjoint perfect matchings."""
    degs = set(g.degrees())
    if (
        bip is None
        or not bip.is_valid_for(g)
        or len(degs) != 1
        or 0 in degs
        or len(bip.side_a) != len(bip.side_b)
    ):
        raise NotRegularBipartite("need a bipartite r-regular graph with r >= 1")
    r = degs.pop()
    original = list(range(g.m))
    current = g
    parts = []
    for _ in range(r):
        mt = bipartite_matching(current, bip)
        if 2 * len(mt) != g.n:
            raise AssertionError("regular bipartite graph lost its perfect matching")
        parts.append(tuple(sorted(original[e] for e in mt)))
        gone = set(mt)
        original = [orig for e, orig in enumerate(original) if e not in gone]
        current = current.subgraph_without(mt)
    return parts
