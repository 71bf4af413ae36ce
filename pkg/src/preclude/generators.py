"""Deterministic graph families.

Random families draw from :class:`Lcg`, a 64-bit linear congruential
generator with fixed constants, so a ``(name, params, seed)`` triple always
produces the same edge list, on any platform and in any implementation that
follows the recipe below::

    state_0   = seed mod 2**64
    state_k+1 = (6364136223846793005 * state_k + 1442695040888963407) mod 2**64
    output    = state_k+1 >> 32                  (one 32-bit draw per step)
    below(n)  = first output < (2**32 // n) * n, reduced mod n

Permutations are Fisher-Yates from the last position down, drawing
``below(i + 1)`` for position ``i``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidSpec
from .graphcore import Graph, build_graph

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg:
    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u32(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & _MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 32) // n * n
        while True:
            x = self.next_u32()
            if x < limit:
                return x % n

    def permutation(self, n: int) -> list[int]:
        p = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            p[i], p[j] = p[j], p[i]
        return p


def gk_partition(k: int) -> dict[str, list[int]]:
    """Vertex indices of the four classes of the ``G_k`` construction."""
    return {
        "A": list(range(0, 2 * k)),
        "B": list(range(2 * k, 4 * k)),
        "C": list(range(4 * k, 5 * k)),
        "D": list(range(5 * k, 6 * k)),
    }


def gen_gk(k: int) -> Graph:
    """The graph ``G_k``: ``a_i b_i`` for ``i <= 2k`` plus all ``a_i c_j`` and ``b_i d_j``.

    Layout ``a_1..a_2k, b_1..b_2k, c_1..c_k, d_1..d_k``.  Its matching
    preclusion number is ``k + 1`` while the fractional one stays 2.
    """
    if k < 1:
        raise InvalidSpec(f"G_k needs k >= 1, got {k}")
    part = gk_partition(k)
    a, b, c, d = part["A"], part["B"], part["C"], part["D"]
    edges = [(a[i], b[i]) for i in range(2 * k)]
    for i in range(2 * k):
        for j in range(k):
            edges.append((a[i], c[j]))
            edges.append((b[i], d[j]))
    labels = (
        [f"a{i + 1}" for i in range(2 * k)]
        + [f"b{i + 1}" for i in range(2 * k)]
        + [f"c{j + 1}" for j in range(k)]
        + [f"d{j + 1}" for j in range(k)]
    )
    return build_graph(6 * k, edges, labels)


def gk_two_factor(k: int) -> list[tuple[int, int]]:
    """Edges of the 2-factor made of the 6-cycles ``c_i a_i b_i d_i b_{i+k} a_{i+k}``."""
    part = gk_partition(k)
    a, b, c, d = part["A"], part["B"], part["C"], part["D"]
    edges = []
    for i in range(k):
        cycle = [c[i], a[i], b[i], d[i], b[i + k], a[i + k]]
        for x, y in zip(cycle, cycle[1:] + cycle[:1]):
            edges.append((min(x, y), max(x, y)))
    return edges


def complete_bipartite(p: int, q: int) -> Graph:
    return build_graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidSpec(f"cycle length must be >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidSpec(f"path needs at least one vertex, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def hypercube(d: int) -> Graph:
    if d < 1:
        raise InvalidSpec(f"hypercube dimension must be >= 1, got {d}")
    edges = [(v, v ^ (1 << i)) for v in range(1 << d) for i in range(d) if not v & (1 << i)]
    return build_graph(1 << d, edges)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree decoded from a random Pruefer sequence."""
    if n < 1:
        raise InvalidSpec(f"tree needs at least one vertex, got {n}")
    if n == 1:
        return build_graph(1, [])
    if n == 2:
        return build_graph(2, [(0, 1)])
    rng = Lcg(seed)
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return build_graph(n, edges)


def random_regular_bipartite(n: int, r: int, seed: int = 0, attempts: int = 1000) -> Graph:
    """Union of ``r`` random perfect matchings between sides ``0..n-1`` and ``n..2n-1``.

    A matching that would repeat an edge is redrawn.
    """
    if n < 1 or not 0 <= r <= n:
        raise InvalidSpec(f"need n >= 1 and 0 <= r <= n, got n={n}, r={r}")
    rng = Lcg(seed)
    present: set[tuple[int, int]] = set()
    edges = []
    for _ in range(r):
        for _ in range(attempts):
            perm = rng.permutation(n)
            layer = [(a, n + perm[a]) for a in range(n)]
            if not any(e in present for e in layer):
                break
        else:
            raise InvalidSpec(f"no simple {r}-regular bipartite graph after {attempts} draws")
        present.update(layer)
        edges.extend(layer)
    return build_graph(2 * n, edges)


def random_bipartite(p: int, q: int, percent: int, seed: int = 0) -> Graph:
    """Each of the ``p*q`` possible edges kept with probability ``percent/100``."""
    if p < 0 or q < 0 or not 0 <= percent <= 100:
        raise InvalidSpec("need p, q >= 0 and 0 <= percent <= 100")
    rng = Lcg(seed)
    edges = [(i, p + j) for i in range(p) for j in range(q) if rng.below(100) < percent]
    return build_graph(p + q, edges)


def random_graph(n: int, percent: int, seed: int = 0) -> Graph:
    """Erdos-Renyi style graph; pairs visited in lexicographic order."""
    if n < 0 or not 0 <= percent <= 100:
        raise InvalidSpec("need n >= 0 and 0 <= percent <= 100")
    rng = Lcg(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.below(100) < percent]
    return build_graph(n, edges)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[int, ...] = ()
    seed: Optional[int] = None


_FAMILIES = {
    # name: (builder, allowed arities, takes seed)
    "gk": (gen_gk, (1,), False),
    "complete_bipartite": (complete_bipartite, (2,), False),
    "cycle": (cycle, (1,), False),
    "path": (path, (1,), False),
    "hypercube": (hypercube, (1,), False),
    "random_regular_bipartite": (random_regular_bipartite, (2,), True),
    "random_tree": (random_tree, (1,), True),
    "random_bipartite": (random_bipartite, (3,), True),
    "random_graph": (random_graph, (2,), True),
}

FAMILY_NAMES = tuple(_FAMILIES)


def gen_family(spec: FamilySpec) -> Graph:
    try:
        builder, arities, seeded = _FAMILIES[spec.name]
    except KeyError:
        raise InvalidSpec(f"unknown family {spec.name!r}; known: {', '.join(FAMILY_NAMES)}")
    if len(spec.params) not in arities:
        raise InvalidSpec(f"{spec.name} takes {arities[0]} integer parameter(s), got {len(spec.params)}")
    if seeded:
        return builder(*spec.params, seed=spec.seed or 0)
    if spec.seed is not None:
        raise InvalidSpec(f"{spec.name} is deterministic and takes no seed")
    return builder(*spec.params)


def parse_family(text: str) -> FamilySpec:
    """Parse ``name:p1,p2[@seed]``, e.g. ``cycle:6`` or ``random_tree:10@7``."""
    seed = None
    if "@" in text:
        text, seed_text = text.rsplit("@", 1)
        seed = int(seed_text)
    name, _, params = text.partition(":")
    try:
        values = tuple(int(p) for p in params.split(",") if p.strip())
    except ValueError:
        raise InvalidSpec(f"bad family parameters {params!r}")
    return FamilySpec(name.strip(), values, seed)
