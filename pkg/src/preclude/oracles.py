"""Brute-force reference computations for small inputs.

These share no code with the algorithms they check: each one enumerates
the whole search space directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .flows import FlowNetwork
from .graphcore import Bipartition, Graph
from .lpcore import LinearProgram


def min_cut_bruteforce(net: FlowNetwork) -> Fraction:
    """Smallest out-cut capacity over all node sets containing the source but not the sink."""
    others = [v for v in range(net.node_count) if v not in (net.source, net.sink)]
    best = None
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            side = {net.source, *extra}
            cap = sum(
                (a.capacity for a in net.arcs if a.tail in side and a.head not in side),
                Fraction(0),
            )
            best = cap if best is None else min(best, cap)
    return best


def hoffman_bruteforce(net: FlowNetwork) -> Optional[frozenset[int]]:
    """First ``R`` (by size, then lexicographically) with ``c(V-R, R) < l(R, V-R)``; ``None`` if none."""
    nodes = range(net.node_count)
    for k in range(net.node_count + 1):
        for r in itertools.combinations(nodes, k):
            rs = set(r)
            inflow = sum((a.capacity for a in net.arcs if a.tail not in rs and a.head in rs), Fraction(0))
            forced = sum((a.lower for a in net.arcs if a.tail in rs and a.head not in rs), Fraction(0))
            if inflow < forced:
                return frozenset(rs)
    return None


def f_factor_bruteforce(g: Graph, f: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some edge subset with degree ``f(v)`` at every ``v``, or ``None``."""
    target = sum(f)
    if target % 2:
        return None
    for combo in itertools.combinations(range(g.m), target // 2):
        deg = [0] * g.n
        for e in combo:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
        if deg == list(f):
            return combo
    return None


def permanent(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= matrix[i][j]
            if not prod:
                break
        total += prod
    return total


def perfect_matchings_bruteforce(g: Graph) -> list[tuple[int, ...]]:
    """All edge subsets of size ``n/2`` covering every vertex."""
    if g.n % 2:
        return []
    out = []
    for combo in itertools.combinations(range(g.m), g.n // 2):
        seen = set()
        for e in combo:
            seen.update(g.edges[e])
        if len(seen) == g.n:
            out.append(combo)
    return out


def formula_bruteforce(g: Graph, bip: Bipartition, r: int = 0):
    """Direct minimisation of ``(e(X,Y) + r*min(|X|,|Y|)) / (|X|+|Y|-|A|)`` over all pairs.

    Returns ``(value, X, Y)`` for the lexicographically smallest minimiser
    (``None`` value if no pair has a positive denominator).
    """
    a, b = bip.sorted_a(), bip.sorted_b()
    edges = {(min(u, v), max(u, v)) for u, v in g.edges}
    best = None
    for kx in range(len(a) + 1):
        for xs in itertools.combinations(a, kx):
            for ky in range(len(b) + 1):
                for ys in itertools.combinations(b, ky):
                    den = kx + ky - len(a)
                    if den <= 0:
                        continue
                    e = sum(1 for x in xs for y in ys if (min(x, y), max(x, y)) in edges)
                    val = Fraction(e + r * min(kx, ky), den)
                    key = (val, xs, ys)
                    if best is None or key < best:
                        best = key
    return best


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    n = len(rows)
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vc for vi, vc in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def lp_vertex_enumeration(lp: LinearProgram) -> Optional[Fraction]:
    """Best objective over all basic feasible points (bounded, pointed LPs only)."""
    n = lp.num_vars
    planes = []
    for con in lp.constraints:
        planes.append(([con.coeffs.get(j, Fraction(0)) for j in range(n)], con.rhs))
    for j in range(n):
        unit = [Fraction(int(i == j)) for i in range(n)]
        planes.append((unit, lp.lower[j]))
        if lp.upper[j] is not None:
            planes.append((unit, lp.upper[j]))
    best = None
    for combo in itertools.combinations(planes, n):
        x = _solve_square([p[0] for p in combo], [p[1] for p in combo])
        if x is None or not lp.is_feasible(x):
            continue
        val = lp.objective_value(x)
        if best is None or (val < best if lp.sense == "min" else val > best):
            best = val
    return best
