"""Cross-pipeline invariant checks over a corpus of small graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import oracles
from .flows import (
    f_factor_exists,
    feasible_circulation,
    has_perfect_matching_bipartite,
    max_flow,
    max_k_factor,
)
from .generators import complete_bipartite, random_bipartite, random_graph
from .graphcore import Graph, bipartition, build_graph
from .matchings import enumerate_perfect_matchings, has_perfect_matching
from .preclusion import (
    blp2_circulation_network,
    blp_flow_network,
    l_of_g,
    mp,
    mpf_bipartite_blp,
    mpf_bipartite_formula,
    mpf_cutting_plane,
    mpf_enumerated,
    mpf_product_regular,
)

CORPUS_SEED = 20240601


def atlas_graphs(max_n: int) -> list[Graph]:
    """Every connected graph of even order ``2..min(max_n, 6)``, one per isomorphism class."""
    import networkx as nx

    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < 2 or n % 2 or n > min(max_n, 6) or not nx.is_connected(h):
            continue
        out.append(build_graph(n, sorted(h.edges())))
    return out


def sampled_graphs(
    n: int, count: int, seed: int = CORPUS_SEED, require_pm: bool = True
) -> list[Graph]:
    """Distinct connected random graphs of order ``n``.

    Draw ``i`` uses ``random_graph(n, 25 + 5 * (i % 10), seed + i)``; draws that
    repeat an edge set, are disconnected, or (optionally) lack a perfect
    matching are skipped.
    """
    out, seen = [], set()
    i = 0
    while len(out) < count:
        g = random_graph(n, 25 + 5 * (i % 10), seed + i)
        i += 1
        if g.edges in seen or not g.is_connected():
            continue
        if require_pm and not has_perfect_matching(g):
            continue
        seen.add(g.edges)
        out.append(g)
    return out


def sampled_bipartite_graphs(half: int, count: int, seed: int = CORPUS_SEED) -> list[Graph]:
    """Distinct connected random ``half x half`` bipartite graphs with a perfect matching.

    Draw ``i`` uses ``random_bipartite(half, half, 40 + 5 * (i % 8), seed + i)``.
    """
    out, seen = [], set()
    i = 0
    while len(out) < count:
        g = random_bipartite(half, half, 40 + 5 * (i % 8), seed + i)
        i += 1
        if g.edges in seen or not g.is_connected() or not has_perfect_matching(g):
            continue
        seen.add(g.edges)
        out.append(g)
    return out


def corpus(max_n: int = 8, samples: int = 40, seed: int = CORPUS_SEED) -> list[Graph]:
    """Atlas graphs up to order 6, then ``samples`` general and ``samples // 2``
    bipartite random graphs of order 8 when ``max_n >= 8``."""
    graphs = atlas_graphs(max_n)
    if max_n >= 8:
        graphs += sampled_graphs(8, samples, seed)
        graphs += sampled_bipartite_graphs(4, samples // 2, seed)
    return graphs


@dataclass
class VerifyResult:
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            self.failures.append(f"{name}: {detail}")

    @property
    def ok(self) -> bool:
        return not self.failures


def check_pipelines(g: Graph, res: VerifyResult) -> Optional[Fraction]:
    """Every applicable ``mp_f`` route gives the same exact value."""
    tag = f"n={g.n} edges={list(g.edges)}"
    pm = has_perfect_matching(g)
    enum = mpf_enumerated(g)
    res.record("zero_law", (enum.value == 0) == (not pm), tag)
    if not pm:
        return enum.value
    cut = mpf_cutting_plane(g).value
    odd = 1 / l_of_g(g)[0]
    res.record("enumeration=cutting_plane", enum.value == cut, f"{tag}: {enum.value} vs {cut}")
    res.record("enumeration=1/L", enum.value == odd, f"{tag}: {enum.value} vs {odd}")
    bip = bipartition(g)
    if bip is not None:
        formula = mpf_bipartite_formula(g, bip)
        blp = mpf_bipartite_blp(g, bip).value
        res.record("enumeration=formula", enum.value == formula.value, f"{tag}: {formula.value}")
        res.record("enumeration=blp", enum.value == blp, f"{tag}: {blp}")
        check_certificate(g, formula.certificate, formula.value, res, tag)
        floor, k = math.floor(formula.value), max_k_factor(g, bip)
        res.record("floor(mpf)=max_k_factor", floor == k, f"{tag}: {floor} vs {k}")
    return enum.value


def check_certificate(g: Graph, y, value, res: VerifyResult, tag: str = "") -> None:
    ms = enumerate_perfect_matchings(g)
    ok = sum(y) == value and all(sum(y[e] for e in mt) >= 1 for mt in ms) and min(y) >= 0
    res.record("certificate", ok, tag)


def check_sandwich(g: Graph, mpf_value: Fraction, res: VerifyResult) -> None:
    if not has_perfect_matching(g):
        return
    rep = mp(g)
    ok = mpf_value <= rep.value <= g.min_degree()
    res.record("mpf<=mp<=min_degree", ok, f"n={g.n} edges={list(g.edges)}")


def check_flows(g: Graph, res: VerifyResult) -> None:
    """Flow duality, Hoffman agreement and f-factor agreement on networks built from ``g``."""
    bip = bipartition(g)
    if bip is None or not has_perfect_matching_bipartite(g, bip):
        return
    tag = f"n={g.n} edges={list(g.edges)}"
    na = len(bip.side_a)
    L = 1 / mpf_bipartite_formula(g, bip).value
    for z in (L, L / 2):
        net, _ = blp_flow_network(g, bip, z)
        mf = max_flow(net)
        res.record("maxflow=cut", mf.value == net.cut_capacity(mf.cut_side), tag)
        if net.node_count <= 10:
            res.record("maxflow=bruteforce_cut", mf.value == oracles.min_cut_bruteforce(net), tag)
        res.record("blp_network_feasible_iff_z>=L", (mf.value == na) == (z >= L), tag)
    if len(bip.side_a) == len(bip.side_b):
        prod = mpf_product_regular(g, bip, complete_bipartite(1, 1))
        zstar = 1 / prod.value
        for z in (zstar, zstar * Fraction(9, 10)):
            net = blp2_circulation_network(g, bip, 1, z)
            circ = feasible_circulation(net)
            res.record("circulation_feasible_iff_z>=L", circ.feasible == (z >= zstar), tag)
            if net.node_count <= 8:
                brute = oracles.hoffman_bruteforce(net)
                res.record("circulation=hoffman_bruteforce", circ.feasible == (brute is None), tag)
    if g.m <= 10:
        for k in (1, 2):
            fac = f_factor_exists(g, bip, [k] * g.n)
            brute = oracles.f_factor_bruteforce(g, [k] * g.n)
            res.record("f_factor=bruteforce", fac.exists == (brute is not None), f"{tag} k={k}")


def run_verify(
    graphs: Iterable[Graph],
    progress: Optional[Callable[[int, Graph], None]] = None,
    sandwich: bool = True,
) -> VerifyResult:
    res = VerifyResult()
    for i, g in enumerate(graphs):
        if progress:
            progress(i, g)
        value = check_pipelines(g, res)
        if sandwich:
            check_sandwich(g, value, res)
        check_flows(g, res)
    return res
