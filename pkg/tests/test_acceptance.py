"""Acceptance suite: nine criteria, exact rational comparisons, no tolerance.

Each test prints one ``PASS``/``FAIL`` line.  Run with ``pytest -s`` to see
them, or execute this file directly for the summary alone.
"""

import math
import sys
import time
from fractions import Fraction

from preclude.flows import FlowNetwork, f_factor_exists, feasible_circulation, max_flow, max_k_factor
from preclude.generators import (
    complete_bipartite,
    cycle,
    gen_gk,
    hypercube,
    path,
    random_bipartite,
    random_regular_bipartite,
    random_tree,
)
from preclude.graphcore import bipartition, build_graph, cartesian_product
from preclude.lpcore import solve_lp
from preclude.matchings import enumerate_perfect_matchings, has_perfect_matching, pm_partition_regular_bipartite
from preclude.oracles import f_factor_bruteforce, hoffman_bruteforce, min_cut_bruteforce
from preclude.preclusion import (
    blp2_circulation_network,
    blp_flow_network,
    check_product_bound,
    l_of_g,
    min_max_program,
    mp,
    mp_subset_search,
    mpf_bipartite_blp,
    mpf_bipartite_formula,
    mpf_cutting_plane,
    mpf_enumerated,
    mpf_product_regular,
)
from preclude.verify import CORPUS_SEED, atlas_graphs, sampled_bipartite_graphs, sampled_graphs

F = Fraction

# bipartite graphs with a perfect matching met along the way, for criterion 9
_CERT_POOL = {}


def _pool(g):
    _CERT_POOL.setdefault(g.edges, g)


def report(number, title, failures, detail=""):
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    print(line)
    for f in failures[:10]:
        print(f"        {f}")
    assert ok, failures[:10]


def test_criterion_1_gk_family():
    bad = []
    start = time.time()
    for k in (1, 2, 3):
        g = gen_gk(k)
        _pool(g)
        ints = (mp(g).value, mp_subset_search(g).value)
        fracs = (
            mpf_bipartite_formula(g).value,
            mpf_bipartite_blp(g).value,
            mpf_cutting_plane(g).value,
        )
        if ints != (k + 1, k + 1):
            bad.append(f"k={k}: mp via branch and bound / subset search = {ints}")
        if fracs != (2, 2, 2):
            bad.append(f"k={k}: mp_f via formula / blp / cutting plane = {fracs}")
    if mpf_bipartite_formula(gen_gk(4)).value != 2:
        bad.append("k=4: formula value is not 2")
    report(1, "G_k has mp = k+1 and mp_f = 2 (k = 1..3, formula also at k = 4)", bad, f"{time.time() - start:.1f}s")


def test_criterion_2_regular_bipartite():
    graphs = [(f"K_{n},{n}", complete_bipartite(n, n), n) for n in (1, 2, 3, 4)]
    graphs += [(f"C_{2 * n}", cycle(2 * n), 2) for n in (2, 3, 4, 5)]
    graphs.append(("Q_3", hypercube(3), 3))
    bad = []
    for name, g, r in graphs:
        _pool(g)
        f, m = mpf_bipartite_formula(g).value, mp(g).value
        if not f == m == r:
            bad.append(f"{name}: mp_f={f}, mp={m}, r={r}")
        parts = pm_partition_regular_bipartite(g, bipartition(g))
        flat = sorted(e for mt in parts for e in mt)
        covers = all(len({v for e in mt for v in g.edges[e]}) == g.n for mt in parts)
        if len(parts) != r or flat != list(range(g.m)) or not covers:
            bad.append(f"{name}: perfect matching partition is wrong")
    report(2, "r-regular bipartite graphs have mp_f = mp = r", bad, f"{len(graphs)} graphs")


def _trees(count):
    with_pm, without = [], []
    seed = 0
    while len(with_pm) < count or len(without) < count:
        n = 4 + 2 * (seed % 6)
        t = random_tree(n, seed)
        seed += 1
        (with_pm if has_perfect_matching(t) else without).append(t)
    return with_pm[:count], without[:count]


def test_criterion_3_trees():
    with_pm, without = _trees(10)
    bad = []
    for t in with_pm:
        _pool(t)
        vals = (mpf_bipartite_formula(t).value, mpf_enumerated(t).value, mp(t).value)
        if vals != (1, 1, 1):
            bad.append(f"tree n={t.n} edges={t.edges}: {vals}")
    for t in without:
        vals = (mpf_bipartite_formula(t).value, mpf_enumerated(t).value, mp(t).value)
        if vals != (0, 0, 0):
            bad.append(f"tree n={t.n} edges={t.edges}: {vals}")
    report(3, "trees have mp_f = mp in {0, 1}", bad, f"{len(with_pm)} with and {len(without)} without a perfect matching")


def _equivalence_corpus():
    graphs = [g for g in atlas_graphs(6) if has_perfect_matching(g)]
    graphs += sampled_graphs(8, 200, CORPUS_SEED)
    graphs += sampled_bipartite_graphs(4, 50, CORPUS_SEED)
    return graphs


def test_criterion_4_pipeline_equivalence():
    start = time.time()
    graphs = _equivalence_corpus()
    bad = []
    bip_count = 0
    for g in graphs:
        e = mpf_enumerated(g).value
        c = mpf_cutting_plane(g).value
        o = 1 / l_of_g(g)[0]
        if not e == c == o:
            bad.append(f"{g.edges}: enumerated {e}, cutting plane {c}, 1/L {o}")
        bip = bipartition(g)
        if bip is not None:
            bip_count += 1
            _pool(g)
            f, b = mpf_bipartite_formula(g, bip).value, mpf_bipartite_blp(g, bip).value
            if not f == b == e:
                bad.append(f"{g.edges}: formula {f}, blp {b}, enumerated {e}")
    elapsed = time.time() - start
    if elapsed > 600:
        bad.append(f"took {elapsed:.0f}s, over the 10 minute budget")
    report(
        4,
        "enumeration = cutting plane = 1/L, plus formula = BLP on bipartite graphs",
        bad,
        f"{len(graphs)} graphs, {bip_count} bipartite, {elapsed:.1f}s",
    )


def test_criterion_5_odd_cut_necessity():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    with_cuts = l_of_g(g)[0]
    without = solve_lp(min_max_program(g)).value
    bad = []
    if with_cuts != 1:
        bad.append(f"with odd cuts L = {with_cuts}")
    if without != F(1, 2):
        bad.append(f"without odd cuts L = {without}")
    if l_of_g(g, odd_cuts=False)[0] != F(1, 2):
        bad.append("l_of_g(odd_cuts=False) differs from the bare program")
    report(5, "odd-cut rows are needed: L = 1 with them, 1/2 without", bad)


def _random_bipartite_30():
    out, seed = [], 0
    while len(out) < 30:
        half = 2 + seed % 5
        g = random_bipartite(half, half, 35 + 5 * (seed % 7), CORPUS_SEED + seed)
        seed += 1
        if g.m:
            out.append(g)
    return out


def test_criterion_6_kfactor():
    graphs = _random_bipartite_30()
    graphs += [complete_bipartite(n, n) for n in (1, 2, 3, 4)]
    graphs += [gen_gk(k) for k in (1, 2, 3)]
    bad = []
    brute_checks = 0
    for g in graphs:
        bip = bipartition(g)
        rep = mpf_bipartite_formula(g, bip)
        if rep.value > 0:
            _pool(g)
        k = max_k_factor(g, bip)
        if math.floor(rep.value) != k:
            bad.append(f"{g.edges}: floor(mp_f) = {math.floor(rep.value)}, max k-factor = {k}")
        if g.m <= 10:
            for kk in range(0, g.min_degree() + 2):
                f = [kk] * g.n
                if f_factor_exists(g, bip, f).exists != (f_factor_bruteforce(g, f) is not None):
                    bad.append(f"{g.edges}: f-factor disagreement at k={kk}")
                brute_checks += 1
    report(
        6,
        "floor(mp_f) equals the largest k-factor",
        bad,
        f"{len(graphs)} graphs, {brute_checks} brute-force f-factor checks",
    )


def _bipartite_pairs(count):
    out, seed = [], 0
    while len(out) < count:
        pg, ph = 2 + seed % 3, 1 + (seed // 3) % 4
        g = random_bipartite(pg, pg, 55, CORPUS_SEED + 2 * seed)
        h = random_bipartite(ph, ph, 60, CORPUS_SEED + 2 * seed + 1)
        seed += 1
        if all(x.is_connected() and has_perfect_matching(x) for x in (g, h)):
            out.append((g, h))
    return out


REGULAR_PAIRS = [
    (cycle(4), complete_bipartite(1, 1)),
    (complete_bipartite(3, 3), cycle(4)),
    (hypercube(3), complete_bipartite(1, 1)),
    (random_regular_bipartite(4, 2, seed=1), random_regular_bipartite(3, 2, seed=2)),
    (random_regular_bipartite(3, 3, seed=3), random_regular_bipartite(2, 1, seed=4)),
]


def test_criterion_7_products():
    bad = []
    p4, k2 = path(4), complete_bipartite(1, 1)
    formula = mpf_product_regular(p4, None, k2)
    prod, _ = cartesian_product(p4, k2)
    direct = (mpf_bipartite_formula(prod).value, mpf_enumerated(prod).value)
    if formula.value != 2 or direct != (2, 2) or not formula.agree:
        bad.append(f"P_4 x K_2: formula {formula.value}, direct {direct}, blp2 {formula.cross_check}")
    pairs = _bipartite_pairs(20)
    for g, h in pairs:
        b = check_product_bound(g, h)
        if not b.holds:
            bad.append(f"bound fails for {g.edges} x {h.edges}: {b}")
    for g, h in REGULAR_PAIRS:
        b = check_product_bound(g, h)
        if not b.equality:
            bad.append(f"no equality for regular pair {g.edges} x {h.edges}: {b}")
        if g.n == len(bipartition(g).side_a) * 2:
            via_formula = mpf_product_regular(g, None, h)
            if via_formula.value != b.lhs or not via_formula.agree:
                bad.append(f"product formula {via_formula.value} vs direct {b.lhs}")
    report(7, "product formula on P_4 x K_2, lower bound on 20 pairs, equality on 5 regular pairs", bad)


def _test_networks():
    nets = []
    for g in _CERT_POOL.values() or [path(4)]:
        bip = bipartition(g)
        big_l = 1 / mpf_bipartite_formula(g, bip).value
        for z in (big_l, big_l / 2):
            nets.append(blp_flow_network(g, bip, z)[0])
    return nets


def _small_circulations():
    nets = []
    for g in (path(2), path(4), cycle(4), build_graph(4, [(0, 1), (0, 3)])):
        bip = bipartition(g)
        if len(bip.side_a) != len(bip.side_b):
            continue
        for z in (F(1, 4), F(1, 2), F(2, 3), F(1)):
            nets.append(blp2_circulation_network(g, bip, 1, z))
    rng_nets = []
    for seed in range(60):
        g = random_bipartite(2, 3, 60, seed)
        net = FlowNetwork(5)
        for k, (u, v) in enumerate(g.edges):
            cap = 1 + (seed + k) % 3
            net.add_arc(u, v, cap, lower=(seed * 7 + k) % (cap + 1))
            if (seed + k) % 2:
                net.add_arc(v, u, 1 + k % 2)
        rng_nets.append(net)
    return [n for n in nets + rng_nets if n.node_count <= 8]


def test_criterion_8_flow_soundness():
    bad = []
    nets = _test_networks()
    for net in nets:
        res = max_flow(net)
        if res.value != net.cut_capacity(res.cut_side):
            bad.append(f"flow {res.value} != cut {net.cut_capacity(res.cut_side)}")
        if net.node_count <= 10 and res.value != min_cut_bruteforce(net):
            bad.append("flow value differs from brute-force min cut")
    circs = _small_circulations()
    for net in circs:
        res = feasible_circulation(net)
        if res.feasible != (hoffman_bruteforce(net) is None):
            bad.append(f"circulation disagrees with Hoffman check on {net.arcs}")
    p4 = path(4)
    value = max_flow(blp_flow_network(p4, bipartition(p4), 1)[0]).value
    if value != 2:
        bad.append(f"P_4 network at z = 1 has value {value}")
    report(8, "max flow = cut, circulation = Hoffman check, P_4 network reaches |A|", bad,
           f"{len(nets)} flow networks, {len(circs)} circulations")


def test_criterion_9_certificates():
    if len(_CERT_POOL) < 10:
        test_criterion_2_regular_bipartite()
        test_criterion_3_trees()
    bad = []
    for g in _CERT_POOL.values():
        rep = mpf_bipartite_formula(g)
        y = rep.certificate
        ms = enumerate_perfect_matchings(g)
        if min(y) < 0 or sum(y) != rep.value:
            bad.append(f"{g.edges}: sum {sum(y)} vs value {rep.value}")
        elif any(sum(y[e] for e in mt) < 1 for mt in ms):
            bad.append(f"{g.edges}: some perfect matching is under-covered")
    report(9, "the closed-form certificate is feasible and optimal", bad, f"{len(_CERT_POOL)} bipartite graphs")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in sorted(tests, key=lambda f: int(f.__name__.split("_")[2])):
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
