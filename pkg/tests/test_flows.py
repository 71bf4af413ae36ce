from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preclude.errors import MissingTerminals
from preclude.flows import (
    FlowNetwork,
    f_factor_exists,
    feasible_circulation,
    hall_violator,
    has_perfect_matching_bipartite,
    max_flow,
    max_k_factor,
)
from preclude.generators import complete_bipartite, cycle, gen_gk, random_bipartite
from preclude.graphcore import bipartition, build_graph
from preclude.oracles import f_factor_bruteforce, hoffman_bruteforce, min_cut_bruteforce
from preclude.preclusion import blp2_circulation_network, blp_flow_network


def _conserves(net, flow):
    for v in range(net.node_count):
        if v not in (net.source, net.sink):
            assert net.excess(flow, v) == 0
    for a, f in zip(net.arcs, flow):
        assert a.lower <= f <= a.capacity


def test_single_arc():
    net = FlowNetwork(2, source=0, sink=1)
    net.add_arc(0, 1, 5)
    res = max_flow(net)
    assert res.value == 5 and res.cut_side == frozenset({0})


def test_two_paths():
    net = FlowNetwork(4, source=0, sink=3)
    for u, v in [(0, 1), (0, 2), (1, 3), (2, 3)]:
        net.add_arc(u, v, 1)
    res = max_flow(net)
    assert res.value == 2
    _conserves(net, res.flow)


def test_needs_terminals():
    with pytest.raises(MissingTerminals):
        max_flow(FlowNetwork(2))


def test_arc_validation():
    net = FlowNetwork(2)
    with pytest.raises(ValueError):
        net.add_arc(0, 0, 1)
    with pytest.raises(ValueError):
        net.add_arc(0, 1, 1, lower=2)


def test_p4_network_at_one(p4):
    net, _ = blp_flow_network(p4, bipartition(p4), 1)
    assert max_flow(net).value == 2


def test_p4_network_below_one(p4):
    net, _ = blp_flow_network(p4, bipartition(p4), Fraction(9, 10))
    assert max_flow(net).value < 2


@st.composite
def networks(draw):
    n = draw(st.integers(2, 7))
    net = FlowNetwork(n, source=0, sink=n - 1)
    for _ in range(draw(st.integers(0, 12))):
        u, v = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if u != v:
            net.add_arc(u, v, Fraction(draw(st.integers(0, 6)), draw(st.integers(1, 3))))
    return net


@settings(max_examples=150, deadline=None)
@given(networks())
def test_max_flow_equals_cuts(net):
    res = max_flow(net)
    assert res.value == net.cut_capacity(res.cut_side)
    assert res.value == min_cut_bruteforce(net)
    _conserves(net, res.flow)


def test_circulation_zero_lower_bounds():
    net = FlowNetwork(3)
    net.add_arc(0, 1, 2)
    net.add_arc(1, 2, 3)
    res = feasible_circulation(net)
    assert res.feasible and res.flow == [0, 0]


def test_circulation_forced_infeasible():
    net = FlowNetwork(2)
    net.add_arc(0, 1, 1, lower=1)
    net.add_arc(1, 0, 0)
    res = feasible_circulation(net)
    assert not res.feasible and res.violating_set == frozenset({0})


def test_product_circulation_p4(p4):
    bip = bipartition(p4)
    net = blp2_circulation_network(p4, bip, 1, Fraction(1, 2))
    low = [a.lower for a in net.arcs if net.source in (a.tail, a.head) and a.head != net.source]
    assert low == [Fraction(1, 2)] * 2
    res = feasible_circulation(net)
    assert res.feasible
    for v in range(net.node_count):
        assert net.excess(res.flow, v) == 0
    assert not feasible_circulation(blp2_circulation_network(p4, bip, 1, Fraction(49, 100))).feasible


@st.composite
def bounded_networks(draw):
    n = draw(st.integers(2, 6))
    net = FlowNetwork(n)
    for _ in range(draw(st.integers(1, 9))):
        u, v = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if u != v:
            cap = draw(st.integers(0, 4))
            net.add_arc(u, v, cap, lower=draw(st.integers(0, cap)))
    return net


@settings(max_examples=200, deadline=None)
@given(bounded_networks())
def test_circulation_matches_hoffman(net):
    res = feasible_circulation(net)
    assert res.feasible == (hoffman_bruteforce(net) is None)
    if res.feasible:
        for v in range(net.node_count):
            assert net.excess(res.flow, v) == 0
        for a, f in zip(net.arcs, res.flow):
            assert a.lower <= f <= a.capacity
    else:
        r = res.violating_set
        rest = set(range(net.node_count)) - r
        assert net.capacity_between(rest, r) < net.lower_between(r, rest)


def test_f_factor_examples():
    k33 = complete_bipartite(3, 3)
    assert f_factor_exists(k33, bipartition(k33), [3] * 6).exists
    c6 = cycle(6)
    bip = bipartition(c6)
    assert len(f_factor_exists(c6, bip, [2] * 6).edges) == 6
    assert not f_factor_exists(c6, bip, [3] * 6).exists
    g2 = gen_gk(2)
    assert f_factor_exists(g2, bipartition(g2), [2] * g2.n).exists


def test_f_factor_violation_certificate():
    g = build_graph(6, [(0, 3), (1, 3), (2, 3), (2, 4), (2, 5)])
    bip = bipartition(g)
    f = [1] * 6
    res = f_factor_exists(g, bip, f)
    assert not res.exists
    xs, ys = res.violation
    exy = sum(1 for u, v in g.edges if (u in xs and v in ys) or (v in xs and u in ys))
    assert sum(f[x] for x in xs) > exy + sum(f[b] for b in bip.side_b if b not in ys)


def test_f_factor_matches_bruteforce():
    checked = 0
    for seed in range(60):
        g = random_bipartite(3, 3, 55, seed)
        if g.m > 10:
            continue
        bip = bipartition(g)
        for k in (1, 2):
            f = [k] * g.n
            got = f_factor_exists(g, bip, f)
            assert got.exists == (f_factor_bruteforce(g, f) is not None)
            if got.exists:
                deg = [0] * g.n
                for e in got.edges:
                    for v in g.edges[e]:
                        deg[v] += 1
                assert deg == f
            checked += 1
    assert checked > 50


def test_max_k_factor_examples(p4):
    k44 = complete_bipartite(4, 4)
    assert max_k_factor(k44, bipartition(k44)) == 4
    assert max_k_factor(p4, bipartition(p4)) == 1
    g = build_graph(4, [(0, 1), (0, 3)])
    assert max_k_factor(g, bipartition(g)) == 0


def test_hall_violator():
    g = build_graph(4, [(0, 1), (0, 3)])
    bip = bipartition(g)
    assert not has_perfect_matching_bipartite(g, bip)
    y = hall_violator(g, bip)
    assert y <= bip.side_b
    nbrs = {w for b in y for w in g.neighbors(b)}
    assert len(nbrs) < len(y)
    assert hall_violator(cycle(4), bipartition(cycle(4))) is None
