from fractions import Fraction

import pytest

from preclude.errors import CapExceeded, NoPerfectMatching, NotRegularBipartite, OddOrder
from preclude.generators import complete_bipartite, cycle, hypercube, path, random_bipartite, random_graph
from preclude.graphcore import bipartition, build_graph
from preclude.matchings import (
    enumerate_perfect_matchings,
    has_perfect_matching,
    min_weight_perfect_matching,
    pm_partition_regular_bipartite,
    separate_fmp,
)
from preclude.oracles import perfect_matchings_bruteforce, permanent

F = Fraction


def test_counts(k2, k4):
    assert len(enumerate_perfect_matchings(k2)) == 1
    assert len(enumerate_perfect_matchings(cycle(6))) == 2
    ms = enumerate_perfect_matchings(k4)
    assert len(ms) == 3
    used = [e for mt in ms for e in mt]
    assert sorted(used) == list(range(6))


def test_odd_order_rejected():
    with pytest.raises(OddOrder):
        enumerate_perfect_matchings(path(3))
    assert not has_perfect_matching(path(3))


def test_cap():
    with pytest.raises(CapExceeded) as info:
        enumerate_perfect_matchings(complete_bipartite(4, 4), cap=10)
    assert info.value.count == 10


def test_matches_bruteforce():
    for seed in range(25):
        g = random_graph(8, 45, seed)
        got = enumerate_perfect_matchings(g).matchings
        assert list(got) == sorted(perfect_matchings_bruteforce(g))


def test_bipartite_count_is_permanent():
    for seed in range(15):
        g = random_bipartite(4, 4, 60, seed)
        bip = bipartition(g)
        if bip is None or len(bip.side_a) != 4:
            continue
        a, b = bip.sorted_a(), bip.sorted_b()
        mat = [[int(g.has_edge(x, y)) for y in b] for x in a]
        assert len(enumerate_perfect_matchings(g)) == permanent(mat)


def test_min_weight_c4(c4):
    mt, w = min_weight_perfect_matching(c4, [1, 2, 1, 2])
    assert w == 2
    assert {c4.edges[e] for e in mt} == {(0, 1), (2, 3)}


def test_min_weight_zero(k4):
    assert min_weight_perfect_matching(k4, [0] * 6)[1] == 0
    assert min_weight_perfect_matching(build_graph(4, [(0, 1)]), [0]) is None


def test_min_weight_tiebreak(k4):
    mt, w = min_weight_perfect_matching(k4, [5, 1, 1, 1, 1, 1])
    assert w == 2
    # {02,13} and {03,12} tie; the smaller sorted index tuple wins
    assert {k4.edges[e] for e in mt} == {(0, 2), (1, 3)}


def test_separate_inside(c4):
    assert separate_fmp(c4, [F(1, 2)] * 4).inside


def test_separate_violated(c4):
    sep = separate_fmp(c4, [F(1), F(0), F(0), F(0)])
    assert not sep.inside
    assert {c4.edges[e] for e in sep.matching} == {(1, 2), (0, 3)}
    assert sep.w == (0, 1, 0, 1)


def test_separate_negative(k4):
    y = [F(1)] * 6
    y[4] = F(-1)
    sep = separate_fmp(k4, y)
    assert not sep.inside and sep.w == (0, 0, 0, 0, 1, 0) and sep.matching is None


def test_separate_needs_matching():
    with pytest.raises(NoPerfectMatching):
        separate_fmp(build_graph(4, [(0, 1)]), [F(0)])


@pytest.mark.parametrize(
    "g, r",
    [(cycle(4), 2), (complete_bipartite(3, 3), 3), (complete_bipartite(1, 1), 1), (hypercube(3), 3)],
)
def test_pm_partition(g, r):
    parts = pm_partition_regular_bipartite(g, bipartition(g))
    assert len(parts) == r
    assert sorted(e for mt in parts for e in mt) == list(range(g.m))
    for mt in parts:
        assert 2 * len(mt) == g.n
        covered = {v for e in mt for v in g.edges[e]}
        assert len(covered) == g.n


def test_pm_partition_rejects(p4):
    with pytest.raises(NotRegularBipartite):
        pm_partition_regular_bipartite(p4, bipartition(p4))
