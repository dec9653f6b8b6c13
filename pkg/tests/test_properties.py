"""Corpus-wide invariants of the solvers and constructions."""

from conftest import load_bridgeless_corpus
from cyclecover.covers import decompose_even_subgraph, trace_circuit, validate
from cyclecover.solvers import (
    edge_colouring_3,
    enumerate_perfect_matchings,
    perfect_matching_index,
    oddness,
    shortest_cycle_cover,
)


def test_scc_lower_bound_and_equality_structure():
    for g in load_bridgeless_corpus(10):
        res = shortest_cycle_cover(g)
        base = 4 * g.m // 3
        assert res.length >= base
        report = validate(res.cover, g)
        assert report.ok
        if res.length == base:
            # equality: a (1,2)-cover whose weight-1 edges form a 2-factor
            assert report.is_one_two_cover
            ones = report.weight_one_edges
            deg = [0] * g.n
            for e in ones:
                u, v = g.edges[e]
                deg[u] += 1
                deg[v] += 1
            assert all(d == 2 for d in deg)
        if res.length == base + 1:
            ones = report.weight_one_edges
            assert len(ones) == g.n - 1
            circs = decompose_even_subgraph(g, ones)
            assert sum(len(c) for c in circs) == g.n - 1


def test_cap_three_never_improves():
    for g in load_bridgeless_corpus(8):
        assert shortest_cycle_cover(g, cap=3).length == shortest_cycle_cover(g).length


def test_tau3_iff_colourable_corpus():
    for g in load_bridgeless_corpus(10):
        res = perfect_matching_index(g)
        assert (res.tau == 3) == (edge_colouring_3(g) is not None)


def test_oddness_even_and_matching_symmetric_differences():
    for g in load_bridgeless_corpus(8):
        assert oddness(g)[0] % 2 == 0
        pms = enumerate_perfect_matchings(g)
        for i in range(min(3, len(pms))):
            for j in range(i + 1, min(4, len(pms))):
                diff = pms[i] ^ pms[j]
                if diff:
                    comps = decompose_even_subgraph(g, diff)
                    assert all(len(c) % 2 == 0 for c in comps)
