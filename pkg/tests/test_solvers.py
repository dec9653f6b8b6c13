from collections import Counter

import pytest

from cyclecover import flower
from cyclecover.covers import CycleCover, decompose_even_subgraph, trace_circuit, validate
from cyclecover.errors import Bridged, NoThreePaths
from cyclecover.graphs import CubicGraph, Multigraph, contract_two_factor
from cyclecover.solvers import (
    circumference,
    edge_colouring_3,
    edge_weight_spectrum,
    enumerate_circuits,
    enumerate_perfect_matchings,
    find_cdc,
    oddness,
    perfect_matching_index,
    shortest_cycle_cover,
    three_disjoint_paths,
)


def test_circuits_k4(k4):
    circuits = enumerate_circuits(k4)
    assert len(circuits) == 7
    assert Counter(len(c) for c in circuits) == {3: 4, 4: 3}


def test_circuits_petersen(pete):
    circuits = enumerate_circuits(pete)
    by_len = Counter(len(c) for c in circuits)
    assert by_len[5] == 12
    assert by_len[6] == 10
    # cross-check the 5-circuit count against the 2-factor structure:
    # six 2-factors, each two 5-circuits, each 5-circuit in five 2-factors
    factors = [frozenset(range(15)) - pm for pm in enumerate_perfect_matchings(pete)]
    fives = set()
    for f in factors:
        for c in decompose_even_subgraph(pete, f):
            fives.add(c)
    assert len(fives) <= 12


def test_circuits_parallel_multigraph():
    g = CubicGraph(2, [(0, 1), (0, 1), (0, 1)])
    circuits = enumerate_circuits(g)
    assert len(circuits) == 3
    assert all(len(c) == 2 for c in circuits)


def test_scc_k4(k4):
    res = shortest_cycle_cover(k4)
    assert res.length == 8 == 4 * k4.m // 3
    assert res.optimal and res.weight_cap_used == 2
    assert validate(res.cover, k4).is_one_two_cover


def test_scc_petersen(pete):
    res = shortest_cycle_cover(pete)
    assert res.length == 21 == 4 * pete.m // 3 + 1
    report = validate(res.cover, pete)
    assert report.ok and report.is_one_two_cover
    # the weight-1 edges form a 9-circuit
    ones = res.cover.weight_one_edges(pete.m)
    circ = trace_circuit(pete, ones)
    assert len(circ) == 9


def test_scc_flower5():
    j5 = flower(5)
    res = shortest_cycle_cover(j5)
    assert res.length == 40 == 4 * j5.m // 3


def test_scc_deterministic_and_seed_independent(pete):
    a = shortest_cycle_cover(pete)
    b = shortest_cycle_cover(pete)
    c = shortest_cycle_cover(pete, seed_order=12345)
    assert a.cover == b.cover == c.cover


def test_scc_rejects_bridge():
    from test_graphs import _bridged_cubic

    with pytest.raises(Bridged):
        shortest_cycle_cover(_bridged_cubic())


def test_cap3_matches_cap2(k4, pete, prism, k33):
    for g in (k4, pete, prism, k33):
        assert shortest_cycle_cover(g, cap=3).length == shortest_cycle_cover(g, cap=2).length


def test_perfect_matchings(k4, pete):
    assert len(enumerate_perfect_matchings(k4)) == 3
    pms = enumerate_perfect_matchings(pete)
    assert len(pms) == 6
    # symmetric difference of two matchings is an even subgraph of even circuits
    for a in pms:
        for b in pms:
            if a == b:
                continue
            comps = decompose_even_subgraph(pete, a ^ b)
            assert all(len(c) % 2 == 0 for c in comps)


def test_tau_values(k4, pete):
    assert perfect_matching_index(k4).tau == 3
    assert perfect_matching_index(flower(5)).tau == 4
    res = perfect_matching_index(pete)
    assert res.tau == 5
    union = frozenset().union(*res.matchings)
    assert union == frozenset(range(pete.m))


def test_tau_matches_colourability(k4, pete, prism, k33):
    for g in (k4, pete, prism, k33):
        colourable = edge_colouring_3(g) is not None
        assert (perfect_matching_index(g).tau == 3) == colourable


def test_oddness(k4, pete):
    assert oddness(k4)[0] == 0
    odd, factor = oddness(pete)
    assert odd == 2
    comps = decompose_even_subgraph(pete, factor)
    assert sorted(len(c) for c in comps) == [5, 5]
    assert oddness(flower(5))[0] == 2


def test_oddness_always_even(k4, pete, prism, k33):
    for g in (k4, pete, prism, k33, flower(5)):
        assert oddness(g)[0] % 2 == 0


def test_circumference(k4, pete):
    assert circumference(k4)[0] == 4
    length, circ = circumference(pete)
    assert length == 9
    assert len(set(circ.vertices)) == 9
    # flower snarks are hypohamiltonian: circumference n - 1
    assert circumference(flower(5))[0] == 19


def test_edge_colouring(k4, pete):
    colour = edge_colouring_3(k4)
    assert colour is not None
    for v in range(k4.n):
        assert sorted(colour[e] for e in k4.incident_edges[v]) == [1, 2, 3]
    assert edge_colouring_3(pete) is None
    g = CubicGraph(2, [(0, 1), (0, 1), (0, 1)])
    assert edge_colouring_3(g) is not None


def test_find_cdc_circuit_form(k4, pete):
    cdc = find_cdc(k4)
    assert validate(cdc, k4).is_cdc
    # strong CDC through a 9-circuit of the Petersen graph
    _, circ = circumference(pete)
    cdc = find_cdc(pete, must_contain=[circ])
    assert cdc is not None and validate(cdc, pete).is_cdc
    assert circ in cdc.circuits


def test_find_cdc_k5_two_factor(pete):
    # a 5-CDC with a 2-factor class would force tau <= 4: impossible for Petersen
    assert find_cdc(pete, k=5, two_factor_class=True) is None
    got = find_cdc(flower(5), k=5, two_factor_class=True)
    assert got is not None
    assert validate(got, flower(5)).is_cdc


def test_spectrum_k4(k4):
    spec = edge_weight_spectrum(k4)
    assert spec.optimal_length == 8
    assert all(s == frozenset({1, 2}) for s in spec.per_edge)


def test_spectrum_petersen(pete):
    spec = edge_weight_spectrum(pete)
    assert spec.optimal_length == 21
    assert spec.n_optimal_covers == 20
    assert all(1 in s for s in spec.per_edge)


def test_three_disjoint_paths_contracted_petersen(pete):
    pm = enumerate_perfect_matchings(pete)[0]
    contracted, cmap = contract_two_factor(pete, frozenset(range(15)) - pm)
    paths, d = three_disjoint_paths(contracted, 0, 1)
    assert d == 3
    assert all(len(p) == 1 for p in paths)


def test_three_disjoint_paths_through_middle():
    # path of 3 vertices with triple edges: each path has 2 edges
    g = Multigraph(3, [(0, 1)] * 3 + [(1, 2)] * 3)
    paths, d = three_disjoint_paths(g, 0, 2)
    assert d == 6
    assert all(len(p) == 2 for p in paths)
    used = [e for p in paths for e in p]
    assert len(set(used)) == 6


def test_three_disjoint_paths_errors():
    g = Multigraph(3, [(0, 1)] * 3 + [(1, 2)] * 3)
    with pytest.raises(ValueError):
        three_disjoint_paths(g, 1, 1)
    g2 = Multigraph(2, [(0, 1), (0, 1)])
    with pytest.raises(NoThreePaths):
        three_disjoint_paths(g2, 0, 1)
