import pytest

from cyclecover import petersen
from cyclecover.covers import (
    Circuit,
    CycleCover,
    KCdc,
    circuit_from_walk,
    decompose_even_subgraph,
    lift_cover,
    relabel_cover,
    trace_circuit,
    validate,
)
from cyclecover.errors import MapMismatch
from cyclecover.graphs import Multigraph, edge_subgraph, suppress_degree_two
from cyclecover.solvers import edge_colouring_3, shortest_cycle_cover


def test_circuit_canonical_rotation_reflection():
    a = circuit_from_walk([0, 1, 2, 3], [10, 11, 12, 13])
    b = circuit_from_walk([2, 3, 0, 1], [12, 13, 10, 11])
    c = circuit_from_walk([3, 2, 1, 0], [10, 13, 12, 11])
    assert a == b == c


def test_trace_circuit_triangle(k4):
    circ = trace_circuit(k4, [0, 1, 3])  # edges (0,1),(0,2),(1,2)
    assert len(circ) == 3
    assert set(circ.vertices) == {0, 1, 2}


def test_decompose_two_factor(pete):
    from cyclecover.solvers import enumerate_perfect_matchings

    pm = enumerate_perfect_matchings(pete)[0]
    comps = decompose_even_subgraph(pete, frozenset(range(15)) - pm)
    assert [len(c) for c in comps] == [5, 5]
    # re-uniting returns the same edge set
    assert frozenset().union(*(c.edge_set for c in comps)) == frozenset(range(15)) - pm


def test_decompose_rejects_odd_degrees(k4):
    with pytest.raises(ValueError):
        decompose_even_subgraph(k4, [0, 1])


def test_cover_weights_and_length_identity(k4):
    res = shortest_cycle_cover(k4)
    cover = res.cover
    w = cover.edge_weight(k4.m)
    assert cover.length == sum(w)
    vw = cover.vertex_weight(k4)
    assert 2 * cover.length == sum(vw)
    assert all(x >= 4 for x in vw)
    # weight 4 exactly when the incident weights are {1,1,2}
    for v in range(k4.n):
        if vw[v] == 4:
            ws = sorted(w[e] for e in k4.incident_edges[v])
            assert ws == [1, 1, 2]


def test_validate_colour_pair_cdc(k4):
    colour = edge_colouring_3(k4)
    classes = [frozenset(e for e in range(k4.m) if colour[e] in pair)
               for pair in ((1, 2), (1, 3), (2, 3))]
    kcdc = KCdc.of(classes)
    report = validate(kcdc, k4)
    assert report.ok and report.is_cdc
    cover = kcdc.as_cover(k4)
    assert cover.length == 12
    assert validate(cover, k4).is_cdc


def test_validate_reports_missing_edge(k4):
    circ = trace_circuit(k4, [0, 1, 3])
    report = validate(CycleCover.of([circ]), k4)
    assert not report.ok
    assert report.missing_edges


def test_lift_preserves_validity():
    # K4 with one edge subdivided twice: suppression undoes the subdivision
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (4, 5), (5, 3), (2, 3)]
    g = Multigraph(6, edges)
    reduced, rmap = suppress_degree_two(g)
    assert reduced.n == 4
    res = shortest_cycle_cover(reduced)
    lifted = lift_cover(res.cover, rmap)
    assert validate(lifted, g).ok
    extra = sum(len(p) - 1 for c in res.cover.circuits
                for e in c.edges for p in [rmap.edge_path[e]])
    assert lifted.length == res.cover.length + extra


def test_lift_cdc_stays_cdc():
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (4, 5), (5, 3), (2, 3)]
    g = Multigraph(6, edges)
    reduced, rmap = suppress_degree_two(g)
    from cyclecover.solvers import find_cdc

    cdc = find_cdc(reduced)
    lifted = lift_cover(cdc, rmap)
    assert validate(lifted, g).is_cdc


def test_lift_rejects_unknown_edges():
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (4, 5), (5, 3), (2, 3)]
    g = Multigraph(6, edges)
    reduced, rmap = suppress_degree_two(g)
    bogus = circuit_from_walk([97, 98, 99], [0, 1, 2])
    with pytest.raises(MapMismatch):
        lift_cover(CycleCover.of([bogus]), rmap)
